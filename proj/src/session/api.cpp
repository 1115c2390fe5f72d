/*
 * Copyright (C) 2026 The Lectern Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lectern/session/api.hpp"

#include <chrono>
#include <filesystem>
#include <thread>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "json.hpp"
#include "lectern/doc/extract.hpp"
#include "lectern/ocr/raster.hpp"
#include "lectern/text/text_tools.hpp"
#include "lectern/tts/voice.hpp"
#include "lectern/tts/wav.hpp"

namespace lectern::session {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownDocument:
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::BadParams:
    case ErrorCode::BadRequest:
    case ErrorCode::EmptyQuery:
    case ErrorCode::InvalidSpan:
    case ErrorCode::OverlappingSpans:
    case ErrorCode::UnknownVoice:
      return 400;
    case ErrorCode::InvalidTransition:
    case ErrorCode::NotPlaying:
      return 409;
    case ErrorCode::UnsupportedFormat:
      return 415;
    case ErrorCode::MalformedDocument:
    case ErrorCode::EncryptedDocument:
    case ErrorCode::UnsupportedFeature:
    case ErrorCode::UnsupportedFilter:
    case ErrorCode::CorruptStream:
    case ErrorCode::EmptyDocument:
      return 422;
    default:
      return 500;
  }
}

namespace {

json params_json(const tts::SynthesisParams& p) { return {{"rate", p.rate}, {"volume", p.volume}, {"voice", p.voice}}; }

json position_json(const Position& p) {
  return {{"sentence_index", p.sentence_index}, {"sample_offset", p.sample_offset}};
}

json session_json(const SessionSnapshot& s) {
  return {{"id", s.id},
          {"document_id", s.document_id},
          {"state", state_name(s.state)},
          {"position", position_json(s.position)},
          {"params", params_json(s.params)},
          {"sentence_count", s.sentence_count}};
}

json document_json(const DocumentRecord& d) {
  return {{"id", d.id},
          {"name", d.name},
          {"kind", doc::kind_name(d.kind)},
          {"char_count", d.char_count},
          {"sentence_count", d.sentences.size()},
          {"page_count", d.pages.size()},
          {"created_at", d.created_at}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, http_status(code), {{"code", std::string(error_name(code))}, {"message", message}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadRequest, std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
std::optional<T> field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw Error(ErrorCode::BadRequest, std::string("'") + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw Error(ErrorCode::BadRequest, std::string("'") + key + "' must be a boolean");
    } else {
      if (!it->is_string()) throw Error(ErrorCode::BadRequest, std::string("'") + key + "' must be a string");
    }
    return it->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("bad field '") + key + "': " + e.what());
  }
}

doc::SourceKind sniff_kind(const std::string& bytes) {
  if (bytes.compare(0, 5, "%PDF-") == 0) return doc::SourceKind::Pdf;
  if (ocr::looks_like_raster(bytes)) return doc::SourceKind::RasterPage;
  return doc::SourceKind::PlainText;
}

void append_le16(std::string& out, std::int16_t s) {
  auto u = static_cast<std::uint16_t>(s);
  out.push_back(static_cast<char>(u & 0xFF));
  out.push_back(static_cast<char>(u >> 8));
}

}  // namespace

struct ApiServer::Impl {
  DocumentStore& store;
  SessionManager& sessions;
  const JobLoop* jobs;
  const ocr::TemplateAtlas& atlas;
  ApiConfig config;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  Impl(DocumentStore& s, SessionManager& m, const JobLoop* j, const ocr::TemplateAtlas& a, ApiConfig c)
      : store(s), sessions(m), jobs(j), atlas(a), config(std::move(c)) {}

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const std::exception& e) {
        send_error(res, ErrorCode::IoError, e.what());
      }
    };
  }

  void routes() {
    // The library default is SO_REUSEPORT, which lets a second server share the port silently.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) { send_json(res, 200, {{"status", "ok"}}); });

    server.Post("/documents", guarded([this](const httplib::Request& req, httplib::Response& res) { add_document(req, res); }));
    server.Get("/documents", guarded([this](const httplib::Request&, httplib::Response& res) {
                 json list = json::array();
                 for (const auto& d : store.list()) list.push_back(document_json(*d));
                 send_json(res, 200, {{"documents", list}});
               }));
    server.Get(R"(/documents/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send_json(res, 200, document_json(*store.get(req.matches[1])));
               }));
    server.Get(R"(/documents/([^/]+)/text)", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 auto d = store.get(req.matches[1]);
                 send_json(res, 200, {{"id", d->id}, {"text", d->text}, {"sentences", d->sentences}});
               }));
    server.Post(R"(/documents/([^/]+)/search)", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto d = store.get(req.matches[1]);
                  json body = parse_body(req);
                  auto query = field<std::string>(body, "query").value_or("");
                  bool cs = field<bool>(body, "case_sensitive").value_or(false);
                  text::Rgb color = text::DisplayPrefs{}.highlight_color;
                  if (auto c = field<std::string>(body, "color")) color = text::parse_color(*c);
                  json spans = json::array();
                  for (const auto& s : text::search_text(d->text, query, cs, color))
                    spans.push_back({{"start", s.start}, {"end", s.end}, {"color", text::format_color(s.color)}});
                  send_json(res, 200, {{"spans", spans}});
                }));

    server.Get("/voices", guarded([](const httplib::Request&, httplib::Response& res) {
                 json list = json::array();
                 for (const auto& v : tts::list_voices()) list.push_back({{"name", v.name}, {"base_f0", v.base_f0}});
                 send_json(res, 200, {{"voices", list}, {"default", std::string(tts::kDefaultVoice)}});
               }));

    server.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  json body = parse_body(req);
                  auto doc_id = field<std::string>(body, "document_id");
                  if (!doc_id) throw Error(ErrorCode::BadRequest, "'document_id' is required");
                  tts::SynthesisParams p;
                  if (auto v = field<std::string>(body, "voice")) p.voice = *v;
                  if (auto r = field<double>(body, "rate")) p.rate = *r;
                  if (auto v = field<double>(body, "volume")) p.volume = *v;
                  auto s = sessions.create(*doc_id, p);
                  send_json(res, 201, session_json(s->snapshot()));
                }));
    server.Get("/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
                 json list = json::array();
                 for (const auto& s : sessions.list()) list.push_back(session_json(s->snapshot()));
                 send_json(res, 200, {{"sessions", list}});
               }));
    server.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send_json(res, 200, session_json(sessions.get(req.matches[1])->snapshot()));
               }));
    server.Post(R"(/sessions/([^/]+)/commands)", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto s = sessions.get(req.matches[1]);
                  json body = parse_body(req);
                  auto cmd = field<std::string>(body, "cmd");
                  if (!cmd) throw Error(ErrorCode::BadRequest, "'cmd' is required");
                  s->command(parse_command(*cmd));
                  auto snap = s->snapshot();
                  send_json(res, 200, {{"state", state_name(snap.state)}, {"position", position_json(snap.position)}});
                }));
    server.Patch(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   auto s = sessions.get(req.matches[1]);
                   json body = parse_body(req);
                   ParamUpdate u{field<double>(body, "rate"), field<double>(body, "volume")};
                   send_json(res, 200, {{"params", params_json(s->set_params(u))}});
                 }));
    server.Get(R"(/sessions/([^/]+)/audio)", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 stream_audio(req, res);
               }));

    server.Get("/jobs", guarded([this](const httplib::Request&, httplib::Response& res) {
                 json list = json::array();
                 if (jobs) {
                   for (const auto& r : jobs->records()) {
                     json j = {{"seq", r.seq}, {"path", r.path}, {"ok", r.ok}, {"message", r.message},
                               {"finished_at", r.finished_at}};
                     if (r.ok) j["document_id"] = r.document_id;
                     if (r.error) j["code"] = std::string(error_name(*r.error));
                     list.push_back(j);
                   }
                 }
                 send_json(res, 200, {{"jobs", list}});
               }));
  }

  void add_document(const httplib::Request& req, httplib::Response& res) {
    doc::DocumentSource src;
    std::optional<std::string> kind;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("file")) throw Error(ErrorCode::BadRequest, "multipart upload needs a 'file' part");
      auto f = req.get_file_value("file");
      src.bytes = f.content;
      src.name = f.filename;
      if (req.has_file("name")) src.name = req.get_file_value("name").content;
      if (req.has_file("kind")) kind = req.get_file_value("kind").content;
    } else {
      src.bytes = req.body;
      if (req.has_param("name")) src.name = req.get_param_value("name");
      if (req.has_param("kind")) kind = req.get_param_value("kind");
    }
    if (src.name.empty()) src.name = "untitled";
    if (kind) {
      src.kind = doc::parse_kind(*kind);
    } else if (std::filesystem::path(src.name).has_extension()) {
      src.kind = doc::kind_for_path(src.name);
    } else {
      src.kind = sniff_kind(src.bytes);
    }
    auto d = store.add(src.name, doc::extract_text(src, atlas));
    send_json(res, 201, document_json(*d));
  }

  void stream_audio(const httplib::Request& req, httplib::Response& res) {
    auto s = sessions.get(req.matches[1]);
    if (s->state() != PlaybackState::Playing)
      throw Error(ErrorCode::NotPlaying, std::string("session is ") + state_name(s->state()) + ", not Playing");
    bool realtime = config.realtime_audio;
    if (req.has_param("pace")) realtime = req.get_param_value("pace") != "fast";
    const std::size_t chunk = config.chunk_samples;
    const double lead = config.realtime_lead_seconds;
    auto start = std::make_shared<std::chrono::steady_clock::time_point>(std::chrono::steady_clock::now());
    auto produced = std::make_shared<std::size_t>(0);
    auto header_sent = std::make_shared<bool>(false);
    res.set_header("Cache-Control", "no-store");
    res.set_chunked_content_provider(
        "audio/wav", [s, chunk, realtime, lead, start, produced, header_sent](std::size_t, httplib::DataSink& sink) {
          if (!*header_sent) {
            *header_sent = true;
            std::string h = tts::wav_stream_header(tts::kDefaultSampleRate);
            if (!sink.write(h.data(), h.size())) return false;
          }
          if (realtime) {
            double ahead = static_cast<double>(*produced) / tts::kDefaultSampleRate -
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - *start).count();
            if (ahead > lead) std::this_thread::sleep_for(std::chrono::duration<double>(ahead - lead));
          }
          std::vector<std::int16_t> samples;
          try {
            samples = s->next_chunk(chunk);
          } catch (const Error&) {
            sink.done();
            return true;
          }
          *produced += samples.size();
          std::string bytes;
          bytes.reserve(samples.size() * 2);
          for (auto v : samples) append_le16(bytes, v);
          if (!bytes.empty() && !sink.write(bytes.data(), bytes.size())) return false;
          if (s->state() != PlaybackState::Playing) sink.done();
          return true;
        });
  }
};

ApiServer::ApiServer(DocumentStore& store, SessionManager& sessions, const JobLoop* jobs,
                     const ocr::TemplateAtlas& atlas, ApiConfig config)
    : impl_(std::make_unique<Impl>(store, sessions, jobs, atlas, std::move(config))) {
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

void ApiServer::start() {
  auto& i = *impl_;
  if (i.config.port == 0) {
    i.port = i.server.bind_to_any_port(i.config.bind_address);
    if (i.port <= 0) throw Error(ErrorCode::BindFailure, "cannot bind HTTP API on " + i.config.bind_address);
  } else {
    if (!i.server.bind_to_port(i.config.bind_address, i.config.port))
      throw Error(ErrorCode::BindFailure,
                  "cannot bind HTTP API on " + i.config.bind_address + ":" + std::to_string(i.config.port));
    i.port = i.config.port;
  }
  i.thread = std::thread([&i] { i.server.listen_after_bind(); });
  i.server.wait_until_ready();
  spdlog::info("HTTP API listening on {}:{}", i.config.bind_address, i.port);
}

void ApiServer::stop() {
  if (!impl_ || !impl_->thread.joinable()) return;
  impl_->server.stop();
  impl_->thread.join();
}

int ApiServer::port() const { return impl_->port; }

}  // namespace lectern::session
