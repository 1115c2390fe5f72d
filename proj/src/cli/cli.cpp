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

#include "lectern/cli/cli.hpp"

#include <signal.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "lectern/doc/extract.hpp"
#include "lectern/ingest/frame.hpp"
#include "lectern/ingest/server.hpp"
#include "lectern/ingest/watcher.hpp"
#include "lectern/io.hpp"
#include "lectern/ocr/font.hpp"
#include "lectern/session/api.hpp"
#include "lectern/session/jobs.hpp"
#include "lectern/text/text_tools.hpp"
#include "lectern/tts/speech.hpp"
#include "lectern/tts/wav.hpp"

namespace lectern::cli {

std::string exit_code_table() {
  return "Exit codes:\n"
         "  0   success\n"
         "  1   internal error\n"
         "  2   input missing or unreadable (also a missing watch directory)\n"
         "  3   unsupported format\n"
         "  4   document could not be extracted (malformed, encrypted, unsupported content, empty)\n"
         "  5   bad parameters (rate, volume, voice, sizes)\n"
         "  6   atlas missing or invalid\n"
         "  7   HTTP API could not bind\n"
         "  8   ingest listener could not bind\n"
         "  9   transfer failed or rejected\n"
         "  64  usage error\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::WatchDirMissing:
      return kExitInputMissing;
    case ErrorCode::UnsupportedFormat:
      return kExitUnsupportedFormat;
    case ErrorCode::MalformedDocument:
    case ErrorCode::EncryptedDocument:
    case ErrorCode::UnsupportedFeature:
    case ErrorCode::UnsupportedFilter:
    case ErrorCode::CorruptStream:
    case ErrorCode::EmptyDocument:
    case ErrorCode::MalformedWav:
      return kExitDocument;
    case ErrorCode::BadParams:
    case ErrorCode::UnknownVoice:
    case ErrorCode::UnknownPhoneme:
    case ErrorCode::InvalidFilename:
    case ErrorCode::PayloadTooLarge:
      return kExitBadParams;
    case ErrorCode::AtlasMissing:
    case ErrorCode::EmptyGlyph:
    case ErrorCode::DuplicateCharacter:
    case ErrorCode::AmbiguousAtlas:
      return kExitAtlas;
    case ErrorCode::BadMagic:
    case ErrorCode::BadVersion:
    case ErrorCode::CrcMismatch:
    case ErrorCode::Truncated:
      return kExitTransfer;
    default:
      return kExitInternal;
  }
}

namespace {

int fail(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << " (" << error_name(e.code()) << ")\n";
  return exit_code_for(e.code());
}

ocr::TemplateAtlas load_atlas(const std::optional<std::filesystem::path>& dir) {
  if (!dir) return ocr::builtin_atlas();
  return ocr::atlas_from_font(ocr::load_atlas_dir(*dir));
}

doc::ExtractedDocument extract_path(const std::filesystem::path& path, const std::optional<std::string>& kind,
                                    const std::optional<std::filesystem::path>& atlas_dir) {
  doc::DocumentSource src;
  src.kind = kind ? doc::parse_kind(*kind) : doc::kind_for_path(path.string());
  src.name = path.filename().string();
  if (!std::filesystem::is_regular_file(path))
    throw Error(ErrorCode::IoError, "no such file: " + path.string());
  src.bytes = read_file(path);
  if (src.kind == doc::SourceKind::RasterPage) return doc::extract_text(src, load_atlas(atlas_dir));
  return doc::extract_text(src);
}

}  // namespace

int cmd_convert(const ConvertOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    auto d = extract_path(opts.input, opts.kind, opts.atlas_dir);
    auto bytes = text::save_text(d, opts.output);
    out << opts.output.string() << ": " << d.pages.size() << " page(s), " << d.char_count << " characters, "
        << bytes << " bytes\n";
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e);
  }
}

int cmd_speak(const SpeakOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.input.has_value() == opts.text.has_value()) {
    err << "error: give exactly one of an input path or --text\n";
    return kExitUsage;
  }
  try {
    tts::SynthesisParams params;
    params.rate = opts.rate;
    params.volume = opts.volume;
    if (!opts.voice.empty()) params.voice = opts.voice;
    tts::validate_params(params);
    const auto& voice = tts::find_voice(params.voice);
    std::string text;
    if (opts.text) {
      text = *opts.text;
    } else {
      auto d = extract_path(*opts.input, std::nullopt, std::nullopt);
      text = session::join_pages(d.pages);
    }
    auto plan = tts::plan_speech(text, voice, params);
    for (const auto& w : plan.warnings) spdlog::warn("{}", w);
    auto clip = tts::synthesize(plan.utterance, voice);
    write_file_atomic(opts.output, tts::encode_wav(clip));
    double seconds = static_cast<double>(clip.samples.size()) / clip.sample_rate;
    out << std::fixed << std::setprecision(3) << "duration " << seconds << " s, " << plan.sentences.size()
        << " sentence(s)\n";
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e);
  }
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.config.sizes.empty()) throw Error(ErrorCode::BadParams, "no sizes given");
    for (int s : opts.config.sizes)
      if (s <= 0 || s > 400) throw Error(ErrorCode::BadParams, "size out of range: " + std::to_string(s));
    if (opts.config.perturb < 0 || opts.config.perturb > 1)
      throw Error(ErrorCode::BadParams, "perturb must be in [0, 1]");
    ocr::BitmapFont font = opts.atlas_dir ? ocr::load_atlas_dir(*opts.atlas_dir) : ocr::builtin_font();
    std::string atlas_id = opts.atlas_dir ? opts.atlas_dir->string() : std::string("builtin");
    auto report = ocr::run_bench(opts.config, font, atlas_id);
    out << ocr::format_bench_table(report);
    if (opts.csv_path) write_file_atomic(*opts.csv_path, ocr::format_bench_csv(report));
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e);
  }
}

int cmd_atlas_export(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  try {
    ocr::save_atlas_dir(ocr::builtin_font(), dir);
    out << "wrote " << ocr::builtin_font().glyphs.size() << " glyphs to " << dir.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e);
  }
}

int cmd_voices(std::ostream& out) {
  for (const auto& v : tts::list_voices())
    out << v.name << "\t" << v.base_f0 << " Hz" << (v.name == tts::kDefaultVoice ? "\t(default)" : "") << "\n";
  return kExitOk;
}

int cmd_send(const SendOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (!std::filesystem::is_regular_file(opts.input))
      throw Error(ErrorCode::IoError, "no such file: " + opts.input.string());
    std::string name = opts.name.value_or(opts.input.filename().string());
    std::string payload = read_file(opts.input);
    ingest::validate_filename(name);
    std::string ack;
    try {
      ingest::IngestClient client(opts.host, opts.port);
      ack = client.send(name, payload);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitTransfer;
    }
    out << name << ": " << (ack.empty() ? "no reply\n" : ack);
    return ack == ingest::ack_ok() ? kExitOk : kExitTransfer;
  } catch (const Error& e) {
    return fail(err, e);
  }
}

int cmd_serve(const ServeOptions& opts, std::ostream& out, std::ostream& err, const std::atomic<bool>* stop) {
  // Block the shutdown signals before any thread starts so every thread
  // inherits the mask and only sigtimedwait below sees them.
  sigset_t mask, old;
  sigemptyset(&mask);
  sigaddset(&mask, SIGINT);
  sigaddset(&mask, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &mask, &old);
  struct Restore {
    sigset_t m;
    ~Restore() { pthread_sigmask(SIG_SETMASK, &m, nullptr); }
  } restore{old};

  try {
    auto atlas = load_atlas(opts.atlas_dir);
    std::filesystem::create_directories(opts.store_dir);
    session::DocumentStore store(opts.store_dir);
    session::SessionManager sessions(store);
    session::JobLoop jobs(store, atlas);

    ingest::WatchOptions wopts;
    wopts.force_polling = opts.force_polling;
    ingest::DirectoryWatcher watcher(opts.watch_dir, [&](const ingest::WatchEvent& ev) { jobs.enqueue(ev.path); },
                                     wopts);

    session::ApiConfig api_cfg;
    api_cfg.bind_address = opts.http_bind;
    api_cfg.port = opts.http_port;
    session::ApiServer api(store, sessions, &jobs, atlas, api_cfg);
    try {
      api.start();
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitHttpBind;
    }

    ingest::ServerConfig ing_cfg;
    ing_cfg.bind_address = opts.ingest_bind;
    ing_cfg.port = opts.ingest_port;
    ing_cfg.watch_dir = opts.watch_dir;
    ingest::IngestServer ingest_server(ing_cfg);
    try {
      ingest_server.start();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BindFailure) throw;
      api.stop();
      err << "error: " << e.what() << "\n";
      return kExitIngestBind;
    }

    jobs.start();
    watcher.start();
    out << "listening http=" << api.port() << " ingest=" << ingest_server.port() << std::endl;

    timespec tick{0, 200'000'000};
    while (!(stop && stop->load())) {
      int sig = sigtimedwait(&mask, nullptr, &tick);
      if (sig == SIGINT || sig == SIGTERM) {
        spdlog::info("signal {} received, shutting down", sig);
        break;
      }
    }

    // Stop producers first, then let queued jobs settle.
    ingest_server.stop();
    watcher.stop();
    jobs.wait_idle(std::chrono::seconds(5));
    jobs.stop();
    api.stop();
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, e);
  }
}

namespace {

struct Formatter : CLI::Formatter {
  std::string make_footer(const CLI::App* app) const override {
    std::string f = CLI::Formatter::make_footer(app);
    return app->get_parent() ? f : f + "\n" + exit_code_table();
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lectern: document reading pipeline (text extraction, recognition, speech)", "lectern"};
  app.formatter(std::make_shared<Formatter>());
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  ConvertOptions conv;
  auto* c_convert = app.add_subcommand("convert", "Extract or recognize text and save it");
  c_convert->add_option("input", conv.input, "Input .pdf, .txt, .pgm or .png")->required();
  c_convert->add_option("output", conv.output, "Output text file")->required();
  c_convert->add_option("--kind", conv.kind, "Override detection: pdf, plain_text, raster_page");
  c_convert->add_option("--atlas", conv.atlas_dir, "Template atlas directory");

  SpeakOptions speak;
  std::string speak_input;
  auto* c_speak = app.add_subcommand("speak", "Synthesize speech to a WAV file");
  auto* o_in = c_speak->add_option("input", speak_input, "Input document");
  auto* o_text = c_speak->add_option("--text", speak.text, "Text to speak");
  o_in->excludes(o_text);
  c_speak->add_option("-o,--output", speak.output, "Output WAV file")->required();
  c_speak->add_option("--voice", speak.voice, "Voice name");
  c_speak->add_option("--rate", speak.rate, "Speaking rate, 0.5 to 3.0");
  c_speak->add_option("--volume", speak.volume, "Volume, 0.0 to 1.0");

  BenchOptions bench;
  std::string bench_csv = "bench.csv";
  auto* c_bench = app.add_subcommand("bench", "Recognition accuracy by font size");
  c_bench->add_option("--sizes", bench.config.sizes, "Point sizes")->delimiter(',');
  c_bench->add_option("--chars", bench.config.chars, "Characters per size");
  c_bench->add_option("--seed", bench.config.seed, "Corpus seed");
  c_bench->add_option("--atlas", bench.atlas_dir, "Template atlas directory");
  c_bench->add_option("--perturb", bench.config.perturb, "Fraction of glyph cells flipped");
  c_bench->add_option("--threshold", bench.config.threshold, "Accuracy marked as passing");
  c_bench->add_option("--csv", bench_csv, "CSV output path, empty to skip");

  auto* c_atlas = app.add_subcommand("atlas", "Template atlas tools");
  c_atlas->require_subcommand(1);
  std::filesystem::path atlas_dir;
  auto* c_export = c_atlas->add_subcommand("export", "Write the bundled atlas as PGM files");
  c_export->add_option("dir", atlas_dir, "Destination directory")->required();

  auto* c_voices = app.add_subcommand("voices", "List voices");

  SendOptions send;
  auto* c_send = app.add_subcommand("send", "Send a file to an ingest listener");
  c_send->add_option("input", send.input, "File to send")->required();
  c_send->add_option("--name", send.name, "Stored file name");
  c_send->add_option("--host", send.host, "Listener host");
  c_send->add_option("--port", send.port, "Listener port")->envname("LECTERN_INGEST_PORT");

  ServeOptions serve;
  auto* c_serve = app.add_subcommand("serve", "Run the ingest listener, job loop and HTTP API");
  c_serve->add_option("--http-port", serve.http_port, "HTTP API port")->envname("LECTERN_HTTP_PORT");
  c_serve->add_option("--http-bind", serve.http_bind, "HTTP API bind address");
  c_serve->add_option("--ingest-port", serve.ingest_port, "Ingest port")->envname("LECTERN_INGEST_PORT");
  c_serve->add_option("--ingest-bind", serve.ingest_bind, "Ingest bind address");
  c_serve->add_option("--watch-dir", serve.watch_dir, "Directory watched for new files")->envname("LECTERN_WATCH_DIR");
  c_serve->add_option("--store-dir", serve.store_dir, "Document store directory")->envname("LECTERN_STORE_DIR");
  c_serve->add_option("--atlas", serve.atlas_dir, "Template atlas directory");
  c_serve->add_flag("--poll", serve.force_polling, "Poll the watch directory instead of using inotify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForAllHelp*>(&e) ? app.help("", CLI::AppFormatMode::All) : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  // Logs go to stderr; stdout carries command output.
  if (!spdlog::get("lectern")) spdlog::set_default_logger(spdlog::stderr_color_mt("lectern"));
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (c_convert->parsed()) return cmd_convert(conv, out, err);
    if (c_speak->parsed()) {
      if (!speak_input.empty()) speak.input = speak_input;
      return cmd_speak(speak, out, err);
    }
    if (c_bench->parsed()) {
      if (!bench_csv.empty()) bench.csv_path = bench_csv;
      return cmd_bench(bench, out, err);
    }
    if (c_export->parsed()) return cmd_atlas_export(atlas_dir, out, err);
    if (c_voices->parsed()) return cmd_voices(out);
    if (c_send->parsed()) return cmd_send(send, out, err);
    if (c_serve->parsed()) return cmd_serve(serve, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace lectern::cli
