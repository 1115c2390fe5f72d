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

#include "lectern/session/store.hpp"

#include <chrono>
#include <cstdio>
#include <mutex>
#include <random>

#include "json.hpp"

#include "lectern/error.hpp"
#include "lectern/io.hpp"
#include "lectern/text/text_tools.hpp"
#include "lectern/tts/text_frontend.hpp"
#include "lectern/utf8.hpp"

namespace lectern::session {

namespace fs = std::filesystem;
using nlohmann::json;

std::string make_id(std::string_view prefix) {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::uint64_t v;
  {
    std::lock_guard lock(mu);
    v = rng();
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(prefix) + buf;
}

std::string join_pages(const std::vector<std::string>& pages) {
  std::string out;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (i) out.push_back('\n');
    out += pages[i];
  }
  return out;
}

namespace {

std::shared_ptr<DocumentRecord> make_record(std::string id, std::string name, doc::SourceKind kind,
                                            std::vector<std::string> pages, std::int64_t created_at) {
  auto r = std::make_shared<DocumentRecord>();
  r->id = std::move(id);
  r->name = std::move(name);
  r->kind = kind;
  r->pages = std::move(pages);
  r->text = join_pages(r->pages);
  r->sentences = tts::split_sentences(r->text);
  r->created_at = created_at;
  r->char_count = 0;
  for (const auto& p : r->pages) r->char_count += utf8_length(p);
  return r;
}

fs::path doc_path(const fs::path& dir, const std::string& id) { return dir / "docs" / (id + ".txt"); }

}  // namespace

DocumentStore::DocumentStore(std::optional<fs::path> dir) : dir_(std::move(dir)) {
  if (!dir_) return;
  std::error_code ec;
  fs::create_directories(*dir_ / "docs", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create store directory " + dir_->string() + ": " + ec.message());
  fs::path manifest = *dir_ / "manifest.json";
  if (!fs::exists(manifest)) return;
  json m;
  try {
    m = json::parse(read_file(manifest));
    for (const auto& e : m.at("documents")) {
      std::string id = e.at("id");
      auto pages = text::parse_saved_text(read_file(doc_path(*dir_, id)));
      docs_.push_back(make_record(id, e.at("name"), doc::parse_kind(e.at("kind")), std::move(pages),
                                  e.at("created_at").get<std::int64_t>()));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, "bad store manifest " + manifest.string() + ": " + e.what());
  }
}

std::shared_ptr<const DocumentRecord> DocumentStore::add(const std::string& name, const doc::ExtractedDocument& d) {
  auto now = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch());
  auto rec = make_record(make_id("d-"), name, d.source_kind, d.pages, now.count());
  std::unique_lock lock(mu_);
  if (dir_) write_file_atomic(doc_path(*dir_, rec->id), text::serialize_text(rec->pages));
  docs_.push_back(rec);
  if (dir_) {
    try {
      write_manifest();
    } catch (...) {
      docs_.pop_back();
      throw;
    }
  }
  return rec;
}

void DocumentStore::write_manifest() const {
  json list = json::array();
  for (const auto& d : docs_)
    list.push_back({{"id", d->id}, {"name", d->name}, {"kind", doc::kind_name(d->kind)}, {"created_at", d->created_at},
                    {"char_count", d->char_count}});
  write_file_atomic(*dir_ / "manifest.json", json{{"documents", list}}.dump(2) + "\n");
}

std::shared_ptr<const DocumentRecord> DocumentStore::get(const std::string& id) const {
  std::shared_lock lock(mu_);
  for (const auto& d : docs_)
    if (d->id == id) return d;
  throw Error(ErrorCode::UnknownDocument, "no document with id '" + id + "'");
}

std::vector<std::shared_ptr<const DocumentRecord>> DocumentStore::list() const {
  std::shared_lock lock(mu_);
  return docs_;
}

std::size_t DocumentStore::size() const {
  std::shared_lock lock(mu_);
  return docs_.size();
}

}  // namespace lectern::session
