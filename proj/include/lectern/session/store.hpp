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

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "lectern/doc/document.hpp"

namespace lectern::session {

struct DocumentRecord {
  std::string id;
  std::string name;
  doc::SourceKind kind = doc::SourceKind::PlainText;
  std::vector<std::string> pages;
  std::string text;                     // pages joined by '\n'
  std::vector<std::string> sentences;  // split_sentences(text)
  std::int64_t created_at = 0;          // Unix milliseconds
  std::size_t char_count = 0;
};

// Random 64-bit token, hex encoded after the prefix.
std::string make_id(std::string_view prefix);

std::string join_pages(const std::vector<std::string>& pages);

// Documents persist as <dir>/docs/<id>.txt plus <dir>/manifest.json. Without
// a directory the store lives in memory. One writer, many readers.
class DocumentStore {
 public:
  // Loads an existing manifest. Throws IoError, MalformedDocument (bad manifest).
  explicit DocumentStore(std::optional<std::filesystem::path> dir = std::nullopt);

  std::shared_ptr<const DocumentRecord> add(const std::string& name, const doc::ExtractedDocument& doc);
  // Throws UnknownDocument.
  std::shared_ptr<const DocumentRecord> get(const std::string& id) const;
  std::vector<std::shared_ptr<const DocumentRecord>> list() const;
  std::size_t size() const;
  const std::optional<std::filesystem::path>& dir() const { return dir_; }

 private:
  void write_manifest() const;

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mu_;
  std::vector<std::shared_ptr<const DocumentRecord>> docs_;
};

}  // namespace lectern::session
