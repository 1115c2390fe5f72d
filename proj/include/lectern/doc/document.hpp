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

#include <cstddef>
#include <string>
#include <vector>

namespace lectern::doc {

enum class SourceKind { Pdf, PlainText, RasterPage };

const char* kind_name(SourceKind kind);
// Accepts "pdf", "plain_text"/"text"/"txt", "raster_page"/"raster". Throws BadParams.
SourceKind parse_kind(const std::string& name);
// By file extension; throws UnsupportedFormat.
SourceKind kind_for_path(const std::string& path);

struct DocumentSource {
  SourceKind kind = SourceKind::PlainText;
  std::string bytes;
  std::string name;
};

struct ExtractedDocument {
  std::vector<std::string> pages;  // UTF-8
  SourceKind source_kind = SourceKind::PlainText;
  std::size_t char_count = 0;      // code points across all pages
};

}  // namespace lectern::doc
