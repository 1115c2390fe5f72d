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

#include "lectern/doc/document.hpp"

#include <algorithm>
#include <filesystem>

#include "lectern/error.hpp"

namespace lectern::doc {

const char* kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::Pdf: return "pdf";
    case SourceKind::PlainText: return "plain_text";
    case SourceKind::RasterPage: return "raster_page";
  }
  return "unknown";
}

SourceKind parse_kind(const std::string& name) {
  if (name == "pdf") return SourceKind::Pdf;
  if (name == "plain_text" || name == "text" || name == "txt") return SourceKind::PlainText;
  if (name == "raster_page" || name == "raster") return SourceKind::RasterPage;
  throw Error(ErrorCode::BadParams, "unknown document kind '" + name + "'");
}

SourceKind kind_for_path(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".pdf") return SourceKind::Pdf;
  if (ext == ".txt") return SourceKind::PlainText;
  if (ext == ".pgm" || ext == ".png") return SourceKind::RasterPage;
  throw Error(ErrorCode::UnsupportedFormat, "unsupported file extension for '" + path + "'");
}

}  // namespace lectern::doc
