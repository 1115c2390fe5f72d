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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lectern::doc {

// Low-level writer with classic xref tables. Object bodies are raw PDF syntax.
class PdfBuilder {
 public:
  explicit PdfBuilder(std::string version = "1.4");
  // Appends an incremental update to an existing file written by a builder.
  static PdfBuilder incremental(std::string base);

  std::uint32_t reserve();
  void set(std::uint32_t num, std::string body);
  // Adds /Length and, when compressing, /Filter /FlateDecode.
  void set_stream(std::uint32_t num, const std::string& dict_entries, std::string_view data, bool compress = false);

  // extra_trailer is spliced into the trailer dictionary.
  std::string finish(std::uint32_t root, const std::string& extra_trailer = "") const;

 private:
  std::string base_;
  std::uint64_t prev_xref_ = 0;
  bool has_prev_ = false;
  std::uint32_t next_num_ = 1;
  std::map<std::uint32_t, std::string> objects_;
};

// "(...)" with ( ) \ escaped and bytes outside printable ASCII as octal.
std::string pdf_literal(std::string_view bytes);
std::string zlib_compress(std::string_view data);

struct TextPdfOptions {
  bool compress = false;
  int font_size = 12;
  int leading = 14;
};

// One Tj per line segment and T* per '\n'; '\f' starts a new page. Helvetica
// with WinAnsiEncoding; characters outside it become '?'.
std::string write_text_pdf(std::string_view utf8_text, const TextPdfOptions& options = {});
std::string write_pages_pdf(const std::vector<std::string>& page_contents, bool compress = false);

}  // namespace lectern::doc
