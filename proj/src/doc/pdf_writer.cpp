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

#include "lectern/doc/pdf_writer.hpp"

#include <zlib.h>

#include <cstdio>

#include "encodings.hpp"
#include "lectern/error.hpp"
#include "lectern/utf8.hpp"
#include "pdf_lexer.hpp"

namespace lectern::doc {

PdfBuilder::PdfBuilder(std::string version) : base_("%PDF-" + version + "\n%\xE2\xE3\xCF\xD3\n") {}

PdfBuilder PdfBuilder::incremental(std::string base) {
  PdfBuilder b;
  std::size_t sx = base.rfind("startxref");
  std::size_t sz = base.rfind("/Size");
  if (sx == std::string::npos || sz == std::string::npos)
    throw Error(ErrorCode::MalformedDocument, "base file lacks startxref or /Size");
  Lexer a(base, sx + 9), c(base, sz + 5);
  Token off = a.next(), size = c.next();
  if (off.kind != TokKind::Number || size.kind != TokKind::Number)
    throw Error(ErrorCode::MalformedDocument, "base file trailer unreadable");
  b.prev_xref_ = static_cast<std::uint64_t>(off.number);
  b.has_prev_ = true;
  b.next_num_ = static_cast<std::uint32_t>(size.number);
  if (!base.empty() && base.back() != '\n') base.push_back('\n');
  b.base_ = std::move(base);
  return b;
}

std::uint32_t PdfBuilder::reserve() { return next_num_++; }

void PdfBuilder::set(std::uint32_t num, std::string body) {
  if (num >= next_num_) next_num_ = num + 1;
  objects_[num] = std::move(body);
}

void PdfBuilder::set_stream(std::uint32_t num, const std::string& dict_entries, std::string_view data, bool compress) {
  std::string payload = compress ? zlib_compress(data) : std::string(data);
  std::string body = "<< " + dict_entries + (dict_entries.empty() ? "" : " ") + "/Length " +
                     std::to_string(payload.size()) + (compress ? " /Filter /FlateDecode" : "") + " >>\nstream\n" +
                     payload + "\nendstream";
  set(num, std::move(body));
}

std::string PdfBuilder::finish(std::uint32_t root, const std::string& extra_trailer) const {
  std::string out = base_;
  std::map<std::uint32_t, std::size_t> offsets;
  for (const auto& [num, body] : objects_) {
    offsets[num] = out.size();
    out += std::to_string(num) + " 0 obj\n" + body + "\nendobj\n";
  }
  std::size_t xref = out.size();
  out += "xref\n";
  char line[32];
  auto entry = [&](std::size_t off, unsigned gen, char type) {
    std::snprintf(line, sizeof line, "%010zu %05u %c\r\n", off, gen, type);
    out += line;
  };
  if (!has_prev_) {
    out += "0 " + std::to_string(next_num_) + "\n";
    entry(0, 65535, 'f');
    for (std::uint32_t n = 1; n < next_num_; ++n) {
      auto it = offsets.find(n);
      if (it == offsets.end()) {
        entry(0, 0, 'f');
      } else {
        entry(it->second, 0, 'n');
      }
    }
  } else {
    // Free-list head first, then one subsection per run of consecutive numbers.
    out += "0 1\n";
    entry(0, 65535, 'f');
    auto it = offsets.begin();
    while (it != offsets.end()) {
      auto end = it;
      std::uint32_t count = 0;
      while (end != offsets.end() && end->first == it->first + count) ++end, ++count;
      out += std::to_string(it->first) + " " + std::to_string(count) + "\n";
      for (; it != end; ++it) entry(it->second, 0, 'n');
    }
  }
  out += "trailer\n<< /Size " + std::to_string(next_num_) + " /Root " + std::to_string(root) + " 0 R";
  if (has_prev_) out += " /Prev " + std::to_string(prev_xref_);
  if (!extra_trailer.empty()) out += " " + extra_trailer;
  out += " >>\nstartxref\n" + std::to_string(xref) + "\n%%EOF\n";
  return out;
}

std::string pdf_literal(std::string_view bytes) {
  std::string out = "(";
  for (unsigned char c : bytes) {
    if (c == '(' || c == ')' || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c >= 0x20 && c < 0x7F) {
      out.push_back(static_cast<char>(c));
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\%03o", c);
      out += buf;
    }
  }
  out.push_back(')');
  return out;
}

std::string zlib_compress(std::string_view data) {
  uLongf cap = compressBound(static_cast<uLong>(data.size()));
  std::string out(cap, '\0');
  if (compress2(reinterpret_cast<Bytef*>(out.data()), &cap, reinterpret_cast<const Bytef*>(data.data()),
                static_cast<uLong>(data.size()), Z_BEST_COMPRESSION) != Z_OK)
    throw Error(ErrorCode::CorruptStream, "deflate failed");
  out.resize(cap);
  return out;
}

std::string write_pages_pdf(const std::vector<std::string>& page_contents, bool compress) {
  PdfBuilder b;
  std::uint32_t catalog = b.reserve(), pages = b.reserve(), font = b.reserve();
  std::string kids;
  for (const auto& content : page_contents) {
    std::uint32_t page = b.reserve(), stream = b.reserve();
    b.set(page, "<< /Type /Page /Parent " + std::to_string(pages) + " 0 R /MediaBox [0 0 612 792] /Contents " +
                    std::to_string(stream) + " 0 R /Resources << /Font << /F1 " + std::to_string(font) + " 0 R >> >> >>");
    b.set_stream(stream, "", content, compress);
    kids += (kids.empty() ? "" : " ") + std::to_string(page) + " 0 R";
  }
  b.set(catalog, "<< /Type /Catalog /Pages " + std::to_string(pages) + " 0 R >>");
  b.set(pages, "<< /Type /Pages /Kids [" + kids + "] /Count " + std::to_string(page_contents.size()) + " >>");
  b.set(font, "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>");
  return b.finish(catalog);
}

std::string write_text_pdf(std::string_view utf8_text, const TextPdfOptions& options) {
  std::vector<std::string> contents;
  std::string cur;
  std::string segment;
  auto begin_page = [&] {
    cur = "BT /F1 " + std::to_string(options.font_size) + " Tf " + std::to_string(options.leading) +
          " TL 72 720 Td\n";
  };
  auto flush_segment = [&] {
    if (!segment.empty()) cur += pdf_literal(segment) + " Tj\n";
    segment.clear();
  };
  begin_page();
  for (char32_t c : utf8_decode(utf8_text)) {
    if (c == U'\n') {
      flush_segment();
      cur += "T*\n";
    } else if (c == U'\f') {
      flush_segment();
      contents.push_back(cur + "ET\n");
      begin_page();
    } else {
      int code = winansi_code(c);
      segment.push_back(static_cast<char>(code < 0 ? '?' : code));
    }
  }
  flush_segment();
  contents.push_back(cur + "ET\n");
  return write_pages_pdf(contents, options.compress);
}

}  // namespace lectern::doc
