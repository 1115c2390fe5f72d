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

#include "lectern/text/text_tools.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>

#include "lectern/error.hpp"
#include "lectern/utf8.hpp"

namespace lectern::text {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

char32_t fold(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  // Latin-1 capitals except the multiplication sign.
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

}  // namespace

Rgb parse_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#')
    throw Error(ErrorCode::BadParams, "color must be #rrggbb");
  std::uint8_t v[3];
  for (int i = 0; i < 3; ++i) {
    int hi = hex_digit(s[1 + 2 * i]), lo = hex_digit(s[2 + 2 * i]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::BadParams, "color must be #rrggbb");
    v[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {v[0], v[1], v[2]};
}

std::string format_color(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::vector<HighlightSpan> search_text(std::string_view text, std::string_view query,
                                       bool case_sensitive, Rgb color) {
  if (query.empty()) throw Error(ErrorCode::EmptyQuery, "query is empty");
  std::u32string hay = utf8_decode(text);
  std::u32string needle = utf8_decode(query);
  if (!case_sensitive) {
    std::transform(hay.begin(), hay.end(), hay.begin(), fold);
    std::transform(needle.begin(), needle.end(), needle.begin(), fold);
  }
  std::vector<HighlightSpan> spans;
  std::boyer_moore_horspool_searcher searcher(needle.begin(), needle.end());
  auto it = hay.begin();
  while (it != hay.end()) {
    auto hit = std::search(it, hay.end(), searcher);
    if (hit == hay.end()) break;
    std::size_t start = static_cast<std::size_t>(hit - hay.begin());
    spans.push_back({start, start + needle.size(), color});
    it = hit + static_cast<std::ptrdiff_t>(needle.size());
  }
  return spans;
}

std::vector<Segment> apply_highlights(std::string_view text, std::vector<HighlightSpan> spans) {
  std::u32string cps = utf8_decode(text);
  std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start >= s.end || s.end > cps.size())
      throw Error(ErrorCode::InvalidSpan, "span [" + std::to_string(s.start) + "," +
                                              std::to_string(s.end) + ") out of range");
    if (i > 0 && spans[i - 1].end > s.start)
      throw Error(ErrorCode::OverlappingSpans, "spans overlap at " + std::to_string(s.start));
  }
  std::vector<Segment> out;
  std::size_t pos = 0;
  for (const auto& s : spans) {
    if (s.start > pos) out.push_back({utf8_encode(cps.substr(pos, s.start - pos)), false, {}});
    out.push_back({utf8_encode(cps.substr(s.start, s.end - s.start)), true, s.color});
    pos = s.end;
  }
  if (pos < cps.size()) out.push_back({utf8_encode(cps.substr(pos)), false, {}});
  return out;
}

std::string serialize_text(const std::vector<std::string>& pages) {
  std::string out;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (i) out.push_back('\f');
    out += pages[i];
  }
  out.push_back('\n');
  return out;
}

std::vector<std::string> parse_saved_text(std::string_view bytes) {
  if (!bytes.empty() && bytes.back() == '\n') bytes.remove_suffix(1);
  std::vector<std::string> pages;
  std::size_t start = 0;
  for (;;) {
    std::size_t ff = bytes.find('\f', start);
    if (ff == std::string_view::npos) {
      pages.emplace_back(bytes.substr(start));
      break;
    }
    pages.emplace_back(bytes.substr(start, ff - start));
    start = ff + 1;
  }
  return pages;
}

std::size_t save_text(const doc::ExtractedDocument& doc, const std::filesystem::path& path) {
  std::string bytes = serialize_text(doc.pages);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  return bytes.size();
}

std::vector<std::string> load_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_saved_text(bytes);
}

}  // namespace lectern::text
