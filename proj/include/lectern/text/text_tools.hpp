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
#include <string>
#include <string_view>
#include <vector>

#include "lectern/doc/document.hpp"

namespace lectern::text {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// "#rrggbb" (case-insensitive). Throws BadParams.
Rgb parse_color(std::string_view s);
std::string format_color(Rgb c);

struct DisplayPrefs {
  Rgb text_color{0, 0, 0};
  Rgb highlight_color{255, 255, 0};
};

// Offsets count Unicode scalar values; end is exclusive.
struct HighlightSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  Rgb color;
  bool operator==(const HighlightSpan&) const = default;
};

// Leftmost non-overlapping occurrences. Case folding covers ASCII and Latin-1.
std::vector<HighlightSpan> search_text(std::string_view text, std::string_view query,
                                       bool case_sensitive, Rgb color);

struct Segment {
  std::string text;
  bool highlighted = false;
  Rgb color;
  bool operator==(const Segment&) const = default;
};

std::vector<Segment> apply_highlights(std::string_view text, std::vector<HighlightSpan> spans);

inline constexpr char32_t kPageSeparator = U'\f';

// Pages joined by form feed, one trailing newline. Returns bytes written.
std::size_t save_text(const doc::ExtractedDocument& doc, const std::filesystem::path& path);
std::string serialize_text(const std::vector<std::string>& pages);
std::vector<std::string> parse_saved_text(std::string_view bytes);
std::vector<std::string> load_text(const std::filesystem::path& path);

}  // namespace lectern::text
