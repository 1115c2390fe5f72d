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

#include "lectern/ocr/raster.hpp"
#include "lectern/ocr/recognizer.hpp"

namespace lectern::ocr {

// Bitmap font at training size. Glyph bitmaps are tight: the first and last
// row and column each hold ink.
struct BitmapGlyph {
  char32_t ch = 0;
  int top = 0;  // row offset inside the cell
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> ink;  // row-major, 1 = ink

  bool at(int x, int y) const { return ink[static_cast<std::size_t>(y) * width + x] != 0; }
};

struct BitmapFont {
  int cell_height = 12;
  std::vector<BitmapGlyph> glyphs;  // charset order

  const BitmapGlyph* find(char32_t ch) const;
  std::u32string charset() const;
};

// "% comment", ": <char> <top>" headers, then rows of '.' and '#'.
// Throws BadParams.
BitmapFont parse_font(std::string_view text);
const BitmapFont& builtin_font();

// The glyph drawn into a full-height cell, black on white, tight horizontally.
RasterPage glyph_cell_page(const BitmapGlyph& glyph, int cell_height);

TemplateAtlas atlas_from_font(const BitmapFont& font);
const TemplateAtlas& builtin_atlas();

// Directory of glyph PGMs plus manifest.txt lines "U+0041 glyph_0041.pgm".
void save_atlas_dir(const BitmapFont& font, const std::filesystem::path& dir);
// Throws AtlasMissing when the directory or manifest is absent.
BitmapFont load_atlas_dir(const std::filesystem::path& dir);

}  // namespace lectern::ocr
