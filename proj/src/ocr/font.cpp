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

#include "lectern/ocr/font.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lectern/embedded_data.hpp"
#include "lectern/error.hpp"
#include "lectern/io.hpp"
#include "lectern/utf8.hpp"

namespace lectern::ocr {

const BitmapGlyph* BitmapFont::find(char32_t ch) const {
  for (const auto& g : glyphs)
    if (g.ch == ch) return &g;
  return nullptr;
}

std::u32string BitmapFont::charset() const {
  std::u32string out;
  for (const auto& g : glyphs) out.push_back(g.ch);
  return out;
}

namespace {

[[noreturn]] void bad_font(int line, const std::string& what) {
  throw Error(ErrorCode::BadParams, "font line " + std::to_string(line) + ": " + what);
}

void check_glyph(const BitmapGlyph& g, int cell_height, int line) {
  if (g.height == 0) bad_font(line, "glyph without rows");
  if (g.top < 0 || g.top + g.height > cell_height) bad_font(line, "glyph exceeds the cell");
  bool first_row = false, last_row = false, first_col = false, last_col = false;
  for (int x = 0; x < g.width; ++x) {
    first_row |= g.at(x, 0);
    last_row |= g.at(x, g.height - 1);
  }
  for (int y = 0; y < g.height; ++y) {
    first_col |= g.at(0, y);
    last_col |= g.at(g.width - 1, y);
  }
  if (!(first_row && last_row && first_col && last_col)) bad_font(line, "glyph bitmap is not tight");
}

// Tight crop of the ink in a binarized sample page.
BitmapGlyph glyph_from_page(char32_t ch, const RasterPage& page) {
  auto bin = binarize_otsu(page).page;
  int x0 = bin.width, x1 = -1, y0 = bin.height, y1 = -1;
  for (int y = 0; y < bin.height; ++y)
    for (int x = 0; x < bin.width; ++x)
      if (bin.at(x, y)) {
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
      }
  if (x1 < 0) throw Error(ErrorCode::EmptyGlyph, "atlas glyph image has no ink");
  BitmapGlyph g;
  g.ch = ch;
  g.top = y0;
  g.width = x1 - x0 + 1;
  g.height = y1 - y0 + 1;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) g.ink.push_back(bin.at(x, y) ? 1 : 0);
  return g;
}

}  // namespace

BitmapFont parse_font(std::string_view text) {
  BitmapFont font;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0, header_line = 0;
  BitmapGlyph* cur = nullptr;
  auto finish = [&] {
    if (cur) check_glyph(*cur, font.cell_height, header_line);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    if (line[0] == ':') {
      finish();
      auto rest = utf8_decode(line.substr(1));
      // ": <char> <top>"
      if (rest.size() < 4 || rest[0] != U' ' || rest[2] != U' ') bad_font(lineno, "bad glyph header");
      BitmapGlyph g;
      g.ch = rest[1];
      try {
        g.top = std::stoi(utf8_encode(rest.substr(3)));
      } catch (const std::exception&) {
        bad_font(lineno, "bad top row");
      }
      if (font.find(g.ch)) bad_font(lineno, "duplicate glyph");
      font.glyphs.push_back(std::move(g));
      cur = &font.glyphs.back();
      header_line = lineno;
      continue;
    }
    if (!cur) bad_font(lineno, "row before any glyph header");
    if (line.find_first_not_of(".#") != std::string::npos) bad_font(lineno, "rows use only '.' and '#'");
    int w = static_cast<int>(line.size());
    if (cur->height == 0) cur->width = w;
    if (w != cur->width) bad_font(lineno, "ragged glyph rows");
    for (char c : line) cur->ink.push_back(c == '#' ? 1 : 0);
    ++cur->height;
  }
  finish();
  if (font.glyphs.empty()) throw Error(ErrorCode::BadParams, "font has no glyphs");
  return font;
}

const BitmapFont& builtin_font() {
  static const BitmapFont font = parse_font(embedded_file("font/lectern-8pt.font"));
  return font;
}

RasterPage glyph_cell_page(const BitmapGlyph& g, int cell_height) {
  RasterPage page(g.width, cell_height, 255);
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      if (g.at(x, y)) page.at(x, g.top + y) = 0;
  return page;
}

TemplateAtlas atlas_from_font(const BitmapFont& font) {
  std::vector<LabeledSamples> labeled;
  for (const auto& g : font.glyphs) labeled.push_back({g.ch, {glyph_cell_page(g, font.cell_height)}});
  return build_atlas(labeled);
}

const TemplateAtlas& builtin_atlas() {
  static const TemplateAtlas atlas = atlas_from_font(builtin_font());
  return atlas;
}

void save_atlas_dir(const BitmapFont& font, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  std::string manifest = "# codepoint file\n";
  for (const auto& g : font.glyphs) {
    char name[32], cp[16];
    std::snprintf(name, sizeof name, "glyph_%04X.pgm", static_cast<unsigned>(g.ch));
    std::snprintf(cp, sizeof cp, "U+%04X", static_cast<unsigned>(g.ch));
    save_pgm(glyph_cell_page(g, font.cell_height), dir / name);
    manifest += std::string(cp) + " " + name + "\n";
  }
  write_file_atomic(dir / "manifest.txt", manifest);
}

BitmapFont load_atlas_dir(const std::filesystem::path& dir) {
  auto manifest_path = dir / "manifest.txt";
  if (!std::filesystem::is_directory(dir) || !std::filesystem::is_regular_file(manifest_path))
    throw Error(ErrorCode::AtlasMissing, "no atlas manifest at " + manifest_path.string());
  std::istringstream in(read_file(manifest_path));
  BitmapFont font;
  font.cell_height = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cp, file;
    row >> cp >> file;
    unsigned code = 0;
    if (cp.size() < 3 || cp.compare(0, 2, "U+") != 0 || std::sscanf(cp.c_str() + 2, "%x", &code) != 1 ||
        file.empty() || file.find('/') != std::string::npos)
      throw Error(ErrorCode::AtlasMissing, "bad manifest line " + std::to_string(lineno));
    auto page = load_raster(dir / file);
    if (font.cell_height == 0) font.cell_height = page.height;
    if (page.height != font.cell_height)
      throw Error(ErrorCode::BadParams, "glyph " + file + " has a different cell height");
    if (font.find(static_cast<char32_t>(code)))
      throw Error(ErrorCode::DuplicateCharacter, "manifest lists " + cp + " twice");
    font.glyphs.push_back(glyph_from_page(static_cast<char32_t>(code), page));
  }
  if (font.glyphs.empty()) throw Error(ErrorCode::AtlasMissing, "atlas manifest lists no glyphs");
  return font;
}

}  // namespace lectern::ocr
