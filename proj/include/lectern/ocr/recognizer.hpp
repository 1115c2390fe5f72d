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

#include <bitset>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lectern/ocr/raster.hpp"

namespace lectern::ocr {

inline constexpr int kGridSize = 16;
inline constexpr double kSpaceGapFactor = 0.35;
inline constexpr double kMergeOverlap = 0.5;

struct BinaryPage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> ink;  // 1 = ink

  bool at(int x, int y) const { return ink[static_cast<std::size_t>(y) * width + x] != 0; }
  std::size_t ink_count() const;
  bool operator==(const BinaryPage&) const = default;
};

struct Binarized {
  BinaryPage page;
  int threshold = 0;
};

// Pixel is ink iff value < threshold.
Binarized binarize_otsu(const RasterPage& page);

struct LineRange {
  int top = 0;
  int bottom = 0;  // inclusive
  bool operator==(const LineRange&) const = default;
};

std::vector<LineRange> segment_lines(const BinaryPage& page);

struct Box {
  int x = 0, y = 0, w = 0, h = 0;
  bool operator==(const Box&) const = default;
};

struct GlyphBox {
  Box box;
  bool space_before = false;
  bool operator==(const GlyphBox&) const = default;
};

struct SegmentationParams {
  double space_gap_factor = kSpaceGapFactor;
  double merge_overlap = kMergeOverlap;
};

std::vector<GlyphBox> segment_glyphs(const BinaryPage& page, const LineRange& line,
                                     const SegmentationParams& params = {});

// Cell (row, col) lives at bit row * 16 + col.
using Grid16 = std::bitset<kGridSize * kGridSize>;

// Throws EmptyGlyph when the box holds no ink.
Grid16 normalize_glyph(const BinaryPage& page, const Box& box);

struct GlyphMetrics {
  int width = 0;
  int height = 0;
};

struct TemplateAtlas {
  std::u32string charset;
  std::vector<Grid16> templates;
  std::vector<GlyphMetrics> metrics;
};

struct Match {
  char32_t ch = 0;
  double confidence = 0;
  int distance = 0;
};

Match match_glyph(const Grid16& grid, const TemplateAtlas& atlas);

struct RecognizedGlyph {
  char32_t ch = 0;
  double confidence = 0;
  Box box;
  bool space_before = false;
};

struct RecognizedLine {
  std::vector<RecognizedGlyph> glyphs;
  std::string text() const;  // UTF-8 with spaces
};

struct RecognizedText {
  std::vector<RecognizedLine> lines;
  std::string text() const;  // lines joined by '\n'
};

RecognizedText recognize_page(const RasterPage& page, const TemplateAtlas& atlas,
                              const SegmentationParams& params = {});

struct LabeledSamples {
  char32_t ch = 0;
  std::vector<RasterPage> samples;
};

// Throws DuplicateCharacter, AmbiguousAtlas, EmptyGlyph, BadParams (no samples).
TemplateAtlas build_atlas(const std::vector<LabeledSamples>& labeled);

}  // namespace lectern::ocr
