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
#include <random>
#include <string>
#include <vector>

#include "lectern/ocr/font.hpp"
#include "lectern/ocr/recognizer.hpp"

namespace lectern::ocr {

// Exact rational magnification of the training-size font.
struct Scale {
  long num = 1;
  long den = 1;
};

// The bundled font is drawn at the 8 pt equivalent, so scale = pt / 8.
inline constexpr int kTrainingPoints = 8;
Scale scale_for_points(int points);

inline constexpr int kSpaceAdvance = 4;
inline constexpr int kGlyphGap = 1;
inline constexpr int kLineGap = 4;
inline constexpr int kMargin = 2;

// Glyph-by-glyph area resampling: destination pixel X covers [X*den, (X+1)*den)
// and source pixel j covers [j*num, (j+1)*num); gray = round(255 * (1 - coverage)).
// perturb flips that fraction of each glyph's cells before scaling.
RasterPage render_text(const std::vector<std::u32string>& lines, const BitmapFont& font, Scale scale,
                       double perturb = 0.0, std::mt19937_64* rng = nullptr);

// Random words of 1..7 charset characters, lines of about 40 characters,
// until at least min_chars non-space characters.
std::vector<std::u32string> bench_corpus(const std::u32string& charset, std::size_t min_chars,
                                         std::uint64_t seed);

std::size_t levenshtein(const std::u32string& a, const std::u32string& b);

struct BenchConfig {
  std::vector<int> sizes{8, 24, 36, 48, 72};
  std::size_t chars = 1000;
  std::uint64_t seed = 1;
  double perturb = 0.0;
  double threshold = 0.99;
  SegmentationParams segmentation;
};

struct BenchRow {
  int size_pt = 0;
  int glyph_height_px = 0;  // cap height at this size
  std::size_t chars_total = 0;
  std::size_t chars_correct = 0;
  double accuracy = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::uint64_t seed = 0;
  std::string atlas_id;
  double threshold = 0.99;
};

BenchReport run_bench(const BenchConfig& config, const BitmapFont& font, const std::string& atlas_id);

std::string format_bench_table(const BenchReport& report);
// size_pt,chars,correct,accuracy
std::string format_bench_csv(const BenchReport& report);

}  // namespace lectern::ocr
