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

#include "lectern/ocr/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "lectern/error.hpp"
#include "lectern/utf8.hpp"

namespace lectern::ocr {

Scale scale_for_points(int points) {
  if (points <= 0) throw Error(ErrorCode::BadParams, "font size must be positive");
  long g = std::gcd(static_cast<long>(points), static_cast<long>(kTrainingPoints));
  return {points / g, kTrainingPoints / g};
}

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// W[X][j] = overlap of destination pixel X with source pixel j.
std::vector<std::vector<long>> resample_weights(int n_src, Scale s) {
  long nd = ceil_div(n_src * s.num, s.den);
  std::vector<std::vector<long>> w(static_cast<std::size_t>(nd), std::vector<long>(static_cast<std::size_t>(n_src)));
  for (long X = 0; X < nd; ++X)
    for (long j = 0; j < n_src; ++j)
      w[X][j] = std::max(0L, std::min((X + 1) * s.den, (j + 1) * s.num) - std::max(X * s.den, j * s.num));
  return w;
}

int advance(const BitmapFont& font, char32_t ch) {
  if (ch == U' ') return kSpaceAdvance;
  const auto* g = font.find(ch);
  if (!g) throw Error(ErrorCode::BadParams, "character not in font: " + utf8_encode(std::u32string(1, ch)));
  return g->width + kGlyphGap;
}

}  // namespace

RasterPage render_text(const std::vector<std::u32string>& lines, const BitmapFont& font, Scale scale,
                       double perturb, std::mt19937_64* rng) {
  long native_w = 0;
  for (const auto& line : lines) {
    long w = 0;
    for (char32_t c : line) w += advance(font, c);
    native_w = std::max(native_w, w);
  }
  const long pitch = font.cell_height + kLineGap;
  native_w += 2 * kMargin;
  long native_h = pitch * static_cast<long>(lines.size()) + 2 * kMargin;
  const int pw = static_cast<int>(ceil_div(native_w * scale.num, scale.den) + 2);
  const int ph = static_cast<int>(ceil_div(native_h * scale.num, scale.den) + 2);
  const long full = scale.den * scale.den;
  std::vector<long> cov(static_cast<std::size_t>(pw) * ph, 0);

  long y = kMargin;
  for (const auto& line : lines) {
    long x = kMargin;
    for (char32_t c : line) {
      if (c == U' ') {
        x += kSpaceAdvance;
        continue;
      }
      const BitmapGlyph& g = *font.find(c);
      std::vector<std::uint8_t> ink = g.ink;
      if (perturb > 0 && rng) {
        std::size_t flips = static_cast<std::size_t>(std::llround(perturb * static_cast<double>(ink.size())));
        std::vector<std::size_t> idx(ink.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t k = 0; k < flips && k < idx.size(); ++k) {
          std::size_t pick = k + static_cast<std::size_t>((*rng)() % (idx.size() - k));
          std::swap(idx[k], idx[pick]);
          ink[idx[k]] ^= 1;
        }
      }
      auto wy = resample_weights(g.height, scale);
      auto wx = resample_weights(g.width, scale);
      const long oy = (y + g.top) * scale.num / scale.den;
      const long ox = x * scale.num / scale.den;
      for (std::size_t Y = 0; Y < wy.size(); ++Y) {
        for (std::size_t X = 0; X < wx.size(); ++X) {
          long c = 0;
          for (int j = 0; j < g.height; ++j) {
            if (!wy[Y][j]) continue;
            for (int i = 0; i < g.width; ++i)
              if (ink[static_cast<std::size_t>(j) * g.width + i]) c += wy[Y][j] * wx[X][i];
          }
          auto& dst = cov[static_cast<std::size_t>(oy + Y) * pw + (ox + X)];
          dst = std::max(dst, c);
        }
      }
      x += g.width + kGlyphGap;
    }
    y += pitch;
  }

  RasterPage page(pw, ph, 255);
  for (std::size_t i = 0; i < cov.size(); ++i) {
    // floor(255 * (1 - cov) + 1/2) in exact integers.
    long num = 2 * 255 * (full - cov[i]) + full;
    page.pixels[i] = static_cast<std::uint8_t>(num / (2 * full));
  }
  return page;
}

std::vector<std::u32string> bench_corpus(const std::u32string& charset, std::size_t min_chars,
                                         std::uint64_t seed) {
  constexpr std::size_t kLineTarget = 40;
  std::mt19937_64 rng(seed);
  std::vector<std::u32string> lines;
  std::u32string line;
  std::size_t count = 0;
  while (count < min_chars) {
    std::size_t len = 1 + static_cast<std::size_t>(rng() % 7);
    if (!line.empty()) line.push_back(U' ');
    for (std::size_t k = 0; k < len; ++k) line.push_back(charset[rng() % charset.size()]);
    count += len;
    if (line.size() >= kLineTarget) {
      lines.push_back(std::move(line));
      line.clear();
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));
  return lines;
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

BenchReport run_bench(const BenchConfig& config, const BitmapFont& font, const std::string& atlas_id) {
  if (config.chars == 0) throw Error(ErrorCode::BadParams, "bench needs at least one character");
  if (!(config.perturb >= 0 && config.perturb <= 1)) throw Error(ErrorCode::BadParams, "perturb must be in [0, 1]");
  const TemplateAtlas atlas = atlas_from_font(font);
  const auto corpus = bench_corpus(font.charset(), config.chars, config.seed);
  std::size_t total = 0;
  for (const auto& line : corpus) total += static_cast<std::size_t>(std::count_if(line.begin(), line.end(), [](char32_t c) { return c != U' '; }));

  const auto* cap_glyph = font.find(U'H');
  const int cap = cap_glyph ? cap_glyph->height : font.cell_height;

  BenchReport report;
  report.seed = config.seed;
  report.atlas_id = atlas_id;
  report.threshold = config.threshold;
  for (int pt : config.sizes) {
    Scale s = scale_for_points(pt);
    std::mt19937_64 rng(config.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(pt)));
    auto page = render_text(corpus, font, s, config.perturb, &rng);
    auto rec = recognize_page(page, atlas, config.segmentation);
    std::size_t edits = 0;
    std::size_t n = std::max(corpus.size(), rec.lines.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::u32string truth = i < corpus.size() ? corpus[i] : U"";
      std::u32string got = i < rec.lines.size() ? utf8_decode(rec.lines[i].text()) : U"";
      edits += levenshtein(truth, got);
    }
    BenchRow row;
    row.size_pt = pt;
    row.glyph_height_px = static_cast<int>(ceil_div(static_cast<long>(cap) * s.num, s.den));
    row.chars_total = total;
    row.chars_correct = edits >= total ? 0 : total - edits;
    row.accuracy = static_cast<double>(row.chars_correct) / static_cast<double>(total);
    report.rows.push_back(row);
  }
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "atlas %s, seed %llu, threshold %.3f\n", report.atlas_id.c_str(),
                static_cast<unsigned long long>(report.seed), report.threshold);
  out += buf;
  out += "size_pt  glyph_px  chars  correct  accuracy  pass\n";
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%7d  %8d  %5zu  %7zu  %8.4f  %s\n", r.size_pt, r.glyph_height_px,
                  r.chars_total, r.chars_correct, r.accuracy, r.accuracy >= report.threshold ? "✓" : "✗");
    out += buf;
  }
  return out;
}

std::string format_bench_csv(const BenchReport& report) {
  std::string out = "size_pt,chars,correct,accuracy\n";
  char buf[96];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%d,%zu,%zu,%.6f\n", r.size_pt, r.chars_total, r.chars_correct, r.accuracy);
    out += buf;
  }
  return out;
}

}  // namespace lectern::ocr
