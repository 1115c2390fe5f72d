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

#include "lectern/ocr/recognizer.hpp"

#include <algorithm>
#include <array>

#include "lectern/error.hpp"
#include "lectern/utf8.hpp"

namespace lectern::ocr {

std::size_t BinaryPage::ink_count() const {
  return static_cast<std::size_t>(std::count(ink.begin(), ink.end(), std::uint8_t{1}));
}

Binarized binarize_otsu(const RasterPage& page) {
  std::array<long double, 256> hist{};
  for (auto v : page.pixels) hist[v] += 1;
  const long double total = static_cast<long double>(page.pixels.size());
  long double sum_all = 0;
  for (int v = 0; v < 256; ++v) sum_all += v * hist[v];

  // Class 0 is [0, t), class 1 is [t, 255].
  long double w0 = 0, sum0 = 0, best = -1;
  int threshold = 0;
  for (int t = 0; t < 256; ++t) {
    if (t > 0) {
      w0 += hist[t - 1];
      sum0 += (t - 1) * hist[t - 1];
    }
    long double w1 = total - w0;
    long double var = 0;
    if (w0 > 0 && w1 > 0) {
      long double d = sum0 / w0 - (sum_all - sum0) / w1;
      var = w0 * w1 * d * d;
    }
    if (var > best) {
      best = var;
      threshold = t;
    }
  }
  Binarized out;
  out.threshold = threshold;
  out.page.width = page.width;
  out.page.height = page.height;
  out.page.ink.resize(page.pixels.size());
  for (std::size_t i = 0; i < page.pixels.size(); ++i) out.page.ink[i] = page.pixels[i] < threshold;
  return out;
}

std::vector<LineRange> segment_lines(const BinaryPage& page) {
  std::vector<LineRange> lines;
  int start = -1;
  for (int y = 0; y < page.height; ++y) {
    const auto* row = page.ink.data() + static_cast<std::size_t>(y) * page.width;
    bool any = std::any_of(row, row + page.width, [](std::uint8_t v) { return v != 0; });
    if (any && start < 0) start = y;
    if (!any && start >= 0) {
      lines.push_back({start, y - 1});
      start = -1;
    }
  }
  if (start >= 0) lines.push_back({start, page.height - 1});
  return lines;
}

namespace {

struct Extent {
  int x0, x1, y0, y1;  // half-open
  int width() const { return x1 - x0; }
};

std::vector<Extent> components(const BinaryPage& page, const LineRange& line) {
  const int w = page.width;
  const int top = line.top, h = line.bottom - line.top + 1;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<Extent> out;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (seen[idx] || !page.at(x, top + y)) continue;
      Extent e{x, x + 1, y, y + 1};
      seen[idx] = 1;
      stack.push_back({x, y});
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        e.x0 = std::min(e.x0, cx);
        e.x1 = std::max(e.x1, cx + 1);
        e.y0 = std::min(e.y0, cy);
        e.y1 = std::max(e.y1, cy + 1);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            std::size_t n = static_cast<std::size_t>(ny) * w + nx;
            if (seen[n] || !page.at(nx, top + ny)) continue;
            seen[n] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      e.y0 += top;
      e.y1 += top;
      out.push_back(e);
    }
  }
  return out;
}

bool should_merge(const Extent& a, const Extent& b, double ratio) {
  int overlap = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  return overlap > 0 && overlap >= ratio * std::min(a.width(), b.width());
}

}  // namespace

std::vector<GlyphBox> segment_glyphs(const BinaryPage& page, const LineRange& line,
                                     const SegmentationParams& params) {
  auto parts = components(page, line);
  auto by_left = [](const Extent& a, const Extent& b) {
    return a.x0 != b.x0 ? a.x0 < b.x0 : a.y0 < b.y0;
  };
  std::sort(parts.begin(), parts.end(), by_left);
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < parts.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        if (!should_merge(parts[i], parts[j], params.merge_overlap)) continue;
        auto& a = parts[i];
        const auto& b = parts[j];
        a = {std::min(a.x0, b.x0), std::max(a.x1, b.x1), std::min(a.y0, b.y0), std::max(a.y1, b.y1)};
        parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
        break;
      }
    }
  }
  std::sort(parts.begin(), parts.end(), by_left);

  std::vector<GlyphBox> out;
  if (parts.empty()) return out;
  std::vector<int> widths;
  for (const auto& p : parts) widths.push_back(p.width());
  std::sort(widths.begin(), widths.end());
  std::size_t m = widths.size();
  double median = m % 2 ? widths[m / 2] : (widths[m / 2 - 1] + widths[m / 2]) / 2.0;
  double min_gap = params.space_gap_factor * median;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    GlyphBox g{{p.x0, p.y0, p.x1 - p.x0, p.y1 - p.y0}, false};
    if (i > 0) g.space_before = (p.x0 - parts[i - 1].x1) > min_gap;
    out.push_back(g);
  }
  return out;
}

Grid16 normalize_glyph(const BinaryPage& page, const Box& box) {
  int x0 = box.x + box.w, x1 = box.x - 1, y0 = box.y + box.h, y1 = box.y - 1;
  for (int y = box.y; y < box.y + box.h; ++y)
    for (int x = box.x; x < box.x + box.w; ++x)
      if (page.at(x, y)) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
  if (x1 < x0) throw Error(ErrorCode::EmptyGlyph, "glyph box contains no ink");
  const long w = x1 - x0 + 1, h = y1 - y0 + 1;

  // In units where a source pixel is 16 wide, grid cell i spans [i*w, (i+1)*w)
  // and source column j spans [16j, 16(j+1)): overlaps are exact integers.
  auto overlap = [](long a0, long a1, long b0, long b1) {
    return std::max(0L, std::min(a1, b1) - std::max(a0, b0));
  };
  Grid16 grid;
  for (int gy = 0; gy < kGridSize; ++gy) {
    std::vector<long> cell(kGridSize, 0);
    for (long sy = gy * h / kGridSize; sy < h && sy * kGridSize < (gy + 1) * h; ++sy) {
      long wy = overlap(gy * h, (gy + 1) * h, sy * kGridSize, (sy + 1) * kGridSize);
      if (!wy) continue;
      for (long sx = 0; sx < w; ++sx) {
        if (!page.at(static_cast<int>(x0 + sx), static_cast<int>(y0 + sy))) continue;
        long gx_lo = sx * kGridSize / w;
        long gx_hi = std::min<long>(kGridSize - 1, ((sx + 1) * kGridSize - 1) / w);
        for (long gx = gx_lo; gx <= gx_hi; ++gx)
          cell[gx] += wy * overlap(gx * w, (gx + 1) * w, sx * kGridSize, (sx + 1) * kGridSize);
      }
    }
    // A fully covered cell sums to w * h.
    for (int gx = 0; gx < kGridSize; ++gx)
      if (2 * cell[gx] >= w * h) grid.set(static_cast<std::size_t>(gy * kGridSize + gx));
  }
  return grid;
}

Match match_glyph(const Grid16& grid, const TemplateAtlas& atlas) {
  Match best;
  best.distance = kGridSize * kGridSize + 1;
  for (std::size_t i = 0; i < atlas.templates.size(); ++i) {
    int d = static_cast<int>((grid ^ atlas.templates[i]).count());
    if (d < best.distance) {
      best.distance = d;
      best.ch = atlas.charset[i];
    }
  }
  best.confidence = 1.0 - best.distance / 256.0;
  return best;
}

std::string RecognizedLine::text() const {
  std::string out;
  for (const auto& g : glyphs) {
    if (g.space_before) out.push_back(' ');
    utf8_append(out, g.ch);
  }
  return out;
}

std::string RecognizedText::text() const {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i].text();
  }
  return out;
}

RecognizedText recognize_page(const RasterPage& page, const TemplateAtlas& atlas,
                              const SegmentationParams& params) {
  RecognizedText out;
  auto bin = binarize_otsu(page);
  for (const auto& line : segment_lines(bin.page)) {
    RecognizedLine rl;
    for (const auto& g : segment_glyphs(bin.page, line, params)) {
      auto m = match_glyph(normalize_glyph(bin.page, g.box), atlas);
      rl.glyphs.push_back({m.ch, m.confidence, g.box, g.space_before});
    }
    out.lines.push_back(std::move(rl));
  }
  return out;
}

TemplateAtlas build_atlas(const std::vector<LabeledSamples>& labeled) {
  TemplateAtlas atlas;
  for (const auto& entry : labeled) {
    if (atlas.charset.find(entry.ch) != std::u32string::npos)
      throw Error(ErrorCode::DuplicateCharacter,
                  "character " + utf8_encode(std::u32string(1, entry.ch)) + " listed twice");
    if (entry.samples.empty())
      throw Error(ErrorCode::BadParams,
                  "character " + utf8_encode(std::u32string(1, entry.ch)) + " has no samples");
    std::array<int, kGridSize * kGridSize> votes{};
    GlyphMetrics metrics;
    for (std::size_t s = 0; s < entry.samples.size(); ++s) {
      auto bin = binarize_otsu(entry.samples[s]).page;
      Box whole{0, 0, bin.width, bin.height};
      Grid16 g = normalize_glyph(bin, whole);
      for (std::size_t c = 0; c < g.size(); ++c) votes[c] += g[c];
      if (s == 0) {
        int x0 = bin.width, x1 = -1, y0 = bin.height, y1 = -1;
        for (int y = 0; y < bin.height; ++y)
          for (int x = 0; x < bin.width; ++x)
            if (bin.at(x, y)) {
              x0 = std::min(x0, x), x1 = std::max(x1, x);
              y0 = std::min(y0, y), y1 = std::max(y1, y);
            }
        metrics = {x1 - x0 + 1, y1 - y0 + 1};
      }
    }
    Grid16 tmpl;
    const int n = static_cast<int>(entry.samples.size());
    for (std::size_t c = 0; c < tmpl.size(); ++c)
      if (2 * votes[c] >= n) tmpl.set(c);
    atlas.charset.push_back(entry.ch);
    atlas.templates.push_back(tmpl);
    atlas.metrics.push_back(metrics);
  }
  for (std::size_t i = 0; i < atlas.templates.size(); ++i)
    for (std::size_t j = i + 1; j < atlas.templates.size(); ++j)
      if (atlas.templates[i] == atlas.templates[j])
        throw Error(ErrorCode::AmbiguousAtlas,
                    "characters " + utf8_encode(std::u32string(1, atlas.charset[i])) + " and " +
                        utf8_encode(std::u32string(1, atlas.charset[j])) + " have identical templates");
  return atlas;
}

}  // namespace lectern::ocr
