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

namespace lectern::ocr {

// Row-major grayscale, 0 = ink black, 255 = paper white.
struct RasterPage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  RasterPage() = default;
  RasterPage(int w, int h, std::uint8_t fill = 255)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const RasterPage&) const = default;
};

bool looks_like_raster(std::string_view bytes);

// P5 and P2 with any maxval up to 255 (rescaled to 0..255), and PNG.
// Throws UnsupportedFormat on unknown magic, MalformedDocument on bad structure.
RasterPage decode_raster(std::string_view bytes);
RasterPage load_raster(const std::filesystem::path& path);

std::string encode_pgm(const RasterPage& page);      // P5, maxval 255
std::string encode_pgm_plain(const RasterPage& page);  // P2
void save_pgm(const RasterPage& page, const std::filesystem::path& path);

}  // namespace lectern::ocr
