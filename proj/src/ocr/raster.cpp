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

#include "lectern/ocr/raster.hpp"

#include <png.h>

#include <cctype>
#include <cstring>

#include "lectern/error.hpp"
#include "lectern/io.hpp"

namespace lectern::ocr {

namespace {

constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
constexpr long kMaxDimension = 1 << 15;

bool is_png(std::string_view b) {
  return b.size() >= 8 && std::memcmp(b.data(), kPngMagic, 8) == 0;
}

bool is_pgm(std::string_view b) {
  return b.size() >= 2 && b[0] == 'P' && (b[1] == '5' || b[1] == '2');
}

class PnmReader {
 public:
  explicit PnmReader(std::string_view b) : b_(b) {}

  // Whitespace and '#' comments before an unsigned decimal.
  long number() {
    for (;;) {
      while (pos_ < b_.size() && std::isspace(static_cast<unsigned char>(b_[pos_]))) ++pos_;
      if (pos_ < b_.size() && b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n' && b_[pos_] != '\r') ++pos_;
        continue;
      }
      break;
    }
    std::size_t start = pos_;
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > kMaxDimension * kMaxDimension) throw Error(ErrorCode::MalformedDocument, "PGM number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw Error(ErrorCode::MalformedDocument, "PGM expected a number", pos_);
    return v;
  }

  std::size_t pos() const { return pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  std::string_view b_;
  std::size_t pos_ = 2;
};

RasterPage decode_pgm(std::string_view b) {
  PnmReader r(b);
  long w = r.number(), h = r.number(), maxval = r.number();
  if (w <= 0 || h <= 0 || w > kMaxDimension || h > kMaxDimension)
    throw Error(ErrorCode::MalformedDocument, "PGM dimensions out of range", 2);
  if (maxval <= 0 || maxval > 255)
    throw Error(ErrorCode::MalformedDocument, "PGM maxval must be 1..255", r.pos());
  // Every pixel takes at least one byte, so this bounds the allocation by the input size.
  if (static_cast<std::size_t>(w) * static_cast<std::size_t>(h) > b.size() - r.pos())
    throw Error(ErrorCode::MalformedDocument, "PGM raster truncated", b.size());
  RasterPage page(static_cast<int>(w), static_cast<int>(h));
  auto scale = [&](long v, std::size_t at) -> std::uint8_t {
    if (v > maxval) throw Error(ErrorCode::MalformedDocument, "PGM sample exceeds maxval", at);
    return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
  };
  const std::size_t n = page.pixels.size();
  if (b[1] == '5') {
    // Exactly one whitespace byte separates the header from the raster.
    if (r.pos() >= b.size() || !std::isspace(static_cast<unsigned char>(b[r.pos()])))
      throw Error(ErrorCode::MalformedDocument, "PGM header not terminated", r.pos());
    r.skip(1);
    if (b.size() - r.pos() < n) throw Error(ErrorCode::MalformedDocument, "PGM raster truncated", b.size());
    for (std::size_t i = 0; i < n; ++i)
      page.pixels[i] = scale(static_cast<unsigned char>(b[r.pos() + i]), r.pos() + i);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t at = r.pos();
      page.pixels[i] = scale(r.number(), at);
    }
  }
  return page;
}

RasterPage decode_png(std::string_view b) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, b.data(), b.size()))
    throw Error(ErrorCode::MalformedDocument, std::string("PNG: ") + img.message);
  if (img.width == 0 || img.height == 0 || img.width > kMaxDimension || img.height > kMaxDimension ||
      static_cast<std::uint64_t>(img.width) * img.height > (1u << 26)) {
    png_image_free(&img);
    throw Error(ErrorCode::MalformedDocument, "PNG dimensions out of range");
  }
  img.format = PNG_FORMAT_GRAY;
  RasterPage page(static_cast<int>(img.width), static_cast<int>(img.height));
  png_color white{255, 255, 255};
  if (!png_image_finish_read(&img, &white, page.pixels.data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::MalformedDocument, "PNG: " + msg);
  }
  return page;
}

}  // namespace

bool looks_like_raster(std::string_view bytes) { return is_pgm(bytes) || is_png(bytes); }

RasterPage decode_raster(std::string_view bytes) {
  if (is_pgm(bytes)) return decode_pgm(bytes);
  if (is_png(bytes)) return decode_png(bytes);
  throw Error(ErrorCode::UnsupportedFormat, "not a PGM or PNG image");
}

RasterPage load_raster(const std::filesystem::path& path) { return decode_raster(read_file(path)); }

std::string encode_pgm(const RasterPage& page) {
  std::string out = "P5\n" + std::to_string(page.width) + " " + std::to_string(page.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(page.pixels.data()), page.pixels.size());
  return out;
}

std::string encode_pgm_plain(const RasterPage& page) {
  std::string out = "P2\n" + std::to_string(page.width) + " " + std::to_string(page.height) + "\n255\n";
  for (int y = 0; y < page.height; ++y) {
    for (int x = 0; x < page.width; ++x) {
      if (x) out.push_back(' ');
      out += std::to_string(page.at(x, y));
    }
    out.push_back('\n');
  }
  return out;
}

void save_pgm(const RasterPage& page, const std::filesystem::path& path) {
  write_file_atomic(path, encode_pgm(page));
}

}  // namespace lectern::ocr
