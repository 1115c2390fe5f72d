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

#include "lectern/ingest/frame.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "lectern/utf8.hpp"

namespace lectern::ingest {

namespace {

struct WireCode {
  ErrorCode code;
  const char* digits;
};

constexpr WireCode kWireCodes[] = {
    {ErrorCode::BadMagic, "01"},        {ErrorCode::BadVersion, "02"}, {ErrorCode::CrcMismatch, "03"},
    {ErrorCode::InvalidFilename, "04"}, {ErrorCode::Truncated, "05"},  {ErrorCode::PayloadTooLarge, "06"},
    {ErrorCode::IoError, "07"},
};

void put_be(std::string& out, std::uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_be(const char* p, int bytes) {
  std::uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

class ViewSource : public ByteSource {
 public:
  explicit ViewSource(std::string_view v) : v_(v) {}
  std::size_t read(char* buf, std::size_t n) override {
    n = std::min(n, v_.size() - pos_);
    std::memcpy(buf, v_.data() + pos_, n);
    pos_ += n;
    return n;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view v_;
  std::size_t pos_ = 0;
};

// Reads exactly n bytes; returns the count actually read.
std::size_t read_full(ByteSource& src, char* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    std::size_t r = src.read(buf + got, n - got);
    if (r == 0) break;
    got += r;
  }
  return got;
}

void need(ByteSource& src, char* buf, std::size_t n, const char* what) {
  if (read_full(src, buf, n) != n) throw Error(ErrorCode::Truncated, std::string("stream ended inside ") + what);
}

void skip(ByteSource& src, std::uint64_t n) {
  char buf[65536];
  while (n > 0) {
    std::size_t chunk = static_cast<std::size_t>(std::min<std::uint64_t>(n, sizeof buf));
    if (read_full(src, buf, chunk) != chunk) throw Error(ErrorCode::Truncated, "stream ended inside payload");
    n -= chunk;
  }
}

}  // namespace

std::uint32_t crc32_ieee(std::string_view data) {
  uLong c = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in slices.
  while (!data.empty()) {
    std::size_t n = std::min<std::size_t>(data.size(), 1u << 30);
    c = crc32(c, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(n));
    data.remove_prefix(n);
  }
  return static_cast<std::uint32_t>(c);
}

void validate_filename(std::string_view name) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidFilename, "invalid filename: " + why);
  };
  if (name.empty()) bad("empty");
  if (name.size() > kMaxFilename) bad("longer than " + std::to_string(kMaxFilename) + " bytes");
  if (name == "." || name == "..") bad("'" + std::string(name) + "' is not a file name");
  if (name.front() == '.') bad("hidden names are reserved for temporary files");
  for (char c : name)
    if (c == '/' || c == '\\' || c == '\0') bad("path separators and NUL are not allowed");
  if (!utf8_valid(name)) bad("not valid UTF-8");
}

std::string encode_frame(std::string_view filename, std::string_view payload) {
  validate_filename(filename);
  if (payload.size() > kMaxPayload)
    throw Error(ErrorCode::PayloadTooLarge, "payload of " + std::to_string(payload.size()) + " bytes exceeds 64 MiB");
  std::string out;
  out.reserve(kFrameOverhead + filename.size() + payload.size());
  out += kFrameMagic;
  out.push_back(static_cast<char>(kFrameVersion));
  put_be(out, filename.size(), 2);
  out += filename;
  put_be(out, payload.size(), 4);
  out += payload;
  put_be(out, crc32_ieee(payload), 4);
  return out;
}

std::optional<IngestFrame> read_frame(ByteSource& src) {
  char head[7];
  std::size_t got = read_full(src, head, 4);
  if (got == 0) return std::nullopt;
  if (got < 4) throw Error(ErrorCode::Truncated, "stream ended inside magic");
  if (std::string_view(head, 4) != kFrameMagic) throw Error(ErrorCode::BadMagic, "bad frame magic");
  need(src, head + 4, 3, "header");
  const auto version = static_cast<std::uint8_t>(head[4]);
  const std::uint32_t name_len = get_be(head + 5, 2);
  IngestFrame f;
  f.filename.resize(name_len);
  need(src, f.filename.data(), name_len, "filename");
  char len[4];
  need(src, len, 4, "payload length");
  const std::uint32_t payload_len = get_be(len, 4);
  if (payload_len > kMaxPayload) {
    skip(src, std::uint64_t{payload_len} + 4);
    if (version != kFrameVersion) throw Error(ErrorCode::BadVersion, "unsupported frame version " + std::to_string(version));
    throw Error(ErrorCode::PayloadTooLarge, "payload of " + std::to_string(payload_len) + " bytes exceeds 64 MiB");
  }
  f.payload.resize(payload_len);
  need(src, f.payload.data(), payload_len, "payload");
  char crc[4];
  need(src, crc, 4, "checksum");
  if (version != kFrameVersion) throw Error(ErrorCode::BadVersion, "unsupported frame version " + std::to_string(version));
  if (get_be(crc, 4) != crc32_ieee(f.payload)) throw Error(ErrorCode::CrcMismatch, "payload checksum mismatch");
  validate_filename(f.filename);
  return f;
}

IngestFrame decode_frame(std::string_view bytes, std::size_t* consumed) {
  ViewSource src(bytes);
  auto f = read_frame(src);
  if (!f) throw Error(ErrorCode::Truncated, "empty input");
  if (consumed) *consumed = src.pos();
  return std::move(*f);
}

bool closes_connection(ErrorCode code) { return code == ErrorCode::Truncated || code == ErrorCode::BadMagic; }

std::string ack_ok() { return "OK\n"; }

std::string ack_for(ErrorCode code) {
  for (const auto& w : kWireCodes)
    if (w.code == code) return std::string("ER") + w.digits + "\n";
  return "ER07\n";
}

std::optional<ErrorCode> ack_error(std::string_view ack) {
  if (ack.size() != 5 || ack.substr(0, 2) != "ER" || ack[4] != '\n') return std::nullopt;
  for (const auto& w : kWireCodes)
    if (ack.substr(2, 2) == w.digits) return w.code;
  return std::nullopt;
}

bool valid_ack(std::string_view ack) {
  if (ack == "OK\n") return true;
  return ack.size() == 5 && ack.substr(0, 2) == "ER" && ack[2] >= '0' && ack[2] <= '9' && ack[3] >= '0' &&
         ack[3] <= '9' && ack[4] == '\n';
}

}  // namespace lectern::ingest
