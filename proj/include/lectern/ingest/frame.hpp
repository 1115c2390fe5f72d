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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lectern/error.hpp"

namespace lectern::ingest {

inline constexpr std::string_view kFrameMagic = "OCRS";
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::size_t kMaxPayload = std::size_t{64} << 20;
inline constexpr std::size_t kMaxFilename = 255;  // one path component on common filesystems
inline constexpr std::size_t kFrameOverhead = 4 + 1 + 2 + 4 + 4;

struct IngestFrame {
  std::string filename;
  std::string payload;
  bool operator==(const IngestFrame&) const = default;
};

std::uint32_t crc32_ieee(std::string_view data);

// Rejects empty names, '/', '\\', NUL, "." and "..", a leading '.', names
// over kMaxFilename bytes and invalid UTF-8. Throws InvalidFilename.
void validate_filename(std::string_view name);

// Throws InvalidFilename, PayloadTooLarge.
std::string encode_frame(std::string_view filename, std::string_view payload);

// Decodes one frame from the front of bytes; *consumed gets its length.
// Throws BadMagic, BadVersion, CrcMismatch, Truncated, InvalidFilename, PayloadTooLarge.
IngestFrame decode_frame(std::string_view bytes, std::size_t* consumed = nullptr);

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  // Returns 0 at end of stream.
  virtual std::size_t read(char* buf, std::size_t n) = 0;
};

// Streaming variant. Returns nullopt on a clean end of stream before a frame
// starts. On BadVersion, CrcMismatch, InvalidFilename and PayloadTooLarge the
// whole frame has been consumed before the throw, so the next frame can follow.
std::optional<IngestFrame> read_frame(ByteSource& source);

// True when the connection must close after replying to this error.
bool closes_connection(ErrorCode code);

// "OK\n" or "ERnn\n".
std::string ack_ok();
std::string ack_for(ErrorCode code);
// Maps a two-digit wire code back; nullopt for unknown codes.
std::optional<ErrorCode> ack_error(std::string_view ack);
bool valid_ack(std::string_view ack);

}  // namespace lectern::ingest
