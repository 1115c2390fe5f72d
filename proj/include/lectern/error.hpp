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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lectern {

enum class ErrorCode {
  // documents
  UnsupportedFormat,
  MalformedDocument,
  EncryptedDocument,
  UnsupportedFeature,
  UnsupportedFilter,
  CorruptStream,
  // recognition
  EmptyGlyph,
  DuplicateCharacter,
  AmbiguousAtlas,
  // text
  EmptyQuery,
  IoError,
  OverlappingSpans,
  InvalidSpan,
  // speech
  UnknownPhoneme,
  MalformedWav,
  UnknownVoice,
  // ingest
  InvalidFilename,
  PayloadTooLarge,
  BadMagic,
  BadVersion,
  CrcMismatch,
  Truncated,
  BindFailure,
  WatchDirMissing,
  // sessions
  UnknownDocument,
  EmptyDocument,
  BadParams,
  InvalidTransition,
  UnknownSession,
  NotPlaying,
  AtlasMissing,
  BadRequest,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::uint64_t offset);

  ErrorCode code() const noexcept { return code_; }
  // Byte offset into the input that triggered the error, when known.
  std::optional<std::uint64_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::uint64_t> offset_;
};

}  // namespace lectern
