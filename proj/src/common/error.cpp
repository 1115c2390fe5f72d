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

#include "lectern/error.hpp"

namespace lectern {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::EncryptedDocument: return "EncryptedDocument";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::UnsupportedFilter: return "UnsupportedFilter";
    case ErrorCode::CorruptStream: return "CorruptStream";
    case ErrorCode::EmptyGlyph: return "EmptyGlyph";
    case ErrorCode::DuplicateCharacter: return "DuplicateCharacter";
    case ErrorCode::AmbiguousAtlas: return "AmbiguousAtlas";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::OverlappingSpans: return "OverlappingSpans";
    case ErrorCode::InvalidSpan: return "InvalidSpan";
    case ErrorCode::UnknownPhoneme: return "UnknownPhoneme";
    case ErrorCode::MalformedWav: return "MalformedWav";
    case ErrorCode::UnknownVoice: return "UnknownVoice";
    case ErrorCode::InvalidFilename: return "InvalidFilename";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadVersion: return "BadVersion";
    case ErrorCode::CrcMismatch: return "CrcMismatch";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::BindFailure: return "BindFailure";
    case ErrorCode::WatchDirMissing: return "WatchDirMissing";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::NotPlaying: return "NotPlaying";
    case ErrorCode::AtlasMissing: return "AtlasMissing";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::uint64_t offset)
    : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
      code_(code),
      offset_(offset) {}

}  // namespace lectern
