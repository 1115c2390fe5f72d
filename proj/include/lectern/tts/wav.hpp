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
#include <string>
#include <string_view>

#include "lectern/tts/synth.hpp"

namespace lectern::tts {

inline constexpr std::size_t kWavHeaderSize = 44;
// Size fields of a header whose length is not known up front.
inline constexpr std::uint32_t kWavStreamingSize = 0xFFFFFFFFu;

// RIFF/WAVE, PCM 16-bit mono, 44-byte header.
std::string encode_wav(const AudioClip& clip);
std::string wav_header(int sample_rate, std::uint32_t sample_count);
std::string wav_stream_header(int sample_rate);

// Strict inverse of encode_wav; throws MalformedWav.
AudioClip decode_wav(std::string_view bytes);
// Also accepts streaming size fields; data runs to the end of the bytes.
AudioClip decode_wav_stream(std::string_view bytes);

}  // namespace lectern::tts
