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

#include "lectern/tts/wav.hpp"

#include "lectern/error.hpp"

namespace lectern::tts {

namespace {

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint16_t get16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    (static_cast<unsigned char>(b[at + 1]) << 8));
}

std::uint32_t get32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[at + i]);
  return v;
}

std::string header(int sample_rate, std::uint32_t riff_size, std::uint32_t data_size) {
  std::string h;
  h.reserve(kWavHeaderSize);
  h += "RIFF";
  put32(h, riff_size);
  h += "WAVEfmt ";
  put32(h, 16);
  put16(h, 1);  // PCM
  put16(h, 1);  // mono
  put32(h, static_cast<std::uint32_t>(sample_rate));
  put32(h, static_cast<std::uint32_t>(sample_rate) * 2);
  put16(h, 2);
  put16(h, 16);
  h += "data";
  put32(h, data_size);
  return h;
}

[[noreturn]] void malformed(const std::string& what, std::size_t at) {
  throw Error(ErrorCode::MalformedWav, what, at);
}

AudioClip decode(std::string_view b, bool streaming) {
  if (b.size() < kWavHeaderSize) malformed("header shorter than 44 bytes", b.size());
  if (b.substr(0, 4) != "RIFF") malformed("missing RIFF tag", 0);
  if (b.substr(8, 8) != "WAVEfmt ") malformed("missing WAVE/fmt tags", 8);
  if (get32(b, 16) != 16) malformed("fmt chunk size is not 16", 16);
  if (get16(b, 20) != 1) malformed("format is not PCM", 20);
  if (get16(b, 22) != 1) malformed("not mono", 22);
  std::uint32_t sr = get32(b, 24);
  if (sr == 0 || sr > 0x7FFFFFFF / 2) malformed("bad sample rate", 24);
  if (get32(b, 28) != sr * 2) malformed("byte rate mismatch", 28);
  if (get16(b, 32) != 2) malformed("block align is not 2", 32);
  if (get16(b, 34) != 16) malformed("not 16-bit", 34);
  if (b.substr(36, 4) != "data") malformed("missing data tag", 36);
  std::uint32_t riff = get32(b, 4);
  std::uint32_t data = get32(b, 40);
  std::size_t payload = b.size() - kWavHeaderSize;
  if (streaming && riff == kWavStreamingSize && data == kWavStreamingSize) {
    if (payload % 2) malformed("odd data length", b.size());
  } else {
    if (data % 2) malformed("odd data size", 40);
    if (riff != 36 + static_cast<std::uint64_t>(data)) malformed("RIFF size mismatch", 4);
    if (payload != data) malformed("data size does not match file length", 40);
  }
  AudioClip clip;
  clip.sample_rate = static_cast<int>(sr);
  clip.samples.resize(payload / 2);
  for (std::size_t i = 0; i < clip.samples.size(); ++i)
    clip.samples[i] = static_cast<std::int16_t>(get16(b, kWavHeaderSize + 2 * i));
  return clip;
}

}  // namespace

std::string wav_header(int sample_rate, std::uint32_t sample_count) {
  return header(sample_rate, 36 + 2 * sample_count, 2 * sample_count);
}

std::string wav_stream_header(int sample_rate) {
  return header(sample_rate, kWavStreamingSize, kWavStreamingSize);
}

std::string encode_wav(const AudioClip& clip) {
  auto n = static_cast<std::uint32_t>(clip.samples.size());
  std::string out = wav_header(clip.sample_rate, n);
  out.reserve(kWavHeaderSize + 2 * clip.samples.size());
  for (std::int16_t s : clip.samples) put16(out, static_cast<std::uint16_t>(s));
  return out;
}

AudioClip decode_wav(std::string_view bytes) { return decode(bytes, false); }

AudioClip decode_wav_stream(std::string_view bytes) { return decode(bytes, true); }

}  // namespace lectern::tts
