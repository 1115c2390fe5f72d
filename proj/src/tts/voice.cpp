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

#include "lectern/tts/voice.hpp"

#include <algorithm>
#include <bitset>
#include <sstream>

#include "lectern/embedded_data.hpp"
#include "lectern/error.hpp"

namespace lectern::tts {

std::optional<PhonemeId> phoneme_id(std::string_view name) {
  for (int i = 0; i < kPhonemeCount; ++i)
    if (kPhonemes[i] == name) return i;
  return std::nullopt;
}

std::string_view phoneme_name(PhonemeId id) { return kPhonemes.at(static_cast<std::size_t>(id)); }

PhonemeId silence_id() {
  static const PhonemeId id = *phoneme_id("SIL");
  return id;
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(int line, const std::string& what) {
  throw Error(ErrorCode::BadParams, "voice line " + std::to_string(line) + ": " + what);
}

}  // namespace

VoiceProfile parse_voice(std::string_view text) {
  VoiceProfile v;
  std::bitset<kPhonemeCount> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("name:", 0) == 0) {
      v.name = trim(line.substr(5));
      continue;
    }
    if (line.rfind("base_f0:", 0) == 0) {
      try {
        v.base_f0 = std::stod(line.substr(8));
      } catch (const std::exception&) {
        bad(lineno, "bad base_f0");
      }
      continue;
    }
    std::istringstream row(line);
    std::string ph;
    int voiced = -1;
    PhonemeSpec spec;
    row >> ph >> voiced >> spec.duration_ms;
    for (auto& f : spec.formants) row >> f.freq >> f.bandwidth;
    if (!row) bad(lineno, "expected 9 fields");
    double gain;
    if (row >> gain) spec.gain = gain;
    auto id = phoneme_id(ph);
    if (!id) bad(lineno, "unknown phoneme " + ph);
    if (voiced != 0 && voiced != 1) bad(lineno, "voiced flag must be 0 or 1");
    if (seen[*id]) bad(lineno, "duplicate phoneme " + ph);
    seen[*id] = true;
    spec.voiced = voiced == 1;
    v.table[*id] = spec;
  }
  if (v.name.empty()) throw Error(ErrorCode::BadParams, "voice has no name");
  for (int i = 0; i < kPhonemeCount; ++i)
    if (!seen[i])
      throw Error(ErrorCode::BadParams,
                  "voice " + v.name + " lacks phoneme " + std::string(kPhonemes[i]));
  validate_voice(v);
  return v;
}

void validate_voice(const VoiceProfile& v, int sample_rate) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::BadParams, "voice " + v.name + ": " + what);
  };
  if (!(v.base_f0 >= 50 && v.base_f0 <= 400)) fail("base_f0 outside [50, 400]");
  for (int i = 0; i < kPhonemeCount; ++i) {
    const auto& s = v.table[i];
    std::string ph(kPhonemes[i]);
    if (!(s.duration_ms > 0)) fail(ph + " duration must be positive");
    if (!(s.gain >= 0)) fail(ph + " gain must be non-negative");
    for (const auto& f : s.formants) {
      if (!(f.freq > 0 && f.freq < sample_rate / 2.0)) fail(ph + " formant outside (0, fs/2)");
      if (!(f.bandwidth > 0)) fail(ph + " bandwidth must be positive");
    }
  }
}

const std::vector<VoiceProfile>& list_voices() {
  static const std::vector<VoiceProfile> voices = [] {
    std::vector<VoiceProfile> out;
    for (const auto& f : embedded_files())
      if (f.path.rfind("voices/", 0) == 0) out.push_back(parse_voice(f.content));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
  }();
  return voices;
}

const VoiceProfile& find_voice(std::string_view name) {
  for (const auto& v : list_voices())
    if (v.name == name) return v;
  throw Error(ErrorCode::UnknownVoice, "no voice named " + std::string(name));
}

const VoiceProfile& default_voice() {
  for (const auto& v : list_voices())
    if (v.name == kDefaultVoice) return v;
  return list_voices().front();
}

}  // namespace lectern::tts
