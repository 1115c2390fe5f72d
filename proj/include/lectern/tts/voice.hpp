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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "lectern/tts/phonemes.hpp"

namespace lectern::tts {

struct Formant {
  double freq = 0;       // Hz
  double bandwidth = 0;  // Hz
};

struct PhonemeSpec {
  bool voiced = false;
  double duration_ms = 0;
  std::array<Formant, 3> formants{};
  double gain = 1.0;  // source level relative to vowels
};

struct VoiceProfile {
  std::string name;
  double base_f0 = 0;
  std::array<PhonemeSpec, kPhonemeCount> table{};
};

inline constexpr int kDefaultSampleRate = 22050;
inline constexpr std::string_view kDefaultVoice = "lectern-low";

// Text format, one directive or row per line, '#' starts a comment:
//   name: <id>
//   base_f0: <Hz>
//   <PHONEME> <voiced 0|1> <dur_ms> <f1> <b1> <f2> <b2> <f3> <b3> [gain]
// Every inventory phoneme must appear exactly once. Throws BadParams.
VoiceProfile parse_voice(std::string_view text);

// Throws BadParams naming the first violated invariant.
void validate_voice(const VoiceProfile& voice, int sample_rate = kDefaultSampleRate);

const std::vector<VoiceProfile>& list_voices();
// Throws UnknownVoice.
const VoiceProfile& find_voice(std::string_view name);
const VoiceProfile& default_voice();

}  // namespace lectern::tts
