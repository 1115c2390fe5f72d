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
#include <vector>

#include "lectern/tts/phonemes.hpp"
#include "lectern/tts/voice.hpp"

namespace lectern::tts {

struct SynthesisParams {
  double rate = 1.0;    // [0.5, 3.0]
  double volume = 1.0;  // [0.0, 1.0]
  std::string voice = std::string(kDefaultVoice);
};

inline constexpr double kMinRate = 0.5;
inline constexpr double kMaxRate = 3.0;
inline constexpr double kSentencePauseMs = 400.0;
inline constexpr double kF0Declination = 0.10;
inline constexpr double kFormantGlideMs = 30.0;
inline constexpr double kPeakLevel = 0.89 * 32767.0;
inline constexpr std::uint32_t kDefaultNoiseSeed = 0x4C454354u;

// Throws BadParams when rate or volume is out of range.
void validate_params(const SynthesisParams& params);

struct PhonemeEvent {
  PhonemeId phoneme = 0;
  double duration_ms = 0;
  double f0 = 0;  // 0 when unvoiced
  double amplitude = 0;
};

struct Utterance {
  std::vector<std::vector<PhonemeEvent>> sentences;
  double inter_sentence_pause_ms = 0;
};

struct AudioClip {
  int sample_rate = kDefaultSampleRate;
  std::vector<std::int16_t> samples;
  bool operator==(const AudioClip&) const = default;
};

// Throws UnknownPhoneme for ids outside the voice table.
Utterance plan_prosody(const std::vector<std::vector<PhonemeId>>& sentences,
                       const VoiceProfile& voice, const SynthesisParams& params);

std::int64_t event_samples(double duration_ms, int sample_rate);

// Peak-normalized sentence waveform before gain, in sample units.
std::vector<double> render_sentence(const std::vector<PhonemeEvent>& events, const VoiceProfile& voice,
                                    int sample_rate, std::uint32_t noise_seed);

std::int16_t quantize(double sample, double gain);

// Sentence k draws noise from seed + k. Pauses follow every sentence but the last.
AudioClip synthesize(const Utterance& utterance, const VoiceProfile& voice,
                     int sample_rate = kDefaultSampleRate,
                     std::uint32_t noise_seed = kDefaultNoiseSeed);

}  // namespace lectern::tts
