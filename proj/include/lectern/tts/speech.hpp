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

#include <string>
#include <string_view>
#include <vector>

#include "lectern/tts/synth.hpp"
#include "lectern/tts/text_frontend.hpp"

namespace lectern::tts {

// Normalization and G2P for one sentence. Interior pause marks become SIL;
// a trailing mark is dropped since the sentence pause follows.
std::vector<PhonemeId> sentence_phonemes(std::string_view sentence,
                                         std::vector<std::string>* warnings = nullptr);

struct SpeechPlan {
  std::vector<std::string> sentences;
  Utterance utterance;
  std::vector<std::string> warnings;
};

SpeechPlan plan_speech(std::string_view text, const VoiceProfile& voice, const SynthesisParams& params);

// Full pipeline; voice looked up by params.voice.
AudioClip speak(std::string_view text, const SynthesisParams& params,
                std::vector<std::string>* warnings = nullptr);

}  // namespace lectern::tts
