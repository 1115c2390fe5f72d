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

#include "lectern/tts/speech.hpp"

namespace lectern::tts {

std::vector<PhonemeId> sentence_phonemes(std::string_view sentence, std::vector<std::string>* warnings) {
  auto norm = normalize_text(sentence);
  if (warnings) warnings->insert(warnings->end(), norm.warnings.begin(), norm.warnings.end());
  auto& toks = norm.tokens;
  while (!toks.empty() && is_pause_mark(toks.back())) toks.pop_back();
  std::vector<PhonemeId> out;
  for (const auto& tok : toks) {
    if (is_pause_mark(tok)) {
      out.push_back(silence_id());
      continue;
    }
    auto phs = g2p(tok);
    out.insert(out.end(), phs.begin(), phs.end());
  }
  return out;
}

SpeechPlan plan_speech(std::string_view text, const VoiceProfile& voice, const SynthesisParams& params) {
  SpeechPlan plan;
  plan.sentences = split_sentences(text);
  std::vector<std::vector<PhonemeId>> phonemes;
  phonemes.reserve(plan.sentences.size());
  for (const auto& s : plan.sentences) phonemes.push_back(sentence_phonemes(s, &plan.warnings));
  plan.utterance = plan_prosody(phonemes, voice, params);
  return plan;
}

AudioClip speak(std::string_view text, const SynthesisParams& params, std::vector<std::string>* warnings) {
  const auto& voice = find_voice(params.voice);
  auto plan = plan_speech(text, voice, params);
  if (warnings) warnings->insert(warnings->end(), plan.warnings.begin(), plan.warnings.end());
  return synthesize(plan.utterance, voice);
}

}  // namespace lectern::tts
