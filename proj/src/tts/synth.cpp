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

#include "lectern/tts/synth.hpp"

#include <algorithm>
#include <cmath>

#include "lectern/error.hpp"

namespace lectern::tts {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOpenPhase = 0.40;
constexpr double kClosePhase = 0.16;
constexpr double kVoicedLevel = 12.0;

// Rosenberg glottal flow over one period, phase in [0, 1).
double glottal_flow(double phase) {
  if (phase < kOpenPhase) return 0.5 * (1.0 - std::cos(kPi * phase / kOpenPhase));
  if (phase < kOpenPhase + kClosePhase)
    return std::cos(0.5 * kPi * (phase - kOpenPhase) / kClosePhase);
  return 0.0;
}

struct Lcg {
  std::uint32_t x;
  // Uniform in [-1, 1).
  double next() {
    x = x * 1664525u + 1013904223u;
    return static_cast<double>(x >> 8) / 16777216.0 * 2.0 - 1.0;
  }
};

struct Resonator {
  double a = 1, b = 0, c = 0;
  double y1 = 0, y2 = 0;

  void tune(double freq, double bw, double sr) {
    double t = 1.0 / sr;
    c = -std::exp(-2.0 * kPi * bw * t);
    b = 2.0 * std::exp(-kPi * bw * t) * std::cos(2.0 * kPi * freq * t);
    a = 1.0 - b - c;
  }
  double step(double x) {
    double y = a * x + b * y1 + c * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

}  // namespace

void validate_params(const SynthesisParams& p) {
  if (!(p.rate >= kMinRate && p.rate <= kMaxRate))
    throw Error(ErrorCode::BadParams, "rate must be in [0.5, 3.0]");
  if (!(p.volume >= 0.0 && p.volume <= 1.0))
    throw Error(ErrorCode::BadParams, "volume must be in [0.0, 1.0]");
}

Utterance plan_prosody(const std::vector<std::vector<PhonemeId>>& sentences,
                       const VoiceProfile& voice, const SynthesisParams& params) {
  validate_params(params);
  Utterance u;
  u.inter_sentence_pause_ms = kSentencePauseMs / params.rate;
  for (const auto& sentence : sentences) {
    double total = 0;
    for (PhonemeId id : sentence) {
      if (id < 0 || id >= kPhonemeCount)
        throw Error(ErrorCode::UnknownPhoneme, "phoneme id " + std::to_string(id) + " not in voice " + voice.name);
      total += voice.table[id].duration_ms;
    }
    std::vector<PhonemeEvent> events;
    events.reserve(sentence.size());
    double elapsed = 0;
    for (PhonemeId id : sentence) {
      const auto& spec = voice.table[id];
      PhonemeEvent e;
      e.phoneme = id;
      e.duration_ms = spec.duration_ms / params.rate;
      e.f0 = spec.voiced ? voice.base_f0 * (1.0 - kF0Declination * (elapsed / total)) : 0.0;
      e.amplitude = params.volume;
      elapsed += spec.duration_ms;
      events.push_back(e);
    }
    u.sentences.push_back(std::move(events));
  }
  return u;
}

std::int64_t event_samples(double duration_ms, int sample_rate) {
  return std::llround(duration_ms * sample_rate / 1000.0);
}

std::vector<double> render_sentence(const std::vector<PhonemeEvent>& events, const VoiceProfile& voice,
                                    int sample_rate, std::uint32_t noise_seed) {
  std::int64_t total = 0;
  for (const auto& e : events) total += event_samples(e.duration_ms, sample_rate);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(total));
  if (events.empty()) return out;

  const double sr = sample_rate;
  const std::int64_t glide = std::max<std::int64_t>(1, event_samples(kFormantGlideMs, sample_rate));
  Resonator res[3];
  Lcg noise{noise_seed};
  double phase = 0, prev_flow = 0;
  auto prev = voice.table[events.front().phoneme].formants;

  for (const auto& e : events) {
    const auto& spec = voice.table[e.phoneme];
    const auto& target = spec.formants;
    const std::int64_t n = event_samples(e.duration_ms, sample_rate);
    bool tuned = false;
    for (std::int64_t s = 0; s < n; ++s) {
      if (s < glide) {
        double frac = static_cast<double>(s + 1) / static_cast<double>(glide);
        for (int k = 0; k < 3; ++k)
          res[k].tune(prev[k].freq + (target[k].freq - prev[k].freq) * frac,
                      prev[k].bandwidth + (target[k].bandwidth - prev[k].bandwidth) * frac, sr);
      } else if (!tuned) {
        for (int k = 0; k < 3; ++k) res[k].tune(target[k].freq, target[k].bandwidth, sr);
        tuned = true;
      }
      double src;
      if (spec.voiced && e.f0 > 0) {
        phase += e.f0 / sr;
        if (phase >= 1.0) phase -= 1.0;
        double flow = glottal_flow(phase);
        src = (flow - prev_flow) * kVoicedLevel;
        prev_flow = flow;
      } else {
        src = noise.next();
        prev_flow = 0;
        phase = 0;
      }
      double y = src * spec.gain;
      for (auto& r : res) y = r.step(y);
      out.push_back(y);
    }
    // A short event may end mid-glide; the next one starts from where this one got to.
    if (n < glide) {
      double frac = static_cast<double>(n) / static_cast<double>(glide);
      for (int k = 0; k < 3; ++k) {
        prev[k].freq += (target[k].freq - prev[k].freq) * frac;
        prev[k].bandwidth += (target[k].bandwidth - prev[k].bandwidth) * frac;
      }
    } else {
      prev = target;
    }
  }

  double peak = 0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  if (peak > 0) {
    double scale = kPeakLevel / peak;
    for (double& v : out) v *= scale;
  }
  return out;
}

std::int16_t quantize(double sample, double gain) {
  long v = std::lround(sample * gain);
  return static_cast<std::int16_t>(std::clamp<long>(v, -32768, 32767));
}

AudioClip synthesize(const Utterance& utterance, const VoiceProfile& voice, int sample_rate,
                     std::uint32_t noise_seed) {
  AudioClip clip;
  clip.sample_rate = sample_rate;
  const std::int64_t pause = event_samples(utterance.inter_sentence_pause_ms, sample_rate);
  for (std::size_t k = 0; k < utterance.sentences.size(); ++k) {
    const auto& events = utterance.sentences[k];
    auto wave = render_sentence(events, voice, sample_rate, noise_seed + static_cast<std::uint32_t>(k));
    std::size_t pos = 0;
    for (const auto& e : events) {
      auto n = static_cast<std::size_t>(event_samples(e.duration_ms, sample_rate));
      for (std::size_t s = 0; s < n; ++s) clip.samples.push_back(quantize(wave[pos + s], e.amplitude));
      pos += n;
    }
    if (k + 1 < utterance.sentences.size()) clip.samples.insert(clip.samples.end(), static_cast<std::size_t>(pause), 0);
  }
  return clip;
}

}  // namespace lectern::tts
