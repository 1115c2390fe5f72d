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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "lectern/session/store.hpp"
#include "lectern/tts/phonemes.hpp"
#include "lectern/tts/synth.hpp"

namespace lectern::session {

enum class PlaybackState { Idle, Playing, Paused, Stopped };
enum class Command { Play, Pause, Resume, Stop };

const char* state_name(PlaybackState s);
const char* command_name(Command c);
// Throws BadParams.
Command parse_command(std::string_view s);

// The fixed transition table; nullopt for pairs it does not contain.
std::optional<PlaybackState> transition(PlaybackState from, Command cmd);

struct Position {
  std::size_t sentence_index = 0;
  std::size_t sample_offset = 0;  // into the current sentence clip
  bool operator==(const Position&) const = default;
  auto operator<=>(const Position&) const = default;
};

struct SessionSnapshot {
  std::string id;
  std::string document_id;
  tts::SynthesisParams params;
  PlaybackState state = PlaybackState::Idle;
  Position position;
  std::size_t sentence_count = 0;
};

struct ParamUpdate {
  std::optional<double> rate;
  std::optional<double> volume;
};

// A sentence clip is the sentence audio followed by the inter-sentence pause,
// except for the last sentence. Rendering is deterministic, so the stream of a
// session equals tts::synthesize of the whole document at constant params.
class PlaybackSession {
 public:
  // Throws EmptyDocument, BadParams, UnknownVoice.
  PlaybackSession(std::string id, std::shared_ptr<const DocumentRecord> doc, tts::SynthesisParams params);

  SessionSnapshot snapshot() const;
  // Throws InvalidTransition with the state unchanged.
  PlaybackState command(Command cmd);
  // Volume takes effect at the next sample. Rate takes effect at the next
  // sentence, or at once when paused (the paused sentence restarts). Throws BadParams.
  tts::SynthesisParams set_params(const ParamUpdate& update);
  // Up to max_samples from the current position. Throws NotPlaying. The state
  // becomes Stopped, position (0,0), once the last sample has been produced.
  std::vector<std::int16_t> next_chunk(std::size_t max_samples);
  PlaybackState state() const;

 private:
  struct Clip {
    std::size_t sentence = SIZE_MAX;
    double rate = 0;
    std::vector<double> wave;  // unquantized sentence audio
    std::size_t pause = 0;     // trailing silence samples
    std::size_t size() const { return wave.size() + pause; }
  };

  const Clip& clip_for(std::size_t sentence);

  const std::string id_;
  const std::shared_ptr<const DocumentRecord> doc_;
  const tts::VoiceProfile* voice_;
  std::vector<std::vector<tts::PhonemeId>> phonemes_;
  mutable std::mutex mu_;
  tts::SynthesisParams params_;
  double clip_rate_;  // rate of the sentence currently being played
  PlaybackState state_ = PlaybackState::Idle;
  Position pos_;
  Clip clip_;
};

class SessionManager {
 public:
  explicit SessionManager(const DocumentStore& store) : store_(store) {}

  // Throws UnknownDocument, EmptyDocument, BadParams, UnknownVoice.
  std::shared_ptr<PlaybackSession> create(const std::string& document_id, const tts::SynthesisParams& params);
  // Throws UnknownSession.
  std::shared_ptr<PlaybackSession> get(const std::string& id) const;
  std::vector<std::shared_ptr<PlaybackSession>> list() const;

 private:
  const DocumentStore& store_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<PlaybackSession>> sessions_;
};

}  // namespace lectern::session
