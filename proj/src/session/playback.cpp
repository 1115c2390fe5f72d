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

#include "lectern/session/playback.hpp"

#include <algorithm>

#include "lectern/error.hpp"
#include "lectern/tts/speech.hpp"

namespace lectern::session {

const char* state_name(PlaybackState s) {
  switch (s) {
    case PlaybackState::Idle: return "Idle";
    case PlaybackState::Playing: return "Playing";
    case PlaybackState::Paused: return "Paused";
    case PlaybackState::Stopped: return "Stopped";
  }
  return "?";
}

const char* command_name(Command c) {
  switch (c) {
    case Command::Play: return "play";
    case Command::Pause: return "pause";
    case Command::Resume: return "resume";
    case Command::Stop: return "stop";
  }
  return "?";
}

Command parse_command(std::string_view s) {
  if (s == "play") return Command::Play;
  if (s == "pause") return Command::Pause;
  if (s == "resume") return Command::Resume;
  if (s == "stop") return Command::Stop;
  throw Error(ErrorCode::BadParams, "unknown command '" + std::string(s) + "'");
}

std::optional<PlaybackState> transition(PlaybackState from, Command cmd) {
  using S = PlaybackState;
  switch (cmd) {
    case Command::Play:
      if (from == S::Idle || from == S::Stopped) return S::Playing;
      break;
    case Command::Pause:
      if (from == S::Playing) return S::Paused;
      break;
    case Command::Resume:
      if (from == S::Paused) return S::Playing;
      break;
    case Command::Stop:
      if (from == S::Playing || from == S::Paused) return S::Stopped;
      break;
  }
  return std::nullopt;
}

PlaybackSession::PlaybackSession(std::string id, std::shared_ptr<const DocumentRecord> doc,
                                 tts::SynthesisParams params)
    : id_(std::move(id)), doc_(std::move(doc)), voice_(nullptr), params_(std::move(params)) {
  tts::validate_params(params_);
  voice_ = &tts::find_voice(params_.voice);
  if (doc_->sentences.empty())
    throw Error(ErrorCode::EmptyDocument, "document '" + doc_->id + "' has no sentences to read");
  phonemes_.reserve(doc_->sentences.size());
  for (const auto& s : doc_->sentences) phonemes_.push_back(tts::sentence_phonemes(s));
  clip_rate_ = params_.rate;
}

SessionSnapshot PlaybackSession::snapshot() const {
  std::lock_guard lock(mu_);
  return {id_, doc_->id, params_, state_, pos_, phonemes_.size()};
}

PlaybackState PlaybackSession::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

PlaybackState PlaybackSession::command(Command cmd) {
  std::lock_guard lock(mu_);
  auto next = transition(state_, cmd);
  if (!next)
    throw Error(ErrorCode::InvalidTransition,
                std::string("cannot ") + command_name(cmd) + " a session that is " + state_name(state_));
  if (cmd == Command::Play || cmd == Command::Stop) {
    pos_ = {};
    clip_rate_ = params_.rate;
  }
  state_ = *next;
  return state_;
}

tts::SynthesisParams PlaybackSession::set_params(const ParamUpdate& update) {
  std::lock_guard lock(mu_);
  tts::SynthesisParams next = params_;
  if (update.rate) next.rate = *update.rate;
  if (update.volume) next.volume = *update.volume;
  tts::validate_params(next);
  bool rate_changed = next.rate != params_.rate;
  params_ = next;
  if (rate_changed) {
    if (state_ == PlaybackState::Paused) {
      pos_.sample_offset = 0;
      clip_rate_ = params_.rate;
    } else if (state_ != PlaybackState::Playing || pos_.sample_offset == 0) {
      clip_rate_ = params_.rate;
    }
  }
  return params_;
}

const PlaybackSession::Clip& PlaybackSession::clip_for(std::size_t sentence) {
  if (clip_.sentence == sentence && clip_.rate == clip_rate_) return clip_;
  tts::SynthesisParams p = params_;
  p.rate = clip_rate_;
  p.volume = 1.0;
  auto u = tts::plan_prosody({phonemes_[sentence]}, *voice_, p);
  clip_.sentence = sentence;
  clip_.rate = clip_rate_;
  clip_.wave = tts::render_sentence(u.sentences[0], *voice_, tts::kDefaultSampleRate,
                                    tts::kDefaultNoiseSeed + static_cast<std::uint32_t>(sentence));
  clip_.pause = sentence + 1 < phonemes_.size()
                    ? static_cast<std::size_t>(tts::event_samples(u.inter_sentence_pause_ms, tts::kDefaultSampleRate))
                    : 0;
  return clip_;
}

std::vector<std::int16_t> PlaybackSession::next_chunk(std::size_t max_samples) {
  std::lock_guard lock(mu_);
  if (state_ != PlaybackState::Playing)
    throw Error(ErrorCode::NotPlaying, std::string("session is ") + state_name(state_) + ", not Playing");
  std::vector<std::int16_t> out;
  out.reserve(max_samples);
  while (out.size() < max_samples) {
    const Clip& c = clip_for(pos_.sentence_index);
    std::size_t take = std::min(max_samples - out.size(), c.size() - pos_.sample_offset);
    for (std::size_t i = pos_.sample_offset; i < pos_.sample_offset + take; ++i)
      out.push_back(i < c.wave.size() ? tts::quantize(c.wave[i], params_.volume) : std::int16_t{0});
    pos_.sample_offset += take;
    if (pos_.sample_offset < c.size()) continue;
    if (pos_.sentence_index + 1 < phonemes_.size()) {
      ++pos_.sentence_index;
      pos_.sample_offset = 0;
      clip_rate_ = params_.rate;
    } else {
      state_ = PlaybackState::Stopped;
      pos_ = {};
      clip_rate_ = params_.rate;
      break;
    }
  }
  return out;
}

std::shared_ptr<PlaybackSession> SessionManager::create(const std::string& document_id,
                                                        const tts::SynthesisParams& params) {
  auto doc = store_.get(document_id);
  auto s = std::make_shared<PlaybackSession>(make_id("s-"), doc, params);
  std::unique_lock lock(mu_);
  sessions_.emplace(s->snapshot().id, s);
  return s;
}

std::shared_ptr<PlaybackSession> SessionManager::get(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session with id '" + id + "'");
  return it->second;
}

std::vector<std::shared_ptr<PlaybackSession>> SessionManager::list() const {
  std::shared_lock lock(mu_);
  std::vector<std::shared_ptr<PlaybackSession>> out;
  for (const auto& [id, s] : sessions_) out.push_back(s);
  return out;
}

}  // namespace lectern::session
