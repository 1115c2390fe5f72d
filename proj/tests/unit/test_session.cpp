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

#include <fstream>
#include <random>

#include "doctest.h"
#include "lectern/io.hpp"
#include "lectern/ocr/font.hpp"
#include "lectern/ocr/raster.hpp"
#include "lectern/session/jobs.hpp"
#include "lectern/session/playback.hpp"
#include "lectern/session/store.hpp"
#include "lectern/tts/speech.hpp"
#include "lectern/tts/voice.hpp"
#include "support.hpp"

using namespace lectern;
using namespace lectern::session;
using lectern::testing::code_of;
using lectern::testing::TempDir;

namespace {

doc::ExtractedDocument pages_doc(std::vector<std::string> pages) {
  doc::ExtractedDocument d;
  d.pages = std::move(pages);
  return d;
}

std::vector<std::int16_t> reference(const std::string& text, const tts::SynthesisParams& p) {
  const auto& voice = tts::find_voice(p.voice);
  return tts::synthesize(tts::plan_speech(text, voice, p).utterance, voice).samples;
}

// Samples in sentence k alone (no trailing pause) and the pause length, at params p.
std::pair<std::size_t, std::size_t> sentence_extent(const std::string& text, std::size_t k,
                                                    const tts::SynthesisParams& p) {
  const auto& voice = tts::find_voice(p.voice);
  auto u = tts::plan_speech(text, voice, p).utterance;
  tts::Utterance one;
  one.sentences = {u.sentences[k]};
  auto n = tts::synthesize(one, voice).samples.size();
  return {n, static_cast<std::size_t>(tts::event_samples(u.inter_sentence_pause_ms, tts::kDefaultSampleRate))};
}

std::vector<std::int16_t> drain(PlaybackSession& s, std::size_t chunk = 4096) {
  std::vector<std::int16_t> out;
  while (s.state() == PlaybackState::Playing) {
    auto c = s.next_chunk(chunk);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"the", "quiet", "reader", "turns", "a", "page",
                                                  "slowly", "seven", "lamps", "glow", "over", "ink"};
  static const std::vector<std::string> ends = {".", "!", "?"};
  std::string out;
  int sentences = 1 + static_cast<int>(rng() % 3);
  for (int s = 0; s < sentences; ++s) {
    int n = 1 + static_cast<int>(rng() % 4);
    for (int w = 0; w < n; ++w) {
      std::string word = words[rng() % words.size()];
      if (w == 0) word[0] = static_cast<char>(std::toupper(word[0]));
      out += word;
      out += w + 1 < n ? " " : ends[rng() % ends.size()];
    }
    out += ' ';
  }
  out.pop_back();
  return out;
}

const std::vector<PlaybackState> kStates = {PlaybackState::Idle, PlaybackState::Playing, PlaybackState::Paused,
                                            PlaybackState::Stopped};
const std::vector<Command> kCommands = {Command::Play, Command::Pause, Command::Resume, Command::Stop};

// Drives a fresh session into the requested state.
void reach(PlaybackSession& s, PlaybackState target) {
  switch (target) {
    case PlaybackState::Idle: break;
    case PlaybackState::Playing: s.command(Command::Play); break;
    case PlaybackState::Paused:
      s.command(Command::Play);
      s.next_chunk(10);
      s.command(Command::Pause);
      break;
    case PlaybackState::Stopped:
      s.command(Command::Play);
      s.command(Command::Stop);
      break;
  }
  REQUIRE(s.state() == target);
}

}  // namespace

TEST_CASE("memory store") {
  DocumentStore store;
  auto a = store.add("a.txt", pages_doc({"One. Two", "three."}));
  CHECK(a->text == "One. Two\nthree.");
  CHECK(a->name == "a.txt");
  CHECK(a->sentences.size() == 2);
  CHECK(a->char_count == 14);  // page code points, separator excluded
  CHECK(a->id.rfind("d-", 0) == 0);
  auto b = store.add("b.txt", pages_doc({""}));
  CHECK(b->sentences.empty());
  CHECK(store.size() == 2);
  CHECK(store.get(a->id)->text == a->text);
  CHECK(store.list().front()->id == a->id);
  CHECK(code_of([&] { store.get("d-nope"); }) == ErrorCode::UnknownDocument);
  CHECK(join_pages({"a", "b", "c"}) == "a\nb\nc");
  CHECK(make_id("s-") != make_id("s-"));
}

TEST_CASE("directory store persists across restarts") {
  TempDir dir;
  std::string id;
  {
    DocumentStore store(dir.path());
    id = store.add("x.pdf", pages_doc({"Hello there.", "Page two."}))->id;
    store.add("y.txt", pages_doc({"Second."}));
  }
  DocumentStore again(dir.path());
  REQUIRE(again.size() == 2);
  auto d = again.get(id);
  CHECK(d->name == "x.pdf");
  CHECK(d->pages == std::vector<std::string>{"Hello there.", "Page two."});
  CHECK(d->sentences.size() == 2);
  write_file_atomic(dir / "manifest.json", "{not json");
  CHECK(code_of([&] { DocumentStore broken(dir.path()); }) == ErrorCode::MalformedDocument);
}

TEST_CASE("process_job") {
  TempDir dir;
  DocumentStore store;
  const auto& atlas = ocr::builtin_atlas();
  write_file_atomic(dir / "a.txt", "Hi.");
  auto d = process_job(dir / "a.txt", store, atlas);
  CHECK(d->name == "a.txt");
  CHECK(d->sentences == std::vector<std::string>{"Hi."});

  ocr::save_pgm(ocr::RasterPage(64, 32), dir / "blank.pgm");
  auto blank = process_job(dir / "blank.pgm", store, atlas);
  CHECK(blank->text.empty());
  CHECK(blank->sentences.empty());
  CHECK(blank->kind == doc::SourceKind::RasterPage);

  CHECK(code_of([&] { process_job(dir / "missing.txt", store, atlas); }) == ErrorCode::IoError);
  write_file_atomic(dir / "a.docx", "x");
  CHECK(code_of([&] { process_job(dir / "a.docx", store, atlas); }) == ErrorCode::UnsupportedFormat);
  write_file_atomic(dir / "bad.pdf", "%PDF-1.4 garbage");
  CHECK(code_of([&] { process_job(dir / "bad.pdf", store, atlas); }) == ErrorCode::MalformedDocument);
  CHECK(store.size() == 2);
}

TEST_CASE("job loop keeps arrival order and survives failures") {
  TempDir dir;
  DocumentStore store;
  JobLoop jobs(store, ocr::builtin_atlas());
  jobs.start();
  std::vector<std::uint64_t> seqs;
  for (int i = 0; i < 20; ++i) {
    auto p = dir / ("f" + std::to_string(i) + (i == 5 ? ".docx" : ".txt"));
    if (i != 7) write_file_atomic(p, "Doc " + std::to_string(i) + ".");
    seqs.push_back(jobs.enqueue(p));
  }
  REQUIRE(jobs.wait_idle(std::chrono::seconds(10)));
  auto recs = jobs.records();
  REQUIRE(recs.size() == 20);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].seq == seqs[i]);
    CHECK(recs[i].ok == (i != 5 && i != 7));
  }
  CHECK(recs[5].error == ErrorCode::UnsupportedFormat);
  CHECK(recs[7].error == ErrorCode::IoError);
  auto docs = store.list();
  REQUIRE(docs.size() == 18);
  std::size_t k = 0;
  for (int i = 0; i < 20; ++i) {
    if (i == 5 || i == 7) continue;
    CHECK(docs[k++]->text == "Doc " + std::to_string(i) + ".");
  }
  // Still alive after the failures.
  write_file_atomic(dir / "late.txt", "Late.");
  jobs.enqueue(dir / "late.txt");
  REQUIRE(jobs.wait_idle(std::chrono::seconds(10)));
  CHECK(jobs.records().back().ok);
  jobs.stop();
  jobs.stop();
}

TEST_CASE("create_session") {
  DocumentStore store;
  SessionManager sessions(store);
  auto d = store.add("a", pages_doc({"Hi. There."}));
  auto s = sessions.create(d->id, {});
  auto snap = s->snapshot();
  CHECK(snap.state == PlaybackState::Idle);
  CHECK(snap.position == Position{0, 0});
  CHECK(snap.sentence_count == 2);
  CHECK(snap.document_id == d->id);
  CHECK(sessions.get(snap.id) == s);
  CHECK(sessions.list().size() == 1);
  CHECK(code_of([&] { sessions.create("d-missing", {}); }) == ErrorCode::UnknownDocument);
  auto empty = store.add("e", pages_doc({"   "}));
  CHECK(code_of([&] { sessions.create(empty->id, {}); }) == ErrorCode::EmptyDocument);
  tts::SynthesisParams fast;
  fast.rate = 5.0;
  CHECK(code_of([&] { sessions.create(d->id, fast); }) == ErrorCode::BadParams);
  tts::SynthesisParams who;
  who.voice = "nobody";
  CHECK(code_of([&] { sessions.create(d->id, who); }) == ErrorCode::UnknownVoice);
  CHECK(code_of([&] { sessions.get("s-missing"); }) == ErrorCode::UnknownSession);
  CHECK(sessions.list().size() == 1);
}

TEST_CASE("commands") {
  CHECK(parse_command("play") == Command::Play);
  CHECK(parse_command("resume") == Command::Resume);
  CHECK(code_of([] { parse_command("rewind"); }) == ErrorCode::BadParams);
  for (auto c : kCommands) CHECK(parse_command(command_name(c)) == c);
}

TEST_CASE("every state and command pair follows the table") {
  using S = PlaybackState;
  using C = Command;
  const std::map<std::pair<S, C>, S> allowed = {
      {{S::Idle, C::Play}, S::Playing},     {{S::Playing, C::Pause}, S::Paused},
      {{S::Paused, C::Resume}, S::Playing}, {{S::Playing, C::Stop}, S::Stopped},
      {{S::Paused, C::Stop}, S::Stopped},   {{S::Stopped, C::Play}, S::Playing},
  };
  DocumentStore store;
  auto d = store.add("a", pages_doc({"One two three. Four."}));
  int pairs = 0;
  for (auto from : kStates) {
    for (auto cmd : kCommands) {
      ++pairs;
      CAPTURE(state_name(from));
      CAPTURE(command_name(cmd));
      auto it = allowed.find({from, cmd});
      CHECK(transition(from, cmd) == (it == allowed.end() ? std::nullopt : std::optional<S>(it->second)));
      PlaybackSession s("s-t", d, {});
      reach(s, from);
      auto before = s.snapshot();
      if (it == allowed.end()) {
        CHECK(code_of([&] { s.command(cmd); }) == ErrorCode::InvalidTransition);
        auto after = s.snapshot();
        CHECK(after.state == before.state);
        CHECK(after.position == before.position);
      } else {
        CHECK(s.command(cmd) == it->second);
        auto after = s.snapshot();
        if (cmd == C::Play || cmd == C::Stop) CHECK(after.position == Position{0, 0});
        if (cmd == C::Pause || cmd == C::Resume) CHECK(after.position == before.position);
      }
    }
  }
  CHECK(pairs == 16);
}

TEST_CASE("a full play-through equals one-shot synthesis") {
  DocumentStore store;
  std::string text = "The lamp is lit. Read me two lines!";
  auto d = store.add("a", pages_doc({text}));
  for (double rate : {0.5, 1.0, 2.25}) {
    for (double volume : {1.0, 0.3}) {
      tts::SynthesisParams p;
      p.rate = rate;
      p.volume = volume;
      PlaybackSession s("s-x", d, p);
      s.command(Command::Play);
      auto got = drain(s, 1000);
      CHECK(got == reference(text, p));
      auto snap = s.snapshot();
      CHECK(snap.state == PlaybackState::Stopped);
      CHECK(snap.position == Position{0, 0});
      // Play again after the end restarts from the top.
      s.command(Command::Play);
      CHECK(drain(s, 7777) == got);
    }
  }
}

TEST_CASE("multi-page documents read pages in order") {
  DocumentStore store;
  auto d = store.add("p", pages_doc({"First page.", "Second page."}));
  PlaybackSession s("s-p", d, {});
  s.command(Command::Play);
  CHECK(drain(s) == reference(d->text, {}));
}

TEST_CASE("pause and resume concatenate to the uninterrupted stream") {
  std::mt19937_64 rng(77);
  DocumentStore store;
  for (int iter = 0; iter < 20; ++iter) {
    std::string text = random_text(rng);
    auto d = store.add("r", pages_doc({text}));
    tts::SynthesisParams p;
    p.rate = 0.5 + (rng() % 6) * 0.5;
    p.volume = 0.25 + (rng() % 4) * 0.25;
    auto want = reference(text, p);
    PlaybackSession s("s-r", d, p);
    s.command(Command::Play);
    std::vector<std::int16_t> got;
    int pauses = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < pauses && s.state() == PlaybackState::Playing; ++k) {
      auto c = s.next_chunk(1 + rng() % (want.size() / 2));
      got.insert(got.end(), c.begin(), c.end());
      if (s.state() != PlaybackState::Playing) break;
      auto at = s.snapshot().position;
      s.command(Command::Pause);
      CHECK(code_of([&] { s.next_chunk(10); }) == ErrorCode::NotPlaying);
      CHECK(s.snapshot().position == at);
      s.command(Command::Resume);
      CHECK(s.snapshot().position == at);
    }
    auto rest = drain(s, 1 + rng() % 5000);
    got.insert(got.end(), rest.begin(), rest.end());
    CAPTURE(text);
    CHECK(got == want);
  }
}

TEST_CASE("position never decreases while playing") {
  DocumentStore store;
  auto d = store.add("m", pages_doc({"One. Two words. Three more words here."}));
  PlaybackSession s("s-m", d, {});
  s.command(Command::Play);
  Position last{0, 0};
  std::size_t produced = 0;
  while (s.state() == PlaybackState::Playing) {
    produced += s.next_chunk(997).size();
    auto snap = s.snapshot();
    if (snap.state != PlaybackState::Playing) break;
    CHECK(last <= snap.position);
    CHECK(snap.position.sentence_index < snap.sentence_count);
    last = snap.position;
  }
  CHECK(last.sentence_index == 2);
  CHECK(produced == reference(d->text, {}).size());
}

TEST_CASE("volume change applies to the next sample") {
  DocumentStore store;
  std::string text = "Volume moves now. And stays.";
  auto d = store.add("v", pages_doc({text}));
  tts::SynthesisParams loud, soft;
  soft.volume = 0.4;
  auto a = reference(text, loud), b = reference(text, soft);
  for (std::size_t cut : {std::size_t{1}, std::size_t{5000}, a.size() / 2}) {
    PlaybackSession s("s-v", d, loud);
    s.command(Command::Play);
    auto head = s.next_chunk(cut);
    CHECK(s.set_params({std::nullopt, 0.4}).volume == doctest::Approx(0.4));
    auto tail = drain(s);
    REQUIRE(head.size() + tail.size() == a.size());
    CHECK(std::equal(head.begin(), head.end(), a.begin()));
    CHECK(std::equal(tail.begin(), tail.end(), b.begin() + static_cast<std::ptrdiff_t>(cut)));
  }
}

TEST_CASE("rate change while playing waits for the sentence boundary") {
  DocumentStore store;
  std::string text = "The first sentence runs long enough. Then a second.";
  auto d = store.add("r", pages_doc({text}));
  tts::SynthesisParams slow, fast;
  fast.rate = 2.0;
  auto [len0, pause0] = sentence_extent(text, 0, slow);
  auto [len1_fast, pause1_fast] = sentence_extent(text, 1, fast);
  (void)pause1_fast;

  PlaybackSession s("s-r", d, slow);
  s.command(Command::Play);
  auto head = s.next_chunk(1000);
  s.set_params({2.0, std::nullopt});
  CHECK(s.snapshot().params.rate == 2.0);
  std::size_t in_first = head.size();
  while (s.snapshot().position.sentence_index == 0) in_first += s.next_chunk(1).size();
  CHECK(in_first == len0 + pause0);
  auto second = drain(s);
  CHECK(second.size() == len1_fast);

  // The first sentence kept its planned audio.
  auto want = reference(text, slow);
  CHECK(std::equal(head.begin(), head.end(), want.begin()));

  // A change at the very start of a sentence takes effect for that sentence.
  PlaybackSession t("s-r2", d, slow);
  t.command(Command::Play);
  t.set_params({2.0, std::nullopt});
  CHECK(drain(t) == reference(text, fast));
}

TEST_CASE("rate change while paused restarts the paused sentence") {
  DocumentStore store;
  std::string text = "Pause me in the middle. Then carry on.";
  auto d = store.add("q", pages_doc({text}));
  tts::SynthesisParams slow, fast;
  fast.rate = 1.5;
  auto want = reference(text, fast);

  PlaybackSession s("s-q", d, slow);
  s.command(Command::Play);
  s.next_chunk(3000);
  s.command(Command::Pause);
  s.set_params({1.5, std::nullopt});
  CHECK(s.snapshot().position == Position{0, 0});
  s.command(Command::Resume);
  CHECK(drain(s) == want);

  // Paused in the second sentence: only that sentence is re-planned.
  auto [len0, pause0] = sentence_extent(text, 0, slow);
  auto [len0f, pause0f] = sentence_extent(text, 0, fast);
  PlaybackSession t("s-q2", d, slow);
  t.command(Command::Play);
  auto head = t.next_chunk(len0 + pause0 + 500);
  REQUIRE(t.snapshot().position == Position{1, 500});
  t.command(Command::Pause);
  t.set_params({1.5, std::nullopt});
  CHECK(t.snapshot().position == Position{1, 0});
  t.command(Command::Resume);
  auto rest = drain(t);
  CHECK(std::equal(rest.begin(), rest.end(), want.begin() + static_cast<std::ptrdiff_t>(len0f + pause0f)));
  CHECK(rest.size() == want.size() - len0f - pause0f);
}

TEST_CASE("parameter validation and NotPlaying") {
  DocumentStore store;
  auto d = store.add("n", pages_doc({"Hi."}));
  PlaybackSession s("s-n", d, {});
  CHECK(code_of([&] { s.next_chunk(10); }) == ErrorCode::NotPlaying);
  CHECK(code_of([&] { s.set_params({0.1, std::nullopt}); }) == ErrorCode::BadParams);
  CHECK(code_of([&] { s.set_params({std::nullopt, 1.5}); }) == ErrorCode::BadParams);
  CHECK(s.snapshot().params.rate == 1.0);
  CHECK(s.snapshot().params.volume == 1.0);
  s.command(Command::Play);
  s.command(Command::Stop);
  CHECK(code_of([&] { s.next_chunk(10); }) == ErrorCode::NotPlaying);
}
