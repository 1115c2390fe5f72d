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

// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "lectern/cli/cli.hpp"
#include "lectern/doc/extract.hpp"
#include "lectern/error.hpp"
#include "lectern/ingest/frame.hpp"
#include "lectern/ingest/server.hpp"
#include "lectern/io.hpp"
#include "lectern/session/playback.hpp"
#include "lectern/session/store.hpp"
#include "lectern/text/text_tools.hpp"
#include "lectern/tts/speech.hpp"
#include "lectern/tts/voice.hpp"
#include "lectern/tts/wav.hpp"
#include "lectern/utf8.hpp"

namespace fs = std::filesystem;
using namespace lectern;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("lectern-accept-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::int16_t> reference(const std::string& text, const tts::SynthesisParams& p) {
  const auto& voice = tts::find_voice(p.voice);
  return tts::synthesize(tts::plan_speech(text, voice, p).utterance, voice).samples;
}

std::string random_text(std::mt19937_64& rng, int max_sentences, int max_words) {
  static const std::vector<std::string> words = {
      "the",   "scanner", "reads", "every", "page", "and",   "speaks", "it",    "aloud", "quietly",
      "seven", "lines",   "of",    "text",  "wait", "for",   "a",      "pause", "then",  "resume",
      "ink",   "paper",   "lamp",  "voice", "slow", "quick", "number", "42",    "door",  "window"};
  static const std::vector<std::string> ends = {".", "!", "?"};
  std::string out;
  int sentences = 1 + static_cast<int>(rng() % max_sentences);
  for (int s = 0; s < sentences; ++s) {
    int n = 1 + static_cast<int>(rng() % max_words);
    for (int w = 0; w < n; ++w) {
      std::string word = words[rng() % words.size()];
      if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      out += word;
      out += (w + 1 < n) ? (rng() % 8 == 0 ? ", " : " ") : ends[rng() % ends.size()];
    }
    if (s + 1 < sentences) out += ' ';
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome font_sizes() {
  TempDir dir;
  cli::BenchOptions opts;
  opts.config.sizes = {8, 24, 36, 48, 72};
  opts.config.chars = 1000;
  opts.csv_path = dir.path() / "bench.csv";
  std::ostringstream out, err;
  auto t0 = Clock::now();
  int rc = cli::cmd_bench(opts, out, err);
  double elapsed = seconds_since(t0);
  if (rc != 0) return {false, "bench exited " + std::to_string(rc) + ": " + err.str()};
  std::ifstream in(*opts.csv_path);
  std::string line;
  std::getline(in, line);
  bool ok = elapsed < 30.0;
  std::ostringstream detail;
  int rows = 0;
  while (std::getline(in, line)) {
    int pt = 0;
    std::size_t chars = 0, correct = 0;
    double acc = 0;
    if (std::sscanf(line.c_str(), "%d,%zu,%zu,%lf", &pt, &chars, &correct, &acc) != 4) return {false, "bad row " + line};
    double need = pt >= 24 ? 0.999 : 0.99;
    double exact = static_cast<double>(correct) / static_cast<double>(chars);
    ok = ok && chars >= 1000 && exact >= need;
    detail << pt << "pt=" << correct << "/" << chars << " ";
    ++rows;
  }
  ok = ok && rows == 5;
  detail << "in " << std::fixed << std::setprecision(2) << elapsed << " s";
  return {ok, detail.str()};
}

Outcome pdf_fixtures() {
  int total = 0, exact = 0;
  std::string first_bad;
  for (const auto& e : fs::directory_iterator(fs::path(LECTERN_FIXTURE_DIR) / "pdf")) {
    if (e.path().extension() != ".pdf") continue;
    ++total;
    auto truth_path = e.path();
    truth_path.replace_extension(".txt");
    try {
      auto d = doc::extract_text({doc::SourceKind::Pdf, read_file(e.path()), e.path().filename().string()});
      std::string joined;
      for (std::size_t i = 0; i < d.pages.size(); ++i) joined += (i ? "\f" : "") + d.pages[i];
      if (joined == read_file(truth_path)) {
        ++exact;
        continue;
      }
    } catch (const std::exception&) {
    }
    if (first_bad.empty()) first_bad = e.path().filename().string();
  }
  std::string detail = std::to_string(exact) + "/" + std::to_string(total) + " exact";
  if (!first_bad.empty()) detail += ", first mismatch " + first_bad;
  return {total >= 20 && exact == total, detail};
}

Outcome real_time() {
  TempDir dir;
  std::mt19937_64 rng(500);
  std::string text;
  int words = 0;
  while (words < 500) {
    std::string s = random_text(rng, 1, 12);
    words += static_cast<int>(std::count(s.begin(), s.end(), ' ')) + 1;
    text += s + " ";
  }
  write_file_atomic(dir.path() / "words.txt", text);
  cli::SpeakOptions opts;
  opts.input = dir.path() / "words.txt";
  opts.output = dir.path() / "words.wav";
  std::ostringstream out, err;
  auto t0 = Clock::now();
  int rc = cli::cmd_speak(opts, out, err);
  double wall = seconds_since(t0);
  if (rc != 0) return {false, "speak exited " + std::to_string(rc) + ": " + err.str()};
  auto clip = tts::decode_wav(read_file(opts.output));
  double audio = static_cast<double>(clip.samples.size()) / clip.sample_rate;
  std::ostringstream d;
  d << words << " words, wall " << std::fixed << std::setprecision(3) << wall << " s, audio " << audio
    << " s, RTF " << std::setprecision(4) << wall / audio;
  return {wall < audio, d.str()};
}

Outcome pause_resume() {
  std::mt19937_64 rng(6262);
  session::DocumentStore store;
  int identical = 0;
  const int pairs = 50;
  for (int k = 0; k < pairs; ++k) {
    std::string text = random_text(rng, 4, 8);
    doc::ExtractedDocument d;
    d.pages = {text};
    auto rec = store.add("doc", d);
    tts::SynthesisParams p;
    p.rate = 0.5 + static_cast<double>(rng() % 11) * 0.25;
    p.volume = static_cast<double>(rng() % 5) * 0.25;
    auto want = reference(text, p);
    std::size_t pause_at = 1 + rng() % (want.size() - 1);

    session::PlaybackSession s("s-acc", rec, p);
    s.command(session::Command::Play);
    std::vector<std::int16_t> got;
    std::size_t chunk = 1 + rng() % 4096;
    while (got.size() < pause_at) {
      auto c = s.next_chunk(std::min(chunk, pause_at - got.size()));
      got.insert(got.end(), c.begin(), c.end());
    }
    s.command(session::Command::Pause);
    s.command(session::Command::Resume);
    while (s.state() == session::PlaybackState::Playing) {
      auto c = s.next_chunk(chunk);
      got.insert(got.end(), c.begin(), c.end());
    }
    if (got == want) ++identical;
  }
  return {identical == pairs, std::to_string(identical) + "/" + std::to_string(pairs) + " byte-identical"};
}

Outcome rate_volume() {
  std::mt19937_64 rng(31);
  const auto& voice = tts::default_voice();
  long worst_rate_slack = 0;  // events minus deviation, minimum over texts
  int rate_ok = 0, vol_ok = 0, n = 20;
  for (int k = 0; k < n; ++k) {
    std::string text = random_text(rng, 3, 10);
    tts::SynthesisParams one, two, half;
    two.rate = 2.0;
    half.volume = 0.5;
    auto plan = tts::plan_speech(text, voice, one);
    long events = 0;
    for (const auto& s : plan.utterance.sentences) events += static_cast<long>(s.size());
    auto a = tts::synthesize(plan.utterance, voice).samples;
    auto b = reference(text, two);
    double dev = std::abs(static_cast<double>(b.size()) - static_cast<double>(a.size()) / 2.0);
    if (dev <= static_cast<double>(events)) ++rate_ok;
    long slack = events - static_cast<long>(std::ceil(dev));
    if (k == 0 || slack < worst_rate_slack) worst_rate_slack = slack;

    auto v = reference(text, half);
    bool within = v.size() == a.size();
    for (std::size_t i = 0; within && i < a.size(); ++i) within = std::abs(v[i] - 0.5 * a[i]) <= 1.0;
    if (within) ++vol_ok;
  }
  std::ostringstream d;
  d << "rate " << rate_ok << "/" << n << " within event count (min slack " << worst_rate_slack << "), volume "
    << vol_ok << "/" << n << " within 1 step";
  return {rate_ok == n && vol_ok == n, d.str()};
}

std::string raw_exchange(int port, const std::string& bytes) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error("socket failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(fd);
    throw std::runtime_error("connect failed");
  }
  std::size_t off = 0;
  while (off < bytes.size()) {
    ssize_t n = ::send(fd, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n <= 0) break;
    off += static_cast<std::size_t>(n);
  }
  ::shutdown(fd, SHUT_WR);
  std::string all;
  char buf[256];
  for (;;) {
    ssize_t n = ::recv(fd, buf, sizeof buf, 0);
    if (n <= 0) break;
    all.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fd);
  return all;
}

std::string random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, '\0');
  for (auto& c : s) c = static_cast<char>(rng() & 0xFF);
  return s;
}

std::size_t entries(const fs::path& dir) {
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

Outcome ingest_fidelity() {
  TempDir store_dir, reject_dir, fuzz_dir;
  std::mt19937_64 rng(1001);

  ingest::ServerConfig cfg;
  cfg.bind_address = "127.0.0.1";
  cfg.port = 0;
  cfg.watch_dir = store_dir.path();
  ingest::IngestServer server(cfg);
  server.start();
  int identical = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t len = i == 0 ? 0 : i == 1 ? (1u << 20) : rng() % ((1u << 20) + 1);
    std::string payload = random_bytes(rng, len);
    std::string name = "scan-" + std::to_string(i) + ".bin";
    ingest::IngestClient client("127.0.0.1", server.port());
    if (client.send(name, payload) == ingest::ack_ok() && read_file(store_dir.path() / name) == payload) ++identical;
  }
  server.stop();

  cfg.watch_dir = reject_dir.path();
  ingest::IngestServer rejecting(cfg);
  rejecting.start();
  int rejected = 0;
  const int corrupt = 200;
  for (int i = 0; i < corrupt; ++i) {
    std::string payload = random_bytes(rng, 1 + rng() % 4096);
    std::string frame = ingest::encode_frame("c" + std::to_string(i) + ".bin", payload);
    // Flip one bit in the payload or the trailing CRC.
    std::size_t payload_start = frame.size() - 4 - payload.size();
    std::size_t at = payload_start + rng() % (frame.size() - payload_start);
    frame[at] = static_cast<char>(frame[at] ^ (1 << (rng() % 8)));
    if (raw_exchange(rejecting.port(), frame) == "ER03\n") ++rejected;
  }
  std::size_t written = entries(reject_dir.path());
  rejecting.stop();

  cfg.watch_dir = fuzz_dir.path();
  ingest::IngestServer fuzzed(cfg);
  fuzzed.start();
  const int streams = 10000;
  int answered_well = 0;
  for (int i = 0; i < streams; ++i) {
    std::string s;
    switch (i % 4) {
      case 0: s = random_bytes(rng, rng() % 256); break;
      case 1: s = "OCRS" + random_bytes(rng, rng() % 128); break;
      case 2: {
        s = ingest::encode_frame("f.bin", random_bytes(rng, rng() % 200));
        int flips = 1 + static_cast<int>(rng() % 4);
        for (int f = 0; f < flips; ++f) s[rng() % s.size()] = static_cast<char>(rng() & 0xFF);
        break;
      }
      default: {
        s = ingest::encode_frame("g.bin", random_bytes(rng, rng() % 200));
        s.resize(rng() % s.size());
        break;
      }
    }
    std::string reply = raw_exchange(fuzzed.port(), s);
    // Every reply is a sequence of well-formed acks.
    bool well = true;
    std::size_t start = 0;
    for (std::size_t k = 0; k < reply.size(); ++k)
      if (reply[k] == '\n') {
        well = well && ingest::valid_ack(reply.substr(start, k + 1 - start));
        start = k + 1;
      }
    well = well && start == reply.size();
    if (well) ++answered_well;
  }
  // Parser-level fuzz over the same generator, outside the network path.
  for (int i = 0; i < streams; ++i) {
    std::string s = i % 2 ? random_bytes(rng, rng() % 256) : "OCRS" + random_bytes(rng, rng() % 128);
    try {
      ingest::decode_frame(s);
    } catch (const Error&) {
    }
  }
  ingest::IngestClient probe("127.0.0.1", fuzzed.port());
  bool alive = probe.send("alive.txt", "still here") == ingest::ack_ok();
  fuzzed.stop();

  std::ostringstream d;
  d << identical << "/100 stored byte-identical, " << rejected << "/" << corrupt << " corrupted frames got ER03 with "
    << written << " files written, " << streams << " fuzz streams, " << answered_well
    << " answered with valid acks, server " << (alive ? "alive" : "dead");
  return {identical == 100 && rejected == corrupt && written == 0 && alive && answered_well == streams, d.str()};
}

// Quadratic scan over code points, jumping past each match.
std::vector<std::pair<std::size_t, std::size_t>> naive(const std::u32string& h, const std::u32string& n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i + n.size() <= h.size()) {
    if (h.compare(i, n.size(), n) == 0) {
      out.emplace_back(i, i + n.size());
      i += n.size();
    } else {
      ++i;
    }
  }
  return out;
}

char32_t fold(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

Outcome search_oracle() {
  std::mt19937_64 rng(4040);
  const std::u32string alphabet = U"abAB éÉcxyz";
  int agree = 0;
  const int pairs = 10000;
  for (int i = 0; i < pairs; ++i) {
    std::u32string h, n;
    int letters = 2 + static_cast<int>(rng() % (alphabet.size() - 1));
    std::size_t hl = rng() % 301, nl = 1 + rng() % 6;
    for (std::size_t k = 0; k < hl; ++k) h.push_back(alphabet[rng() % letters]);
    for (std::size_t k = 0; k < nl; ++k) n.push_back(alphabet[rng() % letters]);
    bool cs = rng() % 2;
    auto spans = text::search_text(utf8_encode(h), utf8_encode(n), cs, {255, 255, 0});
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto& s : spans) got.emplace_back(s.start, s.end);
    if (!cs) {
      for (auto& c : h) c = fold(c);
      for (auto& c : n) c = fold(c);
    }
    if (got == naive(h, n)) ++agree;
  }
  return {agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) + " agree"};
}

Outcome state_machine() {
  using S = session::PlaybackState;
  using C = session::Command;
  const std::map<std::pair<S, C>, S> table = {
      {{S::Idle, C::Play}, S::Playing},     {{S::Playing, C::Pause}, S::Paused},
      {{S::Paused, C::Resume}, S::Playing}, {{S::Playing, C::Stop}, S::Stopped},
      {{S::Paused, C::Stop}, S::Stopped},   {{S::Stopped, C::Play}, S::Playing},
  };
  session::DocumentStore store;
  doc::ExtractedDocument d;
  d.pages = {"First sentence here. And a second one."};
  auto rec = store.add("sm", d);
  int pairs = 0, matched = 0, invalid = 0, unchanged = 0;
  for (S from : {S::Idle, S::Playing, S::Paused, S::Stopped}) {
    for (C cmd : {C::Play, C::Pause, C::Resume, C::Stop}) {
      ++pairs;
      session::PlaybackSession s("s-sm", rec, {});
      if (from != S::Idle) s.command(C::Play);
      if (from == S::Paused) {
        s.next_chunk(321);
        s.command(C::Pause);
      }
      if (from == S::Stopped) s.command(C::Stop);
      auto before = s.snapshot();
      auto it = table.find({from, cmd});
      auto pure = session::transition(from, cmd);
      bool pure_ok = it == table.end() ? !pure : (pure && *pure == it->second);
      try {
        S to = s.command(cmd);
        if (pure_ok && it != table.end() && to == it->second) ++matched;
      } catch (const Error& e) {
        if (it == table.end() && e.code() == ErrorCode::InvalidTransition && pure_ok) {
          ++matched;
          ++invalid;
          auto after = s.snapshot();
          if (after.state == before.state && after.position == before.position) ++unchanged;
        }
      }
    }
  }
  std::ostringstream out;
  out << matched << "/" << pairs << " pairs match the table, " << unchanged << "/" << invalid
      << " invalid pairs left the session unchanged";
  return {pairs == 16 && matched == 16 && invalid == 10 && unchanged == 10, out.str()};
}

// Canonical 44-byte PCM header built field by field.
std::string expected_header(std::uint32_t rate, std::uint32_t samples) {
  std::string h;
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) h.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  auto put16 = [&](std::uint16_t v) {
    h.push_back(static_cast<char>(v & 0xFF));
    h.push_back(static_cast<char>(v >> 8));
  };
  h += "RIFF";
  put32(36 + samples * 2);
  h += "WAVEfmt ";
  put32(16);
  put16(1);
  put16(1);
  put32(rate);
  put32(rate * 2);
  put16(2);
  put16(16);
  h += "data";
  put32(samples * 2);
  return h;
}

Outcome wav_exactness() {
  std::mt19937_64 rng(9001);
  int roundtrips = 0, headers = 0, payloads = 0;
  const int clips = 1000;
  for (int i = 0; i < clips; ++i) {
    tts::AudioClip c;
    c.sample_rate = i % 2 ? tts::kDefaultSampleRate : 8000 + static_cast<int>(rng() % 88000);
    c.samples.resize(rng() % 5000);
    for (auto& s : c.samples) s = static_cast<std::int16_t>(rng() & 0xFFFF);
    std::string bytes = tts::encode_wav(c);
    if (tts::decode_wav(bytes) == c) ++roundtrips;
    auto n = static_cast<std::uint32_t>(c.samples.size());
    if (bytes.substr(0, 44) == expected_header(static_cast<std::uint32_t>(c.sample_rate), n) &&
        bytes.size() == 44 + 2 * c.samples.size())
      ++headers;
    bool pcm = true;
    for (std::size_t k = 0; pcm && k < c.samples.size(); ++k) {
      auto u = static_cast<std::uint16_t>(c.samples[k]);
      pcm = static_cast<std::uint8_t>(bytes[44 + 2 * k]) == (u & 0xFF) &&
            static_cast<std::uint8_t>(bytes[45 + 2 * k]) == (u >> 8);
    }
    if (pcm) ++payloads;
  }
  std::ostringstream d;
  d << roundtrips << "/" << clips << " roundtrips, " << headers << "/" << clips << " headers, " << payloads << "/"
    << clips << " LE16 payloads";
  return {roundtrips == clips && headers == clips && payloads == clips, d.str()};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"font-size compatibility", font_sizes},
      {"fixture PDF extraction", pdf_fixtures},
      {"real-time speech", real_time},
      {"pause/resume sample-exactness", pause_resume},
      {"rate/volume contracts", rate_volume},
      {"ingest fidelity", ingest_fidelity},
      {"search oracle", search_oracle},
      {"state machine soundness", state_machine},
      {"WAV bit-exactness", wav_exactness},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << seconds_since(t0);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " (" << t.str() << " s)"
              << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
