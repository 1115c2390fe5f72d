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

#include <random>

#include "doctest.h"
#include "lectern/io.hpp"
#include "lectern/text/text_tools.hpp"
#include "lectern/utf8.hpp"
#include "support.hpp"

using namespace lectern;
using namespace lectern::text;
using lectern::testing::code_of;

namespace {

const Rgb kRed{255, 0, 0};

std::vector<std::pair<std::size_t, std::size_t>> ranges(const std::vector<HighlightSpan>& spans) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& s : spans) out.emplace_back(s.start, s.end);
  return out;
}

// Quadratic reference: try every start, jump past each match.
std::vector<std::pair<std::size_t, std::size_t>> naive(const std::u32string& h, const std::u32string& n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i + n.size() <= h.size()) {
    bool hit = true;
    for (std::size_t k = 0; k < n.size() && hit; ++k) hit = h[i + k] == n[k];
    if (hit) {
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

std::u32string folded(std::u32string s) {
  for (auto& c : s) c = fold(c);
  return s;
}

}  // namespace

TEST_CASE("search examples") {
  CHECK(ranges(search_text("abab", "ab", true, kRed)) == decltype(ranges({})){{0, 2}, {2, 4}});
  CHECK(ranges(search_text("aaa", "aa", true, kRed)) == decltype(ranges({})){{0, 2}});
  CHECK(search_text("speech", "x", true, kRed).empty());
  CHECK(code_of([] { search_text("abc", "", true, kRed); }) == ErrorCode::EmptyQuery);
  auto spans = search_text("ABab", "ab", false, kRed);
  CHECK(ranges(spans) == decltype(ranges({})){{0, 2}, {2, 4}});
  for (const auto& s : spans) CHECK(s.color == kRed);
  CHECK(search_text("ABab", "ab", true, kRed).size() == 1);
  // Offsets count code points, not bytes.
  CHECK(ranges(search_text("\xC3\xA9t\xC3\xA9 \xC3\xA9t\xC3\xA9", "t\xC3\xA9", true, kRed)) ==
        decltype(ranges({})){{1, 3}, {5, 7}});
  CHECK(search_text("\xC3\x89T\xC3\x89", "\xC3\xA9t\xC3\xA9", false, kRed).size() == 1);
}

TEST_CASE("search matches the naive scanner on random pairs") {
  std::mt19937_64 rng(2024);
  const std::u32string alphabet = U"abAB éÉc";
  for (int iter = 0; iter < 10000; ++iter) {
    std::u32string h, n;
    std::size_t hl = rng() % 201, nl = 1 + rng() % 5;
    int letters = 2 + static_cast<int>(rng() % (alphabet.size() - 1));
    for (std::size_t i = 0; i < hl; ++i) h.push_back(alphabet[rng() % letters]);
    for (std::size_t i = 0; i < nl; ++i) n.push_back(alphabet[rng() % letters]);
    bool cs = rng() % 2;
    auto got = ranges(search_text(utf8_encode(h), utf8_encode(n), cs, kRed));
    auto want = cs ? naive(h, n) : naive(folded(h), folded(n));
    REQUIRE_MESSAGE(got == want, "iteration " << iter);
  }
}

TEST_CASE("colors") {
  CHECK(parse_color("#FF8000") == Rgb{255, 128, 0});
  CHECK(parse_color("#ff8000") == Rgb{255, 128, 0});
  CHECK(format_color({1, 2, 255}) == "#0102ff");
  CHECK(code_of([] { parse_color("red"); }) == ErrorCode::BadParams);
  CHECK(code_of([] { parse_color("#12345"); }) == ErrorCode::BadParams);
  CHECK(code_of([] { parse_color("#12345g"); }) == ErrorCode::BadParams);
  DisplayPrefs prefs;
  CHECK(prefs.highlight_color == Rgb{255, 255, 0});
  CHECK(prefs.text_color == Rgb{0, 0, 0});
}

TEST_CASE("highlights") {
  auto segs = apply_highlights("abc", {{1, 2, kRed}});
  REQUIRE(segs.size() == 3);
  CHECK(segs[0] == Segment{"a", false, {}});
  CHECK(segs[1] == Segment{"b", true, kRed});
  CHECK(segs[2] == Segment{"c", false, {}});
  auto plain = apply_highlights("abc", {});
  REQUIRE(plain.size() == 1);
  CHECK(plain[0].text == "abc");
  CHECK(code_of([] { apply_highlights("abc", {{0, 2, kRed}, {1, 3, kRed}}); }) == ErrorCode::OverlappingSpans);
  CHECK(code_of([] { apply_highlights("abc", {{2, 2, kRed}}); }) == ErrorCode::InvalidSpan);
  CHECK(code_of([] { apply_highlights("abc", {{1, 4, kRed}}); }) == ErrorCode::InvalidSpan);
  // Unsorted input is accepted.
  auto two = apply_highlights("abcd", {{2, 3, kRed}, {0, 1, kRed}});
  CHECK(two.size() == 4);
}

TEST_CASE("highlighting is lossless") {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 2000; ++iter) {
    std::u32string t;
    std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) t.push_back(rng() % 4 == 0 ? U'é' : static_cast<char32_t>(U'a' + rng() % 3));
    std::vector<HighlightSpan> spans;
    std::size_t pos = 0;
    while (len > 0 && pos < len) {
      std::size_t start = pos + rng() % 5;
      if (start >= len) break;
      std::size_t end = start + 1 + rng() % 4;
      if (end > len) end = len;
      spans.push_back({start, end, {static_cast<std::uint8_t>(rng()), 0, 0}});
      pos = end;
    }
    std::string text = utf8_encode(t);
    auto segs = apply_highlights(text, spans);
    std::string joined;
    std::size_t hl = 0;
    for (const auto& s : segs) {
      joined += s.text;
      hl += s.highlighted;
    }
    CHECK(joined == text);
    CHECK(hl == spans.size());
  }
}

TEST_CASE("saved text") {
  lectern::testing::TempDir dir;
  doc::ExtractedDocument d;
  d.pages = {"Hi"};
  CHECK(save_text(d, dir / "a.txt") == 3);
  CHECK(read_file(dir / "a.txt") == "Hi\n");
  d.pages = {"a", "b"};
  save_text(d, dir / "b.txt");
  CHECK(read_file(dir / "b.txt") == "a\x0C" "b\n");
  CHECK(load_text(dir / "b.txt") == std::vector<std::string>{"a", "b"});
  CHECK(code_of([&] { save_text(d, dir / "missing" / "dir" / "c.txt"); }) == ErrorCode::IoError);
}

TEST_CASE("saved text roundtrip") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> pages(1 + rng() % 4);
    for (auto& p : pages) {
      std::u32string t;
      std::size_t len = rng() % 40;
      for (std::size_t i = 0; i < len; ++i) {
        auto r = rng() % 10;
        t.push_back(r == 0 ? U'\n' : r == 1 ? U'Ω' : static_cast<char32_t>(0x20 + rng() % 95));
      }
      p = utf8_encode(t);
    }
    CHECK(parse_saved_text(serialize_text(pages)) == pages);
  }
}
