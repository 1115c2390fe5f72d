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

#include "lectern/tts/text_frontend.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "lectern/embedded_data.hpp"
#include "lectern/error.hpp"
#include "lectern/utf8.hpp"

namespace lectern::tts {

namespace {

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0xA0 || c == 0x2028 || c == 0x2029;
}
bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_alnum(char32_t c) { return is_ascii_alpha(c) || is_digit(c); }
char32_t lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

const char* const kOnes[] = {"zero",    "one",     "two",       "three",    "four",
                             "five",    "six",     "seven",     "eight",    "nine",
                             "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
                             "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
const char* const kTens[] = {"",      "",      "twenty",  "thirty", "forty",
                             "fifty", "sixty", "seventy", "eighty", "ninety"};

void below_thousand(long n, std::vector<std::string>& out) {
  if (n >= 100) {
    out.emplace_back(kOnes[n / 100]);
    out.emplace_back("hundred");
    n %= 100;
    if (n == 0) return;
  }
  if (n >= 20) {
    out.emplace_back(kTens[n / 10]);
    if (n % 10) out.emplace_back(kOnes[n % 10]);
  } else {
    out.emplace_back(kOnes[n]);
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos && h == line.find_first_not_of(" \t"))
      continue;
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<PhonemeId> parse_phonemes(const std::string& s, const std::string& where) {
  std::vector<PhonemeId> out;
  std::istringstream in(s);
  std::string ph;
  while (in >> ph) {
    auto id = phoneme_id(ph);
    if (!id) throw Error(ErrorCode::UnknownPhoneme, "unknown phoneme " + ph + " in " + where);
    out.push_back(*id);
  }
  return out;
}

std::string describe(char32_t c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
  std::string out = std::string("dropped symbol ") + buf;
  if (c >= 0x20 && c != 0x7F) out += " '" + utf8_encode(std::u32string(1, c)) + "'";
  return out;
}

// Punctuation that is known but carries no sound.
bool silent_punct(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U'(': case U')': case U'[': case U']': case U'{': case U'}':
    case U'-': case U'/': case U'_': case 0x2018: case 0x2019: case 0x201C: case 0x201D:
    case 0x2013: case 0x2014: case 0x2026:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::u32string cps = utf8_decode(text);
  std::vector<std::string> out;
  auto flush = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(cps[b])) ++b;
    while (e > b && is_space(cps[e - 1])) --e;
    if (e > b) out.push_back(utf8_encode(cps.substr(b, e - b)));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t c = cps[i];
    if ((c == U'.' || c == U'?' || c == U'!') && (i + 1 == cps.size() || is_space(cps[i + 1]))) {
      flush(start, i + 1);
      start = i + 1;
    }
  }
  flush(start, cps.size());
  return out;
}

std::vector<std::string> number_words(long n) {
  if (n < 0 || n > 999999) throw Error(ErrorCode::BadParams, "number out of range");
  std::vector<std::string> out;
  if (n >= 1000) {
    below_thousand(n / 1000, out);
    out.emplace_back("thousand");
    n %= 1000;
    if (n == 0) return out;
  }
  below_thousand(n, out);
  return out;
}

AbbreviationLexicon parse_abbreviations(std::string_view text) {
  AbbreviationLexicon lex;
  for (const auto& line : lines_of(text)) {
    std::istringstream in(line);
    std::string key, w;
    in >> key;
    std::vector<std::string> words;
    while (in >> w) words.push_back(w);
    if (words.empty()) throw Error(ErrorCode::BadParams, "abbreviation without expansion: " + key);
    lex.entries.emplace_back(key, std::move(words));
  }
  std::stable_sort(lex.entries.begin(), lex.entries.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  return lex;
}

const AbbreviationLexicon& bundled_abbreviations() {
  static const AbbreviationLexicon lex =
      parse_abbreviations(embedded_file("lexicon/abbreviations.txt"));
  return lex;
}

NormalizedText normalize_text(std::string_view raw, const AbbreviationLexicon& abbreviations) {
  std::u32string s = utf8_decode(raw);
  std::vector<std::u32string> keys;
  keys.reserve(abbreviations.entries.size());
  for (const auto& e : abbreviations.entries) keys.push_back(utf8_decode(e.first));

  NormalizedText out;
  auto pause = [&](bool full_stop) {
    if (out.tokens.empty()) return;
    auto& last = out.tokens.back();
    if (is_pause_mark(last)) {
      if (full_stop) last = ".";
      return;
    }
    out.tokens.emplace_back(full_stop ? "." : ",");
  };

  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    char32_t c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    bool matched = false;
    bool word_start = i == 0 || !is_alnum(s[i - 1]);
    for (std::size_t k = 0; k < keys.size() && !matched; ++k) {
      const auto& key = keys[k];
      if (i + key.size() > n) continue;
      if (is_alnum(key.front()) && !word_start) continue;
      bool eq = true;
      for (std::size_t j = 0; j < key.size() && eq; ++j) eq = lower(s[i + j]) == key[j];
      if (!eq) continue;
      std::size_t end = i + key.size();
      if (is_alnum(key.back()) && end < n && is_alnum(s[end])) continue;
      for (const auto& w : abbreviations.entries[k].second) out.tokens.push_back(w);
      i = end;
      matched = true;
    }
    if (matched) continue;

    if (is_ascii_alpha(c)) {
      std::string word;
      while (i < n && (is_ascii_alpha(s[i]) ||
                       ((s[i] == U'\'' || s[i] == 0x2019) && i + 1 < n && is_ascii_alpha(s[i + 1]) &&
                        !word.empty()))) {
        if (is_ascii_alpha(s[i])) word.push_back(static_cast<char>(lower(s[i])));
        ++i;
      }
      out.tokens.push_back(word);
      continue;
    }
    if (is_digit(c)) {
      std::string digits;
      while (i < n) {
        if (is_digit(s[i])) {
          digits.push_back(static_cast<char>(s[i]));
          ++i;
        } else if (s[i] == U',' && !digits.empty() && i + 3 < n && is_digit(s[i + 1]) &&
                   is_digit(s[i + 2]) && is_digit(s[i + 3]) &&
                   (i + 4 == n || !is_digit(s[i + 4]))) {
          ++i;  // thousands separator
        } else {
          break;
        }
      }
      std::size_t sig = digits.find_first_not_of('0');
      std::string trimmed = sig == std::string::npos ? "0" : digits.substr(sig);
      if (trimmed.size() <= 6) {
        for (auto& w : number_words(std::stol(trimmed))) out.tokens.push_back(w);
      } else {
        for (char d : digits) out.tokens.emplace_back(kOnes[d - '0']);
      }
      if (i + 1 < n && s[i] == U'.' && is_digit(s[i + 1])) {
        out.tokens.emplace_back("point");
        ++i;
        while (i < n && is_digit(s[i])) out.tokens.emplace_back(kOnes[s[i++] - U'0']);
      }
      continue;
    }
    if (c == U',' || c == U';' || c == U':') {
      pause(false);
    } else if (c == U'.' || c == U'?' || c == U'!') {
      pause(true);
    } else if (!silent_punct(c)) {
      out.warnings.push_back(describe(c));
    }
    ++i;
  }
  return out;
}

ExceptionLexicon parse_exceptions(std::string_view text) {
  ExceptionLexicon lex;
  for (const auto& line : lines_of(text)) {
    auto sp = line.find_first_of(" \t");
    if (sp == std::string::npos) throw Error(ErrorCode::BadParams, "exception without phonemes: " + line);
    std::string word = line.substr(0, sp);
    auto phs = parse_phonemes(line.substr(sp + 1), "exception " + word);
    if (phs.empty()) throw Error(ErrorCode::BadParams, "exception without phonemes: " + word);
    lex[word] = std::move(phs);
  }
  return lex;
}

const ExceptionLexicon& bundled_exceptions() {
  static const ExceptionLexicon lex = parse_exceptions(embedded_file("lexicon/exceptions.txt"));
  return lex;
}

LetterRules parse_letter_rules(std::string_view text) {
  LetterRules rules;
  for (const auto& line : lines_of(text)) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      auto bar = line.find('|', start);
      if (bar == std::string::npos) {
        f.push_back(line.substr(start));
        break;
      }
      f.push_back(line.substr(start, bar - start));
      start = bar + 1;
    }
    if (f.size() != 4 || f[1].empty())
      throw Error(ErrorCode::BadParams, "bad letter rule: " + line);
    auto unbar = [](std::string s) {
      std::replace(s.begin(), s.end(), '_', ' ');
      return s;
    };
    LetterRule r{unbar(f[0]), f[1], unbar(f[2]), parse_phonemes(f[3], "rule " + line)};
    rules.by_letter[r.match[0]].push_back(std::move(r));
  }
  return rules;
}

const LetterRules& bundled_letter_rules() {
  static const LetterRules rules = parse_letter_rules(embedded_file("lexicon/letter_rules.txt"));
  return rules;
}

namespace {

bool vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }
bool letter(char c) { return c >= 'a' && c <= 'z'; }
bool consonant(char c) { return letter(c) && !vowel(c); }
bool voiced_consonant(char c) { return std::string_view("bdvgjlmnrwz").find(c) != std::string_view::npos; }
bool front_vowel(char c) { return c == 'e' || c == 'i' || c == 'y'; }
bool at_class(char c) { return std::string_view("tsrdlznj").find(c) != std::string_view::npos; }
bool sibilant(char c) { return std::string_view("scgzxj").find(c) != std::string_view::npos; }

bool match_class(char pat, char c) {
  switch (pat) {
    case ' ': return !letter(c);
    case '^': return consonant(c);
    case '.': return voiced_consonant(c);
    case '+': return front_vowel(c);
    case '@': return at_class(c);
    case '&': return sibilant(c);
    default: return pat == c;
  }
}

// w is padded with one space on each side.
bool match_right(const std::string& pat, const std::string& w, std::size_t pos) {
  for (char p : pat) {
    if (p == '#') {
      if (pos >= w.size() || !vowel(w[pos])) return false;
      while (pos < w.size() && vowel(w[pos])) ++pos;
    } else if (p == ':') {
      while (pos < w.size() && consonant(w[pos])) ++pos;
    } else if (p == '%') {
      static const char* const suffixes[] = {"ing", "ely", "er", "es", "ed", "e"};
      bool ok = false;
      for (const char* sfx : suffixes) {
        std::string_view sv(sfx);
        if (w.compare(pos, sv.size(), sv) == 0) {
          pos += sv.size();
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    } else {
      if (pos >= w.size() || !match_class(p, w[pos])) return false;
      ++pos;
    }
  }
  return true;
}

bool match_left(const std::string& pat, const std::string& w, std::size_t pos) {
  // pos is one past the last character available to the context.
  for (auto it = pat.rbegin(); it != pat.rend(); ++it) {
    char p = *it;
    if (p == '#') {
      if (pos == 0 || !vowel(w[pos - 1])) return false;
      while (pos > 0 && vowel(w[pos - 1])) --pos;
    } else if (p == ':') {
      while (pos > 0 && consonant(w[pos - 1])) --pos;
    } else {
      if (pos == 0 || !match_class(p, w[pos - 1])) return false;
      --pos;
    }
  }
  return true;
}

const char* const kLetterNames[26] = {
    "EY",       "B IY",  "S IY",     "D IY",  "IY",      "EH F",     "JH IY",
    "EY CH",    "AY",    "JH EY",    "K EY",  "EH L",    "EH M",     "EH N",
    "OW",       "P IY",  "K Y UW",   "AA R",  "EH S",    "T IY",     "Y UW",
    "V IY",     "D AH B AH L Y UW", "EH K S", "W AY", "Z IY"};

}  // namespace

std::vector<PhonemeId> g2p(std::string_view word, const ExceptionLexicon& exceptions,
                           const LetterRules& rules) {
  if (word.empty()) return {};
  if (auto it = exceptions.find(word); it != exceptions.end()) return it->second;
  std::string w = " " + std::string(word) + " ";
  std::vector<PhonemeId> out;
  std::size_t i = 1;
  while (i + 1 < w.size()) {
    bool applied = false;
    auto group = rules.by_letter.find(w[i]);
    if (group != rules.by_letter.end()) {
      for (const auto& r : group->second) {
        if (w.compare(i, r.match.size(), r.match) != 0) continue;
        if (i + r.match.size() > w.size() - 1) continue;
        if (!match_left(r.left, w, i)) continue;
        if (!match_right(r.right, w, i + r.match.size())) continue;
        out.insert(out.end(), r.phonemes.begin(), r.phonemes.end());
        i += r.match.size();
        applied = true;
        break;
      }
    }
    if (!applied) ++i;
  }
  if (!out.empty()) return out;
  for (char c : word) {
    if (!letter(c)) continue;
    auto phs = parse_phonemes(kLetterNames[c - 'a'], "letter names");
    out.insert(out.end(), phs.begin(), phs.end());
  }
  return out;
}

}  // namespace lectern::tts
