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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lectern/tts/phonemes.hpp"

namespace lectern::tts {

// Sentences end after '.', '?' or '!' followed by whitespace or end of text.
std::vector<std::string> split_sentences(std::string_view text);

// English words for 0..999999, no "and".
std::vector<std::string> number_words(long n);

struct AbbreviationLexicon {
  // Keys are lowercase; matched case-insensitively at word boundaries.
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;  // longest key first
};

AbbreviationLexicon parse_abbreviations(std::string_view text);
const AbbreviationLexicon& bundled_abbreviations();

struct NormalizedText {
  std::vector<std::string> tokens;    // lowercase words, "," and "." pause marks
  std::vector<std::string> warnings;  // one per dropped symbol
};

inline bool is_pause_mark(std::string_view tok) { return tok == "," || tok == "."; }

NormalizedText normalize_text(std::string_view raw,
                              const AbbreviationLexicon& abbreviations = bundled_abbreviations());

using ExceptionLexicon = std::map<std::string, std::vector<PhonemeId>, std::less<>>;

ExceptionLexicon parse_exceptions(std::string_view text);
const ExceptionLexicon& bundled_exceptions();

// One rewrite rule: left context, matched letters, right context.
// Context symbols: ' ' word boundary, '#' one or more vowels, ':' zero or more
// consonants, '^' one consonant, '.' one voiced consonant, '+' one of e/i/y,
// '%' a suffix (er, e, es, ed, ing, ely). Other characters match literally.
struct LetterRule {
  std::string left;
  std::string match;
  std::string right;
  std::vector<PhonemeId> phonemes;
};

struct LetterRules {
  std::map<char, std::vector<LetterRule>> by_letter;  // first-match order
};

// Line format: left|match|right|PH PH ...; '_' stands for a word boundary.
LetterRules parse_letter_rules(std::string_view text);
const LetterRules& bundled_letter_rules();

// word must be lowercase a-z. Never empty for non-empty input.
std::vector<PhonemeId> g2p(std::string_view word, const ExceptionLexicon& exceptions = bundled_exceptions(),
                           const LetterRules& rules = bundled_letter_rules());

}  // namespace lectern::tts
