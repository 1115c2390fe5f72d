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

#include "encodings.hpp"

#include <string>
#include <unordered_map>

namespace lectern::doc {

namespace {

// 0x20..0x7E, shared except for codes 0x27 and 0x60.
constexpr std::string_view kAscii[95] = {
    "space",      "exclam",    "quotedbl",     "numbersign", "dollar",      "percent",    "ampersand",
    "quotesingle", "parenleft", "parenright",  "asterisk",   "plus",        "comma",      "hyphen",
    "period",     "slash",     "zero",         "one",        "two",         "three",      "four",
    "five",       "six",       "seven",        "eight",      "nine",        "colon",      "semicolon",
    "less",       "equal",     "greater",      "question",   "at",          "A",          "B",
    "C",          "D",         "E",            "F",          "G",           "H",          "I",
    "J",          "K",         "L",            "M",          "N",           "O",          "P",
    "Q",          "R",         "S",            "T",          "U",           "V",          "W",
    "X",          "Y",         "Z",            "bracketleft", "backslash",  "bracketright", "asciicircum",
    "underscore", "grave",     "a",            "b",          "c",           "d",          "e",
    "f",          "g",         "h",            "i",          "j",           "k",          "l",
    "m",          "n",         "o",            "p",          "q",           "r",          "s",
    "t",          "u",         "v",            "w",          "x",           "y",          "z",
    "braceleft",  "bar",       "braceright",   "asciitilde",
};

// 0x80..0xFF.
constexpr std::string_view kWinAnsiHigh[128] = {
    "Euro", "", "quotesinglbase", "florin", "quotedblbase", "ellipsis", "dagger", "daggerdbl",
    "circumflex", "perthousand", "Scaron", "guilsinglleft", "OE", "", "Zcaron", "",
    "", "quoteleft", "quoteright", "quotedblleft", "quotedblright", "bullet", "endash", "emdash",
    "tilde", "trademark", "scaron", "guilsinglright", "oe", "", "zcaron", "Ydieresis",
    "space", "exclamdown", "cent", "sterling", "currency", "yen", "brokenbar", "section",
    "dieresis", "copyright", "ordfeminine", "guillemotleft", "logicalnot", "hyphen", "registered", "macron",
    "degree", "plusminus", "twosuperior", "threesuperior", "acute", "mu", "paragraph", "periodcentered",
    "cedilla", "onesuperior", "ordmasculine", "guillemotright", "onequarter", "onehalf", "threequarters", "questiondown",
    "Agrave", "Aacute", "Acircumflex", "Atilde", "Adieresis", "Aring", "AE", "Ccedilla",
    "Egrave", "Eacute", "Ecircumflex", "Edieresis", "Igrave", "Iacute", "Icircumflex", "Idieresis",
    "Eth", "Ntilde", "Ograve", "Oacute", "Ocircumflex", "Otilde", "Odieresis", "multiply",
    "Oslash", "Ugrave", "Uacute", "Ucircumflex", "Udieresis", "Yacute", "Thorn", "germandbls",
    "agrave", "aacute", "acircumflex", "atilde", "adieresis", "aring", "ae", "ccedilla",
    "egrave", "eacute", "ecircumflex", "edieresis", "igrave", "iacute", "icircumflex", "idieresis",
    "eth", "ntilde", "ograve", "oacute", "ocircumflex", "otilde", "odieresis", "divide",
    "oslash", "ugrave", "uacute", "ucircumflex", "udieresis", "yacute", "thorn", "ydieresis",
};

constexpr char16_t kCp1252High[32] = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0,      0x017D, 0,      0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178,
};

struct StdHigh {
  unsigned code;
  std::string_view name;
};

constexpr StdHigh kStandardHigh[] = {
    {0xA1, "exclamdown"},    {0xA2, "cent"},          {0xA3, "sterling"},       {0xA4, "fraction"},
    {0xA5, "yen"},           {0xA6, "florin"},        {0xA7, "section"},        {0xA8, "currency"},
    {0xA9, "quotesingle"},   {0xAA, "quotedblleft"},  {0xAB, "guillemotleft"},  {0xAC, "guilsinglleft"},
    {0xAD, "guilsinglright"}, {0xAE, "fi"},           {0xAF, "fl"},             {0xB1, "endash"},
    {0xB2, "dagger"},        {0xB3, "daggerdbl"},     {0xB4, "periodcentered"}, {0xB6, "paragraph"},
    {0xB7, "bullet"},        {0xB8, "quotesinglbase"}, {0xB9, "quotedblbase"},  {0xBA, "quotedblright"},
    {0xBB, "guillemotright"}, {0xBC, "ellipsis"},     {0xBD, "perthousand"},    {0xBF, "questiondown"},
    {0xC1, "grave"},         {0xC2, "acute"},         {0xC3, "circumflex"},     {0xC4, "tilde"},
    {0xC5, "macron"},        {0xC6, "breve"},         {0xC7, "dotaccent"},      {0xC8, "dieresis"},
    {0xCA, "ring"},          {0xCB, "cedilla"},       {0xCD, "hungarumlaut"},   {0xCE, "ogonek"},
    {0xCF, "caron"},         {0xD0, "emdash"},        {0xE1, "AE"},             {0xE3, "ordfeminine"},
    {0xE8, "Lslash"},        {0xE9, "Oslash"},        {0xEA, "OE"},             {0xEB, "ordmasculine"},
    {0xF1, "ae"},            {0xF5, "dotlessi"},      {0xF8, "lslash"},         {0xF9, "oslash"},
    {0xFA, "oe"},            {0xFB, "germandbls"},
};

struct Extra {
  std::string_view name;
  char32_t cp;
};

constexpr Extra kExtraNames[] = {
    {"quoteright", 0x2019}, {"quoteleft", 0x2018}, {"fraction", 0x2044}, {"fi", 0xFB01},
    {"fl", 0xFB02},         {"dotlessi", 0x0131},  {"Lslash", 0x0141},   {"lslash", 0x0142},
    {"breve", 0x02D8},      {"dotaccent", 0x02D9}, {"ring", 0x02DA},     {"hungarumlaut", 0x02DD},
    {"ogonek", 0x02DB},     {"caron", 0x02C7},     {"minus", 0x2212},    {"nbspace", 0x00A0},
    {"sfthyphen", 0x00AD},  {"ff", 0xFB00},        {"ffi", 0xFB03},      {"ffl", 0xFB04},
};

GlyphNames make_encoding(bool standard) {
  GlyphNames e{};
  for (unsigned c = 0x20; c <= 0x7E; ++c) e[c] = kAscii[c - 0x20];
  if (standard) {
    e[0x27] = "quoteright";
    e[0x60] = "quoteleft";
    for (const auto& h : kStandardHigh) e[h.code] = h.name;
  } else {
    for (unsigned c = 0x80; c <= 0xFF; ++c) e[c] = kWinAnsiHigh[c - 0x80];
  }
  return e;
}

std::unordered_map<std::string_view, char32_t> make_names() {
  std::unordered_map<std::string_view, char32_t> m;
  for (unsigned c = 0x20; c <= 0x7E; ++c) m.emplace(kAscii[c - 0x20], c);
  for (unsigned c = 0x80; c <= 0x9F; ++c)
    if (!kWinAnsiHigh[c - 0x80].empty()) m.emplace(kWinAnsiHigh[c - 0x80], kCp1252High[c - 0x80]);
  // A0 and AD repeat "space" and "hyphen"; emplace keeps the ASCII value.
  for (unsigned c = 0xA0; c <= 0xFF; ++c) m.emplace(kWinAnsiHigh[c - 0x80], c);
  for (const auto& x : kExtraNames) m.emplace(x.name, x.cp);
  return m;
}

int hex4(std::string_view s) {
  int v = 0;
  for (char c : s) {
    int d = (c >= '0' && c <= '9') ? c - '0' : (c >= 'A' && c <= 'F') ? c - 'A' + 10 : -1;
    if (d < 0) return -1;
    v = v * 16 + d;
  }
  return v;
}

bool valid_scalar(long cp) { return cp > 0 && cp <= 0x10FFFF && (cp < 0xD800 || cp > 0xDFFF); }

}  // namespace

const GlyphNames& standard_encoding() {
  static const GlyphNames e = make_encoding(true);
  return e;
}

const GlyphNames& winansi_encoding() {
  static const GlyphNames e = make_encoding(false);
  return e;
}

char32_t glyph_unicode(std::string_view name) {
  static const auto names = make_names();
  if (auto it = names.find(name); it != names.end()) return it->second;
  // Suffixes such as "a.sc" name variants of the base glyph.
  if (auto dot = name.find('.'); dot != std::string_view::npos && dot > 0) return glyph_unicode(name.substr(0, dot));
  if (name.size() == 7 && name.substr(0, 3) == "uni") {
    int v = hex4(name.substr(3));
    return valid_scalar(v) ? static_cast<char32_t>(v) : 0;
  }
  if ((name.size() == 5 || name.size() == 6 || name.size() == 7) && name[0] == 'u') {
    long v = 0;
    for (char c : name.substr(1)) {
      int d = hex4(std::string_view(&c, 1));
      if (d < 0) return 0;
      v = v * 16 + d;
    }
    return valid_scalar(v) ? static_cast<char32_t>(v) : 0;
  }
  return 0;
}

int winansi_code(char32_t cp) {
  if (cp >= 0x20 && cp <= 0x7E) return static_cast<int>(cp);
  if (cp >= 0xA0 && cp <= 0xFF) return static_cast<int>(cp);
  for (int i = 0; i < 32; ++i)
    if (kCp1252High[i] && kCp1252High[i] == cp) return 0x80 + i;
  return -1;
}

}  // namespace lectern::doc
