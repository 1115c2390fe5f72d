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

#include "pdf_lexer.hpp"

#include "lectern/error.hpp"

namespace lectern::doc {

namespace {

int hexval(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void malformed(const std::string& what, std::size_t at) {
  throw Error(ErrorCode::MalformedDocument, what, at);
}

}  // namespace

void Lexer::skip_space() {
  while (pos_ < d_.size()) {
    char c = d_[pos_];
    if (pdf_space(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < d_.size() && d_[pos_] != '\n' && d_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

Token Lexer::peek() {
  std::size_t save = pos_;
  Token t = next();
  pos_ = save;
  return t;
}

Token Lexer::next() {
  skip_space();
  Token t;
  t.offset = pos_;
  if (pos_ >= d_.size()) return t;
  char c = d_[pos_];
  switch (c) {
    case '(':
      return literal_string(pos_);
    case '<':
      if (pos_ + 1 < d_.size() && d_[pos_ + 1] == '<') {
        pos_ += 2;
        t.kind = TokKind::DictOpen;
        return t;
      }
      return hex_string(pos_);
    case '>':
      if (pos_ + 1 < d_.size() && d_[pos_ + 1] == '>') {
        pos_ += 2;
        t.kind = TokKind::DictClose;
        return t;
      }
      malformed("stray '>'", pos_);
    case '[':
      ++pos_;
      t.kind = TokKind::ArrayOpen;
      return t;
    case ']':
      ++pos_;
      t.kind = TokKind::ArrayClose;
      return t;
    case '/':
      return name(pos_);
    case ')':
      malformed("stray ')'", pos_);
    case '{':
    case '}':
      ++pos_;
      t.kind = TokKind::Keyword;
      t.text = std::string(1, c);
      return t;
    default:
      break;
  }
  std::size_t start = pos_;
  while (pos_ < d_.size() && !pdf_space(d_[pos_]) && !pdf_delim(d_[pos_])) ++pos_;
  t.text = std::string(d_.substr(start, pos_ - start));
  // Number: optional sign, digits, at most one '.'.
  std::size_t i = 0;
  if (i < t.text.size() && (t.text[i] == '+' || t.text[i] == '-')) ++i;
  bool digits = false, dot = false, ok = i < t.text.size();
  for (; i < t.text.size() && ok; ++i) {
    char ch = t.text[i];
    if (ch >= '0' && ch <= '9') {
      digits = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      ok = false;
    }
  }
  if (ok && digits) {
    t.kind = TokKind::Number;
    t.integer = !dot;
    double v = 0, scale = 1;
    bool after_dot = false, neg = t.text[0] == '-';
    for (char ch : t.text) {
      if (ch == '.') {
        after_dot = true;
      } else if (ch >= '0' && ch <= '9') {
        if (after_dot) {
          scale /= 10;
          v += (ch - '0') * scale;
        } else {
          v = v * 10 + (ch - '0');
        }
      }
    }
    t.number = neg ? -v : v;
    return t;
  }
  if (t.text.empty()) malformed("unexpected byte", start);
  t.kind = TokKind::Keyword;
  return t;
}

Token Lexer::literal_string(std::size_t start) {
  Token t;
  t.kind = TokKind::String;
  t.offset = start;
  ++pos_;
  int depth = 1;
  while (true) {
    if (pos_ >= d_.size()) malformed("unterminated string", start);
    char c = d_[pos_++];
    if (c == '(') {
      ++depth;
      t.text.push_back(c);
    } else if (c == ')') {
      if (--depth == 0) break;
      t.text.push_back(c);
    } else if (c == '\\') {
      if (pos_ >= d_.size()) malformed("unterminated string", start);
      char e = d_[pos_++];
      switch (e) {
        case 'n': t.text.push_back('\n'); break;
        case 'r': t.text.push_back('\r'); break;
        case 't': t.text.push_back('\t'); break;
        case 'b': t.text.push_back('\b'); break;
        case 'f': t.text.push_back('\f'); break;
        case '(': case ')': case '\\': t.text.push_back(e); break;
        case '\r':
          if (pos_ < d_.size() && d_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (e >= '0' && e <= '7') {
            int v = e - '0';
            for (int k = 0; k < 2 && pos_ < d_.size() && d_[pos_] >= '0' && d_[pos_] <= '7'; ++k)
              v = v * 8 + (d_[pos_++] - '0');
            t.text.push_back(static_cast<char>(v & 0xFF));
          } else {
            t.text.push_back(e);  // unknown escape: backslash ignored
          }
      }
    } else if (c == '\r') {
      // End-of-line in a string reads as a single LF.
      if (pos_ < d_.size() && d_[pos_] == '\n') ++pos_;
      t.text.push_back('\n');
    } else {
      t.text.push_back(c);
    }
  }
  return t;
}

Token Lexer::hex_string(std::size_t start) {
  Token t;
  t.kind = TokKind::String;
  t.offset = start;
  ++pos_;
  int hi = -1;
  while (true) {
    if (pos_ >= d_.size()) malformed("unterminated hex string", start);
    char c = d_[pos_++];
    if (c == '>') break;
    if (pdf_space(c)) continue;
    int v = hexval(c);
    if (v < 0) malformed("bad hex digit", pos_ - 1);
    if (hi < 0) {
      hi = v;
    } else {
      t.text.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) t.text.push_back(static_cast<char>(hi * 16));
  return t;
}

Token Lexer::name(std::size_t start) {
  Token t;
  t.kind = TokKind::Name;
  t.offset = start;
  ++pos_;
  while (pos_ < d_.size() && !pdf_space(d_[pos_]) && !pdf_delim(d_[pos_])) {
    char c = d_[pos_++];
    if (c == '#' && pos_ + 1 < d_.size() && hexval(d_[pos_]) >= 0 && hexval(d_[pos_ + 1]) >= 0) {
      t.text.push_back(static_cast<char>(hexval(d_[pos_]) * 16 + hexval(d_[pos_ + 1])));
      pos_ += 2;
    } else {
      t.text.push_back(c);
    }
  }
  return t;
}

}  // namespace lectern::doc
