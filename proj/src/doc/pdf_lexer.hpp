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
#include <string>
#include <string_view>

namespace lectern::doc {

enum class TokKind {
  End,
  Number,
  String,     // literal or hex, already unescaped
  Name,       // without '/'
  Keyword,    // bare word: obj, R, Tj, true, ...
  ArrayOpen,
  ArrayClose,
  DictOpen,
  DictClose,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  double number = 0;
  bool integer = false;
  std::size_t offset = 0;
};

inline bool pdf_space(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\0';
}

inline bool pdf_delim(char c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' || c == ']' || c == '{' ||
         c == '}' || c == '/' || c == '%';
}

// Throws MalformedDocument with the offending offset.
class Lexer {
 public:
  explicit Lexer(std::string_view data, std::size_t pos = 0) : d_(data), pos_(pos) {}

  Token next();
  Token peek();
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  void skip_space();
  std::string_view data() const { return d_; }

 private:
  Token literal_string(std::size_t start);
  Token hex_string(std::size_t start);
  Token name(std::size_t start);

  std::string_view d_;
  std::size_t pos_;
};

}  // namespace lectern::doc
