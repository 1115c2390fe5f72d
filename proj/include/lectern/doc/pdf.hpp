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

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace lectern::doc {

struct PdfNull {
  bool operator==(const PdfNull&) const = default;
};
struct PdfNumber {
  double value = 0;
  bool integer = false;
  bool operator==(const PdfNumber&) const = default;
};
struct PdfString {
  std::string bytes;
  bool operator==(const PdfString&) const = default;
};
struct PdfName {
  std::string value;
  bool operator==(const PdfName&) const = default;
};
struct PdfRef {
  std::uint32_t num = 0;
  std::uint32_t gen = 0;
  auto operator<=>(const PdfRef&) const = default;
};

class PdfValue;
using PdfArray = std::vector<PdfValue>;
struct PdfDict;
struct PdfStream;

class PdfValue {
 public:
  using Storage = std::variant<PdfNull, bool, PdfNumber, PdfString, PdfName, PdfRef,
                               std::shared_ptr<const PdfArray>, std::shared_ptr<const PdfDict>,
                               std::shared_ptr<const PdfStream>>;

  PdfValue() = default;
  template <typename T>
    requires(!std::is_same_v<std::decay_t<T>, PdfValue> && std::is_constructible_v<Storage, T>)
  PdfValue(T v) : v_(std::move(v)) {}

  bool is_null() const { return std::holds_alternative<PdfNull>(v_); }
  const bool* as_bool() const { return std::get_if<bool>(&v_); }
  const PdfNumber* as_number() const { return std::get_if<PdfNumber>(&v_); }
  const PdfString* as_string() const { return std::get_if<PdfString>(&v_); }
  const PdfName* as_name() const { return std::get_if<PdfName>(&v_); }
  const PdfRef* as_ref() const { return std::get_if<PdfRef>(&v_); }
  const PdfArray* as_array() const;
  const PdfDict* as_dict() const;  // also the dictionary of a stream
  const PdfStream* as_stream() const;
  std::optional<long long> as_int() const;

  const Storage& storage() const { return v_; }

 private:
  Storage v_;
};

struct PdfDict {
  std::map<std::string, PdfValue> entries;  // keys without the leading '/'
  const PdfValue* get(std::string_view key) const;
};

struct PdfStream {
  PdfDict dict;
  std::string data;          // raw, still encoded
  std::uint64_t offset = 0;  // of the first data byte
};

struct PdfObjectTable {
  std::map<PdfRef, PdfValue> objects;
  PdfDict trailer;
  std::map<std::uint32_t, std::uint64_t> xref_offsets;

  // Follows references (bounded) and returns the target, or null for dangling ones.
  const PdfValue& resolve(const PdfValue& v) const;
  const PdfDict* dict(const PdfValue& v) const { return resolve(v).as_dict(); }
  const PdfValue* lookup(const PdfDict& d, std::string_view key) const;
};

// Classic xref tables only, /Prev chains followed. Throws MalformedDocument
// (with byte offset), EncryptedDocument, UnsupportedFeature.
PdfObjectTable parse_pdf(std::string_view bytes);

// No filter or FlateDecode. Throws UnsupportedFilter, CorruptStream.
std::string decode_stream(const PdfStream& stream, const PdfObjectTable* table = nullptr);

inline constexpr std::size_t kMaxInflatedSize = std::size_t{256} << 20;

}  // namespace lectern::doc
