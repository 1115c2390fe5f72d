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

#include <zlib.h>

#include <set>

#include "lectern/doc/pdf.hpp"
#include "lectern/error.hpp"
#include "pdf_lexer.hpp"

namespace lectern::doc {

const PdfArray* PdfValue::as_array() const {
  auto p = std::get_if<std::shared_ptr<const PdfArray>>(&v_);
  return p ? p->get() : nullptr;
}

const PdfDict* PdfValue::as_dict() const {
  if (auto p = std::get_if<std::shared_ptr<const PdfDict>>(&v_)) return p->get();
  if (auto s = std::get_if<std::shared_ptr<const PdfStream>>(&v_)) return &(*s)->dict;
  return nullptr;
}

const PdfStream* PdfValue::as_stream() const {
  auto p = std::get_if<std::shared_ptr<const PdfStream>>(&v_);
  return p ? p->get() : nullptr;
}

std::optional<long long> PdfValue::as_int() const {
  const auto* n = as_number();
  if (!n || !n->integer || n->value < -9.0e15 || n->value > 9.0e15) return std::nullopt;
  return static_cast<long long>(n->value);
}

const PdfValue* PdfDict::get(std::string_view key) const {
  auto it = entries.find(std::string(key));
  return it == entries.end() ? nullptr : &it->second;
}

const PdfValue& PdfObjectTable::resolve(const PdfValue& v) const {
  static const PdfValue null_value;
  const PdfValue* cur = &v;
  for (int hops = 0; hops < 32; ++hops) {
    const auto* ref = cur->as_ref();
    if (!ref) return *cur;
    auto it = objects.find(*ref);
    if (it == objects.end()) return null_value;
    cur = &it->second;
  }
  return null_value;
}

const PdfValue* PdfObjectTable::lookup(const PdfDict& d, std::string_view key) const {
  const PdfValue* v = d.get(key);
  if (!v) return nullptr;
  const PdfValue& r = resolve(*v);
  return r.is_null() ? nullptr : &r;
}

namespace {

constexpr int kMaxDepth = 256;
constexpr std::size_t kTailWindow = 2048;

[[noreturn]] void malformed(const std::string& what, std::uint64_t at) {
  throw Error(ErrorCode::MalformedDocument, what, at);
}

struct XrefEntry {
  std::uint64_t offset;
  std::uint32_t gen;
};

class Parser {
 public:
  explicit Parser(std::string_view data) : d_(data) {}

  PdfObjectTable run() {
    std::uint64_t xref_at = find_startxref();
    std::set<std::uint64_t> visited;
    bool first = true;
    while (true) {
      if (!visited.insert(xref_at).second) malformed("cyclic /Prev chain", xref_at);
      PdfDict trailer = read_xref_section(xref_at);
      for (auto& [k, v] : trailer.entries)
        if (first || !table_.trailer.entries.count(k)) table_.trailer.entries.emplace(k, v);
      first = false;
      const PdfValue* prev = trailer.get("Prev");
      if (!prev) break;
      auto p = prev->as_int();
      if (!p || *p < 0 || static_cast<std::uint64_t>(*p) >= d_.size()) malformed("bad /Prev offset", xref_at);
      xref_at = static_cast<std::uint64_t>(*p);
    }
    if (table_.trailer.get("Encrypt")) throw Error(ErrorCode::EncryptedDocument, "document is encrypted");
    const PdfValue* size = table_.trailer.get("Size");
    auto sz = size ? size->as_int() : std::nullopt;
    if (!sz || *sz < 0) malformed("trailer lacks a valid /Size", xref_at);
    for (auto it = entries_.begin(); it != entries_.end();)
      it = static_cast<long long>(it->first) >= *sz ? entries_.erase(it) : std::next(it);
    for (const auto& [num, e] : entries_) table_.xref_offsets[num] = e.offset;
    for (const auto& [num, e] : entries_) load(num);

    const PdfValue* root = table_.trailer.get("Root");
    if (!root || !root->as_ref()) malformed("trailer lacks /Root", xref_at);
    if (!table_.dict(*root)) malformed("/Root does not resolve to a dictionary", xref_at);
    check_reachable(*root);
    return std::move(table_);
  }

  // Parses a value at the lexer position; used for trailers and objects.
  PdfValue value(Lexer& lx, int depth) {
    if (depth > kMaxDepth) malformed("nesting too deep", lx.pos());
    Token t = lx.next();
    switch (t.kind) {
      case TokKind::Number: {
        if (t.integer && t.number >= 0) {
          std::size_t save = lx.pos();
          Token g = lx.next();
          if (g.kind == TokKind::Number && g.integer && g.number >= 0) {
            Token r = lx.next();
            if (r.kind == TokKind::Keyword && r.text == "R") {
              if (t.number > 0xFFFFFFFFu || g.number > 0xFFFFFFFFu) malformed("reference out of range", t.offset);
              return PdfRef{static_cast<std::uint32_t>(t.number), static_cast<std::uint32_t>(g.number)};
            }
          }
          lx.seek(save);
        }
        return PdfNumber{t.number, t.integer};
      }
      case TokKind::String:
        return PdfString{std::move(t.text)};
      case TokKind::Name:
        return PdfName{std::move(t.text)};
      case TokKind::ArrayOpen: {
        auto arr = std::make_shared<PdfArray>();
        while (true) {
          Token p = lx.peek();
          if (p.kind == TokKind::ArrayClose) {
            lx.next();
            break;
          }
          if (p.kind == TokKind::End) malformed("unterminated array", t.offset);
          arr->push_back(value(lx, depth + 1));
        }
        return std::shared_ptr<const PdfArray>(std::move(arr));
      }
      case TokKind::DictOpen:
        return std::shared_ptr<const PdfDict>(std::make_shared<PdfDict>(dict_body(lx, depth, t.offset)));
      case TokKind::Keyword:
        if (t.text == "true") return true;
        if (t.text == "false") return false;
        if (t.text == "null") return PdfNull{};
        malformed("unexpected keyword '" + t.text.substr(0, 32) + "'", t.offset);
      case TokKind::End:
        malformed("unexpected end of data", t.offset);
      default:
        malformed("unexpected token", t.offset);
    }
  }

 private:
  PdfDict dict_body(Lexer& lx, int depth, std::size_t open_at) {
    PdfDict d;
    while (true) {
      Token k = lx.next();
      if (k.kind == TokKind::DictClose) break;
      if (k.kind == TokKind::End) malformed("unterminated dictionary", open_at);
      if (k.kind != TokKind::Name) malformed("dictionary key is not a name", k.offset);
      d.entries[k.text] = value(lx, depth + 1);
    }
    return d;
  }

  std::uint64_t find_startxref() {
    std::size_t from = d_.size() > kTailWindow ? d_.size() - kTailWindow : 0;
    std::size_t at = d_.rfind("startxref");
    if (at == std::string_view::npos || at < from) malformed("startxref not found", d_.size());
    Lexer lx(d_, at + 9);
    Token t = lx.next();
    if (t.kind != TokKind::Number || !t.integer || t.number < 0 || t.number >= static_cast<double>(d_.size()))
      malformed("bad startxref offset", at);
    return static_cast<std::uint64_t>(t.number);
  }

  static bool is_int(const Token& t) { return t.kind == TokKind::Number && t.integer && t.number >= 0; }

  PdfDict read_xref_section(std::uint64_t at) {
    Lexer lx(d_, static_cast<std::size_t>(at));
    Token t = lx.next();
    if (is_int(t)) {
      Token g = lx.next(), o = lx.next();
      if (is_int(g) && o.kind == TokKind::Keyword && o.text == "obj")
        throw Error(ErrorCode::UnsupportedFeature, "cross-reference streams are not supported", at);
    }
    if (t.kind != TokKind::Keyword || t.text != "xref") malformed("xref table not found", at);
    while (true) {
      Token s = lx.next();
      if (s.kind == TokKind::Keyword && s.text == "trailer") break;
      Token c = lx.next();
      if (!is_int(s) || !is_int(c)) malformed("bad xref subsection header", s.offset);
      if (s.number + c.number > 0x7FFFFFFF) malformed("xref subsection out of range", s.offset);
      auto start = static_cast<std::uint32_t>(s.number);
      auto count = static_cast<std::uint32_t>(c.number);
      for (std::uint32_t i = 0; i < count; ++i) {
        Token off = lx.next(), gen = lx.next(), type = lx.next();
        if (!is_int(off) || !is_int(gen) || type.kind != TokKind::Keyword || (type.text != "n" && type.text != "f"))
          malformed("bad xref entry", off.offset);
        std::uint32_t num = start + i;
        // Newer sections are read first and win.
        if (entries_.count(num) || seen_free_.count(num)) continue;
        if (type.text == "f") {
          seen_free_.insert(num);
          continue;
        }
        if (off.number >= static_cast<double>(d_.size())) malformed("xref offset beyond end of file", off.offset);
        entries_[num] = {static_cast<std::uint64_t>(off.number), static_cast<std::uint32_t>(gen.number)};
      }
    }
    Token open = lx.next();
    if (open.kind != TokKind::DictOpen) malformed("trailer is not a dictionary", open.offset);
    return dict_body(lx, 0, open.offset);
  }

  const PdfValue& load(std::uint32_t num) {
    static const PdfValue null_value;
    auto e = entries_.find(num);
    if (e == entries_.end()) return null_value;
    PdfRef ref{num, e->second.gen};
    if (auto it = table_.objects.find(ref); it != table_.objects.end()) return it->second;
    if (!loading_.insert(num).second) malformed("object " + std::to_string(num) + " refers to itself", e->second.offset);
    PdfValue v = object_at(num, e->second);
    loading_.erase(num);
    return table_.objects.emplace(ref, std::move(v)).first->second;
  }

  PdfValue object_at(std::uint32_t num, const XrefEntry& e) {
    Lexer lx(d_, static_cast<std::size_t>(e.offset));
    Token n = lx.next(), g = lx.next(), kw = lx.next();
    if (!is_int(n) || !is_int(g) || kw.kind != TokKind::Keyword || kw.text != "obj")
      malformed("expected 'obj' header for object " + std::to_string(num), e.offset);
    if (n.number != num || g.number != e.gen)
      malformed("object header does not match xref entry " + std::to_string(num), e.offset);
    PdfValue v = value(lx, 0);
    Token after = lx.next();
    if (after.kind == TokKind::Keyword && after.text == "stream") {
      const PdfDict* dict = v.as_dict();
      if (!dict || v.as_stream()) malformed("stream without dictionary", after.offset);
      v = stream_body(lx, *dict, after.offset);
      after = lx.next();
    }
    if (after.kind != TokKind::Keyword || after.text != "endobj")
      malformed("expected 'endobj' for object " + std::to_string(num), after.offset);
    return v;
  }

  PdfValue stream_body(Lexer& lx, const PdfDict& dict, std::size_t kw_at) {
    std::size_t p = lx.pos();
    if (p < d_.size() && d_[p] == '\r') ++p;
    if (p < d_.size() && d_[p] == '\n') ++p;
    if (p == lx.pos()) malformed("'stream' not followed by end-of-line", p);
    const PdfValue* len_v = dict.get("Length");
    if (!len_v) malformed("stream lacks /Length", kw_at);
    const PdfValue* len_resolved = len_v;
    if (const auto* r = len_v->as_ref()) {
      auto e = entries_.find(r->num);
      if (e == entries_.end() || e->second.gen != r->gen) malformed("stream /Length reference dangles", kw_at);
      len_resolved = &load(r->num);
    }
    auto len = len_resolved->as_int();
    if (!len || *len < 0) malformed("stream /Length is not a non-negative integer", kw_at);
    if (static_cast<std::uint64_t>(*len) > d_.size() - p) malformed("stream runs past end of file", p);
    auto s = std::make_shared<PdfStream>();
    s->dict = dict;
    s->data = std::string(d_.substr(p, static_cast<std::size_t>(*len)));
    s->offset = p;
    lx.seek(p + static_cast<std::size_t>(*len));
    Token end = lx.next();
    if (end.kind != TokKind::Keyword || end.text != "endstream")
      malformed("stream length does not match 'endstream'", p + static_cast<std::size_t>(*len));
    return std::shared_ptr<const PdfStream>(std::move(s));
  }

  void check_reachable(const PdfValue& root) {
    std::set<PdfRef> seen;
    std::vector<const PdfValue*> stack{&root};
    while (!stack.empty()) {
      const PdfValue* v = stack.back();
      stack.pop_back();
      if (const auto* r = v->as_ref()) {
        if (!seen.insert(*r).second) continue;
        auto it = table_.objects.find(*r);
        if (it == table_.objects.end())
          malformed("reference " + std::to_string(r->num) + " " + std::to_string(r->gen) + " R does not resolve",
                    d_.size());
        stack.push_back(&it->second);
      } else if (const auto* a = v->as_array()) {
        for (const auto& x : *a) stack.push_back(&x);
      } else if (const auto* d = v->as_dict()) {
        for (const auto& [k, x] : d->entries) stack.push_back(&x);
      }
    }
  }

  std::string_view d_;
  PdfObjectTable table_;
  std::map<std::uint32_t, XrefEntry> entries_;
  std::set<std::uint32_t> seen_free_;
  std::set<std::uint32_t> loading_;
};

std::string inflate_zlib(std::string_view in) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw Error(ErrorCode::CorruptStream, "inflateInit failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  std::string out;
  char buf[16384];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      std::string msg = zs.msg ? zs.msg : "inflate error";
      inflateEnd(&zs);
      throw Error(ErrorCode::CorruptStream, "FlateDecode: " + msg);
    }
    out.append(buf, sizeof buf - zs.avail_out);
    if (out.size() > kMaxInflatedSize) {
      inflateEnd(&zs);
      throw Error(ErrorCode::CorruptStream, "FlateDecode output exceeds limit");
    }
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw Error(ErrorCode::CorruptStream, "FlateDecode data truncated");
    }
  }
  inflateEnd(&zs);
  return out;
}

}  // namespace

PdfObjectTable parse_pdf(std::string_view bytes) {
  if (bytes.substr(0, 5) != "%PDF-") throw Error(ErrorCode::UnsupportedFormat, "missing %PDF- header");
  return Parser(bytes).run();
}

std::string decode_stream(const PdfStream& stream, const PdfObjectTable* table) {
  auto res = [&](const PdfValue* v) -> const PdfValue* {
    if (!v) return nullptr;
    return table ? &table->resolve(*v) : v;
  };
  std::vector<std::string> filters;
  if (const PdfValue* f = res(stream.dict.get("Filter"))) {
    if (const auto* n = f->as_name()) {
      filters.push_back(n->value);
    } else if (const auto* a = f->as_array()) {
      for (const auto& x : *a) {
        const PdfValue* rx = res(&x);
        if (!rx->as_name()) throw Error(ErrorCode::UnsupportedFilter, "filter entry is not a name");
        filters.push_back(rx->as_name()->value);
      }
    } else if (!f->is_null()) {
      throw Error(ErrorCode::UnsupportedFilter, "/Filter is neither a name nor an array");
    }
  }
  for (const auto& name : filters)
    if (name != "FlateDecode" && name != "Fl") throw Error(ErrorCode::UnsupportedFilter, "unsupported filter /" + name);
  auto check_parms = [&](const PdfValue* p) {
    const PdfValue* rp = res(p);
    const PdfDict* d = rp ? rp->as_dict() : nullptr;
    if (!d) return;
    const PdfValue* pred = res(d->get("Predictor"));
    auto pv = pred ? pred->as_int() : std::nullopt;
    if (pv && *pv > 1) throw Error(ErrorCode::UnsupportedFilter, "FlateDecode predictors are not supported");
  };
  if (const PdfValue* parms = res(stream.dict.get("DecodeParms"))) {
    if (const auto* a = parms->as_array()) {
      for (const auto& x : *a) check_parms(&x);
    } else {
      check_parms(parms);
    }
  }
  std::string data = stream.data;
  for (std::size_t i = 0; i < filters.size(); ++i) data = inflate_zlib(data);
  return data;
}

}  // namespace lectern::doc
