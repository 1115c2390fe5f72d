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

#include "lectern/doc/extract.hpp"

#include <cmath>
#include <set>

#include "encodings.hpp"
#include "lectern/error.hpp"
#include "lectern/ocr/font.hpp"
#include "lectern/ocr/raster.hpp"
#include "lectern/utf8.hpp"
#include "pdf_lexer.hpp"

namespace lectern::doc {

namespace {

constexpr int kMaxTreeDepth = 64;
constexpr std::size_t kMaxOperands = 1 << 16;

SimpleFont font_from(const GlyphNames& names) {
  SimpleFont f;
  for (std::size_t c = 0; c < 256; ++c) {
    if (names[c].empty()) continue;
    char32_t u = glyph_unicode(names[c]);
    if (u) f.map[c] = std::u32string(1, u);
  }
  return f;
}

std::u32string utf16be(std::string_view b) {
  std::u32string out;
  for (std::size_t i = 0; i + 1 < b.size(); i += 2) {
    char32_t u = (static_cast<unsigned char>(b[i]) << 8) | static_cast<unsigned char>(b[i + 1]);
    if (u >= 0xD800 && u <= 0xDBFF && i + 3 < b.size()) {
      char32_t lo = (static_cast<unsigned char>(b[i + 2]) << 8) | static_cast<unsigned char>(b[i + 3]);
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        out.push_back(0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00));
        i += 2;
        continue;
      }
    }
    out.push_back(u >= 0xD800 && u <= 0xDFFF ? U'�' : u);
  }
  return out;
}

unsigned one_byte_code(const Token& t) {
  if (t.kind != TokKind::String) throw Error(ErrorCode::MalformedDocument, "bad ToUnicode entry", t.offset);
  if (t.text.size() != 1)
    throw Error(ErrorCode::UnsupportedFeature, "multi-byte ToUnicode codes are not supported", t.offset);
  return static_cast<unsigned char>(t.text[0]);
}

struct Operand {
  enum Kind { Number, String, Name, Array, Other } kind = Other;
  double number = 0;
  std::string text;
  std::vector<Operand> items;
};

class PageInterpreter {
 public:
  PageInterpreter(std::string_view content, const FontMap& fonts) : lx_(content), fonts_(fonts) {}

  std::string run() {
    while (true) {
      Token t = lx_.next();
      if (t.kind == TokKind::End) break;
      if (t.kind == TokKind::Keyword) {
        op(t);
        ops_.clear();
      } else {
        if (ops_.size() >= kMaxOperands) throw Error(ErrorCode::MalformedDocument, "operand stack overflow", t.offset);
        ops_.push_back(operand(t, 0));
      }
    }
    if (in_bt_) throw Error(ErrorCode::MalformedDocument, "BT without matching ET", lx_.pos());
    return out_;
  }

 private:
  Operand operand(Token& t, int depth) {
    if (depth > 64) throw Error(ErrorCode::MalformedDocument, "operand nesting too deep", t.offset);
    Operand o;
    switch (t.kind) {
      case TokKind::Number:
        o.kind = Operand::Number;
        o.number = t.number;
        break;
      case TokKind::String:
        o.kind = Operand::String;
        o.text = std::move(t.text);
        break;
      case TokKind::Name:
        o.kind = Operand::Name;
        o.text = std::move(t.text);
        break;
      case TokKind::ArrayOpen:
        o.kind = Operand::Array;
        while (true) {
          Token n = lx_.next();
          if (n.kind == TokKind::ArrayClose) break;
          if (n.kind == TokKind::End) throw Error(ErrorCode::MalformedDocument, "unterminated array", t.offset);
          o.items.push_back(operand(n, depth + 1));
        }
        break;
      case TokKind::DictOpen:
        while (true) {
          Token n = lx_.next();
          if (n.kind == TokKind::DictClose) break;
          if (n.kind == TokKind::End) throw Error(ErrorCode::MalformedDocument, "unterminated dictionary", t.offset);
          operand(n, depth + 1);
        }
        break;
      case TokKind::ArrayClose:
      case TokKind::DictClose:
        throw Error(ErrorCode::MalformedDocument, "unbalanced delimiter", t.offset);
      default:
        break;
    }
    return o;
  }

  const Operand* arg(std::size_t from_end, Operand::Kind kind) const {
    if (ops_.size() < from_end) return nullptr;
    const Operand& o = ops_[ops_.size() - from_end];
    return o.kind == kind ? &o : nullptr;
  }

  double num(std::size_t from_end) const {
    const Operand* o = arg(from_end, Operand::Number);
    return o ? o->number : 0;
  }

  void newline() {
    out_.push_back('\n');
    broke_since_bt_ = true;
  }

  void move_line(double tx, double ty) {
    lm_[4] += tx * lm_[0] + ty * lm_[2];
    lm_[5] += tx * lm_[1] + ty * lm_[3];
  }

  void show(const std::string& bytes) {
    if (pending_block_ && !broke_since_bt_ && shown_ && lm_[5] < last_y_) newline();
    pending_block_ = false;
    const SimpleFont& f = font_ ? *font_ : fallback();
    for (unsigned char b : bytes) {
      const auto& u = f.map[b];
      if (u.empty()) {
        utf8_append(out_, U'�');
      } else {
        for (char32_t c : u) utf8_append(out_, c);
      }
    }
    shown_ = true;
    last_y_ = lm_[5];
  }

  static const SimpleFont& fallback() {
    static const SimpleFont f = standard_font();
    return f;
  }

  void require_bt(const Token& t) {
    if (!in_bt_) throw Error(ErrorCode::MalformedDocument, "text operator '" + t.text + "' outside BT/ET", t.offset);
  }

  void skip_inline_image(const Token& bi) {
    while (true) {
      Token t = lx_.next();
      if (t.kind == TokKind::End) throw Error(ErrorCode::MalformedDocument, "inline image without ID", bi.offset);
      if (t.kind == TokKind::Keyword && t.text == "ID") break;
    }
    std::string_view d = lx_.data();
    std::size_t p = lx_.pos() + 1;
    while (p + 1 < d.size()) {
      if (d[p] == 'E' && d[p + 1] == 'I' && pdf_space(d[p - 1]) && (p + 2 == d.size() || pdf_space(d[p + 2]) || pdf_delim(d[p + 2]))) {
        lx_.seek(p + 2);
        return;
      }
      ++p;
    }
    throw Error(ErrorCode::MalformedDocument, "inline image without EI", bi.offset);
  }

  void op(const Token& t) {
    const std::string& k = t.text;
    if (k == "BT") {
      if (in_bt_) throw Error(ErrorCode::MalformedDocument, "nested BT", t.offset);
      in_bt_ = true;
      lm_ = {1, 0, 0, 1, 0, 0};
      pending_block_ = shown_;
      broke_since_bt_ = false;
    } else if (k == "ET") {
      if (!in_bt_) throw Error(ErrorCode::MalformedDocument, "ET without matching BT", t.offset);
      in_bt_ = false;
    } else if (k == "BI") {
      skip_inline_image(t);
    } else if (k == "Tf") {
      const Operand* name = arg(2, Operand::Name);
      font_ = nullptr;
      if (name) {
        auto it = fonts_.find(name->text);
        if (it != fonts_.end()) font_ = &it->second;
      }
    } else if (k == "TL") {
      leading_ = num(1);
    } else if (k == "Td" || k == "TD") {
      require_bt(t);
      double ty = num(1);
      if (k == "TD") leading_ = -ty;
      move_line(num(2), ty);
      if (ty < 0) newline();
    } else if (k == "Tm") {
      require_bt(t);
      double y = lm_[5];
      for (int i = 0; i < 6; ++i) lm_[i] = num(6 - i);
      if (shown_ && !pending_block_ && lm_[5] < y) newline();
    } else if (k == "T*") {
      require_bt(t);
      move_line(0, -leading_);
      newline();
    } else if (k == "Tj") {
      require_bt(t);
      if (const Operand* s = arg(1, Operand::String)) show(s->text);
    } else if (k == "'" || k == "\"") {
      require_bt(t);
      move_line(0, -leading_);
      newline();
      if (const Operand* s = arg(1, Operand::String)) show(s->text);
    } else if (k == "TJ") {
      require_bt(t);
      if (const Operand* a = arg(1, Operand::Array)) {
        for (const auto& item : a->items) {
          if (item.kind == Operand::String) {
            show(item.text);
          } else if (item.kind == Operand::Number && std::abs(item.number) > kSpaceAdjustThreshold) {
            out_.push_back(' ');
          }
        }
      }
    }
  }

  Lexer lx_;
  const FontMap& fonts_;
  const SimpleFont* font_ = nullptr;
  std::vector<Operand> ops_;
  std::string out_;
  std::array<double, 6> lm_{1, 0, 0, 1, 0, 0};
  double leading_ = 0;
  double last_y_ = 0;
  bool in_bt_ = false;
  bool shown_ = false;
  bool pending_block_ = false;
  bool broke_since_bt_ = false;
};

class PdfDocumentReader {
 public:
  explicit PdfDocumentReader(std::string_view bytes) : table_(parse_pdf(bytes)) {}

  std::vector<std::string> pages() {
    const PdfDict* catalog = table_.dict(*table_.trailer.get("Root"));
    const PdfValue* pages = catalog->get("Pages");
    if (!pages) throw Error(ErrorCode::MalformedDocument, "catalog lacks /Pages");
    std::vector<std::string> out;
    walk(*pages, nullptr, 0, out);
    if (out.empty()) throw Error(ErrorCode::MalformedDocument, "document has no pages");
    return out;
  }

 private:
  void walk(const PdfValue& node_ref, const PdfValue* inherited, int depth, std::vector<std::string>& out) {
    if (depth > kMaxTreeDepth) throw Error(ErrorCode::MalformedDocument, "page tree too deep");
    if (const auto* r = node_ref.as_ref()) {
      if (!visited_.insert(*r).second) throw Error(ErrorCode::MalformedDocument, "page tree contains a cycle");
    }
    const PdfDict* node = table_.dict(node_ref);
    if (!node) throw Error(ErrorCode::MalformedDocument, "page tree node is not a dictionary");
    const PdfValue* res = table_.lookup(*node, "Resources");
    if (!res) res = inherited;
    const PdfValue* type = table_.lookup(*node, "Type");
    const PdfValue* kids = table_.lookup(*node, "Kids");
    bool is_tree = kids && (!type || !type->as_name() || type->as_name()->value != "Page");
    if (is_tree) {
      const PdfArray* arr = kids->as_array();
      if (!arr) throw Error(ErrorCode::MalformedDocument, "/Kids is not an array");
      for (const auto& kid : *arr) walk(kid, res, depth + 1, out);
      return;
    }
    out.push_back(page_text(*node, res));
  }

  std::string page_text(const PdfDict& page, const PdfValue* resources) {
    std::string content;
    if (const PdfValue* c = table_.lookup(page, "Contents")) {
      if (const auto* arr = c->as_array()) {
        for (const auto& part : *arr) {
          const PdfStream* s = table_.resolve(part).as_stream();
          if (!s) throw Error(ErrorCode::MalformedDocument, "/Contents entry is not a stream");
          content += decode_stream(*s, &table_);
          content.push_back('\n');
        }
      } else if (const auto* s = c->as_stream()) {
        content = decode_stream(*s, &table_);
      } else {
        throw Error(ErrorCode::MalformedDocument, "/Contents is not a stream");
      }
    }
    return extract_page_text(content, fonts(resources));
  }

  FontMap fonts(const PdfValue* resources) {
    FontMap map;
    const PdfDict* res = resources ? table_.dict(*resources) : nullptr;
    const PdfValue* fv = res ? table_.lookup(*res, "Font") : nullptr;
    const PdfDict* fd = fv ? fv->as_dict() : nullptr;
    if (!fd) return map;
    for (const auto& [name, ref] : fd->entries) {
      const PdfDict* font = table_.dict(ref);
      if (!font) continue;
      if (const auto* r = ref.as_ref()) {
        auto it = cache_.find(*r);
        if (it == cache_.end()) it = cache_.emplace(*r, load_font(*font, table_)).first;
        map.emplace(name, it->second);
      } else {
        map.emplace(name, load_font(*font, table_));
      }
    }
    return map;
  }

  PdfObjectTable table_;
  std::set<PdfRef> visited_;
  std::map<PdfRef, SimpleFont> cache_;
};

ExtractedDocument finish(std::vector<std::string> pages, SourceKind kind) {
  ExtractedDocument doc;
  doc.source_kind = kind;
  for (const auto& p : pages) doc.char_count += utf8_length(p);
  doc.pages = std::move(pages);
  return doc;
}

}  // namespace

SimpleFont standard_font() { return font_from(standard_encoding()); }
SimpleFont winansi_font() { return font_from(winansi_encoding()); }

void apply_to_unicode(SimpleFont& font, std::string_view cmap) {
  Lexer lx(cmap);
  while (true) {
    Token t = lx.next();
    if (t.kind == TokKind::End) return;
    if (t.kind != TokKind::Keyword) continue;
    if (t.text == "begincodespacerange") {
      while (true) {
        Token lo = lx.next();
        if (lo.kind == TokKind::Keyword && lo.text == "endcodespacerange") break;
        if (lo.kind == TokKind::End) throw Error(ErrorCode::MalformedDocument, "unterminated codespacerange");
        Token hi = lx.next();
        one_byte_code(lo);
        one_byte_code(hi);
      }
    } else if (t.text == "beginbfchar") {
      while (true) {
        Token src = lx.next();
        if (src.kind == TokKind::Keyword && src.text == "endbfchar") break;
        if (src.kind == TokKind::End) throw Error(ErrorCode::MalformedDocument, "unterminated bfchar");
        Token dst = lx.next();
        unsigned code = one_byte_code(src);
        if (dst.kind == TokKind::String) {
          font.map[code] = utf16be(dst.text);
        } else if (dst.kind == TokKind::Name) {
          char32_t u = glyph_unicode(dst.text);
          if (u) font.map[code] = std::u32string(1, u);
        } else {
          throw Error(ErrorCode::MalformedDocument, "bad bfchar destination", dst.offset);
        }
      }
    } else if (t.text == "beginbfrange") {
      while (true) {
        Token lo = lx.next();
        if (lo.kind == TokKind::Keyword && lo.text == "endbfrange") break;
        if (lo.kind == TokKind::End) throw Error(ErrorCode::MalformedDocument, "unterminated bfrange");
        Token hi = lx.next();
        unsigned a = one_byte_code(lo), b = one_byte_code(hi);
        if (b < a) throw Error(ErrorCode::MalformedDocument, "inverted bfrange", lo.offset);
        Token dst = lx.next();
        if (dst.kind == TokKind::String) {
          std::u32string base = utf16be(dst.text);
          if (base.empty()) throw Error(ErrorCode::MalformedDocument, "empty bfrange destination", dst.offset);
          for (unsigned c = a; c <= b; ++c) {
            font.map[c] = base;
            base.back() += 1;
          }
        } else if (dst.kind == TokKind::ArrayOpen) {
          unsigned c = a;
          while (true) {
            Token e = lx.next();
            if (e.kind == TokKind::ArrayClose) break;
            if (e.kind != TokKind::String) throw Error(ErrorCode::MalformedDocument, "bad bfrange array", e.offset);
            if (c <= b) font.map[c++] = utf16be(e.text);
          }
        } else {
          throw Error(ErrorCode::MalformedDocument, "bad bfrange destination", dst.offset);
        }
      }
    }
  }
}

SimpleFont load_font(const PdfDict& font, const PdfObjectTable& table) {
  const PdfValue* subtype = table.lookup(font, "Subtype");
  if (subtype && subtype->as_name() && subtype->as_name()->value == "Type0")
    throw Error(ErrorCode::UnsupportedFeature, "composite (Type0) fonts are not supported");
  const GlyphNames* base = &standard_encoding();
  const PdfArray* differences = nullptr;
  auto pick = [&](const std::string& name) {
    if (name == "WinAnsiEncoding") {
      base = &winansi_encoding();
    } else if (name == "StandardEncoding") {
      base = &standard_encoding();
    } else {
      throw Error(ErrorCode::UnsupportedFeature, "unsupported font encoding /" + name);
    }
  };
  if (const PdfValue* enc = table.lookup(font, "Encoding")) {
    if (const auto* n = enc->as_name()) {
      pick(n->value);
    } else if (const auto* d = enc->as_dict()) {
      if (const PdfValue* be = table.lookup(*d, "BaseEncoding"); be && be->as_name()) pick(be->as_name()->value);
      if (const PdfValue* diff = table.lookup(*d, "Differences")) differences = diff->as_array();
    }
  }
  SimpleFont f = font_from(*base);
  if (differences) {
    long code = -1;
    for (const auto& item : *differences) {
      const PdfValue& v = table.resolve(item);
      if (auto n = v.as_int()) {
        code = *n;
      } else if (const auto* name = v.as_name()) {
        if (code >= 0 && code < 256) {
          char32_t u = glyph_unicode(name->value);
          f.map[static_cast<std::size_t>(code)] = u ? std::u32string(1, u) : std::u32string();
        }
        ++code;
      }
    }
  }
  if (const PdfValue* tu = table.lookup(font, "ToUnicode")) {
    if (const auto* s = tu->as_stream()) apply_to_unicode(f, decode_stream(*s, &table));
  }
  return f;
}

std::string extract_page_text(std::string_view content, const FontMap& fonts) {
  return PageInterpreter(content, fonts).run();
}

std::vector<std::string> extract_pdf_pages(std::string_view bytes) { return PdfDocumentReader(bytes).pages(); }

ExtractedDocument extract_text(const DocumentSource& source) {
  if (source.kind == SourceKind::RasterPage) return extract_text(source, ocr::builtin_atlas());
  static const ocr::TemplateAtlas none;
  return extract_text(source, none);
}

ExtractedDocument extract_text(const DocumentSource& source, const ocr::TemplateAtlas& atlas) {
  if (source.bytes.empty()) throw Error(ErrorCode::EmptyDocument, "document '" + source.name + "' is empty");
  switch (source.kind) {
    case SourceKind::Pdf:
      if (source.bytes.compare(0, 5, "%PDF-") != 0)
        throw Error(ErrorCode::UnsupportedFormat, "'" + source.name + "' does not start with %PDF-");
      return finish(extract_pdf_pages(source.bytes), SourceKind::Pdf);
    case SourceKind::PlainText: {
      std::string_view text = source.bytes;
      if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
      if (!utf8_valid(text)) throw Error(ErrorCode::UnsupportedFormat, "'" + source.name + "' is not valid UTF-8");
      return finish({std::string(text)}, SourceKind::PlainText);
    }
    case SourceKind::RasterPage: {
      if (!ocr::looks_like_raster(source.bytes))
        throw Error(ErrorCode::UnsupportedFormat, "'" + source.name + "' is not a PGM or PNG image");
      auto rec = ocr::recognize_page(ocr::decode_raster(source.bytes), atlas);
      return finish({rec.text()}, SourceKind::RasterPage);
    }
  }
  throw Error(ErrorCode::UnsupportedFormat, "unknown source kind");
}

}  // namespace lectern::doc
