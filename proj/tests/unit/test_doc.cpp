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
#include "lectern/doc/document.hpp"
#include "lectern/doc/extract.hpp"
#include "lectern/doc/pdf.hpp"
#include "lectern/doc/pdf_writer.hpp"
#include "lectern/io.hpp"
#include "lectern/ocr/bench.hpp"
#include "lectern/ocr/font.hpp"
#include "lectern/ocr/raster.hpp"
#include "support.hpp"

using namespace lectern;
using namespace lectern::doc;
using lectern::testing::code_of;
using lectern::testing::fixture_dir;

namespace {

std::string ref(std::uint32_t n) { return std::to_string(n) + " 0 R"; }

// One page, one content stream, /F1 = the given font dictionary.
std::string one_page(const std::string& content, const std::string& font =
                                                      "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>",
                     const std::string& stream_dict = "", const std::string& extra_trailer = "") {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), page = b.reserve(), stream = b.reserve();
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + ref(page) + "] /Count 1 >>");
  b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /Contents " + ref(stream) + " /Resources << /Font << /F1 " +
                  font + " >> >> >>");
  b.set_stream(stream, stream_dict, content);
  return b.finish(catalog, extra_trailer);
}

FontMap standard_map() { return {{"F1", standard_font()}}; }

DocumentSource pdf_source(std::string bytes) { return {SourceKind::Pdf, std::move(bytes), "x.pdf"}; }

}  // namespace

TEST_CASE("plain text passes through") {
  auto d = extract_text({SourceKind::PlainText, "hello\n", "a.txt"});
  CHECK(d.pages == std::vector<std::string>{"hello\n"});
  CHECK(d.char_count == 6);
  CHECK(d.source_kind == SourceKind::PlainText);
  auto u = extract_text({SourceKind::PlainText, "\xEF\xBB\xBF" "caf\xC3\xA9", "b.txt"});
  CHECK(u.pages[0] == "caf\xC3\xA9");
  CHECK(u.char_count == 4);
  CHECK(code_of([] { extract_text({SourceKind::PlainText, "bad \xC3", "c.txt"}); }) == ErrorCode::UnsupportedFormat);
  CHECK(code_of([] { extract_text({SourceKind::PlainText, "", "d.txt"}); }) == ErrorCode::EmptyDocument);
}

TEST_CASE("bad magic is an unsupported format") {
  CHECK(code_of([] { extract_text(pdf_source("%PDQ")); }) == ErrorCode::UnsupportedFormat);
  CHECK(code_of([] { parse_pdf("hello"); }) == ErrorCode::UnsupportedFormat);
}

TEST_CASE("hi fixture") {
  auto d = extract_text(pdf_source(read_file(fixture_dir / "pdf/hi.pdf")));
  CHECK(d.pages == std::vector<std::string>{"Hi"});
  CHECK(d.char_count == 2);
}

TEST_CASE("every fixture reproduces its truth file") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir / "pdf")) {
    if (entry.path().extension() != ".pdf") continue;
    auto truth_path = entry.path();
    truth_path.replace_extension(".txt");
    std::string truth = read_file(truth_path);
    auto d = extract_text(pdf_source(read_file(entry.path())));
    std::string joined;
    for (std::size_t i = 0; i < d.pages.size(); ++i) joined += (i ? "\f" : "") + d.pages[i];
    CHECK_MESSAGE(joined == truth, entry.path().filename().string());
    ++n;
  }
  CHECK(n >= 20);
}

TEST_CASE("minimal four-object table") {
  auto t = parse_pdf(read_file(fixture_dir / "pdf/minimal4.pdf"));
  CHECK(t.objects.size() == 4);
  const auto* root = t.trailer.get("Root");
  REQUIRE(root);
  const auto* cat = t.dict(*root);
  REQUIRE(cat);
  CHECK(cat->get("Type")->as_name()->value == "Catalog");
}

TEST_CASE("xref structure errors") {
  std::string pdf = one_page("BT /F1 12 Tf (A) Tj ET");
  SUBCASE("missing startxref") {
    std::string broken = pdf;
    broken.replace(broken.rfind("startxref"), 9, "startxrex");
    CHECK(code_of([&] { parse_pdf(broken); }) == ErrorCode::MalformedDocument);
  }
  SUBCASE("xref offset past the end") {
    std::string broken = pdf.substr(0, pdf.rfind("startxref")) + "startxref\n999999\n%%EOF\n";
    CHECK(code_of([&] { parse_pdf(broken); }) == ErrorCode::MalformedDocument);
  }
  SUBCASE("entries at or above /Size are ignored") {
    auto t = parse_pdf(pdf);
    long long size = *t.trailer.get("Size")->as_int();
    CHECK(t.xref_offsets.size() <= static_cast<std::size_t>(size));
    for (const auto& [num, off] : t.xref_offsets) CHECK(num < size);
  }
  SUBCASE("encrypted") {
    std::string enc = one_page("BT (A) Tj ET", "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>", "",
                               "/Encrypt << /Filter /Standard /V 1 >>");
    CHECK(code_of([&] { parse_pdf(enc); }) == ErrorCode::EncryptedDocument);
    CHECK(code_of([&] { extract_text(pdf_source(enc)); }) == ErrorCode::EncryptedDocument);
  }
  SUBCASE("xref stream") {
    std::string body = "%PDF-1.5\n";
    std::size_t off = body.size();
    body += "1 0 obj\n<< /Type /XRef /Size 2 /W [1 2 1] /Length 0 >>\nstream\n\nendstream\nendobj\n";
    body += "startxref\n" + std::to_string(off) + "\n%%EOF\n";
    CHECK(code_of([&] { parse_pdf(body); }) == ErrorCode::UnsupportedFeature);
  }
  SUBCASE("wrong stream length") {
    std::string content = "BT (A) Tj ET";
    std::string broken = pdf;
    auto pos = broken.find("/Length " + std::to_string(22));
    if (pos == std::string::npos) pos = broken.find("/Length ");
    REQUIRE(pos != std::string::npos);
    auto end = broken.find_first_of(" />", pos + 8);
    broken.replace(pos + 8, end - pos - 8, "3");
    CHECK(code_of([&] { parse_pdf(broken); }) == ErrorCode::MalformedDocument);
  }
}

TEST_CASE("decode_stream") {
  SUBCASE("unfiltered identity") {
    PdfStream s;
    s.data = "0123456789";
    CHECK(decode_stream(s) == "0123456789");
  }
  SUBCASE("reference deflate of Hello") {
    // zlib.compress(b"Hello") from an independent implementation.
    const unsigned char ref_bytes[] = {0x78, 0x9c, 0xf3, 0x48, 0xcd, 0xc9, 0xc9, 0x07, 0x00, 0x05, 0x8c, 0x01, 0xf5};
    PdfStream s;
    s.dict.entries["Filter"] = PdfName{"FlateDecode"};
    s.data.assign(reinterpret_cast<const char*>(ref_bytes), sizeof ref_bytes);
    CHECK(decode_stream(s) == "Hello");
  }
  SUBCASE("other filters") {
    PdfStream s;
    s.dict.entries["Filter"] = PdfName{"DCTDecode"};
    s.data = "xx";
    CHECK(code_of([&] { decode_stream(s); }) == ErrorCode::UnsupportedFilter);
  }
  SUBCASE("corrupt deflate") {
    PdfStream s;
    s.dict.entries["Filter"] = PdfName{"FlateDecode"};
    s.data = "not zlib at all";
    CHECK(code_of([&] { decode_stream(s); }) == ErrorCode::CorruptStream);
    std::string z = zlib_compress("some longer text to truncate");
    s.data = z.substr(0, z.size() - 6);
    CHECK(code_of([&] { decode_stream(s); }) == ErrorCode::CorruptStream);
  }
}

TEST_CASE("content stream operators") {
  auto fonts = standard_map();
  CHECK(extract_page_text("BT /F1 12 Tf (A) Tj ET", fonts) == "A");
  CHECK(extract_page_text("BT [(He) -300 (llo)] TJ ET", fonts) == "He llo");
  CHECK(extract_page_text("BT [(He) -200 (llo)] TJ ET", fonts) == "Hello");
  CHECK(extract_page_text("BT [(He) 250 (llo)] TJ ET", fonts) == "He llo");
  CHECK(extract_page_text("BT (a) Tj 0 -14 Td (b) Tj ET", fonts) == "a\nb");
  CHECK(extract_page_text("BT (a) Tj 20 0 Td (b) Tj ET", fonts) == "ab");
  CHECK(extract_page_text("BT 14 TL (a) Tj T* (b) Tj ET", fonts) == "a\nb");
  CHECK(extract_page_text("BT 0 -14 TD (a) Tj T* (b) Tj ET", fonts) == "\na\nb");
  CHECK(extract_page_text("BT (a) Tj (b) ' ET", fonts) == "a\nb");
  CHECK(extract_page_text("BT (a) Tj 1 2 (b) \" ET", fonts) == "a\nb");
  CHECK(extract_page_text("q 1 0 0 1 0 0 cm 0 0 m 10 10 l S Q BT (x) Tj ET", fonts) == "x");
  CHECK(extract_page_text("BT (\\101\\(\\)) Tj ET", fonts) == "A()");
  CHECK(extract_page_text("BT <48 69> Tj ET", fonts) == "Hi");
  CHECK(code_of([&] { extract_page_text("BT (a) Tj", fonts); }) == ErrorCode::MalformedDocument);
  CHECK(code_of([&] { extract_page_text("(a) Tj ET", fonts); }) == ErrorCode::MalformedDocument);
  CHECK(code_of([&] { extract_page_text("BT BT ET ET", fonts); }) == ErrorCode::MalformedDocument);
}

TEST_CASE("fonts and encodings") {
  auto fonts = FontMap{{"F1", winansi_font()}};
  CHECK(extract_page_text("BT /F1 9 Tf (\\351\\200) Tj ET", fonts) == "\xC3\xA9\xE2\x82\xAC");  // é €
  auto std_fonts = standard_map();
  CHECK(extract_page_text("BT /F1 9 Tf (\\256) Tj ET", std_fonts) == "\xEF\xAC\x81");  // fi ligature

  SUBCASE("ToUnicode bfchar overrides") {
    SimpleFont f = standard_font();
    apply_to_unicode(f,
                     "/CIDInit /ProcSet findresource begin 12 dict begin begincmap 1 begincodespacerange <00> <FF> "
                     "endcodespacerange 1 beginbfchar <41> <03A9> endbfchar endcmap");
    CHECK(extract_page_text("BT /F1 9 Tf (AB) Tj ET", FontMap{{"F1", f}}) == "\xCE\xA9" "B");
  }
  SUBCASE("multi-byte codes are unsupported") {
    SimpleFont f = standard_font();
    CHECK(code_of([&] {
            apply_to_unicode(f, "begincmap 1 begincodespacerange <0000> <FFFF> endcodespacerange 1 beginbfchar "
                                "<0041> <0041> endbfchar endcmap");
          }) == ErrorCode::UnsupportedFeature);
  }
  SUBCASE("composite fonts are unsupported") {
    std::string pdf = one_page("BT /F1 12 Tf (A) Tj ET", "<< /Type /Font /Subtype /Type0 /BaseFont /X /Encoding "
                                                          "/Identity-H >>");
    CHECK(code_of([&] { extract_text(pdf_source(pdf)); }) == ErrorCode::UnsupportedFeature);
  }
  SUBCASE("Differences with uni names") {
    std::string pdf = one_page("BT /F1 12 Tf (AB) Tj ET",
                               "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding << /Differences [65 "
                               "/uni03A9 /u1F600] >> >>");
    CHECK(extract_text(pdf_source(pdf)).pages[0] == "\xCE\xA9\xF0\x9F\x98\x80");
  }
}

TEST_CASE("writer and reader roundtrip random ASCII") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    std::string text;
    std::size_t n = rng() % 300;
    for (std::size_t i = 0; i < n; ++i) {
      auto r = rng() % 20;
      text.push_back(r == 0 ? '\n' : static_cast<char>(0x20 + rng() % 95));
    }
    TextPdfOptions opts;
    opts.compress = iter % 2 == 0;
    std::string pdf = write_text_pdf(text, opts);
    auto d = extract_text(pdf_source(pdf));
    REQUIRE(d.pages.size() == 1);
    CHECK_MESSAGE(d.pages[0] == text, "iteration " << iter);
  }
}

TEST_CASE("multi-page writer output") {
  auto d = extract_text(pdf_source(write_text_pdf("one\ftwo\nlines\fthree")));
  CHECK(d.pages == std::vector<std::string>{"one", "two\nlines", "three"});
  CHECK(d.char_count == 3 + 9 + 5);
}

TEST_CASE("extraction is deterministic") {
  std::string pdf = read_file(fixture_dir / "pdf/multipage.pdf");
  auto a = extract_text(pdf_source(pdf));
  auto b = extract_text(pdf_source(pdf));
  CHECK(a.pages == b.pages);
  CHECK(a.char_count == b.char_count);
}

TEST_CASE("fuzzed inputs produce typed errors") {
  std::mt19937_64 rng(11);
  std::vector<std::string> seeds;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir / "pdf"))
    if (entry.path().extension() == ".pdf") seeds.push_back(read_file(entry.path()));
  int errors = 0, ok = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string bytes;
    if (i % 3 == 0) {
      bytes = "%PDF-1.4\n" + lectern::testing::random_bytes(rng, rng() % 400);
    } else {
      bytes = seeds[rng() % seeds.size()];
      int flips = 1 + static_cast<int>(rng() % 8);
      for (int k = 0; k < flips; ++k) bytes[rng() % bytes.size()] = static_cast<char>(rng() & 0xFF);
      if (i % 3 == 2) bytes.resize(rng() % bytes.size());
    }
    try {
      extract_text(pdf_source(bytes));
      ++ok;
    } catch (const Error&) {
      ++errors;
    }
  }
  CHECK(errors + ok == 3000);
}

TEST_CASE("raster routing uses the recognizer") {
  auto page = ocr::render_text({U"HELLO WORLD"}, ocr::builtin_font(), {1, 1});
  auto d = extract_text({SourceKind::RasterPage, ocr::encode_pgm(page), "p.pgm"}, ocr::builtin_atlas());
  CHECK(d.pages == std::vector<std::string>{"HELLO WORLD"});
  CHECK(d.source_kind == SourceKind::RasterPage);
  CHECK(code_of([] { extract_text({SourceKind::RasterPage, "P7 junk", "p.pgm"}, ocr::builtin_atlas()); }) ==
        ErrorCode::UnsupportedFormat);
}

TEST_CASE("kinds") {
  CHECK(kind_for_path("a.PDF") == SourceKind::Pdf);
  CHECK(kind_for_path("a.txt") == SourceKind::PlainText);
  CHECK(kind_for_path("scan.pgm") == SourceKind::RasterPage);
  CHECK(kind_for_path("scan.png") == SourceKind::RasterPage);
  CHECK(code_of([] { kind_for_path("a.docx"); }) == ErrorCode::UnsupportedFormat);
  CHECK(parse_kind("raster_page") == SourceKind::RasterPage);
  CHECK(code_of([] { parse_kind("jpeg"); }) == ErrorCode::BadParams);
  CHECK(std::string(kind_name(SourceKind::PlainText)) == "plain_text");
}

TEST_CASE("pdf_literal escapes") {
  CHECK(pdf_literal("a(b)c\\") == "(a\\(b\\)c\\\\)");
  CHECK(pdf_literal(std::string("\n\x01", 2)) == "(\\012\\001)");
}
