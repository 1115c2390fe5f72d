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

// Writes the PDF fixture corpus: <name>.pdf plus <name>.txt holding the
// expected page texts joined by '\f'.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lectern/doc/pdf_writer.hpp"

namespace fs = std::filesystem;
using lectern::doc::PdfBuilder;
using lectern::doc::pdf_literal;

namespace {

const std::string kHelvetica = "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>";
const std::string kTimes = "<< /Type /Font /Subtype /Type1 /BaseFont /Times-Roman >>";

struct Fixture {
  std::string name;
  std::string pdf;
  std::string truth;
};

std::string ref(std::uint32_t n) { return std::to_string(n) + " 0 R"; }

// One page per content string, all sharing font /F1.
std::string simple(const std::vector<std::string>& contents, const std::string& font = kHelvetica,
                   bool compress = false) {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), f = b.reserve();
  std::string kids;
  for (const auto& c : contents) {
    auto page = b.reserve(), stream = b.reserve();
    b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /MediaBox [0 0 612 792] /Resources << /Font << /F1 " +
                    ref(f) + " >> >> /Contents " + ref(stream) + " >>");
    b.set_stream(stream, "", c, compress);
    kids += " " + ref(page);
  }
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + kids + " ] /Count " + std::to_string(contents.size()) + " >>");
  b.set(f, font);
  return b.finish(catalog);
}

std::string minimal4() {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), page = b.reserve(), stream = b.reserve();
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + ref(page) + "] /Count 1 >>");
  b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /MediaBox [0 0 612 792] /Contents " + ref(stream) +
                  " /Resources << /Font << /F1 << /Type /Font /Subtype /Type1 /BaseFont /Courier >> >> >> >>");
  b.set_stream(stream, "", "BT /F1 12 Tf 72 720 Td (Minimal) Tj ET");
  return b.finish(catalog);
}

std::string to_unicode_doc(const std::string& cmap, const std::string& content) {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), page = b.reserve(), stream = b.reserve(), font = b.reserve(),
       tu = b.reserve();
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + ref(page) + "] /Count 1 >>");
  b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /MediaBox [0 0 612 792] /Contents " + ref(stream) +
                  " /Resources << /Font << /F1 " + ref(font) + " >> >> >>");
  b.set_stream(stream, "", content);
  b.set(font, "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding /ToUnicode " +
                  ref(tu) + " >>");
  b.set_stream(tu, "", cmap, true);
  return b.finish(catalog);
}

std::string cmap(const std::string& body) {
  return "/CIDInit /ProcSet findresource begin\n12 dict begin\nbegincmap\n"
         "/CIDSystemInfo << /Registry (Adobe) /Ordering (UCS) /Supplement 0 >> def\n"
         "/CMapName /Adobe-Identity-UCS def\n/CMapType 2 def\n"
         "1 begincodespacerange\n<00> <FF>\nendcodespacerange\n" +
         body + "endcmap\nCMapName currentdict /CMap defineresource pop\nend\nend\n";
}

std::string incremental() {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), f = b.reserve(), page = b.reserve(), stream = b.reserve();
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + ref(page) + "] /Count 1 >>");
  b.set(f, kHelvetica);
  b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /MediaBox [0 0 612 792] /Resources << /Font << /F1 " +
                  ref(f) + " >> >> /Contents " + ref(stream) + " >>");
  b.set_stream(stream, "", "BT /F1 12 Tf 72 720 Td (Original draft) Tj ET");
  std::string base = b.finish(catalog);
  PdfBuilder u = PdfBuilder::incremental(base);
  auto extra = u.reserve();
  u.set_stream(stream, "", "BT /F1 12 Tf 72 720 Td (Revised text) Tj 0 -14 Td (appended in an update) Tj ET");
  u.set(extra, "<< /Producer (fixture writer) >>");
  return u.finish(catalog, "/Info " + ref(extra));
}

std::string inherited() {
  PdfBuilder b;
  auto catalog = b.reserve(), root = b.reserve(), mid = b.reserve(), f = b.reserve();
  std::vector<std::uint32_t> p, s;
  for (int i = 0; i < 3; ++i) p.push_back(b.reserve()), s.push_back(b.reserve());
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(root) + " >>");
  b.set(root, "<< /Type /Pages /Kids [" + ref(p[0]) + " " + ref(mid) + "] /Count 3 /Resources << /Font << /F1 " +
                  ref(f) + " >> >> /MediaBox [0 0 612 792] >>");
  b.set(mid, "<< /Type /Pages /Parent " + ref(root) + " /Kids [" + ref(p[1]) + " " + ref(p[2]) + "] /Count 2 >>");
  b.set(f, kHelvetica);
  const char* words[] = {"Page one", "Page two", "Page three"};
  for (int i = 0; i < 3; ++i) {
    b.set(p[i], "<< /Type /Page /Parent " + ref(i == 0 ? root : mid) + " /Contents " + ref(s[i]) + " >>");
    b.set_stream(s[i], "", std::string("BT /F1 12 Tf 72 720 Td ") + pdf_literal(words[i]) + " Tj ET");
  }
  return b.finish(catalog);
}

std::string contents_array() {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), page = b.reserve(), f = b.reserve(), s1 = b.reserve(),
       s2 = b.reserve();
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + ref(page) + "] /Count 1 >>");
  b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /MediaBox [0 0 612 792] /Resources << /Font << /F1 " +
                  ref(f) + " >> >> /Contents [" + ref(s1) + " " + ref(s2) + "] >>");
  b.set(f, kHelvetica);
  b.set_stream(s1, "", "BT /F1 12 Tf 72 720 Td (Split across) Tj", true);
  b.set_stream(s2, "", "0 -14 Td (two streams) Tj ET");
  return b.finish(catalog);
}

std::string indirect_length() {
  PdfBuilder b;
  auto catalog = b.reserve(), pages = b.reserve(), page = b.reserve(), f = b.reserve(), s = b.reserve(),
       len = b.reserve();
  std::string content = "BT /F1 12 Tf 72 720 Td (Length lives elsewhere) Tj ET";
  b.set(catalog, "<< /Type /Catalog /Pages " + ref(pages) + " >>");
  b.set(pages, "<< /Type /Pages /Kids [" + ref(page) + "] /Count 1 >>");
  b.set(page, "<< /Type /Page /Parent " + ref(pages) + " /MediaBox [0 0 612 792] /Resources << /Font << /F1 " +
                  ref(f) + " >> >> /Contents " + ref(s) + " >>");
  b.set(f, kHelvetica);
  b.set(s, "<< /Length " + ref(len) + " >>\nstream\n" + content + "\nendstream");
  b.set(len, std::to_string(content.size()));
  return b.finish(catalog);
}

std::vector<Fixture> corpus() {
  std::vector<Fixture> v;
  v.push_back({"hi", simple({"BT /F1 24 Tf 72 720 Td (Hi) Tj ET"}), "Hi"});
  v.push_back({"minimal4", minimal4(), "Minimal"});
  v.push_back({"flate", simple({"BT /F1 12 Tf 14 TL 72 720 Td (Compressed content stream) Tj T* (second line) Tj ET"},
                               kHelvetica, true),
               "Compressed content stream\nsecond line"});
  v.push_back({"multipage",
               simple({"BT /F1 12 Tf 72 720 Td (First page) Tj ET", "BT /F1 12 Tf 72 720 Td (Second page) Tj ET",
                       "BT /F1 12 Tf 72 720 Td (Third page) Tj ET"}),
               "First page\fSecond page\fThird page"});
  v.push_back({"tj_kerning", simple({"BT /F1 12 Tf 72 720 Td [(Ke) 30 (rned) -500 (words) -120 (stay) -250 (apart)] TJ ET"}),
               "Kerned wordsstay apart"});
  v.push_back({"td_lines",
               simple({"BT /F1 12 Tf 72 720 Td (alpha) Tj 0 -14 Td (beta) Tj 0 -14 Td (gamma) Tj 50 0 Td (delta) Tj ET"}),
               "alpha\nbeta\ngammadelta"});
  v.push_back({"tstar_leading", simple({"BT /F1 12 Tf 16 TL 72 720 Td (one) Tj T* (two) Tj T* T* (four) Tj ET"}),
               "one\ntwo\n\nfour"});
  v.push_back({"quote_ops", simple({"BT /F1 12 Tf 14 TL 72 720 Td (first) Tj (second) ' 2 1 (third) \" ET"}),
               "first\nsecond\nthird"});
  v.push_back({"tm_lines",
               simple({"BT /F1 12 Tf 1 0 0 1 72 700 Tm (top) Tj 1 0 0 1 72 680 Tm (middle) Tj 1 0 0 1 72 660 Tm "
                       "(bottom) Tj ET"}),
               "top\nmiddle\nbottom"});
  v.push_back({"separate_blocks",
               simple({"BT /F1 12 Tf 72 720 Td (Heading) Tj ET\nBT /F1 12 Tf 72 690 Td (Body text) Tj ET\n"
                       "BT /F1 12 Tf 72 670 Td (More body) Tj ET"}),
               "Heading\nBody text\nMore body"});
  v.push_back({"winansi_latin", simple({"BT /F1 12 Tf 72 720 Td (caf\\351 na\\357ve \\223quoted\\224 \\200 5) Tj ET"}),
               "café naïve “quoted” € 5"});
  v.push_back({"standard_encoding", simple({"BT /F1 12 Tf 72 720 Td (It's `quoted' \\256 \\257) Tj ET"}, kTimes),
               "It’s ‘quoted’ ﬁ ﬂ"});
  v.push_back({"differences",
               simple({"BT /F1 12 Tf 72 720 Td (\\001\\002\\003 xyz) Tj ET"},
                      "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding << /Type /Encoding "
                      "/BaseEncoding /WinAnsiEncoding /Differences [1 /D /o /g 120 /eacute /egrave /ecircumflex] >> >>"),
               "Dog éèê"});
  v.push_back({"tounicode_bfchar",
               to_unicode_doc(cmap("3 beginbfchar\n<01> <004C>\n<02> <0065>\n<03> <0078>\nendbfchar\n"),
                              "BT /F1 12 Tf 72 720 Td <010203> Tj ( mapped) Tj ET"),
               "Lex mapped"});
  v.push_back({"tounicode_bfrange",
               to_unicode_doc(cmap("2 beginbfrange\n<10> <12> <0041>\n<30> <31> [<03A9> <00660069>]\nendbfrange\n"),
                              "BT /F1 12 Tf 72 720 Td <101112> Tj ( ) Tj <3031> Tj ET"),
               "ABC Ωfi"});
  v.push_back({"incremental", incremental(), "Revised text\nappended in an update"});
  v.push_back({"inherited_resources", inherited(), "Page one\fPage two\fPage three"});
  v.push_back({"contents_array", contents_array(), "Split across\ntwo streams"});
  v.push_back({"inline_image",
               simple({"BT /F1 12 Tf 72 720 Td (Before image) Tj ET\nq 8 0 0 8 72 600 cm\nBI /W 2 /H 2 /BPC 8 /CS /G ID " +
                       std::string("\x00\xFF" "EI", 4) + "\nEI\nQ\nBT /F1 12 Tf 72 580 Td (After image) Tj ET"}),
               "Before image\nAfter image"});
  v.push_back({"indirect_length", indirect_length(), "Length lives elsewhere"});
  v.push_back({"graphics_ops",
               simple({"q 0.5 g 72 600 200 50 re f Q\n1 0 0 RG 2 w 72 590 m 272 590 l S\n"
                       "BT /F1 12 Tf 0 0 1 rg 72 720 Td 2 Tc 1 Tw 100 Tz 0 Ts 0 Tr (Text among paths) Tj ET\n"
                       "/GS1 gs [3 2] 0 d 10 10 m 20 20 30 30 40 40 c h S"}),
               "Text among paths"});
  v.push_back({"string_escapes",
               simple({"BT /F1 12 Tf 72 720 Td (\\(paren\\) back\\\\slash \\101\\102C) Tj <48656C6C6F> Tj "
                       "(split \\\nline) Tj ET"}),
               "(paren) back\\slash ABCHellosplit line"});
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 64;
  }
  fs::path dir = argv[1];
  fs::create_directories(dir);
  for (const auto& f : corpus()) {
    std::ofstream(dir / (f.name + ".pdf"), std::ios::binary) << f.pdf;
    std::ofstream(dir / (f.name + ".txt"), std::ios::binary) << f.truth;
  }
  std::cout << "wrote " << corpus().size() << " fixtures to " << dir << "\n";
  return 0;
}
