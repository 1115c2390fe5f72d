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

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "lectern/doc/document.hpp"
#include "lectern/doc/pdf.hpp"
#include "lectern/ocr/recognizer.hpp"

namespace lectern::doc {

// TJ adjustments beyond this many thousandths of an em read as a word gap.
inline constexpr double kSpaceAdjustThreshold = 200;

// Byte code to text. An empty entry is an undefined code.
struct SimpleFont {
  std::array<std::u32string, 256> map;
};

using FontMap = std::map<std::string, SimpleFont>;  // keyed by resource name

SimpleFont standard_font();
SimpleFont winansi_font();

// Builds a simple font from a /Font dictionary: base encoding, /Differences,
// ToUnicode overrides. Throws UnsupportedFeature for composite fonts.
SimpleFont load_font(const PdfDict& font, const PdfObjectTable& table);

// Applies bfchar/bfrange entries with one-byte source codes.
void apply_to_unicode(SimpleFont& font, std::string_view cmap);

// Text operators only. Fonts missing from the map fall back to StandardEncoding.
// Throws MalformedDocument for unbalanced BT/ET.
std::string extract_page_text(std::string_view content, const FontMap& fonts);

std::vector<std::string> extract_pdf_pages(std::string_view bytes);

// Raster sources are recognized with the built-in atlas unless one is given.
ExtractedDocument extract_text(const DocumentSource& source);
ExtractedDocument extract_text(const DocumentSource& source, const ocr::TemplateAtlas& atlas);

}  // namespace lectern::doc
