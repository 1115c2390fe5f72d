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
#include <string_view>

namespace lectern::doc {

using GlyphNames = std::array<std::string_view, 256>;  // empty = undefined code

const GlyphNames& standard_encoding();
const GlyphNames& winansi_encoding();

// Latin names from the two encodings plus uniXXXX / uXXXX[XX]. 0 when unknown.
char32_t glyph_unicode(std::string_view name);

// Inverse of WinAnsi for text the writer emits. -1 when not encodable.
int winansi_code(char32_t cp);

}  // namespace lectern::doc
