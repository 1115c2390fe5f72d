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
#include <optional>
#include <string_view>

namespace lectern::tts {

// ARPAbet plus SIL.
inline constexpr std::array<std::string_view, 40> kPhonemes = {
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH", "IY", "OW", "OY", "UH",
    "UW", "B",  "CH", "D",  "DH", "F",  "G",  "HH", "JH", "K",  "L",  "M",  "N",  "NG",
    "P",  "R",  "S",  "SH", "T",  "TH", "V",  "W",  "Y",  "Z",  "ZH", "SIL"};

using PhonemeId = int;

inline constexpr int kPhonemeCount = static_cast<int>(kPhonemes.size());

std::optional<PhonemeId> phoneme_id(std::string_view name);
std::string_view phoneme_name(PhonemeId id);
PhonemeId silence_id();

}  // namespace lectern::tts
