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

#include <string_view>
#include <vector>

namespace lectern {

struct EmbeddedFile {
  std::string_view path;  // relative to data/
  std::string_view content;
};

const std::vector<EmbeddedFile>& embedded_files();

// Throws lectern::Error(IoError) when absent.
std::string_view embedded_file(std::string_view path);

}  // namespace lectern
