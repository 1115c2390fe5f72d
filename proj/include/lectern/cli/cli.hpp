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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lectern/error.hpp"
#include "lectern/ocr/bench.hpp"

namespace lectern::cli {

// Process exit codes. Stable; printed by --help.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInputMissing = 2,      // input file absent or unreadable, watch dir missing
  kExitUnsupportedFormat = 3,
  kExitDocument = 4,          // malformed, encrypted, unsupported content, empty
  kExitBadParams = 5,         // rate, volume, voice, sizes
  kExitAtlas = 6,             // atlas missing or invalid
  kExitHttpBind = 7,
  kExitIngestBind = 8,
  kExitTransfer = 9,          // ingest peer unreachable or frame rejected
  kExitUsage = 64,
};

std::string exit_code_table();
int exit_code_for(ErrorCode code);

struct ConvertOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<std::string> kind;  // overrides the extension
  std::optional<std::filesystem::path> atlas_dir;
};
int cmd_convert(const ConvertOptions& opts, std::ostream& out, std::ostream& err);

struct SpeakOptions {
  std::optional<std::filesystem::path> input;
  std::optional<std::string> text;
  std::filesystem::path output;
  std::string voice;
  double rate = 1.0;
  double volume = 1.0;
};
int cmd_speak(const SpeakOptions& opts, std::ostream& out, std::ostream& err);

struct BenchOptions {
  ocr::BenchConfig config;
  std::optional<std::filesystem::path> atlas_dir;
  std::optional<std::filesystem::path> csv_path;
};
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

int cmd_atlas_export(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);
int cmd_voices(std::ostream& out);

struct SendOptions {
  std::filesystem::path input;
  std::optional<std::string> name;
  std::string host = "127.0.0.1";
  int port = 5555;
};
int cmd_send(const SendOptions& opts, std::ostream& out, std::ostream& err);

struct ServeOptions {
  std::string http_bind = "127.0.0.1";
  int http_port = 8080;
  std::string ingest_bind = "0.0.0.0";
  int ingest_port = 5555;
  std::filesystem::path watch_dir = "inbox";
  std::filesystem::path store_dir = "lectern-store";
  std::optional<std::filesystem::path> atlas_dir;
  bool force_polling = false;
};
// Runs until SIGINT/SIGTERM or until *stop becomes true. Prints one
// "listening http=<port> ingest=<port>" line once both servers are up.
int cmd_serve(const ServeOptions& opts, std::ostream& out, std::ostream& err,
              const std::atomic<bool>* stop = nullptr);

// Parses argv and dispatches. Env: LECTERN_HTTP_PORT, LECTERN_INGEST_PORT,
// LECTERN_WATCH_DIR, LECTERN_STORE_DIR.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lectern::cli
