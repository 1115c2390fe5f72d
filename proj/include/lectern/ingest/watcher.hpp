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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <thread>

namespace lectern::ingest {

struct WatchEvent {
  enum class Kind { Created };
  std::filesystem::path path;
  Kind kind = Kind::Created;
  std::chrono::system_clock::time_point timestamp;
};

struct WatchOptions {
  bool force_polling = false;
  std::chrono::milliseconds poll_interval{250};  // at most 500
};

// Reports files that appear in a directory by rename. Names starting with '.'
// are temporary and never reported. Uses inotify, or polls when it is missing.
class DirectoryWatcher {
 public:
  using Callback = std::function<void(const WatchEvent&)>;

  // Throws WatchDirMissing, BadParams (poll interval).
  DirectoryWatcher(std::filesystem::path dir, Callback callback, WatchOptions options = {});
  ~DirectoryWatcher();
  DirectoryWatcher(const DirectoryWatcher&) = delete;
  DirectoryWatcher& operator=(const DirectoryWatcher&) = delete;

  void start();
  void stop();
  bool polling() const { return inotify_fd_ < 0; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void inotify_loop();
  void emit(const std::filesystem::path& p);
  std::map<std::string, std::uint64_t> snapshot() const;

  std::filesystem::path dir_;
  Callback callback_;
  WatchOptions options_;
  int inotify_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread thread_;
};

}  // namespace lectern::ingest
