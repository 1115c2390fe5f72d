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

#include "lectern/ingest/watcher.hpp"

#include <poll.h>
#include <sys/inotify.h>
#include <sys/stat.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include "lectern/error.hpp"

namespace lectern::ingest {

namespace fs = std::filesystem;

DirectoryWatcher::DirectoryWatcher(fs::path dir, Callback callback, WatchOptions options)
    : dir_(std::move(dir)), callback_(std::move(callback)), options_(options) {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) throw Error(ErrorCode::WatchDirMissing, "watch directory does not exist: " + dir_.string());
  if (options_.poll_interval.count() <= 0 || options_.poll_interval.count() > 500)
    throw Error(ErrorCode::BadParams, "poll interval must be in (0, 500] ms");
}

DirectoryWatcher::~DirectoryWatcher() { stop(); }

void DirectoryWatcher::start() {
  if (running_) return;
  if (!options_.force_polling) {
    inotify_fd_ = inotify_init1(IN_NONBLOCK | IN_CLOEXEC);
    if (inotify_fd_ >= 0 && inotify_add_watch(inotify_fd_, dir_.c_str(), IN_MOVED_TO) < 0) {
      ::close(inotify_fd_);
      inotify_fd_ = -1;
    }
    if (inotify_fd_ < 0) spdlog::warn("inotify unavailable for {}, polling instead", dir_.string());
  }
  running_ = true;
  if (inotify_fd_ >= 0) {
    thread_ = std::thread([this] { inotify_loop(); });
  } else {
    // Take the baseline before returning so files renamed in afterwards are new.
    auto base = std::make_shared<std::map<std::string, std::uint64_t>>(snapshot());
    thread_ = std::thread([this, base] {
      auto known = std::move(*base);
      while (running_) {
        std::this_thread::sleep_for(options_.poll_interval);
        auto now = snapshot();
        for (const auto& [name, ino] : now) {
          auto it = known.find(name);
          if (it == known.end() || it->second != ino) emit(dir_ / name);
        }
        known = std::move(now);
      }
    });
  }
}

void DirectoryWatcher::stop() {
  if (!running_.exchange(false)) return;
  if (thread_.joinable()) thread_.join();
  if (inotify_fd_ >= 0) ::close(inotify_fd_);
  inotify_fd_ = -1;
}

void DirectoryWatcher::emit(const fs::path& p) {
  WatchEvent ev;
  ev.path = p;
  ev.timestamp = std::chrono::system_clock::now();
  try {
    callback_(ev);
  } catch (const std::exception& e) {
    spdlog::error("watch callback failed for {}: {}", p.string(), e.what());
  }
}

std::map<std::string, std::uint64_t> DirectoryWatcher::snapshot() const {
  std::map<std::string, std::uint64_t> out;
  std::error_code ec;
  for (fs::directory_iterator it(dir_, ec), end; !ec && it != end; it.increment(ec)) {
    std::string name = it->path().filename().string();
    if (name.empty() || name[0] == '.') continue;
    struct stat st {};
    if (::stat(it->path().c_str(), &st) != 0 || !S_ISREG(st.st_mode)) continue;
    out[name] = static_cast<std::uint64_t>(st.st_ino);
  }
  return out;
}

void DirectoryWatcher::inotify_loop() {
  alignas(inotify_event) char buf[16384];
  while (running_) {
    pollfd p{inotify_fd_, POLLIN, 0};
    if (::poll(&p, 1, 100) <= 0) continue;
    ssize_t n = ::read(inotify_fd_, buf, sizeof buf);
    if (n <= 0) continue;
    for (char* ptr = buf; ptr < buf + n;) {
      auto* ev = reinterpret_cast<inotify_event*>(ptr);
      ptr += sizeof(inotify_event) + ev->len;
      if (ev->mask & IN_Q_OVERFLOW) {
        spdlog::warn("inotify queue overflow on {}; some events were lost", dir_.string());
        continue;
      }
      if (!(ev->mask & IN_MOVED_TO) || (ev->mask & IN_ISDIR) || ev->len == 0) continue;
      std::string name(ev->name);
      if (name.empty() || name[0] == '.') continue;
      emit(dir_ / name);
    }
  }
}

}  // namespace lectern::ingest
