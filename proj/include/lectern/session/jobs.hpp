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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lectern/error.hpp"
#include "lectern/ocr/recognizer.hpp"
#include "lectern/session/store.hpp"

namespace lectern::session {

// Routes by extension: .pdf/.txt to text extraction, .pgm/.png to recognition.
// Throws the extraction errors and IoError.
std::shared_ptr<const DocumentRecord> process_job(const std::filesystem::path& path, DocumentStore& store,
                                                  const ocr::TemplateAtlas& atlas);

struct JobRecord {
  std::uint64_t seq = 0;
  std::string path;
  bool ok = false;
  std::string document_id;            // when ok
  std::optional<ErrorCode> error;     // when failed
  std::string message;
  std::int64_t finished_at = 0;       // Unix milliseconds
};

// Processes paths strictly in arrival order on one worker thread. A failing
// job is recorded and skipped.
class JobLoop {
 public:
  JobLoop(DocumentStore& store, ocr::TemplateAtlas atlas);
  ~JobLoop();
  JobLoop(const JobLoop&) = delete;
  JobLoop& operator=(const JobLoop&) = delete;

  void start();
  void stop();  // finishes the job in progress, drops the rest
  std::uint64_t enqueue(const std::filesystem::path& path);
  // Blocks until every job enqueued so far has finished or the timeout passes.
  bool wait_idle(std::chrono::milliseconds timeout);
  std::vector<JobRecord> records() const;

 private:
  void run();

  DocumentStore& store_;
  const ocr::TemplateAtlas atlas_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable idle_cv_;
  std::deque<std::pair<std::uint64_t, std::filesystem::path>> queue_;
  std::vector<JobRecord> records_;
  std::uint64_t next_seq_ = 1;
  std::uint64_t finished_ = 0;
  bool running_ = false;
  std::thread worker_;
};

inline constexpr std::size_t kMaxJobRecords = 1000;

}  // namespace lectern::session
