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

#include "lectern/session/jobs.hpp"

#include <spdlog/spdlog.h>

#include "lectern/doc/extract.hpp"
#include "lectern/io.hpp"

namespace lectern::session {

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::shared_ptr<const DocumentRecord> process_job(const std::filesystem::path& path, DocumentStore& store,
                                                  const ocr::TemplateAtlas& atlas) {
  doc::DocumentSource src;
  src.kind = doc::kind_for_path(path.string());
  src.name = path.filename().string();
  src.bytes = read_file(path);
  return store.add(src.name, doc::extract_text(src, atlas));
}

JobLoop::JobLoop(DocumentStore& store, ocr::TemplateAtlas atlas) : store_(store), atlas_(std::move(atlas)) {}

JobLoop::~JobLoop() { stop(); }

void JobLoop::start() {
  std::lock_guard lock(mu_);
  if (running_) return;
  running_ = true;
  worker_ = std::thread([this] { run(); });
}

void JobLoop::stop() {
  {
    std::lock_guard lock(mu_);
    if (!running_) return;
    running_ = false;
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::uint64_t JobLoop::enqueue(const std::filesystem::path& path) {
  std::uint64_t seq;
  {
    std::lock_guard lock(mu_);
    seq = next_seq_++;
    queue_.emplace_back(seq, path);
  }
  cv_.notify_one();
  return seq;
}

bool JobLoop::wait_idle(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  return idle_cv_.wait_for(lock, timeout, [&] { return finished_ + 1 == next_seq_; });
}

std::vector<JobRecord> JobLoop::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

void JobLoop::run() {
  while (true) {
    std::pair<std::uint64_t, std::filesystem::path> job;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return !running_ || !queue_.empty(); });
      if (!running_) return;
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    JobRecord rec;
    rec.seq = job.first;
    rec.path = job.second.string();
    try {
      auto doc = process_job(job.second, store_, atlas_);
      rec.ok = true;
      rec.document_id = doc->id;
      rec.message = std::to_string(doc->sentences.size()) + " sentences";
      spdlog::info("job {}: {} -> {} ({} chars)", rec.seq, rec.path, doc->id, doc->char_count);
    } catch (const Error& e) {
      rec.error = e.code();
      rec.message = e.what();
      spdlog::error("job {}: {} failed: {} ({})", rec.seq, rec.path, e.what(), error_name(e.code()));
    } catch (const std::exception& e) {
      rec.error = ErrorCode::IoError;
      rec.message = e.what();
      spdlog::error("job {}: {} failed: {}", rec.seq, rec.path, e.what());
    }
    rec.finished_at = now_ms();
    {
      std::lock_guard lock(mu_);
      records_.push_back(std::move(rec));
      if (records_.size() > kMaxJobRecords) records_.erase(records_.begin());
      ++finished_;
    }
    idle_cv_.notify_all();
  }
}

}  // namespace lectern::session
