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

#include <cstddef>
#include <memory>
#include <string>

#include "lectern/error.hpp"
#include "lectern/ocr/recognizer.hpp"
#include "lectern/session/jobs.hpp"
#include "lectern/session/playback.hpp"
#include "lectern/session/store.hpp"

namespace lectern::session {

inline constexpr int kDefaultHttpPort = 8080;

struct ApiConfig {
  std::string bind_address = "127.0.0.1";
  int port = kDefaultHttpPort;  // 0 picks an ephemeral port
  // Audio is produced at most this far ahead of wall-clock playback unless
  // the request asks for ?pace=fast.
  bool realtime_audio = true;
  double realtime_lead_seconds = 0.5;
  std::size_t chunk_samples = 2048;
};

// Status code for an error code in API responses.
int http_status(ErrorCode code);

// HTTP/JSON API over the store, sessions and job log. Error bodies are
// {"code": <error name>, "message": <text>}.
class ApiServer {
 public:
  ApiServer(DocumentStore& store, SessionManager& sessions, const JobLoop* jobs, const ocr::TemplateAtlas& atlas,
            ApiConfig config = {});
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Throws BindFailure.
  void start();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lectern::session
