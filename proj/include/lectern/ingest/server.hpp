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
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace lectern::ingest {

inline constexpr int kDefaultIngestPort = 5555;

struct ServerConfig {
  std::string bind_address = "0.0.0.0";
  int port = kDefaultIngestPort;  // 0 picks an ephemeral port
  std::filesystem::path watch_dir;
};

struct ServerStats {
  std::uint64_t connections = 0;
  std::uint64_t stored = 0;
  std::uint64_t rejected = 0;
};

// Accepts frames on TCP and stores payloads atomically in the watch directory.
class IngestServer {
 public:
  using StoredCallback = std::function<void(const std::filesystem::path&)>;

  explicit IngestServer(ServerConfig config, StoredCallback on_stored = {});
  ~IngestServer();
  IngestServer(const IngestServer&) = delete;
  IngestServer& operator=(const IngestServer&) = delete;

  // Throws BindFailure, WatchDirMissing.
  void start();
  void stop();
  int port() const { return port_; }
  ServerStats stats() const;

 private:
  struct Connection {
    int fd = -1;
    std::thread thread;
    std::atomic<bool> done{false};
  };

  void accept_loop();
  void serve_connection(Connection& c);
  void store(const std::string& filename, const std::string& payload);
  void reap(bool all);

  ServerConfig config_;
  StoredCallback on_stored_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex conn_mu_;
  std::list<std::unique_ptr<Connection>> connections_;
  std::mutex file_locks_mu_;
  std::map<std::string, std::shared_ptr<std::mutex>> file_locks_;
  std::atomic<std::uint64_t> n_connections_{0}, n_stored_{0}, n_rejected_{0};
};

// Fake-scanner client. One connection can carry several frames.
class IngestClient {
 public:
  // Throws IoError.
  IngestClient(const std::string& host, int port);
  ~IngestClient();
  IngestClient(const IngestClient&) = delete;
  IngestClient& operator=(const IngestClient&) = delete;

  // Returns the ack line including '\n'. Throws IoError when the server
  // closes without one.
  std::string send(const std::string& filename, std::string_view payload);
  std::string send_raw(std::string_view bytes);
  // Half-closes the write side so the server sees end of stream.
  void finish_writes();
  std::string read_ack();

 private:
  int fd_ = -1;
};

}  // namespace lectern::ingest
