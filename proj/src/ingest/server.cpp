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

#include "lectern/ingest/server.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include "lectern/error.hpp"
#include "lectern/ingest/frame.hpp"
#include "lectern/io.hpp"
#include "socket.hpp"

namespace lectern::ingest {

namespace {

class SocketSource : public ByteSource {
 public:
  explicit SocketSource(int fd) : fd_(fd) {}
  std::size_t read(char* buf, std::size_t n) override { return read_some(fd_, buf, n); }

 private:
  int fd_;
};

}  // namespace

IngestServer::IngestServer(ServerConfig config, StoredCallback on_stored)
    : config_(std::move(config)), on_stored_(std::move(on_stored)) {}

IngestServer::~IngestServer() { stop(); }

void IngestServer::start() {
  if (running_) return;
  std::error_code ec;
  if (!std::filesystem::is_directory(config_.watch_dir, ec))
    throw Error(ErrorCode::WatchDirMissing, "watch directory does not exist: " + config_.watch_dir.string());
  Fd fd = listen_tcp(config_.bind_address, config_.port);
  port_ = local_port(fd.get());
  listen_fd_ = fd.release();
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
  spdlog::info("ingest listening on {}:{}, storing into {}", config_.bind_address, port_, config_.watch_dir.string());
}

void IngestServer::stop() {
  if (!running_.exchange(false)) return;
  if (acceptor_.joinable()) acceptor_.join();
  {
    std::lock_guard lock(conn_mu_);
    for (auto& c : connections_)
      if (!c->done) ::shutdown(c->fd, SHUT_RDWR);
  }
  reap(true);
  ::close(listen_fd_);
  listen_fd_ = -1;
}

ServerStats IngestServer::stats() const { return {n_connections_, n_stored_, n_rejected_}; }

void IngestServer::reap(bool all) {
  std::list<std::unique_ptr<Connection>> finished;
  {
    std::lock_guard lock(conn_mu_);
    for (auto it = connections_.begin(); it != connections_.end();) {
      if (all || (*it)->done) {
        finished.push_back(std::move(*it));
        it = connections_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto& c : finished) {
    if (c->thread.joinable()) c->thread.join();
    ::close(c->fd);
  }
}

void IngestServer::accept_loop() {
  while (running_) {
    pollfd p{listen_fd_, POLLIN, 0};
    int rc = ::poll(&p, 1, 100);
    reap(false);
    if (rc <= 0 || !(p.revents & POLLIN)) continue;
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    ++n_connections_;
    auto conn = std::make_unique<Connection>();
    conn->fd = fd;
    Connection* raw = conn.get();
    std::lock_guard lock(conn_mu_);
    connections_.push_back(std::move(conn));
    raw->thread = std::thread([this, raw] {
      serve_connection(*raw);
      raw->done = true;
    });
  }
}

void IngestServer::serve_connection(Connection& c) {
  SocketSource src(c.fd);
  try {
    while (running_) {
      std::string ack;
      bool close_after = false;
      try {
        auto frame = read_frame(src);
        if (!frame) break;
        store(frame->filename, frame->payload);
        ++n_stored_;
        ack = ack_ok();
      } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError && !running_) break;
        ++n_rejected_;
        spdlog::warn("ingest frame rejected: {} ({})", e.what(), error_name(e.code()));
        ack = ack_for(e.code());
        close_after = closes_connection(e.code());
      }
      write_all(c.fd, ack);
      if (close_after) break;
    }
  } catch (const Error& e) {
    spdlog::debug("ingest connection ended: {}", e.what());
  }
  ::shutdown(c.fd, SHUT_RDWR);
}

void IngestServer::store(const std::string& filename, const std::string& payload) {
  std::shared_ptr<std::mutex> m;
  {
    std::lock_guard lock(file_locks_mu_);
    auto& slot = file_locks_[filename];
    if (!slot) slot = std::make_shared<std::mutex>();
    m = slot;
  }
  std::filesystem::path target = config_.watch_dir / filename;
  {
    std::lock_guard lock(*m);
    write_file_atomic(target, payload);
  }
  spdlog::info("stored {} ({} bytes)", target.string(), payload.size());
  if (on_stored_) on_stored_(target);
}

IngestClient::IngestClient(const std::string& host, int port) : fd_(connect_tcp(host, port).release()) {}

IngestClient::~IngestClient() {
  if (fd_ >= 0) ::close(fd_);
}

std::string IngestClient::send(const std::string& filename, std::string_view payload) {
  return send_raw(encode_frame(filename, payload));
}

std::string IngestClient::send_raw(std::string_view bytes) {
  write_all(fd_, bytes);
  return read_ack();
}

void IngestClient::finish_writes() { ::shutdown(fd_, SHUT_WR); }

std::string IngestClient::read_ack() {
  std::string ack;
  char ch;
  while (ack.size() < 8) {
    if (read_some(fd_, &ch, 1) == 0) throw Error(ErrorCode::IoError, "server closed the connection without an ack");
    ack.push_back(ch);
    if (ch == '\n') return ack;
  }
  throw Error(ErrorCode::IoError, "malformed ack from server");
}

}  // namespace lectern::ingest
