// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "qhe/protocol.hpp"

namespace qhe {

// Line-delimited JSON message channel over a connected TCP socket.
class TcpChannel : public Channel {
 public:
  explicit TcpChannel(int fd);
  ~TcpChannel() override;

  TcpChannel(const TcpChannel&) = delete;
  TcpChannel& operator=(const TcpChannel&) = delete;

  void send(const ClassicalMessage& msg) override;
  ClassicalMessage receive() override;

 private:
  int fd_ = -1;
  std::string buffer_;
};

// Splits "host:port"; throws std::invalid_argument on malformed input.
std::pair<std::string, std::uint16_t> parse_address(const std::string& address);

class TcpListener {
 public:
  // Binds and listens; port 0 picks an ephemeral port (see port()).
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();

  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<TcpChannel> accept_one();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

std::unique_ptr<TcpChannel> tcp_connect(const std::string& host, std::uint16_t port);

}  // namespace qhe
