// SPDX-License-Identifier: Apache-2.0
#include "qhe/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace qhe {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw std::runtime_error(what + ": " + std::strerror(errno));
}

sockaddr_in make_addr(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
    throw std::invalid_argument("host must be an IPv4 address: " + host);
  return addr;
}

}  // namespace

TcpChannel::TcpChannel(int fd) : fd_(fd) {
  if (fd_ < 0) throw std::invalid_argument("bad socket descriptor");
}

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpChannel::send(const ClassicalMessage& msg) {
  std::string line = encode_message_line(msg);
  line.push_back('\n');
  std::size_t sent = 0;
  while (sent < line.size()) {
    ssize_t k = ::send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<std::size_t>(k);
  }
}

ClassicalMessage TcpChannel::receive() {
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return decode_message_line(line);
    }
    char chunk[4096];
    ssize_t k = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (k < 0) {
      if (errno == EINTR) continue;
      throw_errno("recv");
    }
    if (k == 0) throw ChannelClosed();
    buffer_.append(chunk, static_cast<std::size_t>(k));
  }
}

std::pair<std::string, std::uint16_t> parse_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= address.size())
    throw std::invalid_argument("address must be host:port");
  std::string host = address.substr(0, colon);
  unsigned long port = std::stoul(address.substr(colon + 1));
  if (port > 65535) throw std::invalid_argument("port out of range");
  return {host, static_cast<std::uint16_t>(port)};
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw_errno("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = make_addr(host, port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) throw_errno("bind");
  if (::listen(fd_, 1) < 0) throw_errno("listen");
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) < 0)
    throw_errno("getsockname");
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpChannel> TcpListener::accept_one() {
  for (;;) {
    int conn = ::accept(fd_, nullptr, nullptr);
    if (conn < 0) {
      if (errno == EINTR) continue;
      throw_errno("accept");
    }
    return std::make_unique<TcpChannel>(conn);
  }
}

std::unique_ptr<TcpChannel> tcp_connect(const std::string& host, std::uint16_t port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw_errno("socket");
  sockaddr_in addr = make_addr(host, port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    int saved = errno;
    ::close(fd);
    errno = saved;
    throw_errno("connect");
  }
  return std::make_unique<TcpChannel>(fd);
}

}  // namespace qhe
