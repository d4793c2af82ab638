// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/transport.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cstring>

#include "ndg/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "wire payloads are little-endian; big-endian hosts need byte swaps");

namespace ndg {

class InProcessHub::Endpoint : public Transport {
public:
  Endpoint(InProcessHub& hub, int id) : hub_(hub), id_(id) {}
  void send(int peer, std::uint32_t face, const double* data,
            std::size_t count) override {
    hub_.push(id_, peer, face, data, count);
  }
  void recv(int peer, std::uint32_t face, double* out, std::size_t count) override {
    hub_.pop(peer, id_, face, out, count);
  }

private:
  InProcessHub& hub_;
  int id_;
};

InProcessHub::InProcessHub(int worker_count) : worker_count_(worker_count) {
  boxes_.reserve(worker_count);
  endpoints_.reserve(worker_count);
  for (int w = 0; w < worker_count; ++w) {
    boxes_.push_back(std::make_unique<Mailbox>());
    endpoints_.push_back(std::make_unique<Endpoint>(*this, w));
  }
}

InProcessHub::~InProcessHub() = default;

Transport& InProcessHub::endpoint(int worker) { return *endpoints_.at(worker); }

void InProcessHub::abort(const std::string& reason) {
  {
    std::lock_guard lock(abort_mutex_);
    if (aborted_) return;
    aborted_ = true;
    abort_reason_ = reason;
  }
  for (auto& box : boxes_) {
    std::lock_guard lock(box->mutex);
    box->cv.notify_all();
  }
}

bool InProcessHub::aborted() const {
  std::lock_guard lock(abort_mutex_);
  return aborted_;
}

void InProcessHub::push(int from, int to, std::uint32_t face, const double* data,
                        std::size_t count) {
  Mailbox& box = *boxes_.at(to);
  {
    std::lock_guard lock(box.mutex);
    box.messages.push_back(Message{from, face, std::vector<double>(data, data + count)});
  }
  box.cv.notify_all();
}

void InProcessHub::pop(int from, int to, std::uint32_t face, double* out,
                       std::size_t count) {
  Mailbox& box = *boxes_.at(to);
  std::unique_lock lock(box.mutex);
  for (;;) {
    auto it = std::find_if(box.messages.begin(), box.messages.end(),
                           [&](const Message& m) { return m.from == from && m.face == face; });
    if (it != box.messages.end()) {
      if (it->payload.size() != count) {
        throw TransportError("halo message size mismatch on face " + std::to_string(face));
      }
      std::copy(it->payload.begin(), it->payload.end(), out);
      box.messages.erase(it);
      return;
    }
    if (aborted()) {
      std::lock_guard alock(abort_mutex_);
      throw TransportError("exchange aborted: " + abort_reason_);
    }
    box.cv.wait(lock);
  }
}

namespace {

void put_u32(unsigned char* p, std::uint32_t v) { std::memcpy(p, &v, 4); }
void put_u64(unsigned char* p, std::uint64_t v) { std::memcpy(p, &v, 8); }
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return v;
}

void write_all(int fd, const void* data, std::size_t bytes) {
  const char* p = static_cast<const char*>(data);
  while (bytes > 0) {
    const ssize_t n = ::write(fd, p, bytes);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("socket write failed: ") + std::strerror(errno));
    }
    p += n;
    bytes -= static_cast<std::size_t>(n);
  }
}

void read_all(int fd, void* data, std::size_t bytes) {
  char* p = static_cast<char*>(data);
  while (bytes > 0) {
    const ssize_t n = ::read(fd, p, bytes);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("socket read failed: ") + std::strerror(errno));
    }
    if (n == 0) throw TransportError("peer closed the connection mid-frame");
    p += n;
    bytes -= static_cast<std::size_t>(n);
  }
}

}  // namespace

void encode_wire_header(const WireHeader& header, unsigned char out[kWireHeaderSize]) {
  put_u32(out, kWireMagic);
  put_u32(out + 4, header.stage);
  put_u32(out + 8, header.face);
  put_u64(out + 12, header.payload_bytes);
}

WireHeader decode_wire_header(const unsigned char bytes[kWireHeaderSize]) {
  if (get_u32(bytes) != kWireMagic) {
    throw TransportError("bad frame magic in halo message");
  }
  WireHeader h;
  h.stage = get_u32(bytes + 4);
  h.face = get_u32(bytes + 8);
  h.payload_bytes = get_u64(bytes + 12);
  return h;
}

SocketTransport::SocketTransport(std::map<int, int> peer_fds)
    : fds_(std::move(peer_fds)) {}

SocketTransport::~SocketTransport() {
  for (auto& [peer, fd] : fds_) ::close(fd);
}

void SocketTransport::send(int peer, std::uint32_t face, const double* data,
                           std::size_t count) {
  auto it = fds_.find(peer);
  if (it == fds_.end()) throw TransportError("no connection to worker " + std::to_string(peer));
  WireHeader h;
  h.stage = stage_;
  h.face = face;
  h.payload_bytes = count * sizeof(double);
  unsigned char header[kWireHeaderSize];
  encode_wire_header(h, header);
  write_all(it->second, header, kWireHeaderSize);
  write_all(it->second, data, count * sizeof(double));
}

SocketTransport::Frame SocketTransport::read_frame(int fd) {
  unsigned char header[kWireHeaderSize];
  read_all(fd, header, kWireHeaderSize);
  Frame f;
  f.header = decode_wire_header(header);
  f.payload.resize(f.header.payload_bytes / sizeof(double));
  read_all(fd, f.payload.data(), f.header.payload_bytes);
  return f;
}

void SocketTransport::recv(int peer, std::uint32_t face, double* out,
                           std::size_t count) {
  auto it = fds_.find(peer);
  if (it == fds_.end()) throw TransportError("no connection to worker " + std::to_string(peer));
  auto& stash = stash_[peer];
  for (;;) {
    auto match = std::find_if(stash.begin(), stash.end(),
                              [&](const Frame& f) { return f.header.face == face; });
    if (match != stash.end()) {
      if (match->payload.size() != count) {
        throw TransportError("halo frame size mismatch on face " + std::to_string(face));
      }
      std::copy(match->payload.begin(), match->payload.end(), out);
      stash.erase(match);
      return;
    }
    stash.push_back(read_frame(it->second));
  }
}

}  // namespace ndg
