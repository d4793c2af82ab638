// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_TRANSPORT_HPP
#define NDG_TRANSPORT_HPP

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ndg {

/// Face ids tag halo messages: the axis plus which boundary trace of the
/// *sender* the payload is. A block's low halo is its low neighbor's high
/// trace and vice versa; with both encodings in the id, self-exchange on a
/// periodic single-block axis stays unambiguous.
constexpr std::uint32_t face_id(int axis, bool high_trace) {
  return static_cast<std::uint32_t>(2 * axis + (high_trace ? 1 : 0));
}

/// Point-to-point exchange of face traces between workers. Sends do not
/// block; receives block until the matching message arrives (or the run is
/// aborted). Payloads are raw double arrays in face-plane order.
class Transport {
public:
  virtual ~Transport() = default;

  /// Stage counter stamped into framed messages where the medium has frames.
  virtual void set_stage(std::uint32_t) {}

  virtual void send(int peer, std::uint32_t face, const double* data,
                    std::size_t count) = 0;
  virtual void recv(int peer, std::uint32_t face, double* out, std::size_t count) = 0;
};

/// Mailbox transport between workers of one process. One hub is shared by
/// all workers; endpoint(w) hands worker w its Transport facade. abort()
/// wakes every blocked receiver with a TransportError so a failing worker
/// cannot strand the others.
class InProcessHub {
public:
  explicit InProcessHub(int worker_count);
  ~InProcessHub();

  int worker_count() const { return worker_count_; }
  Transport& endpoint(int worker);
  void abort(const std::string& reason);
  bool aborted() const;

private:
  struct Message {
    int from;
    std::uint32_t face;
    std::vector<double> payload;
  };
  struct Mailbox {
    std::mutex mutex;
    std::condition_variable cv;
    std::deque<Message> messages;
  };
  class Endpoint;

  void push(int from, int to, std::uint32_t face, const double* data, std::size_t count);
  void pop(int from, int to, std::uint32_t face, double* out, std::size_t count);

  int worker_count_;
  std::vector<std::unique_ptr<Mailbox>> boxes_;
  std::vector<std::unique_ptr<Endpoint>> endpoints_;
  mutable std::mutex abort_mutex_;
  bool aborted_ = false;
  std::string abort_reason_;
};

/// Wire framing for the socket transport:
/// 4-byte magic "NDGH", 4-byte stage counter, 4-byte face id, 8-byte payload
/// byte count, then the payload as 64-bit little-endian floats in
/// face-node-major, variable-minor order. All header fields little-endian.
struct WireHeader {
  std::uint32_t stage = 0;
  std::uint32_t face = 0;
  std::uint64_t payload_bytes = 0;
};

constexpr std::size_t kWireHeaderSize = 20;
constexpr std::uint32_t kWireMagic = 0x4847444E;  // bytes "NDGH" on the wire

void encode_wire_header(const WireHeader& header, unsigned char out[kWireHeaderSize]);
/// Throws TransportError on a bad magic.
WireHeader decode_wire_header(const unsigned char bytes[kWireHeaderSize]);

/// Transport over pre-connected stream sockets (one full-duplex fd per
/// peer), for runs whose workers live in separate processes. Frames that
/// arrive ahead of the posted receive order are stashed per peer.
class SocketTransport : public Transport {
public:
  /// peer id -> connected stream socket fd; takes ownership of the fds.
  explicit SocketTransport(std::map<int, int> peer_fds);
  ~SocketTransport() override;

  void set_stage(std::uint32_t stage) override { stage_ = stage; }
  void send(int peer, std::uint32_t face, const double* data,
            std::size_t count) override;
  void recv(int peer, std::uint32_t face, double* out, std::size_t count) override;

private:
  struct Frame {
    WireHeader header;
    std::vector<double> payload;
  };
  Frame read_frame(int fd);

  std::map<int, int> fds_;
  std::map<int, std::deque<Frame>> stash_;
  std::uint32_t stage_ = 0;
};

}  // namespace ndg

#endif
