#pragma once

#include "engel/session.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace engel {

// Delivers whole frames between numbered parties; one FIFO per ordered pair.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send(std::size_t from, std::size_t to, const WireFrame& frame) = 0;
  virtual WireFrame recv(std::size_t at, std::size_t from) = 0;
  // Wakes every blocked receiver with a TransportError.
  virtual void abort() = 0;
};

// Mutex-guarded queues; usable from one thread (send before recv) or many.
class MemoryTransport : public Transport {
 public:
  explicit MemoryTransport(std::size_t parties);
  ~MemoryTransport() override;
  void send(std::size_t from, std::size_t to, const WireFrame& frame) override;
  WireFrame recv(std::size_t at, std::size_t from) override;
  void abort() override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string to_string() const { return host + ":" + std::to_string(port); }
  static Endpoint parse(const std::string& text);
};

// Full TCP mesh for one local party: connects to lower indices, accepts higher ones.
// Frames travel in the exact wire format.
class StreamTransport : public Transport {
 public:
  // Listens on endpoints[index] (port 0 picks a free port; see bound_port()).
  StreamTransport(std::size_t index, std::vector<Endpoint> endpoints);
  ~StreamTransport() override;
  std::uint16_t bound_port() const;
  // Establishes the mesh; endpoints may be updated with the peers' bound ports first.
  void connect(const std::vector<Endpoint>& endpoints, double timeout_seconds = 10.0);
  void send(std::size_t from, std::size_t to, const WireFrame& frame) override;
  WireFrame recv(std::size_t at, std::size_t from) override;
  void abort() override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class TransportKind { kInProcess, kThreads, kStream };
TransportKind parse_transport(const std::string& text);  // inproc, threads, tcp
std::string to_string(TransportKind k);

struct TranscriptEntry {
  unsigned round = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  Bytes frame;  // encoded WireFrame
};
// u16 round, u16 from, u16 to, then the frame bytes, per entry.
Bytes encode_transcript(const std::vector<TranscriptEntry>& entries);

struct SessionOutcome {
  bool ok = false;
  std::string error;
  std::vector<PartyOutcome> parties;
  std::vector<TranscriptEntry> transcript;
  Bytes transcript_bytes;
  std::string transcript_hash;  // sha256 hex
};

// Runs every party locally over the chosen transport.
SessionOutcome session_run(const ProtocolConfig& cfg, TransportKind transport);
// Same, with parties built by the caller (for mismatched configurations).
SessionOutcome session_run(std::vector<std::unique_ptr<Party>> parties, TransportKind transport);
// Runs a single party of a multi-process session over TCP.
SessionOutcome session_run_role(const ProtocolConfig& cfg, std::size_t role, const std::vector<Endpoint>& endpoints,
                                double timeout_seconds = 30.0);

}  // namespace engel
