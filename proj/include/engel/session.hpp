#pragma once

#include "engel/protocols.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace engel {

// Everything the parties of one run agree on before the first frame.
struct ProtocolConfig {
  std::string protocol = "mkep";  // mkep, eke2, sig4, sss1, sss2, sdp
  std::string group;              // catalog name; a protocol default when empty
  std::uint64_t seed = 0;
  std::string hash = "sha256";
  unsigned n = 2;              // mkep: n+1 users
  BigInt modulus = 0;          // eke2, sig4: unit component Z_N^*, 0 for none
  std::size_t participants = 5;  // sss1, sss2
  std::size_t bits = 128;        // sss1 column length
  std::size_t threshold = 3;     // sss2
  BigInt prime = 2147483647;     // sss2
  WordComplexity words;
  BigInt max_exponent = BigInt(1) << 20;  // sdp

  std::string group_or_default() const;
  std::size_t party_count() const;
};

struct PartyOutcome {
  std::size_t index = 0;
  std::string role;
  bool ok = false;
  std::string error;
  Bytes key;             // canonical bytes of the agreed key or recovered secret
  std::string key_hash;  // hex digest of key
  std::optional<bool> verdict;  // sig4 verifier
  std::string summary;
};

struct Outbound {
  std::size_t to = 0;
  WireFrame frame;
};

// One protocol participant as a round-based state machine. In every round a
// party first sends, then receives exactly one frame from each expected peer.
class Party {
 public:
  Party(ProtocolConfig cfg, std::size_t index);
  virtual ~Party() = default;

  std::size_t index() const { return index_; }
  const ProtocolConfig& config() const { return cfg_; }
  virtual std::string role() const = 0;
  virtual unsigned rounds() const = 0;
  virtual std::vector<Outbound> send(unsigned round) = 0;
  virtual std::vector<std::size_t> expect(unsigned round) const = 0;
  virtual void receive(unsigned round, std::size_t from, const WireFrame& frame) = 0;
  virtual PartyOutcome finish() = 0;

 protected:
  // HELLO carrying protocol id, group label, hash algorithm and party count.
  WireFrame hello() const;
  void check_hello(const WireFrame& frame) const;
  std::vector<Outbound> broadcast(const WireFrame& frame) const;
  std::vector<std::size_t> everyone_else() const;
  PartyOutcome base_outcome() const;

  ProtocolConfig cfg_;
  std::size_t index_;
  std::size_t count_;
  Rng rng_;  // private randomness of this party
};

std::unique_ptr<Party> make_party(const ProtocolConfig& cfg, std::size_t index);
std::vector<std::unique_ptr<Party>> make_parties(const ProtocolConfig& cfg);

}  // namespace engel
