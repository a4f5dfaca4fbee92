#include "engel/session.hpp"

#include <algorithm>

namespace engel {

namespace {

constexpr std::uint64_t kPublicStream = 1ull << 32;
constexpr std::uint64_t kSharedStream = (1ull << 32) + 1;

WireFrame frame_of(MessageKind kind, Bytes payload) { return {kind, std::move(payload)}; }

void expect_kind(const WireFrame& f, MessageKind kind) {
  if (f.kind != kind)
    throw ProtocolError("expected " + message_kind_name(kind) + ", got " + message_kind_name(f.kind));
}

std::string hex_digest(const std::string& alg, const Bytes& data) { return to_hex(digest(alg, data)); }

}  // namespace

std::string ProtocolConfig::group_or_default() const {
  if (!group.empty()) return group;
  if (protocol == "mkep") return n == 1 ? "expquot:2:2:25" : "expquot:2:" + std::to_string(n + 1) + ":25";
  if (protocol == "eke2" || protocol == "sss1" || protocol == "sss2") return "burnside3:2";
  if (protocol == "sig4") return "expquot:2:3:25";
  if (protocol == "sdp") return "expquot:2:2:1018081";
  throw InvalidArgument("unknown protocol '" + protocol + "'");
}

std::size_t ProtocolConfig::party_count() const {
  if (protocol == "mkep") return n + 1;
  if (protocol == "eke2" || protocol == "sig4" || protocol == "sdp") return 2;
  if (protocol == "sss1" || protocol == "sss2") return participants + 1;
  throw InvalidArgument("unknown protocol '" + protocol + "'");
}

Party::Party(ProtocolConfig cfg, std::size_t index)
    : cfg_(std::move(cfg)), index_(index), count_(cfg_.party_count()), rng_(cfg_.seed, index) {
  if (index_ >= count_) throw InvalidArgument("party index out of range");
}

WireFrame Party::hello() const {
  Bytes b;
  put_string(b, cfg_.protocol);
  put_string(b, cfg_.group_or_default());
  put_string(b, cfg_.hash);
  put_u16(b, static_cast<std::uint32_t>(count_));
  return frame_of(MessageKind::kHello, std::move(b));
}

void Party::check_hello(const WireFrame& frame) const {
  expect_kind(frame, MessageKind::kHello);
  std::size_t off = 0;
  const auto proto = get_string(frame.payload, off);
  const auto group = get_string(frame.payload, off);
  const auto hash = get_string(frame.payload, off);
  const auto count = get_u16(frame.payload, off);
  if (off != frame.payload.size()) throw ProtocolError("trailing bytes in HELLO");
  if (proto != cfg_.protocol) throw ProtocolError("HELLO protocol mismatch: " + proto + " vs " + cfg_.protocol);
  if (group != cfg_.group_or_default())
    throw ProtocolError("HELLO group mismatch: " + group + " vs " + cfg_.group_or_default());
  if (hash != cfg_.hash) throw ProtocolError("HELLO hash mismatch: " + hash + " vs " + cfg_.hash);
  if (count != count_) throw ProtocolError("HELLO party count mismatch");
}

std::vector<Outbound> Party::broadcast(const WireFrame& frame) const {
  std::vector<Outbound> out;
  for (std::size_t j = 0; j < count_; ++j)
    if (j != index_) out.push_back({j, frame});
  return out;
}

std::vector<std::size_t> Party::everyone_else() const {
  std::vector<std::size_t> v;
  for (std::size_t j = 0; j < count_; ++j)
    if (j != index_) v.push_back(j);
  return v;
}

PartyOutcome Party::base_outcome() const {
  PartyOutcome o;
  o.index = index_;
  o.role = role();
  return o;
}

namespace {

// HELLO, PUB, KEYCONFIRM among peers that each publish one element and derive a key.
class KeyAgreementParty : public Party {
 public:
  using Party::Party;
  unsigned rounds() const override { return 3; }

  std::vector<Outbound> send(unsigned round) override {
    switch (round) {
      case 0:
        return broadcast(hello());
      case 1:
        return broadcast(frame_of(MessageKind::kPub, public_bytes()));
      default:
        key_ = derive_key();
        key_hash_ = hex_digest(cfg_.hash, key_);
        return broadcast(frame_of(MessageKind::kKeyConfirm, digest(cfg_.hash, key_)));
    }
  }

  std::vector<std::size_t> expect(unsigned) const override { return everyone_else(); }

  void receive(unsigned round, std::size_t from, const WireFrame& f) override {
    if (round == 0) {
      check_hello(f);
    } else if (round == 1) {
      expect_kind(f, MessageKind::kPub);
      accept_public(from, f.payload);
    } else {
      expect_kind(f, MessageKind::kKeyConfirm);
      if (f.payload != digest(cfg_.hash, key_))
        throw ProtocolError("key confirmation mismatch from party " + std::to_string(from));
    }
  }

  PartyOutcome finish() override {
    auto o = base_outcome();
    o.ok = true;
    o.key = key_;
    o.key_hash = key_hash_;
    o.summary = summary();
    return o;
  }

 protected:
  virtual Bytes public_bytes() = 0;
  virtual void accept_public(std::size_t from, const Bytes& payload) = 0;
  virtual Bytes derive_key() = 0;
  virtual std::string summary() const { return ""; }

  Bytes key_;
  std::string key_hash_;
};

class MkepParty : public KeyAgreementParty {
 public:
  MkepParty(const ProtocolConfig& cfg, std::size_t index) : KeyAgreementParty(cfg, index) {
    const auto p = catalog_by_name(cfg_.group_or_default());
    Rng pub(cfg_.seed, kPublicStream);
    const auto defining = p->defining_generators();
    std::optional<MkepSetup> s;
    if (defining.size() >= 2) {
      try {
        s = mkep_setup(p, GroupElement::generator(p, defining[0]), GroupElement::generator(p, defining[1]), cfg_.n);
      } catch (const ProtocolError&) {
      }
    }
    for (int attempt = 0; !s && attempt < 1000; ++attempt) {
      try {
        s = mkep_setup(p, platform_random(p, 0, pub).g, platform_random(p, 0, pub).g, cfg_.n);
      } catch (const ProtocolError&) {
      }
    }
    if (!s) throw ProtocolError("no non-degenerate pair in " + p->label());
    setup_ = *s;
    secret_ = mkep_sample_secret(setup_, rng_);
    publics_.resize(count_);
    publics_[index_] = mkep_public(setup_, secret_);
  }
  std::string role() const override { return "user" + std::to_string(index_ + 1); }

 protected:
  Bytes public_bytes() override { return encode_element(publics_[index_]); }
  void accept_public(std::size_t from, const Bytes& payload) override {
    publics_[from] = decode_element(payload, setup_.group);
  }
  Bytes derive_key() override {
    key_el_ = mkep_user_key(setup_, index_, secret_, publics_);
    return encode_element(key_el_);
  }
  std::string summary() const override { return key_el_.to_string(); }

 private:
  MkepSetup setup_;
  BigInt secret_;
  std::vector<GroupElement> publics_;
  GroupElement key_el_;
};

class Engel2Party : public KeyAgreementParty {
 public:
  Engel2Party(const ProtocolConfig& cfg, std::size_t index) : KeyAgreementParty(cfg, index) {
    p_ = catalog_by_name(cfg_.group_or_default());
    engel2_platform_check(p_, 1000, cfg_.seed);
    secret_ = platform_random(p_, cfg_.modulus, rng_);
  }
  std::string role() const override { return index_ == 0 ? "alice" : "bob"; }

 protected:
  Bytes public_bytes() override { return encode_platform(engel2_message(secret_)); }
  void accept_public(std::size_t, const Bytes& payload) override {
    received_ = decode_platform(payload, p_, cfg_.modulus);
  }
  Bytes derive_key() override {
    key_el_ = engel2_key(secret_, received_);
    return encode_platform(key_el_);
  }
  std::string summary() const override { return to_string(key_el_); }

 private:
  PresentationPtr p_;
  PlatformElement secret_, received_, key_el_;
};

class SdpParty : public KeyAgreementParty {
 public:
  SdpParty(const ProtocolConfig& cfg, std::size_t index) : KeyAgreementParty(cfg, index) {
    const auto p = catalog_by_name(cfg_.group_or_default());
    Rng pub(cfg_.seed, kPublicStream);
    auto phi = random_automorphism(p, pub);
    auto g = p->is_finite_group() ? random_element(p, pub) : random_element_bounded(p, pub, 20);
    setup_ = sdp_setup(p, phi, g);
    if (cfg_.max_exponent < 2) throw InvalidArgument("sdp exponent bound must be at least 2");
    exponent_ = 1 + rng_.below(BigInt(cfg_.max_exponent - 1));
    own_ = sdp_public(setup_, exponent_);
  }
  std::string role() const override { return index_ == 0 ? "alice" : "bob"; }

 protected:
  Bytes public_bytes() override { return encode_element(own_); }
  void accept_public(std::size_t, const Bytes& payload) override { received_ = decode_element(payload, setup_.group); }
  Bytes derive_key() override {
    key_el_ = sdp_key(setup_, exponent_, own_, received_);
    return encode_element(key_el_);
  }
  std::string summary() const override { return key_el_.to_string(); }

 private:
  SdpSetup setup_;
  BigInt exponent_;
  GroupElement own_, received_, key_el_;
};

Bytes encode_signature(const Engel4Signature& s) {
  Bytes out;
  for (const auto* t : {&s.x2, &s.y2, &s.t3, &s.t4}) {
    const auto b = encode_platform(*t);
    put_u32(out, static_cast<std::uint32_t>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

Engel4Signature decode_signature(const Bytes& in, const PresentationPtr& p, const BigInt& modulus) {
  std::size_t off = 0;
  auto next = [&] {
    const auto len = get_u32(in, off);
    if (in.size() - off < len) throw ParseError("truncated signature token");
    Bytes b(in.begin() + static_cast<long>(off), in.begin() + static_cast<long>(off + len));
    off += len;
    return decode_platform(b, p, modulus);
  };
  Engel4Signature s;
  s.x2 = next();
  s.y2 = next();
  s.t3 = next();
  s.t4 = next();
  if (off != in.size()) throw ParseError("trailing bytes after signature");
  return s;
}

// Signer (index 0) registers x^2 with PUB, then sends SIG; the verifier shares y.
class Engel4Party : public Party {
 public:
  Engel4Party(const ProtocolConfig& cfg, std::size_t index) : Party(cfg, index) {
    p_ = catalog_by_name(cfg_.group_or_default());
    Rng shared(cfg_.seed, kSharedStream);
    y_ = platform_random(p_, cfg_.modulus, shared);
    if (index_ == 0) x_ = platform_random(p_, cfg_.modulus, rng_);
  }
  std::string role() const override { return index_ == 0 ? "signer" : "verifier"; }
  unsigned rounds() const override { return 3; }

  std::vector<Outbound> send(unsigned round) override {
    if (round == 0) return broadcast(hello());
    if (index_ != 0) return {};
    if (round == 1) return broadcast(frame_of(MessageKind::kPub, encode_platform(platform_pow(x_, 2))));
    sig_ = engel4_sign(x_, y_);
    return broadcast(frame_of(MessageKind::kSig, encode_signature(sig_)));
  }
  std::vector<std::size_t> expect(unsigned round) const override {
    if (round == 0) return everyone_else();
    return index_ == 0 ? std::vector<std::size_t>{} : std::vector<std::size_t>{0};
  }
  void receive(unsigned round, std::size_t, const WireFrame& f) override {
    if (round == 0) return check_hello(f);
    if (round == 1) {
      expect_kind(f, MessageKind::kPub);
      public_key_ = decode_platform(f.payload, p_, cfg_.modulus);
      return;
    }
    expect_kind(f, MessageKind::kSig);
    sig_ = decode_signature(f.payload, p_, cfg_.modulus);
    verdict_ = engel4_verify(y_, public_key_, sig_);
  }
  PartyOutcome finish() override {
    auto o = base_outcome();
    o.key = encode_signature(sig_);
    o.key_hash = hex_digest(cfg_.hash, o.key);
    if (index_ == 0) {
      o.ok = true;
      o.summary = "signed";
    } else {
      o.verdict = verdict_;
      o.ok = verdict_;
      o.summary = verdict_ ? "accepted" : "rejected";
      if (!verdict_) o.error = "signature rejected";
    }
    return o;
  }

 private:
  PresentationPtr p_;
  PlatformElement x_, y_, public_key_;
  Engel4Signature sig_;
  bool verdict_ = false;
};

// Dealer 0 sends SHARE packages; participants decode and send their columns to
// participant 1, which reconstructs and confirms a digest back to the dealer.
class SharingParty : public Party {
 public:
  SharingParty(const ProtocolConfig& cfg, std::size_t index) : Party(cfg, index) {
    scheme2_ = cfg_.protocol == "sss2";
    if (scheme2_ && (cfg_.threshold < 2 || cfg_.threshold > cfg_.participants))
      throw InvalidArgument("threshold must satisfy 2 <= t <= participants");
    if (index_ == 0) {
      const std::vector<std::string> groups{cfg_.group_or_default()};
      if (scheme2_) {
        secret_int_ = rng_.below(cfg_.prime);
        packages_ = sss2_deal(secret_int_, cfg_.threshold, cfg_.participants, cfg_.prime, groups, rng_, cfg_.words);
        secret_bytes_ = integer_bytes(secret_int_);
      } else {
        BitColumn secret(cfg_.bits);
        for (auto& b : secret) b = rng_.coin() ? 1 : 0;
        packages_ = sss1_deal(secret, cfg_.participants, groups, rng_, cfg_.words);
        secret_bytes_ = Bytes(secret.begin(), secret.end());
      }
    }
  }
  std::string role() const override { return index_ == 0 ? "dealer" : "participant" + std::to_string(index_); }
  unsigned rounds() const override { return 4; }

  std::vector<Outbound> send(unsigned round) override {
    if (round == 0) return broadcast(hello());
    if (round == 1) {
      if (index_ != 0) return {};
      std::vector<Outbound> out;
      for (const auto& pkg : packages_) out.push_back({pkg.participant, frame_of(MessageKind::kShare, encode_package(pkg))});
      return out;
    }
    if (round == 2) {
      if (!contributes()) return {};
      if (index_ == 1) {
        add_column(1, column_);
        return {};
      }
      Bytes b;
      put_u16(b, static_cast<std::uint32_t>(index_));
      b.insert(b.end(), column_.begin(), column_.end());
      return {{1, frame_of(MessageKind::kShare, std::move(b))}};
    }
    if (index_ != 1) return {};
    return {{0, frame_of(MessageKind::kKeyConfirm, digest(cfg_.hash, recovered_))}};
  }

  std::vector<std::size_t> expect(unsigned round) const override {
    if (round == 0) return everyone_else();
    if (round == 1) return index_ == 0 ? std::vector<std::size_t>{} : std::vector<std::size_t>{0};
    if (round == 2) {
      if (index_ != 1) return {};
      std::vector<std::size_t> v;
      for (std::size_t j = 2; j <= contributors(); ++j) v.push_back(j);
      return v;
    }
    return index_ == 0 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{};
  }

  void receive(unsigned round, std::size_t from, const WireFrame& f) override {
    if (round == 0) return check_hello(f);
    if (round == 1) {
      expect_kind(f, MessageKind::kShare);
      auto pkg = decode_package(f.payload);
      if (pkg.participant != index_) throw ProtocolError("share addressed to another participant");
      if (pkg.group != cfg_.group_or_default()) throw ProtocolError("share over an unexpected group");
      column_ = decode_package_bits(pkg);
      return;
    }
    if (round == 2) {
      expect_kind(f, MessageKind::kShare);
      std::size_t off = 0;
      const auto who = get_u16(f.payload, off);
      if (who != from) throw ProtocolError("column sender mismatch");
      add_column(who, BitColumn(f.payload.begin() + 2, f.payload.end()));
      return;
    }
    expect_kind(f, MessageKind::kKeyConfirm);
    if (f.payload != digest(cfg_.hash, secret_bytes_)) throw ProtocolError("reconstructed secret does not match");
    confirmed_ = true;
  }

  PartyOutcome finish() override {
    auto o = base_outcome();
    o.ok = index_ != 0 || confirmed_;
    if (index_ == 0) {
      o.key = secret_bytes_;
      o.summary = confirmed_ ? "confirmed" : "unconfirmed";
    } else if (index_ == 1) {
      o.key = recovered_;
      o.summary = scheme2_ ? recovered_int_.str() : "recovered " + std::to_string(recovered_.size()) + " bits";
    } else {
      o.summary = "contributed";
    }
    if (!o.key.empty()) o.key_hash = hex_digest(cfg_.hash, o.key);
    return o;
  }

 private:
  static Bytes integer_bytes(const BigInt& v) {
    Bytes b;
    put_bigint(b, v);
    return b;
  }
  std::size_t contributors() const { return scheme2_ ? cfg_.threshold : cfg_.participants; }
  bool contributes() const { return index_ >= 1 && index_ <= contributors(); }
  void add_column(std::size_t who, BitColumn col) {
    points_.push_back({BigInt(who), bits_to_integer(col)});
    columns_.push_back(std::move(col));
    if (columns_.size() == contributors()) reconstruct();
  }
  void reconstruct() {
    if (scheme2_) {
      recovered_int_ = sss2_reconstruct(points_, cfg_.threshold, cfg_.prime);
      recovered_ = integer_bytes(recovered_int_);
    } else {
      const auto col = sss1_reconstruct(columns_, cfg_.participants);
      recovered_ = Bytes(col.begin(), col.end());
    }
  }

  bool scheme2_ = false;
  std::vector<SharePackage> packages_;
  BigInt secret_int_;
  Bytes secret_bytes_;
  BitColumn column_;
  std::vector<BitColumn> columns_;
  std::vector<SharePoint> points_;
  Bytes recovered_;
  BigInt recovered_int_;
  bool confirmed_ = false;
};

}  // namespace

std::unique_ptr<Party> make_party(const ProtocolConfig& cfg, std::size_t index) {
  if (cfg.protocol == "mkep") return std::make_unique<MkepParty>(cfg, index);
  if (cfg.protocol == "eke2") return std::make_unique<Engel2Party>(cfg, index);
  if (cfg.protocol == "sdp") return std::make_unique<SdpParty>(cfg, index);
  if (cfg.protocol == "sig4") return std::make_unique<Engel4Party>(cfg, index);
  if (cfg.protocol == "sss1" || cfg.protocol == "sss2") return std::make_unique<SharingParty>(cfg, index);
  throw InvalidArgument("unknown protocol '" + cfg.protocol + "'");
}

std::vector<std::unique_ptr<Party>> make_parties(const ProtocolConfig& cfg) {
  std::vector<std::unique_ptr<Party>> out;
  for (std::size_t i = 0; i < cfg.party_count(); ++i) out.push_back(make_party(cfg, i));
  return out;
}

}  // namespace engel
