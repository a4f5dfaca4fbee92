#pragma once

#include "engel/element.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace engel {

using Bytes = std::vector<std::uint8_t>;

// Presentation text: JSON with label, ngens, orders (0 = infinite), powers
// {"i": word}, conjugates {"j^i": word}; optional weights, definitions, lift, variety.
PresentationPtr parse_presentation(const std::string& text);
PresentationPtr parse_presentation(const std::string& text, const PcPresentation::Options& options);
PresentationData parse_presentation_data(const std::string& text);
std::string emit_presentation(const PcPresentation& p);

// u16 ngens, then per exponent: sign byte, u16 magnitude length, big-endian magnitude.
Bytes encode_element(const GroupElement& x);
void encode_element_into(Bytes& out, const ExpVec& v);
GroupElement decode_element(const Bytes& bytes, const PresentationPtr& p);
// Reads one element starting at offset, advancing it.
ExpVec decode_exponents(const Bytes& bytes, std::size_t& offset, std::size_t ngens);

void put_u16(Bytes& out, std::uint32_t v);
void put_u32(Bytes& out, std::uint32_t v);
void put_string(Bytes& out, const std::string& s);  // u16 length + bytes
void put_bigint(Bytes& out, const BigInt& v);       // sign, u16 length, magnitude
std::uint16_t get_u16(const Bytes& in, std::size_t& offset);
std::uint32_t get_u32(const Bytes& in, std::size_t& offset);
std::string get_string(const Bytes& in, std::size_t& offset);
BigInt get_bigint(const Bytes& in, std::size_t& offset);

enum class MessageKind : std::uint8_t {
  kHello = 1,
  kPub = 2,
  kShare = 3,
  kSig = 4,
  kKeyConfirm = 5,
};
std::string message_kind_name(MessageKind k);

struct WireFrame {
  static constexpr std::uint32_t kMaxFrame = 16u * 1024u * 1024u;
  MessageKind kind = MessageKind::kHello;
  Bytes payload;
  friend bool operator==(const WireFrame&, const WireFrame&) = default;
};

Bytes encode_frame(const WireFrame& frame);
// Parses a complete frame at offset; nullopt when more bytes are needed.
std::optional<WireFrame> decode_frame(const Bytes& bytes, std::size_t& offset);

std::string to_hex(const Bytes& b);
// Any OpenSSL digest name ("sha256", "sha512", ...).
Bytes digest(const std::string& algorithm, const Bytes& data);
inline Bytes sha256(const Bytes& data) { return digest("sha256", data); }

}  // namespace engel
