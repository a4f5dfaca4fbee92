#pragma once

#include "engel/algorithmics.hpp"
#include "engel/catalog.hpp"
#include "engel/io.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace engel {

// ---- multilinear-commutator key exchange -------------------------------------------

// n+1 users over a group of class n+1 with [x, _n g] != 1.
struct MkepSetup {
  PresentationPtr group;
  GroupElement x;
  GroupElement g;
  unsigned n = 1;
  GroupElement base_key;  // [x, _n g]
  BigInt base_order;      // order of base_key, 0 when infinite
};

MkepSetup mkep_setup(const PresentationPtr& p, const GroupElement& x, const GroupElement& g, unsigned n);
// Uniform in [1, q) for exponent-q platforms, rejecting values that share a factor
// with the key order; small nonzero integers otherwise.
BigInt mkep_sample_secret(const MkepSetup& s, Rng& rng);
GroupElement mkep_public(const MkepSetup& s, const BigInt& a);
// [x^{a_j}, g^{a_1}, ..., (skip j), ..., g^{a_{n+1}}] from the other users' public powers.
GroupElement mkep_user_key(const MkepSetup& s, std::size_t j, const BigInt& a_j,
                           const std::vector<GroupElement>& publics);

struct MkepResult {
  std::vector<GroupElement> publics;
  std::vector<GroupElement> keys;
  GroupElement expected;  // [x, _n g]^{prod a_j}
};
MkepResult mkep_run(const MkepSetup& s, const std::vector<BigInt>& secrets);

// ---- Engel platforms optionally crossed with a unit group Z_N^* -----------------------

// (g, u) in G x Z_N^*; modulus 0 means the unit component is absent.
struct PlatformElement {
  GroupElement g;
  BigInt u = 1;
  BigInt modulus = 0;
  friend bool operator==(const PlatformElement& a, const PlatformElement& b) {
    return a.g == b.g && a.u == b.u && a.modulus == b.modulus;
  }
};

PlatformElement platform_mul(const PlatformElement& a, const PlatformElement& b);
PlatformElement platform_pow(const PlatformElement& a, const BigInt& k);
PlatformElement platform_lift(const GroupElement& g);
// Random unit coprime to N.
PlatformElement platform_random(const PresentationPtr& p, const BigInt& modulus, Rng& rng);
std::string to_string(const PlatformElement& x);
Bytes encode_platform(const PlatformElement& x);
PlatformElement decode_platform(const Bytes& bytes, const PresentationPtr& p, const BigInt& modulus);

// ---- 2-Engel key exchange ----------------------------------------------------------------

// Throws ProtocolError unless yx^2y = xy^2x survives the sampled check.
void engel2_platform_check(const PresentationPtr& p, std::uint64_t samples, std::uint64_t seed);

struct Engel2Result {
  PlatformElement alice_msg;  // x^2
  PlatformElement bob_msg;    // y^2
  PlatformElement alice_key;  // x (y^2) x
  PlatformElement bob_key;    // y (x^2) y
};
PlatformElement engel2_message(const PlatformElement& secret);
PlatformElement engel2_key(const PlatformElement& secret, const PlatformElement& received);
Engel2Result engel2_keyexchange(const PlatformElement& x, const PlatformElement& y);

// ---- 4-Engel signature -----------------------------------------------------------------------

struct Engel4Signature {
  PlatformElement x2;  // x^2, the public key
  PlatformElement y2;  // y^2
  PlatformElement t3;  // x y^2 x
  PlatformElement t4;  // x y^2 x^2 y^2 x
};

Engel4Signature engel4_sign(const PlatformElement& x, const PlatformElement& y);
// Both sides of the 4-Engel law assembled from y and the public tokens:
//   lhs = T3 y X2 y^2 X2 y T3 y X2 y T4 y X2 y
//   rhs = y X2 y T4 y X2 y T3 y X2 y^2 X2 y T3
std::pair<PlatformElement, PlatformElement> engel4_assemble(const PlatformElement& y, const Engel4Signature& sig);
// Checks the tokens against the registered public key and y, then the assembled law.
bool engel4_verify(const PlatformElement& y, const PlatformElement& public_key, const Engel4Signature& sig);
// Recomputes every token from x and y and checks the law directly on x, y.
bool engel4_verify_reference(const PlatformElement& x, const PlatformElement& y, const Engel4Signature& sig);

// ---- secret sharing over the word problem ---------------------------------------------------

using BitColumn = std::vector<std::uint8_t>;

struct WordComplexity {
  std::size_t factors = 8;
  std::size_t conjugator_length = 16;
  std::size_t nontrivial_length = 16;
};

struct SharePackage {
  std::size_t participant = 0;  // 1-based
  std::string group;            // secure channel: catalog name of G_j
  std::vector<FreeWord> words;  // open channel
};

Bytes encode_package(const SharePackage& pkg);
SharePackage decode_package(const Bytes& bytes);

// Bit 1 becomes a product of relator conjugates, bit 0 a verified nontrivial word.
std::vector<FreeWord> encode_bits(const PresentationPtr& p, const BitColumn& bits, const WordComplexity& wc, Rng& rng);
BitColumn decode_package_bits(const SharePackage& pkg);

std::vector<SharePackage> sss1_deal(const BitColumn& secret, std::size_t n, const std::vector<std::string>& groups,
                                    Rng& rng, const WordComplexity& wc = {},
                                    std::vector<BitColumn>* columns_out = nullptr);
// XOR of all n columns; throws ProtocolError when any participant is missing.
BitColumn sss1_reconstruct(const std::vector<BitColumn>& columns, std::size_t n);
BitColumn xor_columns(const std::vector<BitColumn>& columns);

struct SharePoint {
  BigInt x;
  BigInt y;
};

// f(0) = secret, deg f = t-1, y_i = f(i) mod p written as bitlen(p)-bit columns (MSB first).
std::vector<SharePackage> sss2_deal(const BigInt& secret, std::size_t t, std::size_t n, const BigInt& p,
                                    const std::vector<std::string>& groups, Rng& rng, const WordComplexity& wc = {},
                                    std::vector<BigInt>* coefficients_out = nullptr);
BigInt bits_to_integer(const BitColumn& bits);
BitColumn integer_to_bits(const BigInt& v, std::size_t width);
// Lagrange interpolation at 0 over Z_p from exactly t points.
BigInt sss2_reconstruct(const std::vector<SharePoint>& points, std::size_t t, const BigInt& p);

// ---- semidirect-product key exchange -------------------------------------------------------

struct SdpSetup {
  PresentationPtr group;
  std::shared_ptr<const GroupHom> phi;
  GroupElement g;
};

SdpSetup sdp_setup(const PresentationPtr& p, const GroupHom& phi, const GroupElement& g);
// Random automorphism of a relatively free group: random images of the defining generators
// with a unit abelianization determinant.
GroupHom random_automorphism(const PresentationPtr& p, Rng& rng);
GroupElement sdp_public(const SdpSetup& s, const BigInt& m);                                 // first comp. of (g, phi)^m
GroupElement sdp_key(const SdpSetup& s, const BigInt& m, const GroupElement& own, const GroupElement& received);

struct SdpResult {
  GroupElement a;
  GroupElement b;
  GroupElement alice_key;
  GroupElement bob_key;
  GroupElement expected;  // first component of (g, phi)^{m+n}
};
SdpResult sdpkex_run(const SdpSetup& s, const BigInt& m, const BigInt& n);

// ---- learning homomorphisms with noise -------------------------------------------------------

struct NoiseSpec {
  enum class Kind { kNone, kBall, kUniform };
  Kind kind = Kind::kBall;
  unsigned radius = 1;
  // none, ball:<r>, uniform
  static NoiseSpec parse(const std::string& text);
  std::string name() const;
};

struct LhnSample {
  GroupElement g;
  GroupElement h;  // phi(g) * noise
};

// g uniform over the finite source; noise uniform over the ball (defining generators of
// the target) or over the whole target.
std::vector<LhnSample> lhn_sample(const GroupHom& phi, const NoiseSpec& beta, std::size_t count, Rng& rng);

}  // namespace engel
