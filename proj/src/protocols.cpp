#include "engel/protocols.hpp"

#include "engel/analysis.hpp"

#include <algorithm>

namespace engel {

// ---- multilinear-commutator key exchange -------------------------------------------

MkepSetup mkep_setup(const PresentationPtr& p, const GroupElement& x, const GroupElement& g, unsigned n) {
  if (n < 1) throw InvalidArgument("mkep needs n >= 1");
  if (!x.presentation()->same_group(*p) || !g.presentation()->same_group(*p))
    throw InvalidArgument("x and g must lie in the platform group");
  MkepSetup s{p, x, g, n, engel_commutator(x, g, n), 0};
  if (s.base_key.is_identity()) throw ProtocolError("degenerate pair: [x, _n g] = 1");
  const auto ord = element_order(s.base_key);
  if (ord.value) s.base_order = *ord.value;
  return s;
}

BigInt mkep_sample_secret(const MkepSetup& s, Rng& rng) {
  if (s.base_order == 0) {
    for (;;) {
      const auto a = rng.range(-1000, 1000);
      if (a != 0) return a;
    }
  }
  for (;;) {
    BigInt a = 1 + rng.below(BigInt(s.base_order - 1));
    if (gcd(a, s.base_order) == 1) return a;
  }
}

GroupElement mkep_public(const MkepSetup& s, const BigInt& a) {
  if (a == 0) throw InvalidArgument("mkep secrets must be nonzero");
  return power(s.g, a);
}

GroupElement mkep_user_key(const MkepSetup& s, std::size_t j, const BigInt& a_j,
                           const std::vector<GroupElement>& publics) {
  if (publics.size() != s.n + 1) throw InvalidArgument("expected one public power per user");
  if (a_j == 0) throw InvalidArgument("mkep secrets must be nonzero");
  std::vector<GroupElement> terms{power(s.x, a_j)};
  for (std::size_t i = 0; i < publics.size(); ++i)
    if (i != j) terms.push_back(publics[i]);
  return commutator(terms);
}

MkepResult mkep_run(const MkepSetup& s, const std::vector<BigInt>& secrets) {
  if (secrets.size() != s.n + 1) throw InvalidArgument("mkep needs n+1 secrets");
  MkepResult r;
  BigInt prod = 1;
  for (const auto& a : secrets) {
    r.publics.push_back(mkep_public(s, a));
    prod *= a;
  }
  for (std::size_t j = 0; j < secrets.size(); ++j) r.keys.push_back(mkep_user_key(s, j, secrets[j], r.publics));
  r.expected = power(s.base_key, prod);
  return r;
}

// ---- platform elements ------------------------------------------------------------------

PlatformElement platform_mul(const PlatformElement& a, const PlatformElement& b) {
  if (a.modulus != b.modulus) throw InvalidArgument("platform elements with different unit moduli");
  PlatformElement r{multiply(a.g, b.g), 1, a.modulus};
  if (a.modulus != 0) r.u = (a.u * b.u) % a.modulus;
  return r;
}

PlatformElement platform_pow(const PlatformElement& a, const BigInt& k) {
  PlatformElement r{power(a.g, k), 1, a.modulus};
  if (a.modulus != 0) {
    r.u = k >= 0 ? pow_mod(a.u, k, a.modulus) : pow_mod(mod_inverse(a.u, a.modulus), -k, a.modulus);
  }
  return r;
}

PlatformElement platform_lift(const GroupElement& g) { return {g, 1, 0}; }

PlatformElement platform_random(const PresentationPtr& p, const BigInt& modulus, Rng& rng) {
  PlatformElement r{p->is_finite_group() ? random_element(p, rng) : random_element_bounded(p, rng, 20), 1, modulus};
  if (modulus != 0) {
    do {
      r.u = rng.below(modulus);
    } while (r.u == 0 || gcd(r.u, modulus) != 1);
  }
  return r;
}

std::string to_string(const PlatformElement& x) {
  if (x.modulus == 0) return x.g.to_string();
  return "(" + x.g.to_string() + ", " + x.u.str() + " mod " + x.modulus.str() + ")";
}

Bytes encode_platform(const PlatformElement& x) {
  Bytes out = encode_element(x.g);
  if (x.modulus != 0) put_bigint(out, x.u);
  return out;
}

PlatformElement decode_platform(const Bytes& bytes, const PresentationPtr& p, const BigInt& modulus) {
  std::size_t off = 0;
  PlatformElement r{GroupElement(p, decode_exponents(bytes, off, p->ngens())), 1, modulus};
  if (modulus != 0) {
    r.u = get_bigint(bytes, off);
    if (r.u <= 0 || r.u >= modulus) throw ParseError("unit component out of range");
  }
  if (off != bytes.size()) throw ParseError("trailing bytes after platform element");
  return r;
}

// ---- 2-Engel key exchange ------------------------------------------------------------------

void engel2_platform_check(const PresentationPtr& p, std::uint64_t samples, std::uint64_t seed) {
  const bool small = p->is_finite_group() && ElementTable::fits(*p) && *p->group_order() <= 729;
  const auto v = check_law(p, LawSpec::engel2(), small ? CheckMode::full() : CheckMode::sampled(samples, seed));
  if (!v.holds) throw ProtocolError("platform " + p->label() + " violates yx^2y = xy^2x");
}

PlatformElement engel2_message(const PlatformElement& secret) { return platform_pow(secret, 2); }

PlatformElement engel2_key(const PlatformElement& secret, const PlatformElement& received) {
  return platform_mul(platform_mul(secret, received), secret);
}

Engel2Result engel2_keyexchange(const PlatformElement& x, const PlatformElement& y) {
  Engel2Result r;
  r.alice_msg = engel2_message(x);
  r.bob_msg = engel2_message(y);
  r.alice_key = engel2_key(x, r.bob_msg);
  r.bob_key = engel2_key(y, r.alice_msg);
  return r;
}

// ---- 4-Engel signature ---------------------------------------------------------------------

namespace {

PlatformElement product(std::initializer_list<const PlatformElement*> xs) {
  auto it = xs.begin();
  PlatformElement acc = **it;
  for (++it; it != xs.end(); ++it) acc = platform_mul(acc, **it);
  return acc;
}

}  // namespace

Engel4Signature engel4_sign(const PlatformElement& x, const PlatformElement& y) {
  Engel4Signature s;
  s.x2 = platform_pow(x, 2);
  s.y2 = platform_pow(y, 2);
  s.t3 = product({&x, &s.y2, &x});
  s.t4 = product({&x, &s.y2, &s.x2, &s.y2, &x});
  return s;
}

std::pair<PlatformElement, PlatformElement> engel4_assemble(const PlatformElement& y, const Engel4Signature& sig) {
  const auto y2 = platform_pow(y, 2);
  const auto& X2 = sig.x2;
  const auto& T3 = sig.t3;
  const auto& T4 = sig.t4;
  auto lhs = product({&T3, &y, &X2, &y2, &X2, &y, &T3, &y, &X2, &y, &T4, &y, &X2, &y});
  auto rhs = product({&y, &X2, &y, &T4, &y, &X2, &y, &T3, &y, &X2, &y2, &X2, &y, &T3});
  return {std::move(lhs), std::move(rhs)};
}

bool engel4_verify(const PlatformElement& y, const PlatformElement& public_key, const Engel4Signature& sig) {
  if (!(sig.x2 == public_key)) return false;
  if (!(sig.y2 == platform_pow(y, 2))) return false;
  const auto [l, r] = engel4_assemble(y, sig);
  return l == r;
}

bool engel4_verify_reference(const PlatformElement& x, const PlatformElement& y, const Engel4Signature& sig) {
  const auto expect = engel4_sign(x, y);
  if (!(expect.x2 == sig.x2 && expect.y2 == sig.y2 && expect.t3 == sig.t3 && expect.t4 == sig.t4)) return false;
  const auto [lw, rw] = LawSpec::engel4().words();
  auto eval = [&](const std::string& w) {
    PlatformElement acc = platform_pow(x, 0);
    for (char c : w) acc = platform_mul(acc, c == 'x' ? x : y);
    return acc;
  };
  return eval(lw) == eval(rw);
}

// ---- secret sharing --------------------------------------------------------------------------

Bytes encode_package(const SharePackage& pkg) {
  Bytes out;
  put_u16(out, static_cast<std::uint32_t>(pkg.participant));
  put_string(out, pkg.group);
  put_u32(out, static_cast<std::uint32_t>(pkg.words.size()));
  for (const auto& w : pkg.words) {
    put_u16(out, static_cast<std::uint32_t>(w.alphabet()));
    put_u32(out, static_cast<std::uint32_t>(w.letters().size()));
    for (const auto& l : w.letters()) {
      put_u16(out, static_cast<std::uint32_t>(l.gen));
      put_bigint(out, l.exp);
    }
  }
  return out;
}

SharePackage decode_package(const Bytes& bytes) {
  std::size_t off = 0;
  SharePackage pkg;
  pkg.participant = get_u16(bytes, off);
  pkg.group = get_string(bytes, off);
  const auto count = get_u32(bytes, off);
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::size_t alphabet = get_u16(bytes, off);
    const auto len = get_u32(bytes, off);
    std::vector<Letter> letters;
    for (std::uint32_t t = 0; t < len; ++t) {
      const std::size_t gen = get_u16(bytes, off);
      letters.push_back({gen, get_bigint(bytes, off)});
    }
    pkg.words.emplace_back(alphabet, std::move(letters));
  }
  if (off != bytes.size()) throw ParseError("trailing bytes after share package");
  return pkg;
}

std::vector<FreeWord> encode_bits(const PresentationPtr& p, const BitColumn& bits, const WordComplexity& wc,
                                  Rng& rng) {
  std::vector<FreeWord> out;
  out.reserve(bits.size());
  for (auto b : bits) {
    out.push_back(b ? random_trivial_word(p, wc.factors, wc.conjugator_length, rng).word
                    : random_nontrivial_word(p, wc.nontrivial_length, rng).word);
  }
  return out;
}

BitColumn decode_package_bits(const SharePackage& pkg) {
  const auto p = catalog_by_name(pkg.group);
  BitColumn bits;
  bits.reserve(pkg.words.size());
  for (const auto& w : pkg.words) bits.push_back(word_problem(p, w) ? 1 : 0);
  return bits;
}

namespace {

const std::string& group_for(const std::vector<std::string>& groups, std::size_t j) {
  if (groups.empty()) throw InvalidArgument("no platform groups given");
  return groups[j % groups.size()];
}

}  // namespace

std::vector<SharePackage> sss1_deal(const BitColumn& secret, std::size_t n, const std::vector<std::string>& groups,
                                    Rng& rng, const WordComplexity& wc, std::vector<BitColumn>* columns_out) {
  if (n < 1) throw InvalidArgument("need at least one participant");
  if (secret.empty()) throw InvalidArgument("secret column is empty");
  std::vector<BitColumn> cols(n, BitColumn(secret.size()));
  for (std::size_t i = 0; i < secret.size(); ++i) {
    std::uint8_t acc = secret[i] & 1;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      cols[j][i] = rng.coin() ? 1 : 0;
      acc ^= cols[j][i];
    }
    cols[n - 1][i] = acc;
  }
  std::vector<SharePackage> out;
  for (std::size_t j = 0; j < n; ++j) {
    SharePackage pkg{j + 1, group_for(groups, j), {}};
    pkg.words = encode_bits(catalog_by_name(pkg.group), cols[j], wc, rng);
    out.push_back(std::move(pkg));
  }
  if (columns_out) *columns_out = std::move(cols);
  return out;
}

BitColumn xor_columns(const std::vector<BitColumn>& columns) {
  if (columns.empty()) throw InvalidArgument("no columns");
  BitColumn acc(columns[0].size(), 0);
  for (const auto& c : columns) {
    if (c.size() != acc.size()) throw InvalidArgument("columns differ in length");
    for (std::size_t i = 0; i < c.size(); ++i) acc[i] ^= c[i];
  }
  return acc;
}

BitColumn sss1_reconstruct(const std::vector<BitColumn>& columns, std::size_t n) {
  if (columns.size() != n)
    throw ProtocolError("all " + std::to_string(n) + " participants are needed, got " + std::to_string(columns.size()));
  return xor_columns(columns);
}

BitColumn integer_to_bits(const BigInt& v, std::size_t width) {
  if (v < 0 || (width < 4096 && v >> width != 0)) throw InvalidArgument("value does not fit in the column width");
  BitColumn bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = bit_test(v, static_cast<unsigned>(width - 1 - i)) ? 1 : 0;
  return bits;
}

BigInt bits_to_integer(const BitColumn& bits) {
  BigInt v = 0;
  for (auto b : bits) v = (v << 1) | BigInt(b ? 1 : 0);
  return v;
}

std::vector<SharePackage> sss2_deal(const BigInt& secret, std::size_t t, std::size_t n, const BigInt& p,
                                    const std::vector<std::string>& groups, Rng& rng, const WordComplexity& wc,
                                    std::vector<BigInt>* coefficients_out) {
  if (!is_probable_prime(p)) throw InvalidArgument("modulus must be prime");
  if (p <= n) throw InvalidArgument("modulus must exceed the participant count");
  if (t < 2 || t > n) throw InvalidArgument("threshold must satisfy 2 <= t <= n");
  if (secret < 0 || secret >= p) throw InvalidArgument("secret must lie in [0, p)");
  std::vector<BigInt> coeffs{secret};
  for (std::size_t d = 1; d < t; ++d) coeffs.push_back(rng.below(p));
  const std::size_t width = static_cast<std::size_t>(msb(p)) + 1;
  std::vector<SharePackage> out;
  for (std::size_t j = 1; j <= n; ++j) {
    BigInt y = 0;
    for (std::size_t d = coeffs.size(); d-- > 0;) y = (y * j + coeffs[d]) % p;
    SharePackage pkg{j, group_for(groups, j - 1), {}};
    pkg.words = encode_bits(catalog_by_name(pkg.group), integer_to_bits(y, width), wc, rng);
    out.push_back(std::move(pkg));
  }
  if (coefficients_out) *coefficients_out = coeffs;
  return out;
}

BigInt sss2_reconstruct(const std::vector<SharePoint>& points, std::size_t t, const BigInt& p) {
  if (points.size() < t) throw ProtocolError("need " + std::to_string(t) + " shares, got " + std::to_string(points.size()));
  if (points.size() > t) throw InvalidArgument("give exactly t shares");
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (mod_floor(points[a].x - points[b].x, p) == 0) throw InvalidArgument("duplicate share index");
  BigInt secret = 0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    BigInt num = 1, den = 1;
    for (std::size_t b = 0; b < points.size(); ++b) {
      if (a == b) continue;
      num = mod_floor(num * -points[b].x, p);
      den = mod_floor(den * (points[a].x - points[b].x), p);
    }
    secret = mod_floor(secret + points[a].y * num * mod_inverse(den, p), p);
  }
  return secret;
}

// ---- semidirect product ------------------------------------------------------------------------

SdpSetup sdp_setup(const PresentationPtr& p, const GroupHom& phi, const GroupElement& g) {
  if (!phi.source()->same_group(*p) || !phi.is_endomorphism()) throw InvalidArgument("phi must be an endomorphism of the platform");
  const auto inv = hom_is_invertible(phi);
  if (!inv.invertible) throw ProtocolError("phi is not an automorphism");
  return {p, std::make_shared<const GroupHom>(phi), g};
}

GroupHom random_automorphism(const PresentationPtr& p, Rng& rng) {
  const auto defining = p->defining_generators();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<GroupElement> imgs;
    for (std::size_t r = 0; r < defining.size(); ++r) {
      ExpVec v = p->identity();
      for (std::size_t i = 0; i < p->ngens(); ++i) {
        if (p->is_finite(i))
          v[i] = rng.below(p->relative_order(i));
        else
          v[i] = rng.range(-3, 3);
      }
      imgs.push_back(GroupElement(p, std::move(v)));
    }
    GroupHom phi = build_hom(p, p, imgs);
    if (hom_is_invertible(phi).invertible) return phi;
  }
  throw BudgetExceeded("no automorphism found");
}

GroupElement sdp_public(const SdpSetup& s, const BigInt& m) {
  if (m < 1) throw InvalidArgument("sdp exponents must be positive");
  return holomorph_pow({s.g, 1, s.phi}, m).g;
}

GroupElement sdp_key(const SdpSetup& s, const BigInt& m, const GroupElement& own, const GroupElement& received) {
  return s.phi->power(m).apply(received) * own;
}

SdpResult sdpkex_run(const SdpSetup& s, const BigInt& m, const BigInt& n) {
  SdpResult r;
  r.a = sdp_public(s, m);
  r.b = sdp_public(s, n);
  r.alice_key = sdp_key(s, m, r.a, r.b);
  r.bob_key = sdp_key(s, n, r.b, r.a);
  r.expected = sdp_public(s, m + n);
  return r;
}

// ---- LHN ------------------------------------------------------------------------------------

NoiseSpec NoiseSpec::parse(const std::string& text) {
  if (text == "none") return {Kind::kNone, 0};
  if (text == "uniform") return {Kind::kUniform, 0};
  if (text.rfind("ball:", 0) == 0) {
    const auto r = text.substr(5);
    if (r.empty() || r.size() > 3 || r.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad ball radius in '" + text + "'");
    return {Kind::kBall, static_cast<unsigned>(std::stoul(r))};
  }
  throw ParseError("unknown noise distribution '" + text + "'");
}

std::string NoiseSpec::name() const {
  switch (kind) {
    case Kind::kNone:
      return "none";
    case Kind::kUniform:
      return "uniform";
    case Kind::kBall:
      return "ball:" + std::to_string(radius);
  }
  return "?";
}

std::vector<LhnSample> lhn_sample(const GroupHom& phi, const NoiseSpec& beta, std::size_t count, Rng& rng) {
  const auto& src = phi.source();
  const auto& dst = phi.target();
  if (!src->is_finite_group()) throw InvalidArgument("uniform source distribution needs a finite group");
  if (beta.kind == NoiseSpec::Kind::kUniform && !dst->is_finite_group())
    throw InvalidArgument("uniform noise needs a finite target");
  std::vector<GroupElement> ball;
  if (beta.kind == NoiseSpec::Kind::kBall) {
    std::vector<GroupElement> gens;
    for (auto i : dst->defining_generators()) gens.push_back(GroupElement::generator(dst, i));
    ball = growth_ball(dst, gens, beta.radius, true).elements;
  }
  std::vector<LhnSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto g = random_element(src, rng);
    GroupElement noise = GroupElement::identity(dst);
    if (beta.kind == NoiseSpec::Kind::kBall)
      noise = ball[rng.below(ball.size())];
    else if (beta.kind == NoiseSpec::Kind::kUniform)
      noise = random_element(dst, rng);
    auto h = phi.apply(g) * noise;
    out.push_back({std::move(g), std::move(h)});
  }
  return out;
}

}  // namespace engel
