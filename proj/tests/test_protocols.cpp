#include "doctest.h"
#include "engel/protocols.hpp"

#include <chrono>

using namespace engel;

namespace {

PlatformElement lift(const GroupElement& g) { return platform_lift(g); }

GroupElement gen(const PresentationPtr& p, std::size_t i) { return GroupElement::generator(p, i); }

}  // namespace

TEST_CASE("mkep") {
  auto p = catalog_by_name("expquot:2:2:25");
  auto s = mkep_setup(p, gen(p, 0), gen(p, 1), 1);
  auto r = mkep_run(s, {2, 3});
  CHECK(r.keys[0] == r.keys[1]);
  CHECK(r.keys[0] == power(commutator(gen(p, 0), gen(p, 1)), 6));

  auto unit = mkep_run(s, {1, 1});
  CHECK(unit.keys[0] == s.base_key);

  auto q = catalog_by_name("expquot:2:3:25");
  auto s3 = mkep_setup(q, gen(q, 0), gen(q, 1), 2);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<BigInt> a;
    for (int j = 0; j < 3; ++j) a.push_back(mkep_sample_secret(s3, rng));
    auto res = mkep_run(s3, a);
    REQUIRE(res.keys[0] == res.keys[1]);
    REQUIRE(res.keys[1] == res.keys[2]);
    REQUIRE(res.keys[0] == res.expected);
    REQUIRE_FALSE(res.keys[0].is_identity());
    REQUIRE(encode_element(res.keys[0]) == encode_element(res.keys[2]));
  }
  CHECK_THROWS_AS(mkep_setup(q, gen(q, 0), gen(q, 0), 2), ProtocolError);
  CHECK_THROWS_AS(mkep_public(s3, 0), InvalidArgument);
}

TEST_CASE("engel2 key exchange") {
  auto b = build_burnside3(2);
  engel2_platform_check(b, 100, 1);
  auto r = engel2_keyexchange(lift(gen(b, 0)), lift(gen(b, 1)));
  CHECK(r.alice_key == r.bob_key);
  CHECK(r.alice_key.g == collect(b, FreeWord::parse("a b b a", 2)));
  CHECK_THROWS_AS(engel2_platform_check(build_classic("C3wrC3"), 1000, 1), ProtocolError);

  auto b3 = build_burnside3(3);
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    auto x = platform_random(b3, 0, rng), y = platform_random(b3, 0, rng);
    auto k = engel2_keyexchange(x, y);
    REQUIRE(k.alice_key == k.bob_key);
  }
  // Crossed with a unit group the law still holds componentwise.
  const BigInt n = BigInt(1000003) * 1000033;
  for (int t = 0; t < 100; ++t) {
    auto x = platform_random(b3, n, rng), y = platform_random(b3, n, rng);
    auto k = engel2_keyexchange(x, y);
    REQUIRE(k.alice_key == k.bob_key);
    REQUIRE(decode_platform(encode_platform(k.alice_key), b3, n) == k.alice_key);
  }
}

TEST_CASE("engel4 signature") {
  auto p = catalog_by_name("expquot:2:3:25");
  Rng rng(8);
  auto one = lift(GroupElement::identity(p));
  auto y = platform_random(p, 0, rng);
  auto s = engel4_sign(one, y);
  CHECK(s.x2 == one);
  CHECK(s.t3 == platform_pow(y, 2));
  CHECK(s.t4 == platform_pow(y, 4));
  CHECK(engel4_verify(lift(GroupElement::identity(p)), one, engel4_sign(one, one)));

  int forged_accepted = 0, mixed_accepted = 0;
  for (int t = 0; t < 1000; ++t) {
    auto x = platform_random(p, 0, rng);
    y = platform_random(p, 0, rng);
    auto sig = engel4_sign(x, y);
    REQUIRE(engel4_verify(y, sig.x2, sig));
    REQUIRE(engel4_verify_reference(x, y, sig));
    // x y^2 x^2 y^2 x = (x y^2 x) x^-1 x^2 x^-1 (x y^2 x)
    auto xi = platform_pow(x, -1);
    auto re = platform_mul(platform_mul(platform_mul(platform_mul(sig.t3, xi), sig.x2), xi), sig.t3);
    REQUIRE(re == sig.t4);
    auto forged = engel4_sign(platform_random(p, 0, rng), y);
    if (engel4_verify(y, sig.x2, forged)) ++forged_accepted;
    forged.x2 = sig.x2;
    if (engel4_verify(y, sig.x2, forged)) ++mixed_accepted;
  }
  CHECK(forged_accepted <= 10);
  MESSAGE("mixed forgeries accepted: " << mixed_accepted);

  const BigInt n = BigInt(1009) * 1013;
  auto x = platform_random(p, n, rng);
  y = platform_random(p, n, rng);
  auto sig = engel4_sign(x, y);
  CHECK(engel4_verify(y, sig.x2, sig));
}

TEST_CASE("scheme 1") {
  Rng rng(4);
  std::vector<BitColumn> cols;
  auto pk = sss1_deal({1, 0}, 2, {"burnside3:2"}, rng, {}, &cols);
  CHECK(xor_columns(cols) == BitColumn{1, 0});
  for (int t = 0; t < 50; ++t) {
    BitColumn secret(16);
    for (auto& b : secret) b = rng.coin();
    auto pkgs = sss1_deal(secret, 5, {"burnside3:2", "burnside3:3", "heisenberg", "expquot:2:3:25"}, rng, {}, &cols);
    std::vector<BitColumn> decoded;
    for (std::size_t j = 0; j < pkgs.size(); ++j) {
      auto wire = decode_package(encode_package(pkgs[j]));
      decoded.push_back(decode_package_bits(wire));
      REQUIRE(decoded.back() == cols[j]);
    }
    REQUIRE(sss1_reconstruct(decoded, 5) == secret);
    decoded.pop_back();
    CHECK_THROWS_AS(sss1_reconstruct(decoded, 5), ProtocolError);
  }
  CHECK(sss1_reconstruct({{1, 0, 1}}, 1) == BitColumn{1, 0, 1});
}

TEST_CASE("scheme 2") {
  CHECK(sss2_reconstruct({{1, 5}, {2, 7}}, 2, 11) == 3);
  CHECK_THROWS_AS(sss2_reconstruct({{1, 5}, {1, 7}}, 2, 11), InvalidArgument);
  CHECK_THROWS_AS(sss2_reconstruct({{1, 5}}, 2, 11), ProtocolError);
  CHECK(bits_to_integer(integer_to_bits(1234567, 31)) == 1234567);

  Rng rng(6);
  const BigInt p = 2147483647;
  for (int t = 0; t < 10; ++t) {
    const BigInt secret = rng.below(p);
    std::vector<BigInt> coeffs;
    auto pkgs = sss2_deal(secret, 3, 5, p, {"burnside3:2", "heisenberg"}, rng, {4, 6, 10}, &coeffs);
    CHECK(coeffs[0] == secret);
    std::vector<SharePoint> pts;
    for (const auto& pkg : pkgs) {
      CHECK(pkg.words.size() == 31);
      pts.push_back({pkg.participant, bits_to_integer(decode_package_bits(pkg))});
    }
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a + 1; b < 5; ++b)
        for (std::size_t c = b + 1; c < 5; ++c) REQUIRE(sss2_reconstruct({pts[a], pts[b], pts[c]}, 3, p) == secret);
    auto bad = pts;
    bad[0].y = (bad[0].y + 1) % p;
    CHECK(sss2_reconstruct({bad[0], bad[1], bad[2]}, 3, p) != secret);
  }
}

TEST_CASE("scheme 2 hides the secret below threshold") {
  // Two shares of a degree-2 polynomial over Z_11: each candidate secret is matched by
  // exactly one polynomial.
  const int p = 11;
  const int x1 = 2, y1 = 7, x2 = 5, y2 = 1;
  std::vector<int> count(p, 0);
  for (int c0 = 0; c0 < p; ++c0)
    for (int c1 = 0; c1 < p; ++c1)
      for (int c2 = 0; c2 < p; ++c2) {
        auto f = [&](int x) { return (c0 + c1 * x + c2 * x * x) % p; };
        if (f(x1) == y1 && f(x2) == y2) ++count[c0];
      }
  for (int s = 0; s < p; ++s) CHECK(count[s] == 1);
}

TEST_CASE("holomorph") {
  auto p = catalog_by_name("expquot:2:2:25");
  Rng rng(12);
  auto id = std::make_shared<const GroupHom>(identity_hom(p));
  auto g = random_element(p, rng), h = random_element(p, rng);
  auto prod = holomorph_mul({g, 0, id}, {h, 0, id});
  CHECK(prod.g == g * h);
  CHECK(holomorph_pow({g, 1, id}, 3).g == power(g, 3));

  auto phi = std::make_shared<const GroupHom>(random_automorphism(p, rng));
  auto sq = holomorph_mul({g, 1, phi}, {g, 1, phi});
  CHECK(sq.g == phi->apply(g) * g);
  CHECK(sq.r == 2);
  HolomorphElement u{g, 1, phi};
  auto naive = u;
  for (int k = 2; k <= 5; ++k) naive = holomorph_mul(naive, u);
  CHECK(holomorph_pow(u, 5).g == naive.g);
  CHECK(holomorph_pow(u, 1).g == g);
  for (int t = 0; t < 200; ++t) {
    HolomorphElement a{random_element(p, rng), rng.range(0, 5), phi};
    HolomorphElement b{random_element(p, rng), rng.range(0, 5), phi};
    HolomorphElement c{random_element(p, rng), rng.range(0, 5), phi};
    REQUIRE(holomorph_mul(holomorph_mul(a, b), c).g == holomorph_mul(a, holomorph_mul(b, c)).g);
  }
}

TEST_CASE("semidirect product key exchange") {
  auto p = catalog_by_name("expquot:2:2:1018081");
  Rng rng(21);
  auto setup = sdp_setup(p, random_automorphism(p, rng), random_element(p, rng));
  auto one = sdpkex_run(setup, 1, 1);
  CHECK(one.alice_key == setup.phi->apply(setup.g) * setup.g);
  for (int t = 0; t < 20; ++t) {
    const BigInt m = 1 + rng.below(1u << 20), n = 1 + rng.below(1u << 20);
    const auto t0 = std::chrono::steady_clock::now();
    auto r = sdpkex_run(setup, m, n);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    REQUIRE(r.alice_key == r.bob_key);
    REQUIRE(r.alice_key == r.expected);
    CHECK(secs < 1.0);
  }
  std::vector<GroupElement> collapse{GroupElement::generator(p, 0), GroupElement::generator(p, 0)};
  CHECK_THROWS_AS(sdp_setup(p, build_hom(p, p, collapse), setup.g), ProtocolError);
}

TEST_CASE("lhn sampler") {
  auto b = build_burnside3(2);
  auto swap = build_hom(b, b, {gen(b, 1), gen(b, 0)});
  Rng rng(31);
  for (const auto& s : lhn_sample(swap, NoiseSpec::parse("none"), 2000, rng)) REQUIRE(s.h == swap.apply(s.g));
  std::vector<GroupElement> X{gen(b, 0), gen(b, 1)};
  for (const auto& s : lhn_sample(swap, NoiseSpec::parse("ball:1"), 500, rng)) {
    auto d = geodesic_length(b, X, inverse(swap.apply(s.g)) * s.h);
    REQUIRE(d.length <= 1);
  }
  CHECK(NoiseSpec::parse("uniform").name() == "uniform");
  CHECK_THROWS_AS(NoiseSpec::parse("gauss"), ParseError);
}
