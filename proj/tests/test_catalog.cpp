#include "doctest.h"
#include "engel/catalog.hpp"
#include "oracles.hpp"

#include <chrono>
#include <complex>
#include <set>

using namespace engel;

namespace {

using oracle::Perm;

Perm perm_inv(const Perm& x) {
  Perm r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<int>(i);
  return r;
}

Perm perm_pow(const Perm& x, long k) {
  Perm r(x.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<int>(i);
  for (long t = 0; t < k; ++t) r = oracle::compose(r, x);
  return r;
}

// Images of every pc generator, derived from images of the defining ones.
std::vector<Perm> pc_images(const PcPresentation& p, const std::vector<Perm>& defining) {
  const auto d = p.data();
  std::vector<Perm> img(d.ngens);
  std::size_t next = 0;
  for (std::size_t i = 0; i < d.ngens; ++i) {
    const auto& def = d.definitions[i];
    switch (def.kind) {
      case DefinitionKind::kGenerator:
        img[i] = defining.at(next++);
        break;
      case DefinitionKind::kPower:
        img[i] = perm_pow(img[def.a], static_cast<long>(d.orders[def.a]));
        break;
      case DefinitionKind::kCommutator: {
        const auto& x = img[def.a];
        const auto& y = img[def.b];
        img[i] = oracle::compose(oracle::compose(perm_inv(x), perm_inv(y)), oracle::compose(x, y));
        break;
      }
      default:
        FAIL("generator without definition");
    }
  }
  return img;
}

Perm image_of(const GroupElement& x, const std::vector<Perm>& img) {
  Perm r = perm_pow(img[0], 0);
  for (std::size_t i = 0; i < img.size(); ++i) r = oracle::compose(r, perm_pow(img[i], static_cast<long>(x.exponents()[i])));
  return r;
}

// The normal-form map into the permutation group is a bijective homomorphism.
void check_against_permutations(const PresentationPtr& p, const std::vector<Perm>& defining) {
  const auto img = pc_images(*p, defining);
  const auto elems = enumerate_elements(p);
  std::vector<Perm> perms;
  std::set<Perm> distinct;
  for (const auto& x : elems) {
    perms.push_back(image_of(x, img));
    distinct.insert(perms.back());
  }
  CHECK(distinct.size() == elems.size());
  const auto generated = oracle::closure(defining, perm_pow(defining[0], 0), oracle::compose);
  CHECK(generated.size() == elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      REQUIRE(image_of(elems[a] * elems[b], img) == oracle::compose(perms[a], perms[b]));
}

Perm cycle(int n) {
  Perm r(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
  return r;
}

Perm reflection(int n) {
  Perm r(n);
  for (int i = 0; i < n; ++i) r[i] = (n - i) % n;
  return r;
}

// Quaternion units 1, i, j, k, -1, -i, -j, -k.
int qmul(int a, int b) {
  static const int t[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
  const int x = t[a % 4][b % 4];
  return (a >= 4) != (b >= 4) ? (x + 4) % 8 : x;
}

// Right regular action, matching left-to-right composition.
Perm quaternion_perm(int u) {
  Perm r(8);
  for (int b = 0; b < 8; ++b) r[b] = qmul(b, u);
  return r;
}

}  // namespace

TEST_CASE("small catalog groups against permutation models") {
  SUBCASE("S3") { check_against_permutations(build_classic("S3"), {Perm{1, 0, 2}, cycle(3)}); }
  SUBCASE("dihedral") {
    for (unsigned k : {3u, 4u, 5u}) {
      const int n = 1 << (k - 1);
      check_against_permutations(build_classic("D" + std::to_string(2 * n)), {reflection(n), cycle(n)});
    }
  }
  SUBCASE("Q8") { check_against_permutations(build_classic("Q8"), {quaternion_perm(1), quaternion_perm(2)}); }
  SUBCASE("cyclic") {
    for (int k : {2, 5, 12, 27}) check_against_permutations(build_classic("C:" + std::to_string(k)), {cycle(k)});
  }
  SUBCASE("C3wrC3") {
    // Points 3 * block + pos; the top generator cycles the blocks.
    Perm top(9), base(9);
    for (int b = 0; b < 3; ++b)
      for (int q = 0; q < 3; ++q) {
        top[3 * b + q] = 3 * ((b + 1) % 3) + q;
        base[3 * b + q] = b == 0 ? (q + 1) % 3 : 3 * b + q;
      }
    check_against_permutations(build_classic("C3wrC3"), {top, base});
  }
}

TEST_CASE("B(2,3) is UT(3,F3)") {
  auto b = build_burnside3(2);
  const auto elems = enumerate_elements(b);
  REQUIRE(elems.size() == 27);
  const oracle::UTp a{1, 0, 0}, c{0, 1, 0};
  auto mul = [](const oracle::UTp& x, const oracle::UTp& y) { return oracle::mulp(x, y, 3); };
  auto image = [&](const GroupElement& x) {
    // a^e1 b^e2 c^e3 ... with the commutator generators read off through the definitions.
    std::vector<oracle::UTp> img{a, c};
    const auto d = b->data();
    for (std::size_t i = 2; i < d.ngens; ++i) {
      const auto& x1 = img[d.definitions[i].a];
      const auto& y1 = img[d.definitions[i].b];
      auto inv = [&](oracle::UTp u) { return mul(u, u); };
      img.push_back(mul(mul(inv(x1), inv(y1)), mul(x1, y1)));
    }
    oracle::UTp r{0, 0, 0};
    for (std::size_t i = 0; i < img.size(); ++i)
      for (BigInt e = 0; e < x.exponents()[i]; ++e) r = mul(r, img[i]);
    return r;
  };
  std::set<oracle::UTp> seen;
  for (const auto& x : elems) seen.insert(image(x));
  CHECK(seen.size() == 27);
  CHECK(oracle::closure(std::vector<oracle::UTp>{a, c}, oracle::UTp{0, 0, 0}, mul).size() == 27);
  for (const auto& x : elems)
    for (const auto& y : elems) REQUIRE(image(x * y) == mul(image(x), image(y)));
}

TEST_CASE("burnside orders against word closure") {
  // Closure of the identity under right multiplication by the defining
  // generators; with exponent 3 and m generators, order 3^(m + C(m,2) + C(m,3))
  // pins the group down as B(m, 3).
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t m : {1u, 2u, 3u}) {
    CAPTURE(m);
    auto b = build_burnside3(m);
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < m; ++i) gens.push_back(GroupElement::generator(b, i));
    const auto closed = oracle::closure(gens, GroupElement::identity(b), [](const GroupElement& x, const GroupElement& y) {
      return x * y;
    });
    const auto elems = enumerate_elements(b);
    const std::size_t expected = static_cast<std::size_t>(std::pow(3, m + m * (m - 1) / 2 + m * (m - 1) * (m - 2) / 6));
    CHECK(elems.size() == expected);
    CHECK(closed.size() == expected);
    for (const auto& x : elems) REQUIRE(power(x, 3).is_identity());
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 10.0);
  CHECK(build_burnside3(4)->group_order() == BigInt(4782969));
}

TEST_CASE("multilinearity of the top commutator") {
  Rng rng(31);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, unsigned>> platforms = {
      {"freenil:2:2", 2}, {"freenil:3:2", 2}, {"freenil:2:3", 3},
      {"expquot:2:2:25", 2}, {"expquot:2:3:25", 3}, {"expquot:2:2:1018081", 2}, {"expquot:2:3:1018081", 3}};
  for (const auto& [name, cls] : platforms) {
    CAPTURE(name);
    auto p = catalog_by_name(name);
    for (int t = 0; t < 10000; ++t) {
      std::vector<GroupElement> g, ga;
      BigInt prod = 1;
      for (unsigned i = 0; i < cls; ++i) {
        g.push_back(random_element_bounded(p, rng, 20));
        const BigInt a = rng.range(-50, 50);
        prod *= a;
        ga.push_back(power(g.back(), a));
      }
      REQUIRE(commutator(ga) == power(commutator(g), prod));
    }
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60.0);
}

TEST_CASE("group axioms on random triples") {
  Rng rng(5);
  for (const auto& name : catalog_examples()) {
    CAPTURE(name);
    auto p = catalog_by_name(name);
    const auto one = GroupElement::identity(p);
    for (int t = 0; t < 300; ++t) {
      auto x = random_element_bounded(p, rng, 1000), y = random_element_bounded(p, rng, 1000),
           z = random_element_bounded(p, rng, 1000);
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE(x * inverse(x) == one);
      REQUIRE(inverse(x) * x == one);
      REQUIRE(x * one == x);
      REQUIRE(conjugate(x, y) == inverse(y) * x * y);
      REQUIRE(commutator(x, y) == inverse(x) * conjugate(x, y));
      const BigInt k = rng.range(-40, 40), l = rng.range(-40, 40);
      REQUIRE(power(x, k) * power(x, l) == power(x, k + l));
    }
  }
}

TEST_CASE("homomorphisms") {
  auto b = build_burnside3(2);
  auto a = GroupElement::generator(b, 0), c = GroupElement::generator(b, 1);
  auto swap = build_hom(b, b, {c, a});
  for (const auto& x : enumerate_elements(b))
    for (const auto& y : enumerate_elements(b)) REQUIRE(swap.apply(x * y) == swap.apply(x) * swap.apply(y));
  CHECK(swap.compose(swap) == identity_hom(b));
  CHECK(swap.power(2) == identity_hom(b));
  auto inv = hom_is_invertible(swap);
  CHECK(inv.invertible);
  REQUIRE(inv.inverse);
  CHECK(inv.inverse->compose(swap) == identity_hom(b));

  auto collapse = build_hom(b, b, {a, a});
  CHECK_FALSE(hom_is_invertible(collapse).invertible);

  // Into a quotient: B(2,3) onto C:3 sending both generators to the generator.
  auto c3 = build_classic("C:3");
  auto onto = build_hom(b, c3, {GroupElement::generator(c3, 0), GroupElement::generator(c3, 0)});
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    auto x = random_element(b, rng), y = random_element(b, rng);
    REQUIRE(onto.apply(x * y) == onto.apply(x) * onto.apply(y));
  }
  // A transposition cannot be the image of an element of order 3.
  CHECK_THROWS_AS(build_hom(build_classic("C:3"), build_classic("S3"),
                            {GroupElement::generator(build_classic("S3"), 0)}),
                  InvalidArgument);

  auto f = catalog_by_name("freenil:2:3");
  auto g1 = GroupElement::generator(f, 0), g2 = GroupElement::generator(f, 1);
  auto phi = build_hom(f, f, {g1 * g2, g2});
  for (int t = 0; t < 200; ++t) {
    auto x = random_element_bounded(f, rng, 30), y = random_element_bounded(f, rng, 30);
    REQUIRE(phi.apply(x * y) == phi.apply(x) * phi.apply(y));
  }
  auto phi_inv = hom_is_invertible(phi);
  CHECK(phi_inv.invertible);
  CHECK(phi_inv.method == "abelianization");
}

TEST_CASE("catalog names") {
  CHECK(catalog_by_name("burnside3:2") == catalog_by_name("burnside3:2"));
  CHECK(catalog_by_name("burnside3:3")->group_order() == BigInt(2187));
  CHECK(catalog_by_name("freenil:2:3")->group_order() == std::nullopt);
  CHECK(catalog_by_name("expquot:2:2:25")->group_order() == BigInt(15625));
  CHECK_THROWS_AS(catalog_by_name("nosuchgroup"), InvalidArgument);
  CHECK_THROWS_AS(catalog_by_name("burnside3:x"), InvalidArgument);
  CHECK_THROWS_AS(catalog_by_name("C:1"), InvalidArgument);
  CHECK_THROWS_AS(catalog_by_name("expquot:2:3:9"), InvalidArgument);  // p must exceed the class
}
