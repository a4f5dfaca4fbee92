#include "doctest.h"
#include "engel/group.hpp"
#include "oracles.hpp"

using namespace engel;

namespace {

PresentationPtr heisenberg() { return PcPresentation::create(oracle::heisenberg_data()); }

PresentationPtr s3() {
  auto d = PresentationData::with_gens("S3-test", 2);
  d.orders = {2, 3};
  d.conjugates[0][1] = {0, 2};
  return PcPresentation::create(d);
}

GroupElement el(const PresentationPtr& p, ExpVec v) { return GroupElement(p, std::move(v)); }

}  // namespace

TEST_CASE("heisenberg collection against matrices") {
  auto h = heisenberg();
  CHECK(h->polynomial_mode());
  CHECK(h->layer_count() == 2);
  CHECK(collect(h, FreeWord::parse("b a", 3)).exponents() == ExpVec{1, 1, -1});
  CHECK(collect(h, FreeWord(3)).is_identity());
  CHECK(multiply(el(h, {0, 1, 0}), el(h, {1, 0, 0})).exponents() == ExpVec{1, 1, -1});
  CHECK(inverse(el(h, {1, 1, 0})).exponents() == ExpVec{-1, -1, -1});
  CHECK(inverse(el(h, {1, 0, 0})).exponents() == ExpVec{-1, 0, 0});
  CHECK(power(el(h, {1, 0, 0}), 5).exponents() == ExpVec{5, 0, 0});
  CHECK(commutator(el(h, {1, 0, 0}), el(h, {0, 1, 0})).exponents() == ExpVec{0, 0, 1});

  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    auto x = random_element_bounded(h, rng, 1000);
    auto y = random_element_bounded(h, rng, 1000);
    const BigInt k = rng.range(-100000, 100000);
    const auto mx = oracle::from_heisenberg(x.exponents());
    const auto my = oracle::from_heisenberg(y.exponents());
    REQUIRE(oracle::from_heisenberg(multiply(x, y).exponents()) == oracle::mul(mx, my));
    REQUIRE(oracle::from_heisenberg(commutator(x, y).exponents()) == oracle::comm(mx, my));
    REQUIRE(oracle::from_heisenberg(power(x, k).exponents()) == oracle::pow(mx, k));
  }
}

TEST_CASE("s3 basics") {
  auto p = s3();
  CHECK_FALSE(p->nilpotent_shape());
  CHECK(enumerate_elements(p).size() == 6);
  auto a = GroupElement::generator(p, 0), b = GroupElement::generator(p, 1);
  CHECK(element_order(a).value == BigInt(2));
  CHECK(element_order(b).value == BigInt(3));
  CHECK(element_order(a * b).value == BigInt(2));
  CHECK_FALSE((a * b) == (b * a));
  CHECK(p->conjugate_inverse(0, 1) == ExpVec{0, 2});
}

TEST_CASE("element order of infinite element") {
  auto h = heisenberg();
  CHECK(element_order(el(h, {1, 0, 0})).infinite());
  CHECK(element_order(el(h, {0, 0, 0})).value == BigInt(1));
}
