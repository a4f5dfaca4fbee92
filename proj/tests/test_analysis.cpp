#include "doctest.h"
#include "engel/analysis.hpp"
#include "engel/catalog.hpp"
#include "oracles.hpp"

#include <array>

using namespace engel;

namespace {

// Commuting-tuple fraction computed straight from the definition on permutations.
std::pair<long, long> perm_degree(const std::vector<oracle::Perm>& g, unsigned n) {
  auto inv = [](const oracle::Perm& x) {
    oracle::Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<int>(i);
    return r;
  };
  auto comm = [&](const oracle::Perm& x, const oracle::Perm& y) {
    return oracle::compose(oracle::compose(inv(x), inv(y)), oracle::compose(x, y));
  };
  oracle::Perm id(g[0].size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  long hits = 0, total = 0;
  std::vector<std::size_t> idx(n + 1, 0);
  for (;;) {
    oracle::Perm c = g[idx[0]];
    for (unsigned k = 1; k <= n; ++k) c = comm(c, g[idx[k]]);
    ++total;
    if (c == id) ++hits;
    std::size_t k = idx.size();
    while (k > 0 && ++idx[k - 1] == g.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return {hits, total};
}

// Unit quaternions +-1, +-i, +-j, +-k as integer 4-vectors.
using Quat = std::array<int, 4>;
Quat qmul(const Quat& x, const Quat& y) {
  return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3], x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
          x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1], x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}

}  // namespace

TEST_CASE("law parsing") {
  CHECK(LawSpec::parse("engel2").name() == "engel2");
  CHECK(LawSpec::parse("engel:3").kind == LawSpec::Kind::kEngelN);
  CHECK(LawSpec::parse("locnil:3:2").arity() == 3);
  CHECK_THROWS_AS(LawSpec::parse("engel:0"), InvalidArgument);
  CHECK_THROWS_AS(LawSpec::parse("bogus"), ParseError);
  // Both sides of every semigroup law have the same letter content.
  for (auto name : {"engel2", "engel3a", "engel3b", "engel4"}) {
    auto [l, r] = LawSpec::parse(name).words();
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    CHECK(l == r);
  }
}

TEST_CASE("engel laws on small groups") {
  auto b23 = build_burnside3(2);
  auto w = check_law(b23, LawSpec::engel2(), CheckMode::full());
  CHECK(w.holds);
  CHECK(w.checked == 27 * 27);
  CHECK(is_n_engel(b23, 2, CheckMode::full()).holds);

  auto s3 = build_classic("S3");
  auto v = is_n_engel(s3, 1, CheckMode::full());
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.size() == 2);
  CHECK_FALSE(commutator(v.witness[0], v.witness[1]).is_identity());

  auto wr = build_classic("C3wrC3");
  auto e2 = check_law(wr, LawSpec::engel2(), CheckMode::full());
  CHECK_FALSE(e2.holds);
  const auto [l, r] = LawSpec::engel2().words();
  CHECK_FALSE(evaluate_xy_word(l, e2.witness[0], e2.witness[1]) == evaluate_xy_word(r, e2.witness[0], e2.witness[1]));
  CHECK(is_n_engel(wr, 3, CheckMode::full()).holds);
  CHECK_FALSE(is_n_engel(wr, 2, CheckMode::full()).holds);
  CHECK(check_law(wr, LawSpec::engel3_a(), CheckMode::full()).holds);
  CHECK(check_law(wr, LawSpec::engel4(), CheckMode::full()).holds);
  CHECK(check_law(build_classic("C:6"), LawSpec::engel2(), CheckMode::full()).holds);
  CHECK(check_law(build_burnside3(3), LawSpec::engel2(), CheckMode::sampled(2000, 3)).holds);
}

TEST_CASE("commutator law agrees with is_n_engel") {
  for (auto name : {"S3", "Q8", "D8", "D16", "C3wrC3", "burnside3:2"}) {
    auto p = catalog_by_name(name);
    for (unsigned n = 1; n <= 3; ++n)
      CHECK(check_law(p, LawSpec::engel_n(n), CheckMode::full()).holds == is_n_engel(p, n, CheckMode::full()).holds);
  }
}

TEST_CASE("locally nilpotent law with r = exponent") {
  for (auto name : {"Q8", "D16", "burnside3:2", "C3wrC3"}) {
    auto p = catalog_by_name(name);
    const auto st = describe_group(ElementTable(p));
    CHECK(check_law(p, LawSpec::locally_nilpotent(st.exponent, 1), CheckMode::full()).holds);
    CHECK(check_law(p, LawSpec::locally_nilpotent(st.exponent, 2), CheckMode::sampled(3000, 5)).holds);
  }
}

TEST_CASE("group structure") {
  auto s3 = describe_group(ElementTable(build_classic("S3")));
  CHECK(s3.order == 6);
  CHECK(s3.center_size == 1);
  CHECK_FALSE(s3.nilpotency_class.has_value());
  CHECK(s3.conjugacy_classes == 3);
  CHECK(s3.exponent == 6);
  auto q8 = describe_group(ElementTable(build_classic("Q8")));
  CHECK(q8.nilpotency_class == 2u);
  CHECK(q8.center_size == 2);
  CHECK(q8.conjugacy_classes == 5);
  auto wr = describe_group(ElementTable(build_classic("C3wrC3")));
  CHECK(wr.nilpotency_class == 3u);
  CHECK(wr.order == 81);
  auto d32 = describe_group(ElementTable(build_classic("D32")));
  CHECK(d32.nilpotency_class == 4u);
  CHECK(describe_group(ElementTable(build_classic("C:5"))).abelian);
}

TEST_CASE("engel classification") {
  auto ab = classify_engel_elements(build_classic("C:4"), EngelSide::kRight);
  CHECK(ab.engel_count == 4);
  CHECK(ab.group_engel_n == 1u);

  auto b = build_burnside3(2);
  for (auto side : {EngelSide::kLeft, EngelSide::kRight}) {
    auto c = classify_engel_elements(b, side);
    CHECK(c.engel_count == 27);
    CHECK(c.group_engel_n == 2u);
  }

  auto d16 = build_classic("D16");
  auto left = classify_engel_elements(d16, EngelSide::kLeft);
  for (const auto& info : left.elements)
    if (element_order(info.element).value == BigInt(2)) CHECK(info.status == EngelStatus::kEngel);

  auto s3 = classify_engel_elements(build_classic("S3"), EngelSide::kRight);
  CHECK(s3.engel_count == 1);
  CHECK(s3.not_engel_count == 5);
}

TEST_CASE("engel inclusions") {
  for (auto name : {"S3", "Q8", "D8", "D16", "D32", "C3wrC3", "burnside3:2", "C:7"}) {
    auto r = check_engel_inclusions(catalog_by_name(name), 6);
    CHECK_MESSAGE(r.holds, name);
  }
}

TEST_CASE("involution formula in dihedral 2-groups") {
  for (auto name : {"D8", "D16", "D32"}) {
    auto p = build_classic(name);
    const auto all = enumerate_elements(p);
    for (const auto& g : all) {
      if (element_order(g).value != BigInt(2)) continue;
      for (const auto& x : all) {
        const auto base = commutator(x, g);
        for (unsigned n = 1; n <= 5; ++n) {
          BigInt e = 1;
          for (unsigned k = 1; k < n; ++k) e *= -2;
          REQUIRE(engel_commutator(x, g, n) == power(base, e));
        }
      }
    }
  }
}

TEST_CASE("exact degree against permutation oracle") {
  const std::vector<oracle::Perm> s3p = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  for (unsigned n = 1; n <= 3; ++n) {
    const auto [hits, total] = perm_degree(s3p, n);
    const auto rep = degree_exact(build_classic("S3"), n);
    CHECK(rep.satisfied == hits);
    CHECK(rep.total == total);
  }
  CHECK(degree_exact(build_classic("S3"), 1).fraction() == "1/2");

  std::vector<Quat> q8;
  for (int k = 0; k < 4; ++k)
    for (int s : {1, -1}) {
      Quat q{0, 0, 0, 0};
      q[k] = s;
      q8.push_back(q);
    }
  long commuting = 0;
  for (auto& x : q8)
    for (auto& y : q8)
      if (qmul(x, y) == qmul(y, x)) ++commuting;
  CHECK(commuting == 40);
  CHECK(degree_exact(build_classic("Q8"), 1).fraction() == "5/8");
  CHECK(degree_exact(build_classic("Q8"), 2).fraction() == "1");
  CHECK(degree_exact(build_classic("C:9"), 1).fraction() == "1");
}

TEST_CASE("degree of a group whose class exceeds n") {
  // D16 has class 3; compare the centralizer-based count with a plain tuple scan.
  auto p = build_classic("D16");
  ElementTable t(p);
  long hits = 0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      for (std::size_t c = 0; c < t.size(); ++c)
        if (t.comm(t.comm(a, b), c) == 0) ++hits;
  CHECK(degree_exact(p, 2).satisfied == hits);
}

TEST_CASE("monte carlo degree") {
  auto s3 = build_classic("S3");
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto r = degree_montecarlo(s3, 1, 20000, 0.95, seed);
    CHECK(r.half_width < 0.01);
    if (r.lower <= 0.5 && r.upper >= 0.5) ++covered;
  }
  CHECK(covered >= 34);
  auto [lo, hi] = wilson_interval(0, 10, 0.95);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(0.2775).epsilon(0.001));
}

TEST_CASE("ball degree estimate") {
  auto s3 = build_classic("S3");
  std::vector<GroupElement> gens{GroupElement::generator(s3, 0), GroupElement::generator(s3, 1)};
  auto curve = degree_ball_estimate(s3, gens, 1, 4, 1);
  CHECK(curve[0].ratio == 1.0);
  CHECK(curve.back().ball_size == 6);
  CHECK(curve.back().ratio == doctest::Approx(0.5));
}

TEST_CASE("degree bounds") {
  for (auto name : {"S3", "Q8", "D8", "D16", "D32", "C3wrC3", "C:6", "burnside3:2"}) {
    for (unsigned n = 1; n <= 2; ++n) CHECK_MESSAGE(check_degree_bounds(catalog_by_name(name), n).all_hold(), name);
  }
  auto s3 = check_degree_bounds(build_classic("S3"), 1);
  CHECK(s3.checks[1].applicable);
  auto ab = check_degree_bounds(build_classic("C:6"), 1);
  CHECK_FALSE(ab.checks[0].applicable);
  CHECK_FALSE(ab.checks[1].applicable);
  CHECK(ab.checks[2].applicable);
}
