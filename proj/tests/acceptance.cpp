// One line per acceptance criterion; exit status 1 when any of them fails.

#include "engel/algorithmics.hpp"
#include "engel/analysis.hpp"
#include "engel/catalog.hpp"
#include "engel/net.hpp"
#include "engel/protocols.hpp"
#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace engel;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << "[failed: " << what << "] ";
    }
  }
};

GroupElement gen(const PresentationPtr& p, std::size_t i) { return GroupElement::generator(p, i); }

std::size_t closure_size(const PresentationPtr& p) {
  std::vector<GroupElement> gens;
  for (auto i : p->defining_generators()) gens.push_back(gen(p, i));
  return oracle::closure(gens, GroupElement::identity(p), [](const GroupElement& x, const GroupElement& y) {
           return x * y;
         }).size();
}

void criterion1(Verdict& v) {
  const auto t0 = Clock::now();
  auto b2 = build_burnside3(2), b3 = build_burnside3(3);
  const auto n2 = enumerate_elements(b2).size(), n3 = enumerate_elements(b3).size();
  const auto c2 = closure_size(b2), c3 = closure_size(b3);
  const double secs = since(t0);
  v.require(n2 == 27 && c2 == 27, "order of B(2,3)");
  v.require(n3 == 2187 && c3 == 2187, "order of B(3,3)");
  v.require(secs < 10.0, "runtime");
  v.note << "B(2,3) " << n2 << " (closure " << c2 << "), B(3,3) " << n3 << " (closure " << c3 << "), " << secs << " s";
}

void criterion2(Verdict& v) {
  auto b2 = build_burnside3(2), b3 = build_burnside3(3);
  const auto el = enumerate_elements(b2);
  std::size_t bad = 0, checks = 0;
  for (const auto& x : el) {
    ++checks;
    if (!power(x, 3).is_identity()) ++bad;
    for (const auto& y : el) {
      ++checks;
      if (!engel_commutator(x, y, 2).is_identity()) ++bad;
    }
  }
  Rng rng(2024);
  for (int t = 0; t < 10000; ++t) {
    auto x = random_element(b3, rng), y = random_element(b3, rng);
    checks += 2;
    if (!power(x, 3).is_identity()) ++bad;
    if (!engel_commutator(x, y, 2).is_identity()) ++bad;
  }
  v.require(bad == 0, "law violations");
  v.note << checks << " checks, " << bad << " violations";
}

void criterion3(Verdict& v) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, unsigned>> platforms = {
      {"freenil:2:2", 2},    {"freenil:2:3", 3},    {"expquot:2:2:25", 2},
      {"expquot:2:3:25", 3}, {"expquot:2:2:1018081", 2}, {"expquot:2:3:1018081", 3}};
  Rng rng(77);
  std::size_t bad = 0, total = 0;
  for (const auto& [name, c] : platforms) {
    auto p = catalog_by_name(name);
    for (int t = 0; t < 10000; ++t) {
      std::vector<GroupElement> g, ga;
      BigInt prod = 1;
      for (unsigned i = 0; i < c; ++i) {
        g.push_back(random_element_bounded(p, rng, 25));
        const BigInt a = rng.range(-60, 60);
        prod *= a;
        ga.push_back(power(g.back(), a));
      }
      ++total;
      if (commutator(ga) != power(commutator(g), prod)) ++bad;
    }
  }
  const double secs = since(t0);
  v.require(bad == 0, "mismatches");
  v.require(secs < 60.0, "runtime");
  v.note << platforms.size() << " platforms, " << total << " instances, " << bad << " mismatches, " << secs << " s";
}

void criterion4(Verdict& v) {
  auto h = build_classic("heisenberg");
  Rng rng(4);
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    auto x = random_element_bounded(h, rng, 10000), y = random_element_bounded(h, rng, 10000);
    const BigInt k = rng.range(-1000000, 1000000);
    const auto mx = oracle::from_heisenberg(x.exponents()), my = oracle::from_heisenberg(y.exponents());
    if (oracle::from_heisenberg((x * y).exponents()) != oracle::mul(mx, my)) ++bad;
    if (oracle::from_heisenberg(commutator(x, y).exponents()) != oracle::comm(mx, my)) ++bad;
    if (oracle::from_heisenberg(power(x, k).exponents()) != oracle::pow(mx, k)) ++bad;
  }
  v.require(bad == 0, "mismatches");
  v.note << "30000 operations, " << bad << " mismatches";
}

void criterion5(Verdict& v) {
  std::size_t checked = 0, bad = 0;
  for (const std::string name : {"D8", "D16", "D32"}) {
    auto p = catalog_by_name(name);
    const auto el = enumerate_elements(p);
    for (const auto& g : el) {
      if (g.is_identity() || !power(g, 2).is_identity()) continue;
      for (const auto& x : el)
        for (unsigned n = 1; n <= 5; ++n) {
          ++checked;
          const BigInt e = boost::multiprecision::pow(BigInt(-2), n - 1);
          if (engel_commutator(x, g, n) != power(commutator(x, g), e)) ++bad;
        }
    }
  }
  v.require(bad == 0, "formula violations");
  v.note << checked << " (g, x, n) cases, " << bad << " violations";
}

// Commuting pairs counted directly on the Cayley table.
std::string brute_degree(const PresentationPtr& p) {
  ElementTable t(p);
  std::size_t k = 0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      if (t.mul(a, b) == t.mul(b, a)) ++k;
  const std::size_t n = t.size() * t.size();
  const std::size_t g = std::gcd(k, n);
  return std::to_string(k / g) + "/" + std::to_string(n / g);
}

void criterion6(Verdict& v) {
  const auto s3 = catalog_by_name("S3"), q8 = catalog_by_name("Q8");
  const auto ds3 = degree_exact(s3, 1).fraction(), dq8 = degree_exact(q8, 1).fraction();
  v.require(ds3 == "1/2" && brute_degree(s3) == "1/2", "d(S3)");
  v.require(dq8 == "5/8" && brute_degree(q8) == "5/8", "d(Q8)");
  std::size_t groups = 0, failures = 0;
  for (const auto& name : catalog_examples()) {
    auto p = catalog_by_name(name);
    if (!p->is_finite_group() || !ElementTable::fits(*p)) continue;
    ++groups;
    for (unsigned n : {1u, 2u})
      if (!check_degree_bounds(p, n).all_hold()) {
        ++failures;
        v.note << "[bound fails on " << name << " n=" << n << "] ";
      }
  }
  v.require(failures == 0, "degree bounds");
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = degree_montecarlo(s3, 1, 100000, 0.95, seed);
    if (r.lower <= 0.5 && 0.5 <= r.upper) ++covered;
  }
  v.require(covered >= 93, "monte carlo coverage");
  v.note << "d(S3)=" << ds3 << ", d(Q8)=" << dq8 << ", bounds hold on " << groups << " finite groups for n=1,2, "
         << "interval coverage " << covered << "/100";
}

void criterion7(Verdict& v) {
  Rng rng(7);
  // mkep, 3 users on a class-3 platform
  int mkep_ok = 0;
  {
    auto p = catalog_by_name("expquot:2:3:25");
    auto s = mkep_setup(p, gen(p, 0), gen(p, 1), 2);
    for (int t = 0; t < 100; ++t) {
      std::vector<BigInt> a;
      for (int j = 0; j < 3; ++j) a.push_back(mkep_sample_secret(s, rng));
      auto r = mkep_run(s, a);
      if (r.keys[0] == r.keys[1] && r.keys[1] == r.keys[2] && !r.keys[0].is_identity()) ++mkep_ok;
    }
  }
  v.require(mkep_ok == 100, "mkep");
  // 2-Engel key exchange
  int eke_ok = 0;
  for (const std::string name : {"burnside3:2", "burnside3:3"}) {
    auto p = catalog_by_name(name);
    for (int t = 0; t < 100; ++t) {
      auto r = engel2_keyexchange(platform_random(p, 0, rng), platform_random(p, 0, rng));
      if (r.alice_key == r.bob_key) ++eke_ok;
    }
  }
  v.require(eke_ok == 200, "engel2 key exchange");
  // 4-Engel signature
  int honest = 0, rejected = 0;
  {
    auto p = catalog_by_name("expquot:2:3:25");
    for (int t = 0; t < 100; ++t) {
      auto x = platform_random(p, 0, rng), y = platform_random(p, 0, rng);
      auto sig = engel4_sign(x, y);
      if (engel4_verify(y, sig.x2, sig)) ++honest;
      if (!engel4_verify(y, sig.x2, engel4_sign(platform_random(p, 0, rng), y))) ++rejected;
    }
  }
  v.require(honest == 100 && rejected >= 99, "engel4 signature");
  // Scheme 1
  int sss1_ok = 0;
  const std::vector<std::string> groups{"burnside3:2", "burnside3:3", "heisenberg"};
  for (int t = 0; t < 100; ++t) {
    BitColumn secret(128);
    for (auto& b : secret) b = rng.coin();
    auto pkgs = sss1_deal(secret, 5, groups, rng);
    std::vector<BitColumn> cols;
    for (const auto& pkg : pkgs) cols.push_back(decode_package_bits(decode_package(encode_package(pkg))));
    if (sss1_reconstruct(cols, 5) == secret) ++sss1_ok;
  }
  v.require(sss1_ok == 100, "sss1 recovery");
  std::size_t collusion_hits = 0;
  const int collusion_trials = 10000;
  for (int t = 0; t < collusion_trials; ++t) {
    BitColumn secret(8);
    for (auto& b : secret) b = rng.coin();
    std::vector<BitColumn> cols;
    sss1_deal(secret, 5, {"burnside3:2"}, rng, {2, 4, 6}, &cols);
    const std::size_t missing = rng.below(5);
    std::vector<BitColumn> four;
    for (std::size_t j = 0; j < 5; ++j)
      if (j != missing) four.push_back(cols[j]);
    if (xor_columns(four) == secret) ++collusion_hits;
  }
  v.require(collusion_hits <= 2, "sss1 collusion count <= 2");
  // Scheme 2
  int sss2_ok = 0;
  const BigInt prime = 2147483647;
  for (int t = 0; t < 100; ++t) {
    const BigInt secret = rng.below(prime);
    auto pkgs = sss2_deal(secret, 3, 5, prime, {"burnside3:2", "heisenberg"}, rng, {4, 6, 10});
    std::vector<SharePoint> pts;
    for (const auto& pkg : pkgs) pts.push_back({pkg.participant, bits_to_integer(decode_package_bits(pkg))});
    bool all = true;
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a + 1; b < 5; ++b)
        for (std::size_t c = b + 1; c < 5; ++c) all = all && sss2_reconstruct({pts[a], pts[b], pts[c]}, 3, prime) == secret;
    if (all) ++sss2_ok;
  }
  v.require(sss2_ok == 100, "sss2 subsets");
  // Two shares over Z_11: every secret is matched by exactly one polynomial.
  bool hiding = true;
  {
    const int p = 11;
    std::map<std::tuple<int, int, int, int, int>, int> seen;
    for (int c0 = 0; c0 < p; ++c0)
      for (int c1 = 0; c1 < p; ++c1)
        for (int c2 = 0; c2 < p; ++c2) {
          auto f = [&](int x) { return (c0 + c1 * x + c2 * x * x) % p; };
          for (int i = 1; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) ++seen[{i, j, f(i), f(j), c0}];
        }
    hiding = seen.size() == 10u * p * p * p;
    for (const auto& [key, count] : seen) hiding = hiding && count == 1;
  }
  v.require(hiding, "sss2 indeterminacy");
  // Semidirect product
  int sdp_ok = 0;
  double slowest = 0;
  {
    auto p = catalog_by_name("expquot:2:2:1018081");
    auto setup = sdp_setup(p, random_automorphism(p, rng), random_element(p, rng));
    for (int t = 0; t < 100; ++t) {
      const BigInt m = 1 + rng.below(BigInt(1) << 20), n = 1 + rng.below(BigInt(1) << 20);
      const auto t0 = Clock::now();
      auto r = sdpkex_run(setup, m, n);
      slowest = std::max(slowest, since(t0));
      if (r.alice_key == r.bob_key && r.alice_key == r.expected) ++sdp_ok;
    }
    // Small exponent against plain iteration of (h, phi) -> (phi(h) g, phi).
    auto h = setup.g;
    for (int k = 2; k <= 9; ++k) h = setup.phi->apply(h) * setup.g;
    v.require(sdpkex_run(setup, 4, 5).expected == h, "sdp iteration oracle");
  }
  v.require(sdp_ok == 100 && slowest < 1.0, "sdpkex");
  v.note << "mkep " << mkep_ok << "/100, engel2 " << eke_ok << "/200, engel4 honest " << honest
         << "/100 forgeries rejected " << rejected << "/100, sss1 " << sss1_ok << "/100, sss1 4-party collusion hits "
         << collusion_hits << "/" << collusion_trials << " (chance level " << collusion_trials / 256.0
         << "), sss2 " << sss2_ok << "/100, p=11 indeterminacy " << (hiding ? "exact" : "broken") << ", sdpkex "
         << sdp_ok << "/100 slowest " << slowest << " s";
}

void criterion8(Verdict& v) {
  Rng rng(8);
  std::size_t dlp_bad = 0, dlp_groups = 0;
  for (const auto& name : catalog_examples()) {
    auto p = catalog_by_name(name);
    if (!p->is_finite_group()) continue;
    ++dlp_groups;
    std::vector<GroupElement> basis;
    for (std::size_t i = 0; i < p->ngens(); ++i) basis.push_back(gen(p, i));
    for (int t = 0; t < 10000; ++t) {
      ExpVec a(p->ngens());
      auto y = GroupElement::identity(p);
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.below(p->relative_order(i));
        y = y * power(basis[i], a[i]);
      }
      if (generalized_dlp(p, basis, y) != a) ++dlp_bad;
    }
  }
  v.require(dlp_bad == 0, "generalized dlp");

  std::size_t bsgs_bad = 0, bsgs_cases = 0;
  for (int k : {2, 3, 10, 97, 256, 1000, 4096, 9973, 10000}) {
    auto p = catalog_by_name("C:" + std::to_string(k));
    for (int t = 0; t < 12; ++t) {
      auto x = random_element(p, rng);
      auto y = t % 3 == 0 ? random_element(p, rng) : power(x, rng.range(0, 3 * k));
      std::optional<BigInt> scan;
      auto acc = GroupElement::identity(p);
      for (int n = 0; n <= k; ++n) {
        if (acc == y) {
          scan = n;
          break;
        }
        acc = acc * x;
        if (acc.is_identity()) break;
      }
      const auto r = dlp_cyclic(x, y);
      ++bsgs_cases;
      const bool ok = scan ? (r.status == SearchStatus::kFound && r.n == *scan) : r.status == SearchStatus::kNone;
      if (!ok) ++bsgs_bad;
    }
  }
  v.require(bsgs_bad == 0, "dlp_cyclic");

  // Every word of length <= 4 over a, A, b, B in B(2,3).
  auto b = build_burnside3(2);
  std::vector<GroupElement> X{gen(b, 0), gen(b, 1)};
  std::vector<GroupElement> letters{X[0], inverse(X[0]), X[1], inverse(X[1])};
  std::map<ExpVec, std::size_t> shortest;
  std::vector<GroupElement> layer{GroupElement::identity(b)};
  shortest[layer[0].exponents()] = 0;
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<GroupElement> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        auto e = w * l;
        next.push_back(e);
        shortest.emplace(e.exponents(), len);
      }
    layer = std::move(next);
  }
  std::size_t geo_bad = 0;
  for (const auto& [vec, len] : shortest) {
    const auto r = geodesic_length(b, X, GroupElement(b, vec));
    if (r.status != SearchStatus::kFound || r.length != len) ++geo_bad;
  }
  v.require(geo_bad == 0, "geodesic");

  std::size_t root_groups = 0, root_bad = 0;
  for (const auto& name : catalog_examples()) {
    auto p = catalog_by_name(name);
    const auto order = p->group_order();
    if (!order || *order > 81) continue;
    ++root_groups;
    const auto el = enumerate_elements(p);
    for (int n : {2, 3}) {
      std::size_t sum = 0;
      for (const auto& a : el) sum += nth_root(a, n, RootMode::kAll).roots.size();
      if (sum != el.size()) ++root_bad;
    }
  }
  for (const std::string name : {"C:2", "C:12", "C:81"}) {
    auto p = catalog_by_name(name);
    ++root_groups;
    const auto el = enumerate_elements(p);
    for (int n : {2, 3}) {
      std::size_t sum = 0;
      for (const auto& a : el) sum += nth_root(a, n, RootMode::kAll).roots.size();
      if (sum != el.size()) ++root_bad;
    }
  }
  v.require(root_bad == 0, "root counts");
  v.note << "generalized dlp on " << dlp_groups << " finite groups x 10^4, " << dlp_bad << " failures; bsgs "
         << bsgs_cases << " cases, " << bsgs_bad << " mismatches; geodesics " << shortest.size() << " elements, "
         << geo_bad << " mismatches; root sums on " << root_groups << " groups, " << root_bad << " failures";
}

void criterion9(Verdict& v) {
  auto p = catalog_by_name("C3wrC3");
  const auto el = enumerate_elements(p);
  std::optional<std::pair<GroupElement, GroupElement>> witness;
  std::size_t engel3_bad = 0;
  for (const auto& x : el)
    for (const auto& y : el) {
      if (!witness && !engel_commutator(x, y, 2).is_identity()) witness = {{x, y}};
      if (!engel_commutator(x, y, 3).is_identity()) ++engel3_bad;
    }
  const auto verdict = is_n_engel(p, 3, CheckMode::full());
  v.require(witness.has_value(), "2-Engel witness");
  v.require(verdict.holds && engel3_bad == 0, "3-Engel");
  if (witness)
    v.note << "x = " << witness->first.to_string() << ", y = " << witness->second.to_string()
           << ", [x,y,y] = " << engel_commutator(witness->first, witness->second, 2).to_string() << "; ";
  v.note << "3-Engel over " << verdict.checked << " pairs";
}

void criterion10(Verdict& v) {
  auto b = build_burnside3(2);
  Rng rng(10);
  const auto phi = random_automorphism(b, rng);
  std::size_t bad = 0;
  for (const auto& s : lhn_sample(phi, NoiseSpec::parse("none"), 100000, rng))
    if (s.h != phi.apply(s.g)) ++bad;
  v.require(bad == 0, "zero noise");

  const std::size_t samples = 100000;
  const auto drawn = lhn_sample(phi, NoiseSpec::parse("uniform"), samples, rng);
  ElementTable t(b);
  std::vector<double> cg(27, 0), ch(27, 0);
  for (const auto& s : drawn) {
    cg[t.index_of(s.g)] += 1;
    ch[t.index_of(s.h)] += 1;
  }
  auto chi2 = [&](const std::vector<double>& c) {
    const double e = static_cast<double>(samples) / 27.0;
    double x = 0;
    for (double o : c) x += (o - e) * (o - e) / e;
    return x;
  };
  const double crit = boost::math::quantile(boost::math::chi_squared(26), 0.99);
  const double xg = chi2(cg), xh = chi2(ch);
  v.require(xg < crit && xh < crit, "chi-square");
  v.note << "zero-noise mismatches " << bad << "/100000; chi-square g " << xg << ", h " << xh << " vs " << crit
         << " (26 dof, 0.01)";
}

void criterion11(Verdict& v) {
  std::size_t runs = 0, differ = 0;
  for (const std::string proto : {"mkep", "sdp"})
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ProtocolConfig cfg;
      cfg.protocol = proto;
      cfg.seed = seed;
      auto a = session_run(cfg, TransportKind::kInProcess);
      auto c = session_run(cfg, TransportKind::kStream);
      ++runs;
      if (!a.ok || !c.ok || a.transcript_bytes != c.transcript_bytes || a.transcript_bytes.empty()) ++differ;
    }
  v.require(differ == 0, "transcripts differ");
  v.note << runs << " session pairs (mkep, sdp), " << differ << " differing";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Verdict&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10, criterion11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      criteria[i](v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.note << "[exception: " << e.what() << "]";
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << " (" << since(t0) << " s) "
              << v.note.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
