#include "engel/analysis.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace engel {

namespace {

const char* kEngel3B_lhs = "xyyxyxyxxy";
const char* kEngel3B_rhs = "yxxyyxxyyx";

// Element operations over a dense table.
struct TableOps {
  const ElementTable& t;
  using E = std::size_t;
  E one() const { return t.identity(); }
  E mul(E a, E b) const { return t.mul(a, b); }
  E inv(E a) const { return t.inv(a); }
  E comm(E a, E b) const { return t.comm(a, b); }
  E pow(E a, const BigInt& k) const {
    const BigInt r = mod_floor(k, BigInt(t.size()));
    return t.pow(a, static_cast<std::int64_t>(r));
  }
  bool is_one(E a) const { return a == 0; }
};

struct ElemOps {
  PresentationPtr p;
  using E = GroupElement;
  E one() const { return GroupElement::identity(p); }
  E mul(const E& a, const E& b) const { return multiply(a, b); }
  E inv(const E& a) const { return inverse(a); }
  E comm(const E& a, const E& b) const { return commutator(a, b); }
  E pow(const E& a, const BigInt& k) const { return power(a, k); }
  bool is_one(const E& a) const { return a.is_identity(); }
};

template <class Ops>
typename Ops::E eval_word(const Ops& ops, const std::string& w, const typename Ops::E& x, const typename Ops::E& y) {
  auto acc = ops.one();
  for (char c : w) acc = ops.mul(acc, c == 'x' ? x : y);
  return acc;
}

template <class Ops>
std::pair<typename Ops::E, typename Ops::E> eval_law(const Ops& ops, const LawSpec& law,
                                                     const std::vector<typename Ops::E>& v) {
  if (v.size() != law.arity()) throw InvalidArgument("law " + law.name() + " needs " + std::to_string(law.arity()) + " variables");
  switch (law.kind) {
    case LawSpec::Kind::kEngelN: {
      auto acc = v[0];
      for (unsigned k = 0; k < law.n && !ops.is_one(acc); ++k) acc = ops.comm(acc, v[1]);
      return {acc, ops.one()};
    }
    case LawSpec::Kind::kLocallyNilpotent: {
      auto acc = ops.pow(v[0], law.r);
      for (unsigned k = 1; k <= law.m && !ops.is_one(acc); ++k) acc = ops.comm(acc, v[k]);
      return {acc, ops.one()};
    }
    default: {
      const auto [l, r] = law.words();
      return {eval_word(ops, l, v[0], v[1]), eval_word(ops, r, v[0], v[1])};
    }
  }
}

BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned k = 0; k < e; ++k) r *= b;
  return r;
}

double quantile_for(double confidence) {
  boost::math::normal_distribution<double> nd;
  return boost::math::quantile(nd, 1.0 - (1.0 - confidence) / 2.0);
}

// All tuples of the given arity over [0, size), odometer order.
template <class F>
void for_each_tuple(std::size_t size, std::size_t arity, std::uint64_t budget, F&& f) {
  BigInt total = ipow(BigInt(size), static_cast<unsigned>(arity));
  if (total > budget) throw BudgetExceeded("exhaustive check needs " + total.str() + " evaluations");
  std::vector<std::size_t> idx(arity, 0);
  for (;;) {
    if (!f(idx)) return;
    std::size_t k = arity;
    while (k > 0) {
      --k;
      if (++idx[k] < size) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (arity == 0) return;
  }
}

}  // namespace

LawSpec LawSpec::engel_n(unsigned n) {
  if (n < 1) throw InvalidArgument("Engel degree must be positive");
  LawSpec l{Kind::kEngelN};
  l.n = n;
  return l;
}

LawSpec LawSpec::locally_nilpotent(const BigInt& r, unsigned m) {
  if (r < 1 || m < 1) throw InvalidArgument("law parameters must be positive");
  LawSpec l{Kind::kLocallyNilpotent};
  l.r = r;
  l.m = m;
  return l;
}

LawSpec LawSpec::parse(const std::string& text) {
  if (text == "engel2") return engel2();
  if (text == "engel3a") return engel3_a();
  if (text == "engel3b") return engel3_b();
  if (text == "engel4") return engel4();
  auto num = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad law parameter in '" + text + "'");
    return BigInt(s);
  };
  if (text.rfind("engel:", 0) == 0) return engel_n(static_cast<unsigned>(num(text.substr(6))));
  if (text.rfind("locnil:", 0) == 0) {
    const auto rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("locnil law needs r and m: '" + text + "'");
    return locally_nilpotent(num(rest.substr(0, colon)), static_cast<unsigned>(num(rest.substr(colon + 1))));
  }
  throw ParseError("unknown law '" + text + "'");
}

std::size_t LawSpec::arity() const { return kind == Kind::kLocallyNilpotent ? m + 1 : 2; }

std::string LawSpec::name() const {
  switch (kind) {
    case Kind::kEngel2:
      return "engel2";
    case Kind::kEngel3A:
      return "engel3a";
    case Kind::kEngel3B:
      return "engel3b";
    case Kind::kEngel4:
      return "engel4";
    case Kind::kEngelN:
      return "engel:" + std::to_string(n);
    case Kind::kLocallyNilpotent:
      return "locnil:" + r.str() + ":" + std::to_string(m);
  }
  return "?";
}

std::pair<std::string, std::string> LawSpec::words() const {
  switch (kind) {
    case Kind::kEngel2:
      return {"yxxy", "xyyx"};
    case Kind::kEngel3A:
      return {"xyyxyxxy", "yxxyxyyx"};
    case Kind::kEngel3B:
      return {kEngel3B_lhs, kEngel3B_rhs};
    case Kind::kEngel4:
      return {"xyyxyxxyyxxyxyyxyxxyxyyxxyyxyxxy", "yxxyxyyxxyyxyxxyxyyxyxxyyxxyxyyx"};
    default:
      return {};
  }
}

std::pair<GroupElement, GroupElement> evaluate_law(const LawSpec& law, const std::vector<GroupElement>& vars) {
  if (vars.empty()) throw InvalidArgument("law needs variables");
  return eval_law(ElemOps{vars[0].presentation()}, law, vars);
}

GroupElement evaluate_xy_word(const std::string& word, const GroupElement& x, const GroupElement& y) {
  return eval_word(ElemOps{x.presentation()}, word, x, y);
}

LawVerdict check_law(const PresentationPtr& p, const LawSpec& law, const CheckMode& mode) {
  LawVerdict v;
  const std::size_t arity = law.arity();
  if (mode.exhaustive) {
    if (!p->is_finite_group()) throw InvalidArgument("exhaustive law check needs a finite group");
    if (ElementTable::fits(*p)) {
      const ElementTable table(p);
      const TableOps ops{table};
      for_each_tuple(table.size(), arity, mode.budget, [&](const std::vector<std::size_t>& idx) {
        ++v.checked;
        const auto [l, r] = eval_law(ops, law, idx);
        if (l != r) {
          v.holds = false;
          for (auto k : idx) v.witness.push_back(table.element(k));
          return false;
        }
        return true;
      });
      return v;
    }
    const auto order = *p->group_order();
    if (order > 5'000'000) throw BudgetExceeded("group too large for exhaustive law check");
    const auto elems = enumerate_elements(p);
    const ElemOps ops{p};
    for_each_tuple(elems.size(), arity, mode.budget, [&](const std::vector<std::size_t>& idx) {
      ++v.checked;
      std::vector<GroupElement> vars;
      for (auto k : idx) vars.push_back(elems[k]);
      const auto [l, r] = eval_law(ops, law, vars);
      if (!(l == r)) {
        v.holds = false;
        v.witness = vars;
        return false;
      }
      return true;
    });
    return v;
  }
  Rng rng(mode.seed);
  const ElemOps ops{p};
  for (std::uint64_t t = 0; t < mode.samples; ++t) {
    std::vector<GroupElement> vars;
    for (std::size_t k = 0; k < arity; ++k)
      vars.push_back(p->is_finite_group() ? random_element(p, rng) : random_element_bounded(p, rng, 10));
    ++v.checked;
    const auto [l, r] = eval_law(ops, law, vars);
    if (!(l == r)) {
      v.holds = false;
      v.witness = vars;
      return v;
    }
  }
  return v;
}

LawVerdict is_n_engel(const PresentationPtr& p, unsigned n, const CheckMode& mode) {
  return check_law(p, LawSpec::engel_n(n), mode);
}

std::string to_string(EngelStatus s) {
  switch (s) {
    case EngelStatus::kEngel:
      return "engel";
    case EngelStatus::kNotEngel:
      return "not-engel";
    case EngelStatus::kUndetermined:
      return "undetermined";
  }
  return "?";
}

namespace {

enum class PairOutcome { kHit, kNever, kCap };

// Least k in 1..n_max with c_k = 1 for c_0 = start, c_{k} = [c_{k-1}, step].
std::pair<PairOutcome, unsigned> engel_sequence(const ElementTable& t, std::size_t start, std::size_t step,
                                                unsigned n_max) {
  std::vector<std::size_t> seen{start};
  std::size_t c = start;
  for (unsigned k = 1; k <= n_max; ++k) {
    c = t.comm(c, step);
    if (c == 0) return {PairOutcome::kHit, k};
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) return {PairOutcome::kNever, k};
    seen.push_back(c);
  }
  return {PairOutcome::kCap, n_max};
}

EngelClassification classify(const ElementTable& t, EngelSide side, unsigned n_max) {
  EngelClassification out;
  out.side = side;
  out.n_max = n_max;
  unsigned uniform = 0;
  for (std::size_t g = 0; g < t.size(); ++g) {
    ElementEngelInfo info;
    info.element = t.element(g);
    info.status = EngelStatus::kEngel;
    unsigned least = 1;
    for (std::size_t x = 0; x < t.size(); ++x) {
      const auto [res, k] = side == EngelSide::kRight ? engel_sequence(t, g, x, n_max) : engel_sequence(t, x, g, n_max);
      if (res == PairOutcome::kHit) {
        least = std::max(least, k);
      } else if (res == PairOutcome::kNever) {
        info.status = EngelStatus::kNotEngel;
        info.witness = t.element(x);
        break;
      } else if (info.status == EngelStatus::kEngel) {
        info.status = EngelStatus::kUndetermined;
        info.witness = t.element(x);
      }
    }
    if (info.status == EngelStatus::kEngel) {
      info.least_n = least;
      ++out.engel_count;
      uniform = std::max(uniform, least);
    } else if (info.status == EngelStatus::kNotEngel) {
      ++out.not_engel_count;
    } else {
      ++out.undetermined_count;
    }
    out.elements.push_back(std::move(info));
  }
  if (out.engel_count == t.size()) out.group_engel_n = uniform;
  return out;
}

}  // namespace

EngelClassification classify_engel_elements(const PresentationPtr& p, EngelSide side, unsigned n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be positive");
  const ElementTable table(p);
  return classify(table, side, n_max);
}

InclusionReport check_engel_inclusions(const PresentationPtr& p, unsigned n_max) {
  const ElementTable table(p);
  const auto right = classify(table, EngelSide::kRight, n_max);
  const auto left = classify(table, EngelSide::kLeft, n_max + 1);
  InclusionReport rep;
  for (std::size_t g = 0; g < table.size(); ++g) {
    const auto& r = right.elements[g];
    if (r.status != EngelStatus::kEngel) continue;
    ++rep.right_engel;
    const auto& l = left.elements[table.inv(g)];
    if (l.status == EngelStatus::kNotEngel) {
      rep.holds = false;
      rep.violations.push_back(r.element);
    } else if (l.status == EngelStatus::kUndetermined) {
      ++rep.inconclusive;
    } else {
      ++rep.checked_bounded;
      if (l.least_n > r.least_n + 1) {
        rep.holds = false;
        rep.violations.push_back(r.element);
      }
    }
  }
  return rep;
}

// ---- structure -------------------------------------------------------------------

namespace {

std::vector<char> subgroup_closure(const ElementTable& t, const std::vector<std::size_t>& gens) {
  std::vector<char> in(t.size(), 0);
  in[0] = 1;
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto a : frontier)
      for (auto g : gens) {
        const auto b = t.mul(a, g);
        if (!in[b]) {
          in[b] = 1;
          next.push_back(b);
        }
      }
    frontier = std::move(next);
  }
  return in;
}

std::vector<char> normal_closure(const ElementTable& t, std::vector<std::size_t> gens,
                                 const std::vector<std::size_t>& conj_by) {
  for (;;) {
    auto in = subgroup_closure(t, gens);
    bool grew = false;
    for (std::size_t a = 0; a < t.size(); ++a) {
      if (!in[a]) continue;
      for (auto g : conj_by) {
        const auto c = t.mul(t.mul(t.inv(g), a), g);
        if (!in[c]) {
          gens.push_back(c);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (!grew) return in;
  }
}

}  // namespace

GroupStructure describe_group(const ElementTable& t) {
  GroupStructure s;
  const std::size_t n = t.presentation()->ngens();
  s.order = t.size();
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(t.index_of(t.presentation()->unit(i)));
  BigInt exp = 1;
  for (std::size_t a = 0; a < t.size(); ++a) {
    const BigInt o = t.order(a);
    exp = exp / gcd(exp, o) * o;
  }
  s.exponent = exp;
  for (std::size_t a = 0; a < t.size(); ++a) {
    bool central = true;
    for (auto g : gens)
      if (t.mul(a, g) != t.mul(g, a)) {
        central = false;
        break;
      }
    if (central) ++s.center_size;
  }
  s.abelian = s.center_size == t.size();
  // Conjugacy classes as orbits under the generators.
  std::vector<char> seen(t.size(), 0);
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (seen[a]) continue;
    ++s.conjugacy_classes;
    std::vector<std::size_t> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto g : gens) {
        const auto c = t.mul(t.mul(t.inv(g), x), g);
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
      }
    }
  }
  std::vector<std::size_t> current(t.size());
  std::iota(current.begin(), current.end(), 0);
  s.lower_central_sizes.push_back(t.size());
  for (unsigned c = 1;; ++c) {
    if (current.size() == 1) {
      s.nilpotency_class = c - 1;
      break;
    }
    std::vector<std::size_t> comms;
    for (auto a : current)
      for (auto g : gens) {
        const auto x = t.comm(a, g);
        if (x != 0) comms.push_back(x);
      }
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    const auto in = normal_closure(t, comms, gens);
    std::vector<std::size_t> next;
    for (std::size_t a = 0; a < t.size(); ++a)
      if (in[a]) next.push_back(a);
    if (next.size() == current.size()) break;  // stalled above 1: not nilpotent
    s.lower_central_sizes.push_back(next.size());
    current = std::move(next);
  }
  return s;
}

// ---- degree of nilpotency -----------------------------------------------------------

std::string DegreeReport::fraction() const {
  if (total == 0) return "0";
  const BigInt g = gcd(satisfied, total);
  const BigInt a = g == 0 ? satisfied : BigInt(satisfied / g);
  const BigInt b = g == 0 ? total : BigInt(total / g);
  return b == 1 ? a.str() : a.str() + "/" + b.str();
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double confidence) {
  if (n == 0) return {0.0, 1.0};
  const double z = quantile_for(confidence);
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / nn;
  const double denom = 1.0 + z * z / nn;
  const double centre = (ph + z * z / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

DegreeReport degree_exact(const ElementTable& t, unsigned n, std::uint64_t budget) {
  if (n < 1) throw InvalidArgument("degree order must be positive");
  DegreeReport rep;
  rep.n = n;
  rep.exact = true;
  const BigInt size = t.size();
  rep.total = ipow(size, n + 1);
  const auto st = describe_group(t);
  if (st.nilpotency_class && *st.nilpotency_class <= n) {
    rep.satisfied = rep.total;
  } else {
    // Centralizer orders from conjugacy class sizes.
    const std::size_t n_gens = t.presentation()->ngens();
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < n_gens; ++i) gens.push_back(t.index_of(t.presentation()->unit(i)));
    std::vector<std::size_t> centralizer(t.size(), 0);
    std::vector<char> seen(t.size(), 0);
    for (std::size_t a = 0; a < t.size(); ++a) {
      if (seen[a]) continue;
      std::vector<std::size_t> orbit{a};
      seen[a] = 1;
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (auto g : gens) {
          const auto c = t.mul(t.mul(t.inv(g), orbit[k]), g);
          if (!seen[c]) {
            seen[c] = 1;
            orbit.push_back(c);
          }
        }
      for (auto x : orbit) centralizer[x] = t.size() / orbit.size();
    }
    // Sum over n-tuples of |C([x_1..x_n])|; a trivial prefix contributes a full block.
    if (ipow(size, n) > budget) throw BudgetExceeded("exact degree needs " + ipow(size, n).str() + " evaluations");
    BigInt count = 0;
    std::function<void(unsigned, std::size_t)> rec = [&](unsigned depth, std::size_t c) {
      if (depth == n) {
        count += centralizer[c];
        return;
      }
      if (c == 0) {
        count += ipow(size, n + 1 - depth);
        return;
      }
      for (std::size_t x = 0; x < t.size(); ++x) rec(depth + 1, t.comm(c, x));
    };
    for (std::size_t x = 0; x < t.size(); ++x) rec(1, x);
    rep.satisfied = count;
  }
  rep.value = static_cast<double>(rep.satisfied) / static_cast<double>(rep.total);
  rep.lower = rep.upper = rep.value;
  rep.confidence = 1.0;
  return rep;
}

DegreeReport degree_exact(const PresentationPtr& p, unsigned n, std::uint64_t budget) {
  if (!p->is_finite_group()) throw InvalidArgument("exact degree needs a finite group");
  if (!ElementTable::fits(*p)) throw BudgetExceeded("group too large for exact degree");
  return degree_exact(ElementTable(p), n, budget);
}

DegreeReport degree_montecarlo(const PresentationPtr& p, unsigned n, std::uint64_t samples, double confidence,
                               std::uint64_t seed) {
  if (!p->is_finite_group()) throw InvalidArgument("uniform sampling needs a finite group");
  if (samples == 0) throw InvalidArgument("need at least one sample");
  Rng rng(seed);
  std::uint64_t hits = 0;
  if (ElementTable::fits(*p)) {
    const ElementTable t(p);
    for (std::uint64_t s = 0; s < samples; ++s) {
      std::size_t c = rng.below(t.size());
      for (unsigned k = 0; k < n; ++k) c = t.comm(c, rng.below(t.size()));
      if (c == 0) ++hits;
    }
  } else {
    for (std::uint64_t s = 0; s < samples; ++s) {
      GroupElement c = random_element(p, rng);
      for (unsigned k = 0; k < n; ++k) c = commutator(c, random_element(p, rng));
      if (c.is_identity()) ++hits;
    }
  }
  DegreeReport rep;
  rep.n = n;
  rep.exact = false;
  rep.satisfied = hits;
  rep.total = samples;
  rep.value = static_cast<double>(hits) / static_cast<double>(samples);
  rep.confidence = confidence;
  std::tie(rep.lower, rep.upper) = wilson_interval(hits, samples, confidence);
  rep.half_width = (rep.upper - rep.lower) / 2;
  return rep;
}

std::vector<BallDegreePoint> degree_ball_estimate(const PresentationPtr& p, const std::vector<GroupElement>& gens,
                                                  unsigned n, unsigned m_max, std::uint64_t seed,
                                                  std::uint64_t exact_limit, std::uint64_t samples) {
  const auto ball = growth_ball(p, gens, m_max, true);
  std::vector<BallDegreePoint> out;
  Rng rng(seed);
  std::size_t size = 0;
  for (unsigned m = 0; m <= m_max; ++m) {
    size += ball.sphere_sizes[m];
    const std::vector<GroupElement> elems(ball.elements.begin(), ball.elements.begin() + static_cast<long>(size));
    BallDegreePoint pt;
    pt.radius = m;
    pt.ball_size = size;
    const BigInt tuples = ipow(BigInt(size), n + 1);
    if (tuples <= exact_limit) {
      BigInt hits = 0;
      std::function<void(unsigned, const GroupElement&)> rec = [&](unsigned depth, const GroupElement& c) {
        if (c.is_identity()) {
          hits += ipow(BigInt(size), n + 1 - depth);
          return;
        }
        if (depth == n + 1) return;
        for (const auto& x : elems) rec(depth + 1, commutator(c, x));
      };
      for (const auto& x : elems) rec(1, x);
      pt.exact = true;
      pt.ratio = static_cast<double>(hits) / static_cast<double>(tuples);
    } else {
      std::uint64_t hits = 0;
      for (std::uint64_t s = 0; s < samples; ++s) {
        GroupElement c = elems[rng.below(size)];
        for (unsigned k = 0; k < n; ++k) c = commutator(c, elems[rng.below(size)]);
        if (c.is_identity()) ++hits;
      }
      pt.exact = false;
      pt.ratio = static_cast<double>(hits) / static_cast<double>(samples);
    }
    out.push_back(pt);
  }
  return out;
}

bool DegreeBoundsReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds; });
}

DegreeBoundsReport check_degree_bounds(const PresentationPtr& p, unsigned n) {
  if (!p->is_finite_group() || !ElementTable::fits(*p)) throw BudgetExceeded("degree bounds need an exactly computable degree");
  const ElementTable t(p);
  DegreeBoundsReport rep;
  rep.n = n;
  rep.structure = describe_group(t);
  rep.degree = degree_exact(t, n);
  rep.degree1 = n == 1 ? rep.degree : degree_exact(t, 1);
  const auto& st = rep.structure;
  const BigInt two_n2 = BigInt(1) << (n + 2);
  const BigInt two_n = BigInt(1) << n;

  BoundCheck b1;
  b1.name = "not class <= n => d <= (2^(n+2)-3)/2^(n+2)";
  b1.applicable = !(st.nilpotency_class && *st.nilpotency_class <= n);
  b1.holds = !b1.applicable || rep.degree.satisfied * two_n2 <= (two_n2 - 3) * rep.degree.total;
  b1.detail = rep.degree.fraction() + " vs " + BigInt(two_n2 - 3).str() + "/" + two_n2.str();
  rep.checks.push_back(b1);

  BoundCheck b2;
  b2.name = "trivial center => d <= (2^n-1)/2^n";
  b2.applicable = st.center_size == 1 && st.order > 1;
  b2.holds = !b2.applicable || rep.degree.satisfied * two_n <= (two_n - 1) * rep.degree.total;
  b2.detail = rep.degree.fraction() + " vs " + BigInt(two_n - 1).str() + "/" + two_n.str();
  rep.checks.push_back(b2);

  BoundCheck b3;
  b3.name = "d(G) > 5/8 => abelian";
  b3.applicable = rep.degree1.satisfied * 8 > rep.degree1.total * 5;
  b3.holds = !b3.applicable || st.abelian;
  b3.detail = "d(G) = " + rep.degree1.fraction();
  rep.checks.push_back(b3);

  BoundCheck b4;
  b4.name = "d(G) > 1/2 => nilpotent";
  b4.applicable = rep.degree1.satisfied * 2 > rep.degree1.total;
  b4.holds = !b4.applicable || st.nilpotency_class.has_value();
  b4.detail = "d(G) = " + rep.degree1.fraction();
  rep.checks.push_back(b4);
  return rep;
}

}  // namespace engel
