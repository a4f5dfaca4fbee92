#include "engel/algorithmics.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace engel {

namespace {

void same_presentation(const GroupElement& a, const GroupElement& b) {
  if (!a.presentation() || !b.presentation() || !a.presentation()->same_group(*b.presentation()))
    throw InvalidArgument("elements belong to different presentations");
}

std::optional<std::size_t> leading_index(const GroupElement& x) {
  for (std::size_t i = 0; i < x.ngens(); ++i)
    if (x[i] != 0) return i;
  return std::nullopt;
}

// x^n = y for some n, found one pc coordinate at a time. For finite |x| the
// answer lies in [0, |x|).
std::optional<BigInt> solve_power(const GroupElement& x, const GroupElement& y, std::uint64_t& steps) {
  ++steps;
  const auto lead = leading_index(x);
  if (!lead) return y.is_identity() ? std::optional<BigInt>(0) : std::nullopt;
  const std::size_t i = *lead;
  for (std::size_t j = 0; j < i; ++j)
    if (y[j] != 0) return std::nullopt;
  const auto& p = *x.presentation();
  const BigInt& e = x[i];
  if (!p.is_finite(i)) {
    if (y[i] % e != 0) return std::nullopt;
    BigInt n = y[i] / e;
    if (power(x, n) == y) return n;
    return std::nullopt;
  }
  const BigInt& r = p.relative_order(i);
  const BigInt g = gcd(e, r);
  if (y[i] % g != 0) return std::nullopt;
  const BigInt k0 = r / g;
  const BigInt n0 = k0 == 1 ? BigInt(0) : mod_floor((y[i] / g) * mod_inverse(e / g, k0), k0);
  const auto x1 = power(x, k0);
  const auto y1 = multiply(power(x, -n0), y);
  const auto m = solve_power(x1, y1, steps);
  if (!m) return std::nullopt;
  return n0 + k0 * *m;
}

}  // namespace

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound:
      return "found";
    case SearchStatus::kNone:
      return "none";
    case SearchStatus::kExhausted:
      return "exhausted";
  }
  return "?";
}

bool word_problem(const PresentationPtr& p, const FreeWord& w) { return collect(p, w).is_identity(); }

PowerResult power_decision(const GroupElement& x, const GroupElement& y, const SearchBudget& budget) {
  same_presentation(x, y);
  PowerResult res;
  auto n = solve_power(x, y, res.steps);
  if (res.steps > budget.max_steps) {
    res.status = SearchStatus::kExhausted;
    return res;
  }
  if (n) {
    res.status = SearchStatus::kFound;
    res.n = *n;
  }
  return res;
}

PowerResult power_decision_scan(const GroupElement& x, const GroupElement& y, const SearchBudget& budget) {
  same_presentation(x, y);
  PowerResult res;
  const auto order = element_order(x);
  auto pos = GroupElement::identity(x.presentation());
  auto neg = pos;
  const auto xi = inverse(x);
  for (BigInt n = 0;; ++n) {
    if (order.value && n >= *order.value) return res;  // full cycle: none
    if (++res.steps > budget.max_steps) {
      res.status = SearchStatus::kExhausted;
      return res;
    }
    if (pos == y) {
      res.status = SearchStatus::kFound;
      res.n = n;
      return res;
    }
    if (!order.value && n > 0 && neg == y) {
      res.status = SearchStatus::kFound;
      res.n = -n;
      return res;
    }
    pos = multiply(pos, x);
    neg = multiply(neg, xi);
  }
}

ExpVec generalized_dlp(const PresentationPtr& p, const std::vector<GroupElement>& basis, const GroupElement& y) {
  if (basis.size() != p->ngens()) throw InvalidArgument("basis mismatch: expected the pc generating sequence");
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].exponents() != p->unit(i)) throw InvalidArgument("basis mismatch at position " + std::to_string(i + 1));
  if (!y.presentation()->same_group(*p)) throw InvalidArgument("element belongs to a different presentation");
  return y.exponents();
}

GroupElement product_of_powers(const std::vector<GroupElement>& basis, const ExpVec& a) {
  if (basis.empty() || basis.size() != a.size()) throw InvalidArgument("basis and exponent vector differ in length");
  auto acc = GroupElement::identity(basis[0].presentation());
  for (std::size_t i = 0; i < a.size(); ++i) acc = multiply(acc, power(basis[i], a[i]));
  return acc;
}

DlpResult dlp_cyclic(const GroupElement& x, const GroupElement& y, const SearchBudget& budget) {
  same_presentation(x, y);
  const auto order = element_order(x);
  if (order.infinite()) throw InvalidArgument("dlp_cyclic needs an element of finite order");
  const BigInt& k = *order.value;
  BigInt m = sqrt(k);
  if (m * m < k) ++m;
  DlpResult res;
  if (m > budget.max_memory_items) {
    res.status = SearchStatus::kExhausted;
    return res;
  }
  const auto steps = static_cast<std::uint64_t>(m);
  std::unordered_map<GroupElement, std::uint64_t, GroupElementHash> baby;
  auto cur = GroupElement::identity(x.presentation());
  for (std::uint64_t j = 0; j < steps; ++j) {
    baby.emplace(cur, j);
    cur = multiply(cur, x);
  }
  const auto giant = inverse(power(x, m));
  auto gamma = y;
  for (std::uint64_t i = 0; i < steps; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) {
      const BigInt n = BigInt(i) * m + it->second;
      if (n < k) {
        res.status = SearchStatus::kFound;
        res.n = n;
        return res;
      }
    }
    gamma = multiply(gamma, giant);
  }
  return res;
}

RootResult nth_root(const GroupElement& a, const BigInt& n, RootMode mode, const SearchBudget& budget) {
  const auto& p = a.presentation();
  if (!p->is_finite_group()) throw InvalidArgument("root search over an infinite group is unsupported");
  if (n < 1) throw InvalidArgument("root degree must be positive");
  RootResult res;
  if (*p->group_order() > budget.max_steps) {
    res.status = SearchStatus::kExhausted;
    return res;
  }
  auto visit = [&](const GroupElement& x) {
    if (power(x, n) == a) {
      res.status = SearchStatus::kFound;
      res.roots.push_back(x);
      return mode == RootMode::kAll;
    }
    return true;
  };
  if (ElementTable::fits(*p)) {
    const ElementTable t(p);
    const auto target = t.index_of(a);
    const BigInt r = n % BigInt(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (t.pow(x, static_cast<std::int64_t>(r)) != target) continue;
      res.status = SearchStatus::kFound;
      res.roots.push_back(t.element(x));
      if (mode == RootMode::kAny) break;
    }
    return res;
  }
  for (ElementEnumerator e(p); !e.done(); e.next())
    if (!visit(e.current())) break;
  return res;
}

ConjugacyResult conjugacy_search(const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
                                 ConjugacyVariant variant, const SearchBudget& budget) {
  if (pairs.empty()) throw InvalidArgument("conjugacy search needs at least one pair");
  if (variant != ConjugacyVariant::kMultiple && pairs.size() != 1)
    throw InvalidArgument("single and power variants take exactly one pair");
  for (const auto& [a, b] : pairs) {
    same_presentation(pairs[0].first, a);
    same_presentation(a, b);
  }
  const auto& p = pairs[0].first.presentation();
  if (!p->is_finite_group()) throw InvalidArgument("conjugacy search needs a finite group");
  ConjugacyResult res;
  std::uint64_t steps = 0;

  std::vector<BigInt> exponents{1};
  if (variant == ConjugacyVariant::kPower) {
    const BigInt k = *element_order(pairs[0].first).value;
    exponents.clear();
    for (BigInt e = 1; e <= k; ++e) exponents.push_back(e);
  }
  for (const auto& e : exponents) {
    const auto lhs = variant == ConjugacyVariant::kPower ? power(pairs[0].first, e) : pairs[0].first;
    for (ElementEnumerator it(p); !it.done(); it.next()) {
      if (++steps > budget.max_steps) {
        res.status = SearchStatus::kExhausted;
        return res;
      }
      const auto c = it.current();
      bool ok = true;
      if (variant == ConjugacyVariant::kPower) {
        ok = conjugate(pairs[0].second, c) == lhs;
      } else {
        for (const auto& [a, b] : pairs)
          if (!(conjugate(a, c) == b)) {
            ok = false;
            break;
          }
      }
      if (ok) {
        res.status = SearchStatus::kFound;
        res.conjugator = c;
        res.n = e;
        return res;
      }
    }
  }
  return res;
}

GeodesicResult geodesic_length(const PresentationPtr& p, const std::vector<GroupElement>& X, const GroupElement& g,
                               const SearchBudget& budget) {
  if (X.empty()) throw InvalidArgument("generator set is empty");
  GeodesicResult res;
  res.witness = FreeWord(X.size());
  if (g.is_identity()) {
    res.status = SearchStatus::kFound;
    return res;
  }
  // Letters in the order X1, X1^-1, X2, X2^-1, ...
  std::vector<GroupElement> letters;
  for (const auto& x : X) {
    letters.push_back(x);
    letters.push_back(inverse(x));
  }
  struct Node {
    std::size_t parent;
    std::size_t letter;
  };
  std::vector<GroupElement> elems{GroupElement::identity(p)};
  std::vector<Node> nodes{{0, 0}};
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index{{elems[0], 0}};
  std::size_t begin = 0;
  std::uint64_t steps = 0;
  for (std::size_t radius = 1;; ++radius) {
    const std::size_t end = elems.size();
    if (begin == end) return res;  // whole group explored
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        if (++steps > budget.max_steps) {
          res.status = SearchStatus::kExhausted;
          return res;
        }
        auto y = multiply(elems[k], letters[l]);
        if (index.count(y)) continue;
        if (elems.size() >= budget.max_memory_items) {
          res.status = SearchStatus::kExhausted;
          return res;
        }
        index.emplace(y, elems.size());
        nodes.push_back({k, l});
        elems.push_back(y);
        if (y == g) {
          std::vector<std::size_t> path;
          for (std::size_t v = elems.size() - 1; v != 0; v = nodes[v].parent) path.push_back(nodes[v].letter);
          std::reverse(path.begin(), path.end());
          for (auto l2 : path) res.witness.append(l2 / 2, l2 % 2 == 0 ? 1 : -1);
          res.status = SearchStatus::kFound;
          res.length = radius;
          return res;
        }
      }
    }
    begin = end;
  }
}

MembershipResult subgroup_membership(const PresentationPtr& p, const std::vector<GroupElement>& H,
                                     const GroupElement& g, const SearchBudget& budget) {
  if (!p->is_finite_group()) throw InvalidArgument("subgroup membership needs a finite group");
  MembershipResult res;
  std::unordered_set<GroupElement, GroupElementHash> seen{GroupElement::identity(p)};
  std::vector<GroupElement> frontier{GroupElement::identity(p)};
  std::uint64_t steps = 0;
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& h : H) {
        if (++steps > budget.max_steps || seen.size() > budget.max_memory_items) {
          res.status = SearchStatus::kExhausted;
          return res;
        }
        auto y = multiply(x, h);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  res.subgroup_order = seen.size();
  if (*p->group_order() % res.subgroup_order != 0) throw Error("subgroup order does not divide the group order");
  res.member = seen.count(g) > 0;
  res.status = res.member ? SearchStatus::kFound : SearchStatus::kNone;
  return res;
}

namespace {

FreeWord random_free_word(std::size_t alphabet, std::size_t length, Rng& rng) {
  FreeWord w(alphabet);
  for (std::size_t k = 0; k < length; ++k) w.append(rng.below(alphabet), rng.coin() ? 1 : -1);
  return w;
}

}  // namespace

GeneratedWord random_trivial_word(const PresentationPtr& p, std::size_t factors, std::size_t conj_length, Rng& rng) {
  const auto rels = p->relators();
  GeneratedWord out{FreeWord(p->ngens()), 0};
  if (rels.empty() || factors == 0) return out;
  for (std::size_t f = 0; f < factors; ++f) {
    FreeWord r = rels[rng.below(rels.size())];
    if (rng.coin()) r = r.inverse();
    out.word = out.word * r.conjugated_by(random_free_word(p->ngens(), conj_length, rng));
  }
  if (!word_problem(p, out.word)) throw Error("product of relator conjugates did not collect to the identity");
  out.reduced_length = out.word.free_reduced().length();
  return out;
}

GeneratedWord random_nontrivial_word(const PresentationPtr& p, std::size_t length, Rng& rng) {
  if (length == 0 || p->ngens() == 0) throw InvalidArgument("nontrivial word needs a positive length");
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    auto w = random_free_word(p->ngens(), length, rng);
    if (!word_problem(p, w)) return {w, w.free_reduced().length()};
  }
  throw BudgetExceeded("no nontrivial word found");
}

}  // namespace engel
