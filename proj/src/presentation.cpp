#include "engel/presentation.hpp"

#include "engel/element.hpp"
#include "engel/rng.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace engel {

namespace {

bool supported_above(const ExpVec& v, std::size_t i) {
  for (std::size_t k = 0; k <= i && k < v.size(); ++k)
    if (v[k] != 0) return false;
  return true;
}

bool is_zero(const ExpVec& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

std::string gen_name(std::size_t i) { return "g" + std::to_string(i + 1); }

// Newton forward-difference coefficients of samples f(0..D).
std::vector<BigInt> newton_coefficients(std::vector<BigInt> vals) {
  std::vector<BigInt> coef;
  coef.reserve(vals.size());
  while (!vals.empty()) {
    coef.push_back(vals.front());
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) vals[k] = vals[k + 1] - vals[k];
    vals.pop_back();
  }
  return coef;
}

BigInt newton_eval(const std::vector<BigInt>& coef, const BigInt& e) {
  BigInt acc = 0;
  BigInt binom = 1;  // C(e, m)
  for (std::size_t m = 0; m < coef.size(); ++m) {
    if (m > 0) binom = binom * (e - (m - 1)) / m;
    if (coef[m] != 0) acc += coef[m] * binom;
  }
  return acc;
}

}  // namespace

PresentationData PresentationData::with_gens(std::string label, std::size_t n) {
  PresentationData d;
  d.label = std::move(label);
  d.ngens = n;
  d.orders.assign(n, 0);
  d.powers.assign(n, ExpVec{});
  d.conjugates.assign(n, std::vector<ExpVec>(n));
  return d;
}

std::shared_ptr<const PcPresentation> PcPresentation::create(PresentationData data) {
  return create(std::move(data), Options{});
}

std::shared_ptr<const PcPresentation> PcPresentation::create(PresentationData data, const Options& options) {
  std::shared_ptr<PcPresentation> p(new PcPresentation());
  const bool lift = data.modular_lift;
  PresentationData copy;
  if (lift) copy = data;
  p->validate_and_load(std::move(data));
  p->analyse_shape();
  p->derive_rows();
  p->compute_layers();
  p->poly_ = false;
  if (options.allow_polynomial && p->nilpotent_shape_ && p->layer_count_ > 0 && p->n_ > 0) {
    bool all_infinite = true;
    for (const auto& r : p->orders_)
      if (r != 0) all_infinite = false;
    if (all_infinite || p->modular_lift_) {
      // Sample conjugation orbits generically, interpolate, then check two extra points.
      const std::size_t n = p->n_;
      std::vector<std::vector<std::vector<std::vector<BigInt>>>> polys(n);
      bool ok = true;
      RewriteBudget budget(UINT64_MAX);
      for (std::size_t i = 0; i < n && ok; ++i) {
        polys[i].resize(n);
        const std::size_t d = p->depth_from(i) + 1;
        for (std::size_t j = i + 1; j < n && ok; ++j) {
          if (p->commutes_[i][j]) continue;
          std::vector<ExpVec> samples;
          ExpVec cur = p->unit(j);
          for (std::size_t e = 0; e <= d + 1; ++e) {
            samples.push_back(cur);
            cur = p->apply_single(cur, i, false, budget);
          }
          auto& coords = polys[i][j];
          coords.resize(n);
          for (std::size_t c = 0; c < n; ++c) {
            std::vector<BigInt> vals;
            for (std::size_t e = 0; e <= d; ++e) vals.push_back(samples[e][c]);
            coords[c] = newton_coefficients(std::move(vals));
            BigInt at_next = newton_eval(coords[c], BigInt(d + 1));
            BigInt at_minus = newton_eval(coords[c], BigInt(-1));
            if (p->orders_[c] != 0) {
              at_next = mod_floor(at_next, p->orders_[c]);
              at_minus = mod_floor(at_minus, p->orders_[c]);
            }
            if (at_next != samples[d + 1][c] || at_minus != p->conj_inv_[i][j][c]) ok = false;
          }
        }
      }
      if (ok) {
        p->conj_poly_ = std::move(polys);
        p->poly_ = true;
      }
    }
  }
  if (lift) p->check_lift(copy);
  p->check_consistency(options);
  return p;
}

void PcPresentation::validate_and_load(PresentationData&& d) {
  n_ = d.ngens;
  label_ = std::move(d.label);
  if (d.orders.size() != n_) throw PresentationError("orders: expected " + std::to_string(n_) + " entries");
  orders_ = std::move(d.orders);
  finite_group_ = true;
  for (std::size_t i = 0; i < n_; ++i) {
    if (orders_[i] < 0 || orders_[i] == 1)
      throw PresentationError("relative order of " + gen_name(i) + " must be >= 2 or infinite");
    if (orders_[i] == 0) finite_group_ = false;
  }
  auto check_word = [&](const ExpVec& w, std::size_t above, const std::string& what) {
    if (w.size() != n_) throw PresentationError(what + ": wrong length");
    if (!supported_above(w, above))
      throw PresentationError(what + ": mentions a generator of index <= " + std::to_string(above + 1));
    if (!is_normal(w)) throw PresentationError(what + ": exponent out of range");
  };

  if (d.powers.empty()) d.powers.assign(n_, ExpVec{});
  if (d.powers.size() != n_) throw PresentationError("powers: wrong count");
  powers_.assign(n_, identity());
  power_trivial_.assign(n_, true);
  for (std::size_t i = 0; i < n_; ++i) {
    if (d.powers[i].empty()) continue;
    if (orders_[i] == 0 && !is_zero(d.powers[i]))
      throw PresentationError("power relation given for infinite generator " + gen_name(i));
    check_word(d.powers[i], i, "power of " + gen_name(i));
    powers_[i] = d.powers[i];
    power_trivial_[i] = is_zero(powers_[i]);
  }

  if (d.conjugates.empty()) d.conjugates.assign(n_, std::vector<ExpVec>(n_));
  if (d.conjugates.size() != n_) throw PresentationError("conjugates: wrong row count");
  conj_.assign(n_, std::vector<ExpVec>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    auto& row = d.conjugates[i];
    if (row.empty()) row.assign(n_, ExpVec{});
    if (row.size() != n_) throw PresentationError("conjugates: wrong column count");
    for (std::size_t j = 0; j < n_; ++j) {
      if (j <= i) {
        if (!row[j].empty()) throw PresentationError("conjugate " + gen_name(j) + "^" + gen_name(i) + " not allowed");
        continue;
      }
      if (row[j].empty()) {
        conj_[i][j] = unit(j);
        continue;
      }
      const std::string what = "conjugate " + gen_name(j) + "^" + gen_name(i);
      check_word(row[j], i, what);
      if (is_zero(row[j])) throw PresentationError(what + " is trivial");
      conj_[i][j] = row[j];
    }
  }

  if (!d.weights.empty() && d.weights.size() != n_) throw PresentationError("weights: wrong count");
  weights_ = std::move(d.weights);
  if (!d.definitions.empty()) {
    if (d.definitions.size() != n_) throw PresentationError("definitions: wrong count");
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& df = d.definitions[i];
      if (df.kind == DefinitionKind::kCommutator && (df.a >= i || df.b >= i || df.a == df.b))
        throw PresentationError("definition of " + gen_name(i) + " refers forward");
      if (df.kind == DefinitionKind::kPower && (df.a >= i || orders_[df.a] == 0))
        throw PresentationError("definition of " + gen_name(i) + " is not a power of an earlier finite generator");
    }
  }
  definitions_ = std::move(d.definitions);

  modular_lift_ = d.modular_lift;
  relatively_free_ = d.relatively_free;
  if (modular_lift_) {
    for (std::size_t i = 0; i < n_; ++i)
      if (orders_[i] == 0 || !power_trivial_[i])
        throw PresentationError("modular lift needs finite orders and trivial power words");
  }
}

void PcPresentation::analyse_shape() {
  nilpotent_shape_ = true;
  commutes_.assign(n_, std::vector<bool>(n_, true));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const ExpVec& c = conj_[i][j];
      const bool same = c == unit(j);
      commutes_[i][j] = commutes_[j][i] = same;
      if (c[j] != 1) nilpotent_shape_ = false;
      for (std::size_t k = i + 1; k < j; ++k)
        if (c[k] != 0) nilpotent_shape_ = false;
    }
  }
}

void PcPresentation::derive_rows() {
  conj_inv_.assign(n_, std::vector<ExpVec>(n_));
  for (std::size_t i = n_; i-- > 0;) {
    if (!derive_row(i)) throw PresentationError("cannot invert conjugation action of infinite generator " + gen_name(i));
  }
  // The derived inverse action must undo the given one.
  RewriteBudget budget;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (commutes_[i][j]) continue;
      if (apply_images(conj_[i], i, conj_inv_[i][j], budget) != unit(j))
        throw PresentationError("conjugation by " + gen_name(i) + " is not invertible on the suffix");
    }
  }
}

bool PcPresentation::derive_row(std::size_t i) {
  RewriteBudget budget;
  bool row_nilpotent = true;
  bool row_trivial = true;
  for (std::size_t j = i + 1; j < n_; ++j) {
    if (!commutes_[i][j]) row_trivial = false;
    const ExpVec& c = conj_[i][j];
    if (c[j] != 1) row_nilpotent = false;
    for (std::size_t k = i + 1; k < j; ++k)
      if (c[k] != 0) row_nilpotent = false;
  }
  for (std::size_t j = i + 1; j < n_; ++j) conj_inv_[i][j] = unit(j);
  if (row_trivial) return true;
  if (row_nilpotent) {
    // phi^{-1}(g_j) = g_j * phi^{-1}(t_j)^{-1} where phi(g_j) = g_j t_j.
    for (std::size_t j = n_; j-- > i + 1;) {
      if (commutes_[i][j]) continue;
      ExpVec tail = conj_[i][j];
      tail[j] = 0;
      const ExpVec pre = apply_images(conj_inv_[i], j, tail, budget);
      conj_inv_[i][j] = multiply(unit(j), inverse(pre, budget), budget);
    }
    return true;
  }
  if (orders_[i] == 0) return false;
  // phi^{-1}(x) = w phi^{r-1}(x) w^{-1} with w = g_i^{r_i}.
  const auto images = automorphism_power(i, orders_[i] - 1, budget);
  const ExpVec w_inv = inverse(powers_[i], budget);
  for (std::size_t j = i + 1; j < n_; ++j)
    conj_inv_[i][j] = multiply(multiply(powers_[i], images[j], budget), w_inv, budget);
  return true;
}

void PcPresentation::compute_layers() {
  layer_count_ = 0;
  layer_.assign(n_, 0);
  if (!nilpotent_shape_ || n_ == 0) return;
  auto tail_of = [&](std::size_t i, std::size_t j) {
    ExpVec t = conj_[i][j];
    t[j] = 0;
    return t;
  };
  auto central_mod = [&](std::size_t j, std::size_t a) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == j) continue;
      const ExpVec t = i < j ? tail_of(i, j) : tail_of(j, i);
      for (std::size_t k = 0; k < a; ++k)
        if (t[k] != 0) return false;
    }
    return true;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // bottom-up
  std::size_t a = n_;
  while (a > 0) {
    std::size_t b = a;
    while (b > 0 && central_mod(b - 1, a)) --b;
    if (b == a) {
      layer_count_ = 0;
      return;
    }
    ranges.emplace_back(b, a);
    a = b;
  }
  layer_count_ = ranges.size();
  for (std::size_t l = 0; l < ranges.size(); ++l) {
    const std::size_t from_top = ranges.size() - 1 - l;
    for (std::size_t k = ranges[l].first; k < ranges[l].second; ++k) layer_[k] = from_top;
  }
}

void PcPresentation::check_consistency(const Options& options) const {
  RewriteBudget budget;
  auto mismatch = [&](const std::string& what) {
    throw PresentationError("presentation '" + label_ + "' is inconsistent: " + what);
  };
  // Overlaps of generator triples.
  if (n_ <= 48) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        for (std::size_t k = j + 1; k < n_; ++k) {
          const ExpVec gi = unit(i), gj = unit(j), gk = unit(k);
          if (multiply(multiply(gk, gj, budget), gi, budget) != multiply(gk, multiply(gj, gi, budget), budget))
            mismatch("overlap " + gen_name(k) + " " + gen_name(j) + " " + gen_name(i));
        }
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const ExpVec gi = unit(i);
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        const ExpVec gj = unit(j);
        if (is_finite(i)) {
          ExpVec x = identity();
          x[i] = orders_[i] - 1;
          if (multiply(multiply(gj, x, budget), gi, budget) != multiply(gj, multiply(x, gi, budget), budget))
            mismatch("power overlap " + gen_name(j) + " " + gen_name(i));
          if (multiply(multiply(x, gi, budget), gj, budget) != multiply(x, multiply(gi, gj, budget), budget))
            mismatch("power overlap " + gen_name(i) + " " + gen_name(j));
        } else {
          const ExpVec inv = inverse(gi, budget);
          if (multiply(multiply(gj, inv, budget), gi, budget) != gj)
            mismatch("inverse overlap " + gen_name(j) + " " + gen_name(i));
        }
      }
      if (is_finite(i)) {
        ExpVec x = identity();
        x[i] = orders_[i] - 1;
        if (multiply(multiply(x, gi, budget), gi, budget) != multiply(x, multiply(gi, gi, budget), budget))
          mismatch("power overlap " + gen_name(i));
      }
    }
  }
  Rng rng(options.seed, 0xC0FFEE);
  auto sample = [&]() {
    ExpVec v(n_);
    for (std::size_t k = 0; k < n_; ++k)
      v[k] = is_finite(k) ? rng.below(orders_[k]) : BigInt(rng.range(-6, 6));
    return v;
  };
  for (std::size_t t = 0; t < options.consistency_samples; ++t) {
    RewriteBudget local;
    const ExpVec x = sample(), y = sample(), z = sample();
    if (multiply(multiply(x, y, local), z, local) != multiply(x, multiply(y, z, local), local))
      mismatch("associativity fails on " + format_normal_word(x) + " / " + format_normal_word(y) + " / " +
               format_normal_word(z));
    if (t < 16 && !is_zero(multiply(x, inverse(x, local), local))) mismatch("inverse of " + format_normal_word(x));
  }
  if (poly_) {
    // Interpolated powers against plain repeated multiplication.
    for (std::size_t t = 0; t < 8; ++t) {
      RewriteBudget local;
      const ExpVec x = sample();
      std::size_t lead = 0;
      while (lead < n_ && x[lead] == 0) ++lead;
      if (lead == n_) continue;
      const std::size_t steps = depth_from(lead) + 3;
      ExpVec acc = identity();
      for (std::size_t s = 0; s < steps; ++s) multiply_into(acc, x, local);
      if (newton_power(x, lead, BigInt(steps), local) != acc) mismatch("power interpolation");
      if (newton_power(x, lead, BigInt(-1), local) != inverse(x, local)) mismatch("inverse interpolation");
    }
  }
}

void PcPresentation::check_lift(const PresentationData& data) const {
  PresentationData plain = data;
  plain.modular_lift = false;
  Options opts;
  opts.consistency_samples = 0;
  opts.allow_polynomial = false;
  const auto twin = create(std::move(plain), opts);
  Rng rng(0x11F7);
  for (int t = 0; t < 24; ++t) {
    RewriteBudget budget;
    ExpVec x(n_), y(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      x[k] = rng.below(std::min<BigInt>(orders_[k], 4));
      y[k] = rng.below(std::min<BigInt>(orders_[k], 4));
    }
    if (multiply(x, y, budget) != twin->multiply(x, y, budget) ||
        power(x, BigInt(7), budget) != twin->power(x, BigInt(7), budget))
      throw PresentationError("modular lift disagrees with direct collection");
  }
}

std::optional<BigInt> PcPresentation::group_order() const {
  if (!finite_group_) return std::nullopt;
  BigInt order = 1;
  for (const auto& r : orders_) order *= r;
  return order;
}

std::vector<std::size_t> PcPresentation::defining_generators() const {
  std::vector<std::size_t> out;
  if (!definitions_.empty()) {
    for (std::size_t i = 0; i < n_; ++i)
      if (definitions_[i].kind == DefinitionKind::kGenerator) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < n_; ++i) out.push_back(i);
  return out;
}

std::vector<FreeWord> PcPresentation::relators() const {
  std::vector<FreeWord> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!is_finite(i)) continue;
    FreeWord w = FreeWord::single(n_, i, orders_[i]);
    out.push_back(w * FreeWord::from_normal(powers_[i]).inverse());
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      FreeWord w = FreeWord::single(n_, i, -1) * FreeWord::single(n_, j, 1) * FreeWord::single(n_, i, 1);
      out.push_back(w * FreeWord::from_normal(conj_[i][j]).inverse());
    }
  }
  return out;
}

PresentationData PcPresentation::data() const {
  PresentationData d = PresentationData::with_gens(label_, n_);
  d.orders = orders_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!power_trivial_[i]) d.powers[i] = powers_[i];
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!commutes_[i][j]) d.conjugates[i][j] = conj_[i][j];
  }
  d.weights = weights_;
  d.definitions = definitions_;
  d.modular_lift = modular_lift_;
  d.relatively_free = relatively_free_;
  return d;
}

bool PcPresentation::is_normal(const ExpVec& v) const {
  if (v.size() != n_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (orders_[i] != 0 && (v[i] < 0 || v[i] >= orders_[i])) return false;
  return true;
}

ExpVec PcPresentation::unit(std::size_t i) const {
  ExpVec v(n_);
  v[i] = 1;
  return v;
}

bool PcPresentation::same_group(const PcPresentation& o) const {
  return n_ == o.n_ && orders_ == o.orders_ && powers_ == o.powers_ && conj_ == o.conj_;
}

// ---- collection ------------------------------------------------------------

void PcPresentation::multiply_generator(ExpVec& x, std::size_t i, const BigInt& e, RewriteBudget& budget) const {
  budget.tick();
  if (e == 0) return;
  bool has_suffix = false;
  for (std::size_t k = i + 1; k < n_; ++k)
    if (x[k] != 0) {
      has_suffix = true;
      break;
    }
  ExpVec s;
  if (has_suffix) {
    s.assign(n_, BigInt(0));
    for (std::size_t k = i + 1; k < n_; ++k) std::swap(s[k], x[k]);
  }
  if (orders_[i] == 0) {
    if (has_suffix) s = conjugate_by_generator_power(s, i, e, budget);
    x[i] += e;
    if (has_suffix) multiply_into(x, s, budget);
    return;
  }
  // g_i^e = g_i^t w^q with w = g_i^{r_i}, and g_i^e s^{g_i^e} = g_i^t s^{g_i^t} w^q.
  auto [q, t] = floor_divmod(e, orders_[i]);
  if (has_suffix && t != 0) s = conjugate_by_generator_power(s, i, t, budget);
  x[i] += t;
  const bool overflow = x[i] >= orders_[i];
  if (overflow) x[i] -= orders_[i];
  if (overflow && !power_trivial_[i]) multiply_into(x, powers_[i], budget);
  if (has_suffix) multiply_into(x, s, budget);
  if (q != 0 && !power_trivial_[i]) multiply_into(x, power(powers_[i], q, budget), budget);
}

void PcPresentation::multiply_into(ExpVec& x, const ExpVec& y, RewriteBudget& budget) const {
  if (&x == &y) {
    const ExpVec copy = y;
    multiply_into(x, copy, budget);
    return;
  }
  for (std::size_t k = 0; k < n_; ++k)
    if (y[k] != 0) multiply_generator(x, k, y[k], budget);
}

ExpVec PcPresentation::multiply(const ExpVec& x, const ExpVec& y, RewriteBudget& budget) const {
  ExpVec r = x;
  multiply_into(r, y, budget);
  return r;
}

ExpVec PcPresentation::inverse(const ExpVec& x, RewriteBudget& budget) const {
  ExpVec r = identity();
  for (std::size_t k = n_; k-- > 0;)
    if (x[k] != 0) multiply_generator(r, k, -x[k], budget);
  return r;
}

ExpVec PcPresentation::power(const ExpVec& x, const BigInt& k, RewriteBudget& budget) const {
  if (k == 0) return identity();
  if (k == 1) return x;
  std::size_t lead = 0;
  while (lead < n_ && x[lead] == 0) ++lead;
  if (lead == n_) return identity();
  // Single generator with nothing to carry.
  bool single = true;
  for (std::size_t j = lead + 1; j < n_; ++j)
    if (x[j] != 0) single = false;
  if (single && (orders_[lead] == 0 || power_trivial_[lead])) {
    ExpVec r = identity();
    r[lead] = orders_[lead] == 0 ? BigInt(x[lead] * k) : mod_floor(x[lead] * k, orders_[lead]);
    return r;
  }
  if (poly_) {
    const BigInt mag = k < 0 ? BigInt(-k) : k;
    if (mag > depth_from(lead) + 1) return newton_power(x, lead, k, budget);
  }
  if (k < 0) return inverse(power(x, -k, budget), budget);
  ExpVec result = identity();
  ExpVec base = x;
  BigInt e = k;
  while (true) {
    if ((e & 1) != 0) multiply_into(result, base, budget);
    e >>= 1;
    if (e == 0) break;
    base = multiply(base, base, budget);
  }
  return result;
}

ExpVec PcPresentation::newton_power(const ExpVec& z, std::size_t lead, const BigInt& k,
                                    RewriteBudget& budget) const {
  const std::size_t d = depth_from(lead);
  std::vector<ExpVec> samples;
  samples.reserve(d + 1);
  ExpVec cur = identity();
  for (std::size_t e = 0; e <= d; ++e) {
    samples.push_back(cur);
    if (e < d) multiply_into(cur, z, budget);
  }
  ExpVec out(n_);
  for (std::size_t c = lead; c < n_; ++c) {
    std::vector<BigInt> vals;
    vals.reserve(d + 1);
    for (const auto& s : samples) vals.push_back(s[c]);
    BigInt v = newton_eval(newton_coefficients(std::move(vals)), k);
    out[c] = orders_[c] != 0 ? mod_floor(v, orders_[c]) : v;
  }
  return out;
}

ExpVec PcPresentation::eval_conj_poly(std::size_t i, std::size_t j, const BigInt& e) const {
  const auto& coords = conj_poly_[i][j];
  ExpVec out(n_);
  for (std::size_t c = i + 1; c < n_; ++c) {
    BigInt v = newton_eval(coords[c], e);
    out[c] = orders_[c] != 0 ? mod_floor(v, orders_[c]) : v;
  }
  return out;
}

ExpVec PcPresentation::conjugate_by_generator_power(const ExpVec& s, std::size_t i, const BigInt& e,
                                                   RewriteBudget& budget) const {
  if (e == 0) return s;
  bool all_commute = true;
  for (std::size_t j = i + 1; j < n_; ++j)
    if (s[j] != 0 && !commutes_[i][j]) {
      all_commute = false;
      break;
    }
  if (all_commute) return s;
  if (poly_) {
    ExpVec r = identity();
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (s[j] == 0) continue;
      if (commutes_[i][j]) {
        multiply_generator(r, j, s[j], budget);
      } else {
        multiply_into(r, power(eval_conj_poly(i, j, e), s[j], budget), budget);
      }
    }
    return r;
  }
  const BigInt mag = e < 0 ? BigInt(-e) : e;
  if (mag <= 64) {
    ExpVec r = s;
    for (int t = 0; t < static_cast<int>(mag); ++t) r = apply_single(r, i, e < 0, budget);
    return r;
  }
  return apply_images(automorphism_power(i, e, budget), i, s, budget);
}

ExpVec PcPresentation::apply_single(const ExpVec& s, std::size_t i, bool inv, RewriteBudget& budget) const {
  return apply_images(inv ? conj_inv_[i] : conj_[i], i, s, budget);
}

ExpVec PcPresentation::apply_images(const std::vector<ExpVec>& images, std::size_t i, const ExpVec& s,
                                    RewriteBudget& budget) const {
  ExpVec r = identity();
  for (std::size_t j = i + 1; j < n_; ++j) {
    if (s[j] == 0) continue;
    const ExpVec& img = images[j];
    bool is_unit = img[j] == 1;
    for (std::size_t k = 0; k < n_ && is_unit; ++k)
      if (k != j && img[k] != 0) is_unit = false;
    if (is_unit) {
      multiply_generator(r, j, s[j], budget);
    } else {
      multiply_into(r, power(img, s[j], budget), budget);
    }
  }
  return r;
}

std::vector<ExpVec> PcPresentation::automorphism_power(std::size_t i, const BigInt& e, RewriteBudget& budget) const {
  std::vector<ExpVec> result(n_);
  for (std::size_t j = i + 1; j < n_; ++j) result[j] = unit(j);
  std::vector<ExpVec> base = e < 0 ? conj_inv_[i] : conj_[i];
  BigInt k = e < 0 ? BigInt(-e) : e;
  while (k > 0) {
    if ((k & 1) != 0)
      for (std::size_t j = i + 1; j < n_; ++j) result[j] = apply_images(base, i, result[j], budget);
    k >>= 1;
    if (k == 0) break;
    std::vector<ExpVec> sq(n_);
    for (std::size_t j = i + 1; j < n_; ++j) sq[j] = apply_images(base, i, base[j], budget);
    base = std::move(sq);
  }
  return result;
}

// ---- text ------------------------------------------------------------------

std::string format_normal_word(const ExpVec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "g" + std::to_string(k + 1) + "^" + v[k].str();
  }
  return out.empty() ? "1" : out;
}

ExpVec parse_normal_word(const std::string& text, std::size_t ngens) {
  ExpVec v(ngens);
  std::istringstream in(text);
  std::string atom;
  std::size_t last = 0;
  bool any = false;
  while (in >> atom) {
    if (atom == "1") continue;
    if (atom.size() < 2 || atom[0] != 'g' || !std::isdigit(static_cast<unsigned char>(atom[1])))
      throw ParseError("bad normal-word atom '" + atom + "'");
    std::size_t pos = 1;
    while (pos < atom.size() && std::isdigit(static_cast<unsigned char>(atom[pos]))) ++pos;
    const std::size_t k = std::stoul(atom.substr(1, pos - 1));
    BigInt e = 1;
    if (pos < atom.size()) {
      if (atom[pos] != '^' || pos + 1 == atom.size()) throw ParseError("bad normal-word atom '" + atom + "'");
      const std::string num = atom.substr(pos + 1);
      const std::size_t start = num[0] == '-' ? 1 : 0;
      if (start == num.size() || !std::all_of(num.begin() + start, num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad exponent in '" + atom + "'");
      e = BigInt(num);
    }
    if (k < 1 || k > ngens) throw ParseError("generator index out of range in '" + atom + "'");
    if (any && k <= last) throw ParseError("normal word indices must ascend: '" + text + "'");
    any = true;
    last = k;
    v[k - 1] = e;
  }
  return v;
}

}  // namespace engel
