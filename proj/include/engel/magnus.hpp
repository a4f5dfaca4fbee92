#pragma once

#include "engel/bigint.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace engel {

// Truncated free associative algebra Z<X_1..X_m> / (degree > c). The map
// a_i -> 1 + X_i embeds the free nilpotent group F_m / gamma_{c+1}.
class MagnusSeries {
 public:
  using Monomial = std::vector<std::uint8_t>;

  MagnusSeries(std::size_t rank, unsigned degree) : rank_(rank), degree_(degree) {}

  static MagnusSeries one(std::size_t rank, unsigned degree) {
    MagnusSeries s(rank, degree);
    s.terms_[{}] = 1;
    return s;
  }
  static MagnusSeries generator(std::size_t rank, unsigned degree, std::size_t i) {
    MagnusSeries s = one(rank, degree);
    if (degree >= 1) s.terms_[{static_cast<std::uint8_t>(i)}] = 1;
    return s;
  }

  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  std::size_t rank() const { return rank_; }
  unsigned degree() const { return degree_; }

  BigInt coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  MagnusSeries operator*(const MagnusSeries& o) const {
    MagnusSeries r(rank_, degree_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        if (ma.size() + mb.size() > degree_) continue;
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        r.add(m, ca * cb);
      }
    }
    return r;
  }

  MagnusSeries operator-(const MagnusSeries& o) const {
    MagnusSeries r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, -c);
    return r;
  }

  // (1 + u)^{-1} = sum_k (-u)^k, valid when the constant term is 1.
  MagnusSeries inverse() const {
    MagnusSeries u = *this - one(rank_, degree_);
    MagnusSeries neg_u(rank_, degree_);
    for (const auto& [m, c] : u.terms_) neg_u.add(m, -c);
    MagnusSeries result = one(rank_, degree_);
    MagnusSeries term = one(rank_, degree_);
    for (unsigned k = 1; k <= degree_; ++k) {
      term = term * neg_u;
      for (const auto& [m, c] : term.terms_) result.add(m, c);
    }
    return result;
  }

  MagnusSeries pow(BigInt k) const {
    MagnusSeries base = k < 0 ? inverse() : *this;
    if (k < 0) k = -k;
    MagnusSeries r = one(rank_, degree_);
    while (k > 0) {
      if ((k & 1) != 0) r = r * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return r;
  }

  // Homogeneous part of the given degree.
  std::map<Monomial, BigInt> homogeneous(unsigned d) const {
    std::map<Monomial, BigInt> out;
    for (const auto& [m, c] : terms_)
      if (m.size() == d) out.emplace(m, c);
    return out;
  }

  friend bool operator==(const MagnusSeries& a, const MagnusSeries& b) { return a.terms_ == b.terms_; }

 private:
  void add(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t rank_;
  unsigned degree_;
  std::map<Monomial, BigInt> terms_;
};

inline MagnusSeries magnus_commutator(const MagnusSeries& x, const MagnusSeries& y) {
  return x.inverse() * y.inverse() * x * y;
}

}  // namespace engel
