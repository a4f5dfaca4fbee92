#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace engel {

using BigInt = boost::multiprecision::cpp_int;

// Exponent vector of a normal word g_1^e_1 ... g_n^e_n (0-based indices).
using ExpVec = std::vector<BigInt>;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Floor division: a = q*b + r with 0 <= r < |b| for b > 0.
inline std::pair<BigInt, BigInt> floor_divmod(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r < 0) {
    r += b;
    q -= 1;
  }
  return {std::move(q), std::move(r)};
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Generalized binomial coefficient C(k, m) for any integer k and m >= 0.
inline BigInt binomial(const BigInt& k, unsigned m) {
  BigInt num = 1;
  BigInt den = 1;
  for (unsigned t = 0; t < m; ++t) {
    num *= (k - t);
    den *= (t + 1);
  }
  return num / den;
}

inline BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

// Inverse of a modulo m, assuming gcd(a, m) == 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod_floor(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = std::move(r);
    r = std::move(t);
    t = old_s - q * s;
    old_s = std::move(s);
    s = std::move(t);
  }
  return mod_floor(old_s, m);
}

inline BigInt pow_mod(BigInt base, BigInt exp, const BigInt& m) {
  BigInt result = 1;
  base = mod_floor(base, m);
  while (exp > 0) {
    if ((exp & 1) != 0) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return result % m;
}

bool is_probable_prime(const BigInt& n);

// Prime factorisation by trial division; intended for group orders built
// from small relative orders (p, p^2 with p < 2^32).
std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n);

inline std::size_t hash_value(const BigInt& v) {
  const BigInt mag = v < 0 ? BigInt(-v) : v;
  const auto low = static_cast<std::uint64_t>(mag & BigInt(UINT64_MAX));
  return std::hash<std::uint64_t>{}(low) ^ (v < 0 ? 0x9E3779B97F4A7C15ull : 0u);
}

struct ExpVecHash {
  std::size_t operator()(const ExpVec& v) const noexcept {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 1000003u ^ hash_value(x);
    return h;
  }
};

}  // namespace engel
