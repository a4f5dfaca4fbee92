#include "engel/bigint.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

#include <stdexcept>

namespace engel {

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  boost::random::mt19937 gen(0x9e3779b9u);
  return boost::multiprecision::miller_rabin_test(n, 32, gen);
}

std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n) {
  std::vector<std::pair<BigInt, unsigned>> out;
  if (n < 1) throw std::invalid_argument("factorize needs a positive integer");
  auto take = [&](const BigInt& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  take(2);
  for (BigInt p = 3; p * p <= n; p += 2) {
    if (p > (BigInt(1) << 24)) break;
    take(p);
  }
  if (n == 1) return out;
  if (is_probable_prime(n)) {
    out.emplace_back(n, 1);
    return out;
  }
  const BigInt root = boost::multiprecision::sqrt(n);
  if (root * root == n && is_probable_prime(root)) {
    out.emplace_back(root, 2);
    return out;
  }
  throw std::invalid_argument("cannot factor " + n.str() + " by trial division");
}

}  // namespace engel
