#pragma once

#include "engel/element.hpp"
#include "engel/rng.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace engel {

GroupElement collect(const PresentationPtr& p, const FreeWord& w,
                     std::uint64_t budget = RewriteBudget::kDefaultLimit);
GroupElement multiply(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);
GroupElement power(const GroupElement& x, const BigInt& k);
GroupElement conjugate(const GroupElement& x, const GroupElement& y);  // y^{-1} x y
GroupElement commutator(const GroupElement& x, const GroupElement& y);
// Left-normed [x_1, ..., x_k].
GroupElement commutator(const std::vector<GroupElement>& xs);
// [x, y, ..., y] with n copies of y.
GroupElement engel_commutator(const GroupElement& x, const GroupElement& y, unsigned n);

inline GroupElement operator*(const GroupElement& x, const GroupElement& y) { return multiply(x, y); }

// Either a positive integer or infinity.
struct ElementOrder {
  std::optional<BigInt> value;
  bool infinite() const { return !value.has_value(); }
  std::string to_string() const { return value ? value->str() : "inf"; }
  friend bool operator==(const ElementOrder&, const ElementOrder&) = default;
};
ElementOrder element_order(const GroupElement& x);

// Odometer over all normal forms, last coordinate fastest.
class ElementEnumerator {
 public:
  explicit ElementEnumerator(PresentationPtr p);
  bool done() const { return done_; }
  GroupElement current() const { return GroupElement(p_, cur_); }
  const ExpVec& current_exponents() const { return cur_; }
  void next();

 private:
  PresentationPtr p_;
  ExpVec cur_;
  bool done_ = false;
};

std::vector<GroupElement> enumerate_elements(const PresentationPtr& p);

// Uniform over the normal forms of a finite group.
GroupElement random_element(const PresentationPtr& p, Rng& rng);
// Coordinates uniform in [-bound, bound] on infinite generators, uniform on finite ones.
GroupElement random_element_bounded(const PresentationPtr& p, Rng& rng, const BigInt& bound);

struct GrowthBall {
  std::vector<std::size_t> sphere_sizes;  // |S(0)|, ..., |S(n)|
  std::size_t count = 0;                  // gamma(n)
  std::vector<GroupElement> elements;     // BFS order, when requested
};
GrowthBall growth_ball(const PresentationPtr& p, const std::vector<GroupElement>& gens, unsigned radius,
                       bool keep_elements = false, std::size_t memory_budget = 5'000'000);

// Dense multiplication and inverse tables for a small finite group; elements
// are indexed by their odometer rank.
class ElementTable {
 public:
  static constexpr std::size_t kMaxOrder = 1u << 17;

  explicit ElementTable(PresentationPtr p);
  static bool fits(const PcPresentation& p);

  std::size_t size() const { return elements_.size(); }
  const PresentationPtr& presentation() const { return p_; }
  const GroupElement& element(std::size_t k) const { return elements_[k]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t index_of(const ExpVec& v) const;
  std::size_t index_of(const GroupElement& x) const { return index_of(x.exponents()); }

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t identity() const { return 0; }
  std::size_t pow(std::size_t a, std::int64_t k) const;
  std::size_t comm(std::size_t a, std::size_t b) const { return mul(mul(inverse_[a], inverse_[b]), mul(a, b)); }
  std::size_t order(std::size_t a) const;

 private:
  PresentationPtr p_;
  std::vector<GroupElement> elements_;
  std::vector<std::uint32_t> radix_;   // per-coordinate relative orders
  std::vector<std::size_t> stride_;
  std::vector<std::uint32_t> right_gen_;  // right_gen_[a * n + i] = a * g_i
  std::vector<std::uint32_t> inverse_;
};

}  // namespace engel
