#pragma once

#include "engel/bigint.hpp"
#include "engel/presentation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace engel {

struct Letter {
  std::size_t gen = 0;  // 0-based generator index
  BigInt exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Unreduced word in the generators and their inverses.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::size_t alphabet) : alphabet_(alphabet) {}
  FreeWord(std::size_t alphabet, std::vector<Letter> letters);

  static FreeWord single(std::size_t alphabet, std::size_t gen, const BigInt& exp = 1);
  // Letters g_1^{v_1} ... g_n^{v_n} of a normal form.
  static FreeWord from_normal(const ExpVec& v);

  // Accepts "g3^-2 g1", letters "a b^2 A" (uppercase inverts), "1" and "" for the identity.
  static FreeWord parse(const std::string& text, std::size_t alphabet);

  std::size_t alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  // Sum of |exponents|.
  BigInt length() const;

  void append(std::size_t gen, const BigInt& exp);
  FreeWord operator*(const FreeWord& other) const;
  FreeWord inverse() const;
  FreeWord conjugated_by(const FreeWord& u) const;  // u w u^{-1}
  FreeWord free_reduced() const;

  std::string to_string() const;
  // Letter form a, b, A = a^-1; only for alphabets of size <= 26.
  std::string to_letters() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  std::size_t alphabet_ = 0;
  std::vector<Letter> letters_;
};

// Normal form bound to its presentation.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(PresentationPtr p, ExpVec exps);

  static GroupElement identity(PresentationPtr p);
  static GroupElement generator(PresentationPtr p, std::size_t i, const BigInt& e = 1);

  const PresentationPtr& presentation() const { return p_; }
  const ExpVec& exponents() const { return v_; }
  const BigInt& operator[](std::size_t i) const { return v_[i]; }
  std::size_t ngens() const { return v_.size(); }
  bool is_identity() const;

  std::string to_string() const { return format_normal_word(v_); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.v_ == b.v_; }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.v_ < b.v_; }

 private:
  PresentationPtr p_;
  ExpVec v_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& x) const noexcept { return ExpVecHash{}(x.exponents()); }
};

}  // namespace engel
