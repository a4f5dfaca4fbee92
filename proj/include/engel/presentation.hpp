#pragma once

#include "engel/bigint.hpp"
#include "engel/error.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace engel {

class FreeWord;

// How a pc generator arises from earlier ones; drives homomorphism extension.
enum class DefinitionKind { kNone, kGenerator, kCommutator, kPower };

struct Definition {
  DefinitionKind kind = DefinitionKind::kNone;
  std::size_t a = 0;  // kCommutator: g = [g_a, g_b]; kPower: g = g_a^{r_a}
  std::size_t b = 0;

  static Definition generator() { return {DefinitionKind::kGenerator, 0, 0}; }
  static Definition commutator(std::size_t a, std::size_t b) { return {DefinitionKind::kCommutator, a, b}; }
  static Definition power(std::size_t a) { return {DefinitionKind::kPower, a, 0}; }
  friend bool operator==(const Definition&, const Definition&) = default;
};

// Raw relation data. Indices are 0-based; orders use 0 for "infinite".
struct PresentationData {
  std::string label;
  std::size_t ngens = 0;
  std::vector<BigInt> orders;
  // powers[i]: normal form of g_i^{r_i}; empty means trivial.
  std::vector<ExpVec> powers;
  // conjugates[i][j], i < j: normal form of g_j^{g_i}; empty means g_j.
  std::vector<std::vector<ExpVec>> conjugates;
  std::vector<int> weights;
  std::vector<Definition> definitions;
  // Coordinate-wise reduction of a torsion-free lift with the same tails.
  bool modular_lift = false;
  // Relatively free in its variety: any generator assignment into the variety extends.
  bool relatively_free = false;

  static PresentationData with_gens(std::string label, std::size_t n);
};

// Per-call rewrite-step budget of the collector.
class RewriteBudget {
 public:
  static constexpr std::uint64_t kDefaultLimit = 10'000'000;
  explicit RewriteBudget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_) throw BudgetExceeded("collection rewrite budget exceeded");
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

// A consistent polycyclic presentation. Immutable after construction; shared
// by handle between elements, homomorphisms and protocol parties.
class PcPresentation {
 public:
  struct Options {
    std::size_t consistency_samples = 1000;
    std::uint64_t seed = 0x5eedULL;
    bool allow_polynomial = true;
  };

  static std::shared_ptr<const PcPresentation> create(PresentationData data);
  static std::shared_ptr<const PcPresentation> create(PresentationData data, const Options& options);

  std::size_t ngens() const { return n_; }
  const std::string& label() const { return label_; }
  const BigInt& relative_order(std::size_t i) const { return orders_[i]; }
  bool is_finite(std::size_t i) const { return orders_[i] != 0; }
  bool is_finite_group() const { return finite_group_; }
  // Product of relative orders; nullopt for infinite groups.
  std::optional<BigInt> group_order() const;

  const ExpVec& power_word(std::size_t i) const { return powers_[i]; }
  bool power_trivial(std::size_t i) const { return power_trivial_[i]; }
  const ExpVec& conjugate(std::size_t i, std::size_t j) const { return conj_[i][j]; }
  const ExpVec& conjugate_inverse(std::size_t i, std::size_t j) const { return conj_inv_[i][j]; }
  bool commutes(std::size_t i, std::size_t j) const { return commutes_[i][j]; }

  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Definition>& definitions() const { return definitions_; }
  std::vector<std::size_t> defining_generators() const;

  // Every conjugate has the form g_j * (word in g_{j+1..n}).
  bool nilpotent_shape() const { return nilpotent_shape_; }
  bool polynomial_mode() const { return poly_; }
  bool modular_lift() const { return modular_lift_; }
  bool relatively_free() const { return relatively_free_; }
  // Greedy central layers (nilpotent shape only); the count bounds the class.
  std::size_t layer_count() const { return layer_count_; }
  std::size_t layer(std::size_t i) const { return layer_[i]; }

  // Relators of the pc presentation as free words over the pc generators.
  std::vector<FreeWord> relators() const;

  PresentationData data() const;

  bool is_normal(const ExpVec& v) const;
  ExpVec identity() const { return ExpVec(n_); }
  ExpVec unit(std::size_t i) const;

  // Collection primitives on exponent vectors.
  void multiply_generator(ExpVec& x, std::size_t i, const BigInt& e, RewriteBudget& budget) const;
  void multiply_into(ExpVec& x, const ExpVec& y, RewriteBudget& budget) const;
  ExpVec multiply(const ExpVec& x, const ExpVec& y, RewriteBudget& budget) const;
  ExpVec inverse(const ExpVec& x, RewriteBudget& budget) const;
  ExpVec power(const ExpVec& x, const BigInt& k, RewriteBudget& budget) const;
  ExpVec conjugate_by_generator_power(const ExpVec& s, std::size_t i, const BigInt& e,
                                      RewriteBudget& budget) const;

  // Structural equality of the relation data.
  bool same_group(const PcPresentation& other) const;

 private:
  PcPresentation() = default;

  void validate_and_load(PresentationData&& data);
  void analyse_shape();
  void derive_rows();
  bool derive_row(std::size_t i);
  void compute_layers();
  void check_consistency(const Options& options) const;
  void check_lift(const PresentationData& data) const;

  ExpVec apply_single(const ExpVec& s, std::size_t i, bool inverse, RewriteBudget& budget) const;
  ExpVec apply_images(const std::vector<ExpVec>& images, std::size_t i, const ExpVec& s,
                      RewriteBudget& budget) const;
  std::vector<ExpVec> automorphism_power(std::size_t i, const BigInt& e, RewriteBudget& budget) const;
  ExpVec eval_conj_poly(std::size_t i, std::size_t j, const BigInt& e) const;
  ExpVec newton_power(const ExpVec& z, std::size_t lead, const BigInt& k, RewriteBudget& budget) const;
  std::size_t depth_from(std::size_t i) const { return layer_count_ - layer_[i]; }

  std::size_t n_ = 0;
  std::string label_;
  std::vector<BigInt> orders_;
  std::vector<ExpVec> powers_;
  std::vector<ExpVec> powers_inv_;
  std::vector<bool> power_trivial_;
  std::vector<std::vector<ExpVec>> conj_;
  std::vector<std::vector<ExpVec>> conj_inv_;
  std::vector<std::vector<bool>> commutes_;
  std::vector<int> weights_;
  std::vector<Definition> definitions_;
  bool finite_group_ = true;
  bool nilpotent_shape_ = true;
  bool modular_lift_ = false;
  bool relatively_free_ = false;
  bool poly_ = false;
  std::size_t layer_count_ = 0;
  std::vector<std::size_t> layer_;
  // conj_poly_[i][j][c][m]: Newton coefficient m of coordinate c of g_j^{g_i^e}.
  std::vector<std::vector<std::vector<std::vector<BigInt>>>> conj_poly_;
};

using PresentationPtr = std::shared_ptr<const PcPresentation>;

// Normal word text: whitespace-separated g<k>^<int> atoms, 1-based, ascending.
std::string format_normal_word(const ExpVec& v);
ExpVec parse_normal_word(const std::string& text, std::size_t ngens);

}  // namespace engel
