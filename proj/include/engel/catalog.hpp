#pragma once

#include "engel/group.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace engel {

// F_m / gamma_{c+1}(F_m) on a basic-commutator basis: a_i; [a_i, a_j] (i < j);
// [[a_i, a_j], a_k] (i < j, k >= i).
PresentationPtr build_free_nilpotent(std::size_t m, unsigned c);
// Same basis and tails with every relative order q; q = p or p^2, p prime, p > c.
PresentationPtr build_exponent_quotient(std::size_t m, unsigned c, const BigInt& q);
// B(m, 3) on a_i, c_ij = [a_i, a_j], d_ijk = [c_ij, a_k] (i < j < k).
PresentationPtr build_burnside3(std::size_t m);
// S3, Q8, D8, D16, D32, C3wrC3, heisenberg, C:k.
PresentationPtr build_classic(const std::string& name);

// Any catalog name; falls back to <name>.pc in $ENGEL_CATALOG_DIR. Memoized.
PresentationPtr catalog_by_name(const std::string& name);
std::vector<std::string> catalog_examples();

// Homomorphism given by one image per source pc generator.
class GroupHom {
 public:
  GroupHom(PresentationPtr source, PresentationPtr target, std::vector<GroupElement> images);

  const PresentationPtr& source() const { return source_; }
  const PresentationPtr& target() const { return target_; }
  const std::vector<GroupElement>& images() const { return images_; }
  bool relatively_free() const { return source_->relatively_free(); }
  bool is_endomorphism() const { return source_->same_group(*target_); }

  GroupElement apply(const GroupElement& x) const;
  GroupElement apply(const FreeWord& w) const;
  // (*this) o inner
  GroupHom compose(const GroupHom& inner) const;
  GroupHom power(BigInt k) const;

  friend bool operator==(const GroupHom& a, const GroupHom& b) { return a.images_ == b.images_; }

 private:
  struct Unchecked {};
  GroupHom(PresentationPtr source, PresentationPtr target, std::vector<GroupElement> images, Unchecked);

  PresentationPtr source_;
  PresentationPtr target_;
  std::vector<GroupElement> images_;
};

// Images of the defining generators, extended through the generator definitions.
GroupHom build_hom(const PresentationPtr& source, const PresentationPtr& target,
                   const std::vector<GroupElement>& generator_images);
GroupHom identity_hom(const PresentationPtr& p);
inline GroupElement hom_apply(const GroupHom& phi, const GroupElement& x) { return phi.apply(x); }

struct Invertibility {
  bool invertible = false;
  std::optional<GroupHom> inverse;
  std::string method;  // "abelianization" or "exhaustive"
};
Invertibility hom_is_invertible(const GroupHom& phi);

// (g, phi^r) in G x| <phi>.
struct HolomorphElement {
  GroupElement g;
  BigInt r;
  std::shared_ptr<const GroupHom> phi;
};

HolomorphElement holomorph_mul(const HolomorphElement& u, const HolomorphElement& v);
HolomorphElement holomorph_pow(const HolomorphElement& u, const BigInt& m);

}  // namespace engel
