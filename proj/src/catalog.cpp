#include "engel/catalog.hpp"

#include "engel/io.hpp"
#include "engel/magnus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace engel {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<Rational>>;

PcPresentation::Options catalog_options() {
  PcPresentation::Options o;
  o.consistency_samples = 10000;
  return o;
}

// Solve A x = b exactly (A given column-wise); nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_exact(Matrix cols, std::vector<Rational> rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t k = cols.size();
  Matrix a(rows, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = cols[c][r];
    a[r][k] = rhs[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[row][c];
      for (std::size_t cc = c; cc <= k; ++cc) a[r][cc] -= f * a[row][cc];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (a[r][k] != 0) return std::nullopt;
  std::vector<Rational> x(k);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = a[r][k] / a[r][pivot_col[r]];
  return x;
}

struct BasisElement {
  unsigned weight;
  Definition def;
  MagnusSeries series;
};

struct FreeNilpotentBasis {
  std::size_t m;
  unsigned c;
  std::vector<BasisElement> basis;
  // Normal form of a group element given by its Magnus series.
  ExpVec decompose(const MagnusSeries& g) const;
};

FreeNilpotentBasis make_basis(std::size_t m, unsigned c) {
  FreeNilpotentBasis fb{m, c, {}};
  for (std::size_t i = 0; i < m; ++i)
    fb.basis.push_back({1, Definition::generator(), MagnusSeries::generator(m, c, i)});
  if (c >= 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        fb.basis.push_back({2, Definition::commutator(i, j),
                            magnus_commutator(fb.basis[i].series, fb.basis[j].series)});
  }
  if (c >= 3) {
    const std::size_t n2 = fb.basis.size();
    for (std::size_t idx = m; idx < n2; ++idx) {
      const std::size_t i = fb.basis[idx].def.a;
      for (std::size_t k = i; k < m; ++k)
        fb.basis.push_back({3, Definition::commutator(idx, k),
                            magnus_commutator(fb.basis[idx].series, fb.basis[k].series)});
    }
  }
  return fb;
}

ExpVec FreeNilpotentBasis::decompose(const MagnusSeries& g) const {
  const std::size_t n = basis.size();
  ExpVec out(n);
  MagnusSeries h = g;
  for (unsigned w = 1; w <= c; ++w) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
      if (basis[k].weight == w) idx.push_back(k);
    const auto target = h.homogeneous(w);
    if (idx.empty()) {
      if (!target.empty()) throw Error("Magnus decomposition: no basis in weight " + std::to_string(w));
      continue;
    }
    std::map<MagnusSeries::Monomial, std::size_t> row_of;
    std::vector<std::map<MagnusSeries::Monomial, BigInt>> lies;
    for (std::size_t k : idx) {
      lies.push_back(basis[k].series.homogeneous(w));
      for (const auto& [mono, coef] : lies.back()) row_of.emplace(mono, row_of.size());
    }
    for (const auto& [mono, coef] : target)
      if (!row_of.count(mono)) throw Error("Magnus decomposition: element outside the basis span");
    Matrix cols(idx.size(), std::vector<Rational>(row_of.size()));
    for (std::size_t t = 0; t < idx.size(); ++t)
      for (const auto& [mono, coef] : lies[t]) cols[t][row_of[mono]] = Rational(coef);
    std::vector<Rational> rhs(row_of.size());
    for (const auto& [mono, coef] : target) rhs[row_of[mono]] = Rational(coef);
    const auto sol = solve_exact(cols, rhs);
    if (!sol) throw Error("Magnus decomposition: inconsistent leading term");
    MagnusSeries layer = MagnusSeries::one(m, c);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const Rational& e = (*sol)[t];
      if (boost::multiprecision::denominator(e) != 1) throw Error("Magnus decomposition: non-integral exponent");
      out[idx[t]] = boost::multiprecision::numerator(e);
      layer = layer * basis[idx[t]].series.pow(out[idx[t]]);
    }
    h = layer.inverse() * h;
  }
  if (!(h == MagnusSeries::one(m, c))) throw Error("Magnus decomposition left a remainder");
  return out;
}

PresentationData free_nilpotent_data(std::size_t m, unsigned c) {
  if (m < 1) throw InvalidArgument("rank must be >= 1");
  if (c < 1 || c > 3) throw InvalidArgument("nilpotency class must be 1, 2 or 3");
  const auto fb = make_basis(m, c);
  const std::size_t n = fb.basis.size();
  auto d = PresentationData::with_gens("freenil:" + std::to_string(m) + ":" + std::to_string(c), n);
  for (std::size_t k = 0; k < n; ++k) {
    d.weights.push_back(static_cast<int>(fb.basis[k].weight));
    d.definitions.push_back(fb.basis[k].def);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const MagnusSeries bi_inv = fb.basis[i].series.inverse();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (fb.basis[i].weight + fb.basis[j].weight > c) continue;
      const ExpVec conj = fb.decompose(bi_inv * fb.basis[j].series * fb.basis[i].series);
      ExpVec unit(n);
      unit[j] = 1;
      if (conj != unit) d.conjugates[i][j] = conj;
    }
  }
  d.relatively_free = true;
  return d;
}

PresentationPtr make_cyclic(const BigInt& k) {
  if (k < 2) throw InvalidArgument("cyclic group order must be >= 2");
  auto d = PresentationData::with_gens("C:" + k.str(), 1);
  d.orders = {k};
  d.definitions = {Definition::generator()};
  return PcPresentation::create(d, catalog_options());
}

PresentationPtr make_dihedral(unsigned log_order) {
  // s, r, r^2, ..., r^{2^{k-2}}
  const std::size_t n = log_order;
  auto d = PresentationData::with_gens("D" + std::to_string(1u << log_order), n);
  d.orders.assign(n, 2);
  d.definitions.assign(n, Definition{});
  d.definitions[0] = Definition::generator();
  d.definitions[1] = Definition::generator();
  for (std::size_t j = 1; j < n; ++j) {
    if (j + 1 < n) {
      d.powers[j] = ExpVec(n);
      d.powers[j][j + 1] = 1;
      d.definitions[j + 1] = Definition::power(j);
    }
    ExpVec inv(n);
    for (std::size_t k = j; k < n; ++k) inv[k] = 1;
    if (j + 1 < n) d.conjugates[0][j] = inv;
  }
  return PcPresentation::create(d, catalog_options());
}

}  // namespace

PresentationPtr build_free_nilpotent(std::size_t m, unsigned c) {
  return PcPresentation::create(free_nilpotent_data(m, c), catalog_options());
}

PresentationPtr build_exponent_quotient(std::size_t m, unsigned c, const BigInt& q) {
  if (q < 2) throw InvalidArgument("modulus must be p or p^2");
  BigInt p = q;
  if (!is_probable_prime(q)) {
    p = boost::multiprecision::sqrt(q);
    if (p * p != q || !is_probable_prime(p)) throw InvalidArgument("modulus must be p or p^2 for a prime p");
  }
  if (p <= c) throw InvalidArgument("prime must exceed the nilpotency class");
  auto d = free_nilpotent_data(m, c);
  d.label = "expquot:" + std::to_string(m) + ":" + std::to_string(c) + ":" + q.str();
  d.orders.assign(d.ngens, q);
  for (auto& row : d.conjugates)
    for (auto& w : row)
      for (auto& e : w) e = mod_floor(e, q);
  d.modular_lift = true;
  return PcPresentation::create(d, catalog_options());
}

PresentationPtr build_burnside3(std::size_t m) {
  if (m < 1 || m > 4) throw InvalidArgument("B(m,3) is built for 1 <= m <= 4");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) triples.push_back({i, j, k});
  const std::size_t n = m + pairs.size() + triples.size();
  auto pair_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t t = 0; t < pairs.size(); ++t)
      if (pairs[t] == std::make_pair(i, j)) return m + t;
    throw Error("bad pair");
  };
  auto d = PresentationData::with_gens("burnside3:" + std::to_string(m), n);
  d.orders.assign(n, 3);
  for (std::size_t i = 0; i < m; ++i) {
    d.weights.push_back(1);
    d.definitions.push_back(Definition::generator());
  }
  for (const auto& [i, j] : pairs) {
    d.weights.push_back(2);
    d.definitions.push_back(Definition::commutator(i, j));
    // a_j^{a_i} = a_j [a_j, a_i] = a_j c_ij^{-1}
    ExpVec w(n);
    w[j] = 1;
    w[pair_index(i, j)] = 2;
    d.conjugates[i][j] = w;
  }
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [i, j, k] = triples[t];
    d.weights.push_back(3);
    d.definitions.push_back(Definition::commutator(pair_index(i, j), k));
  }
  // [c_xy, a_z] is alternating in (x, y, z) in exponent 3.
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [i, j, k] = triples[t];
    const std::size_t dix = m + pairs.size() + t;
    const std::array<std::array<std::size_t, 3>, 3> rotations = {{{i, j, k}, {j, k, i}, {i, k, j}}};
    for (int r = 0; r < 3; ++r) {
      auto [x, y, z] = rotations[r];
      // (j,k,i) is an even permutation, (i,k,j) odd.
      const int sign = r == 2 ? -1 : 1;
      if (x > y) std::swap(x, y);
      const std::size_t cidx = pair_index(x, y);
      ExpVec w(n);
      w[cidx] = 1;
      w[dix] = sign == 1 ? 1 : 2;
      d.conjugates[z][cidx] = w;
    }
  }
  d.relatively_free = true;
  return PcPresentation::create(d, catalog_options());
}

PresentationPtr build_classic(const std::string& name) {
  if (name == "S3") {
    auto d = PresentationData::with_gens("S3", 2);
    d.orders = {2, 3};
    d.conjugates[0][1] = {0, 2};
    d.definitions = {Definition::generator(), Definition::generator()};
    return PcPresentation::create(d, catalog_options());
  }
  if (name == "Q8") {
    auto d = PresentationData::with_gens("Q8", 3);
    d.orders = {2, 2, 2};
    d.powers[0] = {0, 0, 1};
    d.powers[1] = {0, 0, 1};
    d.conjugates[0][1] = {0, 1, 1};
    d.definitions = {Definition::generator(), Definition::generator(), Definition::power(0)};
    return PcPresentation::create(d, catalog_options());
  }
  if (name == "D8") return make_dihedral(3);
  if (name == "D16") return make_dihedral(4);
  if (name == "D32") return make_dihedral(5);
  if (name == "C3wrC3") {
    auto d = PresentationData::with_gens("C3wrC3", 4);
    d.orders = {3, 3, 3, 3};
    d.conjugates[0][1] = {0, 1, 1, 0};
    d.conjugates[0][2] = {0, 0, 1, 1};
    d.definitions = {Definition::generator(), Definition::generator(), Definition::commutator(1, 0),
                     Definition::commutator(2, 0)};
    d.weights = {1, 1, 2, 3};
    return PcPresentation::create(d, catalog_options());
  }
  if (name == "heisenberg") {
    auto d = free_nilpotent_data(2, 2);
    d.label = "heisenberg";
    return PcPresentation::create(d, catalog_options());
  }
  if (name.rfind("C:", 0) == 0) return make_cyclic(BigInt(name.substr(2)));
  throw InvalidArgument("unknown classic group '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

unsigned to_uint(const std::string& s, const std::string& name) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("bad number '" + s + "' in group name '" + name + "'");
  return static_cast<unsigned>(std::stoul(s));
}

PresentationPtr build_by_name(const std::string& name) {
  const auto parts = split(name, ':');
  const std::string& head = parts.empty() ? name : parts[0];
  if (head == "burnside3" && parts.size() == 2) return build_burnside3(to_uint(parts[1], name));
  if (head == "freenil" && parts.size() == 3) return build_free_nilpotent(to_uint(parts[1], name), to_uint(parts[2], name));
  if (head == "expquot" && parts.size() == 4) {
    to_uint(parts[3], name);
    return build_exponent_quotient(to_uint(parts[1], name), to_uint(parts[2], name), BigInt(parts[3]));
  }
  if (head == "C" && parts.size() == 2) {
    to_uint(parts[1], name);
    return make_cyclic(BigInt(parts[1]));
  }
  static const std::vector<std::string> classics = {"S3", "Q8", "D8", "D16", "D32", "C3wrC3", "heisenberg"};
  for (const auto& c : classics)
    if (name == c) return build_classic(name);
  if (const char* dir = std::getenv("ENGEL_CATALOG_DIR")) {
    const auto path = std::filesystem::path(dir) / (name + ".pc");
    if (std::filesystem::exists(path)) {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      return parse_presentation(buf.str());
    }
  }
  throw InvalidArgument("unknown group name '" + name + "'");
}

}  // namespace

PresentationPtr catalog_by_name(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, PresentationPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
  }
  PresentationPtr p = build_by_name(name);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(name, p).first->second;
}

std::vector<std::string> catalog_examples() {
  return {"burnside3:1", "burnside3:2", "burnside3:3", "burnside3:4", "freenil:2:2", "freenil:2:3",
          "freenil:3:2", "expquot:2:2:25", "expquot:2:3:25", "expquot:2:2:1018081", "heisenberg",
          "S3", "Q8", "D8", "D16", "D32", "C3wrC3", "C:101"};
}

// ---- homomorphisms -------------------------------------------------------------

GroupHom::GroupHom(PresentationPtr source, PresentationPtr target, std::vector<GroupElement> images, Unchecked)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

GroupHom::GroupHom(PresentationPtr source, PresentationPtr target, std::vector<GroupElement> images)
    : GroupHom(std::move(source), std::move(target), std::move(images), Unchecked{}) {
  if (images_.size() != source_->ngens())
    throw InvalidArgument("homomorphism needs one image per source generator");
  for (const auto& im : images_)
    if (im.presentation() != target_ && !im.presentation()->same_group(*target_))
      throw InvalidArgument("image outside the target group");
  for (const auto& rel : source_->relators())
    if (!apply(rel).is_identity()) throw InvalidArgument("generator images violate relator " + rel.to_string());
}

GroupElement GroupHom::apply(const GroupElement& x) const {
  if (x.presentation() != source_ && !x.presentation()->same_group(*source_))
    throw InvalidArgument("element outside the homomorphism source");
  RewriteBudget budget;
  ExpVec acc = target_->identity();
  for (std::size_t k = 0; k < x.ngens(); ++k) {
    if (x[k] == 0) continue;
    target_->multiply_into(acc, target_->power(images_[k].exponents(), x[k], budget), budget);
  }
  return GroupElement(target_, std::move(acc));
}

GroupElement GroupHom::apply(const FreeWord& w) const {
  RewriteBudget budget;
  ExpVec acc = target_->identity();
  for (const auto& l : w.letters()) {
    if (l.gen >= images_.size()) throw InvalidArgument("letter outside the homomorphism source");
    target_->multiply_into(acc, target_->power(images_[l.gen].exponents(), l.exp, budget), budget);
  }
  return GroupElement(target_, std::move(acc));
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  if (!inner.target_->same_group(*source_)) throw InvalidArgument("composition of incompatible homomorphisms");
  std::vector<GroupElement> imgs;
  imgs.reserve(inner.images_.size());
  for (const auto& im : inner.images_) imgs.push_back(apply(im));
  return GroupHom(inner.source_, target_, std::move(imgs), Unchecked{});
}

GroupHom GroupHom::power(BigInt k) const {
  if (!is_endomorphism()) throw InvalidArgument("only endomorphisms have powers");
  if (k < 0) {
    auto inv = hom_is_invertible(*this);
    if (!inv.invertible) throw InvalidArgument("negative power of a non-invertible endomorphism");
    return inv.inverse->power(-k);
  }
  GroupHom result = identity_hom(source_);
  GroupHom base = *this;
  while (k > 0) {
    if ((k & 1) != 0) result = base.compose(result);
    k >>= 1;
    if (k > 0) base = base.compose(base);
  }
  return result;
}

GroupHom build_hom(const PresentationPtr& source, const PresentationPtr& target,
                   const std::vector<GroupElement>& generator_images) {
  const auto defining = source->defining_generators();
  if (generator_images.size() != defining.size())
    throw InvalidArgument("expected " + std::to_string(defining.size()) + " generator images, got " +
                          std::to_string(generator_images.size()));
  const std::size_t n = source->ngens();
  std::vector<std::optional<GroupElement>> imgs(n);
  for (std::size_t t = 0; t < defining.size(); ++t) imgs[defining[t]] = generator_images[t];
  const auto& defs = source->definitions();
  for (std::size_t i = 0; i < n; ++i) {
    if (imgs[i]) continue;
    const Definition df = defs.empty() ? Definition{} : defs[i];
    switch (df.kind) {
      case DefinitionKind::kCommutator:
        imgs[i] = commutator(*imgs[df.a], *imgs[df.b]);
        break;
      case DefinitionKind::kPower:
        imgs[i] = engel::power(*imgs[df.a], source->relative_order(df.a));
        break;
      default:
        throw InvalidArgument("generator g" + std::to_string(i + 1) + " has no definition; give all images");
    }
  }
  std::vector<GroupElement> out;
  for (auto& im : imgs) out.push_back(std::move(*im));
  return GroupHom(source, target, std::move(out));
}

GroupHom identity_hom(const PresentationPtr& p) {
  std::vector<GroupElement> imgs;
  for (std::size_t i = 0; i < p->ngens(); ++i) imgs.push_back(GroupElement(p, p->unit(i)));
  return GroupHom(p, p, std::move(imgs));
}

namespace {

std::optional<Matrix> rational_inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Rational f = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= f;
      inv[c][k] /= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational g = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::optional<Invertibility> invert_by_abelianization(const GroupHom& phi) {
  const auto& p = phi.source();
  const auto defining = p->defining_generators();
  const std::size_t m = defining.size();
  for (std::size_t t = 0; t < m; ++t)
    if (defining[t] != t) return std::nullopt;
  const BigInt q = p->relative_order(0);
  for (std::size_t t = 0; t < m; ++t)
    if (p->relative_order(t) != q) return std::nullopt;

  Matrix mat(m, std::vector<Rational>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) mat[r][c] = Rational(phi.images()[defining[r]][defining[c]]);
  const Rational det = determinant(mat);
  Invertibility out;
  out.method = "abelianization";
  const BigInt det_int = boost::multiprecision::numerator(det);
  if (q == 0 ? (det_int != 1 && det_int != -1) : gcd(det_int, q) != 1) return out;

  const auto inv = *rational_inverse(mat);
  std::vector<ExpVec> rows(m, ExpVec(m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      const BigInt num = boost::multiprecision::numerator(inv[r][c]);
      const BigInt den = boost::multiprecision::denominator(inv[r][c]);
      rows[r][c] = q == 0 ? BigInt(num / den) : mod_floor(num * mod_inverse(den, q), q);
    }
  }
  std::vector<GroupElement> u;
  for (std::size_t r = 0; r < m; ++r) {
    GroupElement acc = GroupElement::identity(p);
    for (std::size_t c = 0; c < m; ++c) acc = acc * GroupElement::generator(p, defining[c], rows[r][c]);
    u.push_back(acc);
  }
  // psi agrees with phi^{-1} modulo gamma_2; each pass pushes the error one layer down.
  const std::size_t passes = p->layer_count() + p->ngens() + 1;
  for (std::size_t pass = 0; pass <= passes; ++pass) {
    const GroupHom psi = build_hom(p, p, u);
    bool exact = true;
    for (std::size_t r = 0; r < m; ++r) {
      const GroupElement a = GroupElement::generator(p, defining[r]);
      const GroupElement delta = inverse(a) * phi.apply(psi.images()[defining[r]]);
      if (delta.is_identity()) continue;
      exact = false;
      u[r] = u[r] * inverse(psi.apply(delta));
    }
    if (exact) {
      if (!(phi.compose(psi) == identity_hom(p)) || !(psi.compose(phi) == identity_hom(p)))
        throw Error("inverse homomorphism failed verification");
      out.invertible = true;
      out.inverse = psi;
      return out;
    }
  }
  throw Error("inverse correction did not converge");
}

}  // namespace

Invertibility hom_is_invertible(const GroupHom& phi) {
  if (!phi.is_endomorphism()) throw InvalidArgument("invertibility is decided for endomorphisms");
  const auto& p = phi.source();
  if (p->relatively_free()) {
    if (auto r = invert_by_abelianization(phi)) return *r;
  }
  if (!p->is_finite_group() || !ElementTable::fits(*p))
    throw InvalidArgument("no invertibility criterion for this group");
  const ElementTable table(p);
  std::vector<std::size_t> preimage(table.size(), table.size());
  Invertibility out;
  out.method = "exhaustive";
  for (std::size_t a = 0; a < table.size(); ++a) {
    const std::size_t img = table.index_of(phi.apply(table.element(a)));
    if (preimage[img] != table.size()) return out;
    preimage[img] = a;
  }
  std::vector<GroupElement> imgs;
  for (std::size_t i = 0; i < p->ngens(); ++i) imgs.push_back(table.element(preimage[table.index_of(p->unit(i))]));
  out.invertible = true;
  out.inverse = GroupHom(p, p, std::move(imgs));
  return out;
}

// ---- holomorph -----------------------------------------------------------------

HolomorphElement holomorph_mul(const HolomorphElement& u, const HolomorphElement& v) {
  if (u.phi != v.phi && !(*u.phi == *v.phi)) throw InvalidArgument("holomorph elements over different automorphisms");
  const GroupElement twisted = v.r == 0 ? u.g : u.phi->power(v.r).apply(u.g);
  return {twisted * v.g, u.r + v.r, u.phi};
}

HolomorphElement holomorph_pow(const HolomorphElement& u, const BigInt& m) {
  if (m < 1) throw InvalidArgument("holomorph power needs m >= 1");
  // base = (h, psi^s) with psi^s tracked as a homomorphism to avoid recomputing powers.
  GroupHom base_map = u.phi->power(u.r);
  GroupElement base_g = u.g;
  BigInt base_r = u.r;
  std::optional<GroupElement> acc_g;
  BigInt acc_r = 0;
  BigInt k = m;
  while (k > 0) {
    if ((k & 1) != 0) {
      acc_g = acc_g ? base_map.apply(*acc_g) * base_g : base_g;
      acc_r += base_r;
    }
    k >>= 1;
    if (k > 0) {
      base_g = base_map.apply(base_g) * base_g;
      base_r *= 2;
      base_map = base_map.compose(base_map);
    }
  }
  return {*acc_g, acc_r, u.phi};
}

}  // namespace engel
