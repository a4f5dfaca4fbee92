#include "engel/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_set>

namespace engel {

// ---- FreeWord ----------------------------------------------------------------

FreeWord::FreeWord(std::size_t alphabet, std::vector<Letter> letters) : alphabet_(alphabet) {
  for (auto& l : letters) append(l.gen, l.exp);
}

FreeWord FreeWord::single(std::size_t alphabet, std::size_t gen, const BigInt& exp) {
  FreeWord w(alphabet);
  w.append(gen, exp);
  return w;
}

FreeWord FreeWord::from_normal(const ExpVec& v) {
  FreeWord w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) w.letters_.push_back({k, v[k]});
  return w;
}

void FreeWord::append(std::size_t gen, const BigInt& exp) {
  if (gen >= alphabet_) throw InvalidArgument("letter index " + std::to_string(gen + 1) + " outside alphabet");
  if (exp == 0) return;
  letters_.push_back({gen, exp});
}

BigInt FreeWord::length() const {
  BigInt n = 0;
  for (const auto& l : letters_) n += l.exp < 0 ? BigInt(-l.exp) : l.exp;
  return n;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
  FreeWord w(std::max(alphabet_, other.alphabet_));
  w.letters_ = letters_;
  w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
  return w;
}

FreeWord FreeWord::inverse() const {
  FreeWord w(alphabet_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back({it->gen, -it->exp});
  return w;
}

FreeWord FreeWord::conjugated_by(const FreeWord& u) const { return u * *this * u.inverse(); }

FreeWord FreeWord::free_reduced() const {
  FreeWord w(alphabet_);
  for (const auto& l : letters_) {
    if (!w.letters_.empty() && w.letters_.back().gen == l.gen) {
      w.letters_.back().exp += l.exp;
      if (w.letters_.back().exp == 0) w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += "g" + std::to_string(l.gen + 1);
    if (l.exp != 1) out += "^" + l.exp.str();
  }
  return out;
}

std::string FreeWord::to_letters() const {
  if (alphabet_ > 26) return to_string();
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    const char c = static_cast<char>('a' + l.gen);
    if (l.exp == 1) {
      out += c;
    } else if (l.exp == -1) {
      out += static_cast<char>(std::toupper(c));
    } else {
      out += c;
      out += "^" + l.exp.str();
    }
  }
  return out;
}

FreeWord FreeWord::parse(const std::string& text, std::size_t alphabet) {
  FreeWord w(alphabet);
  std::size_t pos = 0;
  const std::size_t n = text.size();
  auto read_int = [&](std::size_t& p) {
    const bool negative = p < n && text[p] == '-';
    if (p < n && (text[p] == '-' || text[p] == '+')) ++p;
    const std::size_t digits = p;
    while (p < n && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == digits) throw ParseError("expected integer at offset " + std::to_string(digits) + " in '" + text + "'");
    BigInt v(text.substr(digits, p - digits));
    return negative ? BigInt(-v) : v;
  };
  static const std::string kSupMinusOne = "⁻¹";
  while (pos < n) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.' || c == ',') {
      ++pos;
      continue;
    }
    std::size_t gen = 0;
    BigInt sign = 1;
    if (c == '1' && (pos + 1 == n || !std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;
      continue;
    }
    if (c == 'g' && pos + 1 < n && std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      std::size_t p = pos + 1;
      while (p < n && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
      const auto k = std::stoul(text.substr(pos + 1, p - pos - 1));
      if (k < 1) throw ParseError("generator index must be >= 1 in '" + text + "'");
      gen = k - 1;
      pos = p;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      if (std::isupper(static_cast<unsigned char>(c))) {
        gen = static_cast<std::size_t>(c - 'A');
        sign = -1;
      } else {
        gen = static_cast<std::size_t>(c - 'a');
      }
      ++pos;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' in word '" + text + "'");
    }
    BigInt e = 1;
    if (pos < n && text[pos] == '^') {
      ++pos;
      e = read_int(pos);
    } else if (text.compare(pos, kSupMinusOne.size(), kSupMinusOne) == 0) {
      pos += kSupMinusOne.size();
      e = -1;
    }
    if (gen >= alphabet) throw ParseError("generator " + std::to_string(gen + 1) + " outside alphabet in '" + text + "'");
    w.append(gen, sign * e);
  }
  return w;
}

// ---- GroupElement ------------------------------------------------------------

GroupElement::GroupElement(PresentationPtr p, ExpVec exps) : p_(std::move(p)), v_(std::move(exps)) {
  if (!p_) throw InvalidArgument("element without presentation");
  if (!p_->is_normal(v_)) throw InvalidArgument("exponent vector " + format_normal_word(v_) + " is not a normal form");
}

GroupElement GroupElement::identity(PresentationPtr p) {
  ExpVec v = p->identity();
  return GroupElement(std::move(p), std::move(v));
}

GroupElement GroupElement::generator(PresentationPtr p, std::size_t i, const BigInt& e) {
  if (i >= p->ngens()) throw InvalidArgument("generator index out of range");
  RewriteBudget budget;
  ExpVec v = p->identity();
  p->multiply_generator(v, i, e, budget);
  return GroupElement(std::move(p), std::move(v));
}

bool GroupElement::is_identity() const {
  return std::all_of(v_.begin(), v_.end(), [](const BigInt& x) { return x == 0; });
}

// ---- operations --------------------------------------------------------------

namespace {

void same_presentation(const GroupElement& x, const GroupElement& y) {
  if (x.presentation() != y.presentation() &&
      !(x.presentation() && y.presentation() && x.presentation()->same_group(*y.presentation())))
    throw InvalidArgument("elements belong to different presentations");
}

}  // namespace

GroupElement collect(const PresentationPtr& p, const FreeWord& w, std::uint64_t limit) {
  RewriteBudget budget(limit);
  ExpVec v = p->identity();
  for (const auto& l : w.letters()) {
    if (l.gen >= p->ngens()) throw InvalidArgument("letter g" + std::to_string(l.gen + 1) + " outside presentation");
    p->multiply_generator(v, l.gen, l.exp, budget);
  }
  return GroupElement(p, std::move(v));
}

GroupElement multiply(const GroupElement& x, const GroupElement& y) {
  same_presentation(x, y);
  RewriteBudget budget;
  return GroupElement(x.presentation(), x.presentation()->multiply(x.exponents(), y.exponents(), budget));
}

GroupElement inverse(const GroupElement& x) {
  RewriteBudget budget;
  return GroupElement(x.presentation(), x.presentation()->inverse(x.exponents(), budget));
}

GroupElement power(const GroupElement& x, const BigInt& k) {
  RewriteBudget budget;
  return GroupElement(x.presentation(), x.presentation()->power(x.exponents(), k, budget));
}

GroupElement conjugate(const GroupElement& x, const GroupElement& y) { return inverse(y) * x * y; }

GroupElement commutator(const GroupElement& x, const GroupElement& y) {
  same_presentation(x, y);
  const auto& p = x.presentation();
  RewriteBudget budget;
  ExpVec yx = p->multiply(y.exponents(), x.exponents(), budget);
  ExpVec xy = p->multiply(x.exponents(), y.exponents(), budget);
  return GroupElement(p, p->multiply(p->inverse(yx, budget), xy, budget));
}

GroupElement commutator(const std::vector<GroupElement>& xs) {
  if (xs.empty()) throw InvalidArgument("commutator of an empty list");
  GroupElement acc = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) acc = commutator(acc, xs[k]);
  return acc;
}

GroupElement engel_commutator(const GroupElement& x, const GroupElement& y, unsigned n) {
  GroupElement acc = x;
  for (unsigned k = 0; k < n; ++k) {
    acc = commutator(acc, y);
    if (acc.is_identity()) break;
  }
  return acc;
}

ElementOrder element_order(const GroupElement& x) {
  const auto& p = x.presentation();
  RewriteBudget budget;
  ExpVec cur = x.exponents();
  BigInt order = 1;
  for (;;) {
    std::size_t lead = 0;
    while (lead < cur.size() && cur[lead] == 0) ++lead;
    if (lead == cur.size()) return {order};
    const BigInt& r = p->relative_order(lead);
    if (r == 0) return {};
    const BigInt k0 = r / gcd(cur[lead], r);
    order *= k0;
    cur = p->power(cur, k0, budget);
  }
}

// ---- enumeration and sampling ------------------------------------------------

ElementEnumerator::ElementEnumerator(PresentationPtr p) : p_(std::move(p)) {
  if (!p_->is_finite_group()) throw InvalidArgument("cannot enumerate an infinite group");
  cur_ = p_->identity();
}

void ElementEnumerator::next() {
  for (std::size_t k = cur_.size(); k-- > 0;) {
    cur_[k] += 1;
    if (cur_[k] < p_->relative_order(k)) return;
    cur_[k] = 0;
  }
  done_ = true;
}

std::vector<GroupElement> enumerate_elements(const PresentationPtr& p) {
  std::vector<GroupElement> out;
  for (ElementEnumerator it(p); !it.done(); it.next()) out.push_back(it.current());
  return out;
}

GroupElement random_element(const PresentationPtr& p, Rng& rng) {
  if (!p->is_finite_group()) throw InvalidArgument("uniform sampling needs a finite group");
  ExpVec v(p->ngens());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = rng.below(p->relative_order(k));
  return GroupElement(p, std::move(v));
}

GroupElement random_element_bounded(const PresentationPtr& p, Rng& rng, const BigInt& bound) {
  ExpVec v(p->ngens());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (p->is_finite(k)) {
      v[k] = rng.below(p->relative_order(k));
    } else {
      v[k] = rng.below(BigInt(2 * bound + 1)) - bound;
    }
  }
  return GroupElement(p, std::move(v));
}

GrowthBall growth_ball(const PresentationPtr& p, const std::vector<GroupElement>& gens, unsigned radius,
                       bool keep_elements, std::size_t memory_budget) {
  std::vector<ExpVec> steps;
  RewriteBudget budget(UINT64_MAX);
  for (const auto& g : gens) {
    steps.push_back(g.exponents());
    steps.push_back(p->inverse(g.exponents(), budget));
  }
  std::unordered_set<ExpVec, ExpVecHash> seen;
  std::vector<ExpVec> frontier{p->identity()};
  seen.insert(p->identity());
  GrowthBall ball;
  ball.sphere_sizes.push_back(1);
  if (keep_elements) ball.elements.emplace_back(p, p->identity());
  for (unsigned r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<ExpVec> next;
    for (const auto& v : frontier) {
      for (const auto& s : steps) {
        ExpVec w = p->multiply(v, s, budget);
        if (seen.insert(w).second) {
          if (seen.size() > memory_budget) throw BudgetExceeded("growth ball exceeds memory budget");
          if (keep_elements) ball.elements.emplace_back(p, w);
          next.push_back(std::move(w));
        }
      }
    }
    ball.sphere_sizes.push_back(next.size());
    frontier = std::move(next);
  }
  while (ball.sphere_sizes.size() < radius + 1u) ball.sphere_sizes.push_back(0);
  ball.count = seen.size();
  return ball;
}

// ---- ElementTable ------------------------------------------------------------

bool ElementTable::fits(const PcPresentation& p) {
  const auto order = p.group_order();
  if (!order || *order > kMaxOrder) return false;
  for (std::size_t k = 0; k < p.ngens(); ++k)
    if (p.relative_order(k) > 64) return false;
  return true;
}

ElementTable::ElementTable(PresentationPtr p) : p_(std::move(p)) {
  if (!fits(*p_)) throw BudgetExceeded("group too large for a dense table");
  const std::size_t n = p_->ngens();
  radix_.resize(n);
  stride_.resize(n);
  std::size_t stride = 1;
  for (std::size_t k = n; k-- > 0;) {
    radix_[k] = static_cast<std::uint32_t>(p_->relative_order(k));
    stride_[k] = stride;
    stride *= radix_[k];
  }
  elements_ = enumerate_elements(p_);
  const std::size_t size = elements_.size();
  right_gen_.resize(size * n);
  RewriteBudget budget(UINT64_MAX);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      ExpVec v = elements_[a].exponents();
      p_->multiply_generator(v, i, 1, budget);
      right_gen_[a * n + i] = static_cast<std::uint32_t>(index_of(v));
    }
  }
  inverse_.resize(size);
  for (std::size_t a = 0; a < size; ++a)
    inverse_[a] = static_cast<std::uint32_t>(index_of(p_->inverse(elements_[a].exponents(), budget)));
}

std::size_t ElementTable::index_of(const ExpVec& v) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < v.size(); ++k) idx += static_cast<std::size_t>(v[k]) * stride_[k];
  return idx;
}

std::size_t ElementTable::mul(std::size_t a, std::size_t b) const {
  const std::size_t n = radix_.size();
  std::size_t cur = a;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t e = (b / stride_[i]) % radix_[i];
    for (std::size_t t = 0; t < e; ++t) cur = right_gen_[cur * n + i];
  }
  return cur;
}

std::size_t ElementTable::pow(std::size_t a, std::int64_t k) const {
  std::size_t base = k < 0 ? inverse_[a] : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  std::size_t result = 0;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

std::size_t ElementTable::order(std::size_t a) const {
  std::size_t k = 1;
  std::size_t cur = a;
  while (cur != 0) {
    cur = mul(cur, a);
    ++k;
  }
  return k;
}

}  // namespace engel
