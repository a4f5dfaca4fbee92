#pragma once

#include "engel/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace engel {

// Two-sided identity over variables x, y (or x, x_1..x_m).
struct LawSpec {
  enum class Kind { kEngel2, kEngel3A, kEngel3B, kEngel4, kEngelN, kLocallyNilpotent };
  Kind kind = Kind::kEngel2;
  unsigned n = 0;  // kEngelN
  BigInt r = 0;    // kLocallyNilpotent: [x^r, x_1, ..., x_m] = 1
  unsigned m = 0;

  static LawSpec engel2() { return {Kind::kEngel2}; }
  static LawSpec engel3_a() { return {Kind::kEngel3A}; }
  static LawSpec engel3_b() { return {Kind::kEngel3B}; }
  static LawSpec engel4() { return {Kind::kEngel4}; }
  static LawSpec engel_n(unsigned n);
  static LawSpec locally_nilpotent(const BigInt& r, unsigned m);
  // engel2, engel3a, engel3b, engel4, engel:<n>, locnil:<r>:<m>
  static LawSpec parse(const std::string& text);

  std::size_t arity() const;
  std::string name() const;
  // Semigroup laws as strings over {x, y}; empty for commutator laws.
  std::pair<std::string, std::string> words() const;
};

// Both sides of a law for one substitution.
std::pair<GroupElement, GroupElement> evaluate_law(const LawSpec& law, const std::vector<GroupElement>& vars);
// Positive word over letters 'x', 'y' evaluated at the given elements.
GroupElement evaluate_xy_word(const std::string& word, const GroupElement& x, const GroupElement& y);

struct CheckMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  static CheckMode full() { return {}; }
  static CheckMode sampled(std::uint64_t k, std::uint64_t seed) { return {false, k, seed}; }
};

struct LawVerdict {
  bool holds = true;
  std::vector<GroupElement> witness;  // substitution refuting the law
  std::uint64_t checked = 0;
};

LawVerdict check_law(const PresentationPtr& p, const LawSpec& law, const CheckMode& mode);
LawVerdict is_n_engel(const PresentationPtr& p, unsigned n, const CheckMode& mode);

enum class EngelSide { kLeft, kRight };
enum class EngelStatus { kEngel, kNotEngel, kUndetermined };
std::string to_string(EngelStatus s);

struct ElementEngelInfo {
  GroupElement element;
  EngelStatus status = EngelStatus::kUndetermined;
  unsigned least_n = 0;               // uniform bound over all x, when Engel
  std::optional<GroupElement> witness;  // x with no terminating sequence, or hitting the cap
};

struct EngelClassification {
  EngelSide side = EngelSide::kRight;
  unsigned n_max = 10;
  std::vector<ElementEngelInfo> elements;
  std::size_t engel_count = 0;
  std::size_t not_engel_count = 0;
  std::size_t undetermined_count = 0;
  std::optional<unsigned> group_engel_n;  // least n making every element n-Engel on this side
};

// Right: [g, _n x] = 1 for all x; left: [x, _n g] = 1 for all x.
EngelClassification classify_engel_elements(const PresentationPtr& p, EngelSide side, unsigned n_max = 10);

struct InclusionReport {
  bool holds = true;
  std::size_t right_engel = 0;
  std::size_t checked_bounded = 0;
  std::size_t inconclusive = 0;  // caps reached
  std::vector<GroupElement> violations;
};
// R(G)^{-1} in L(G) and R_n(G)^{-1} in L_{n+1}(G).
InclusionReport check_engel_inclusions(const PresentationPtr& p, unsigned n_max = 10);

struct GroupStructure {
  BigInt order;
  BigInt exponent;
  std::optional<unsigned> nilpotency_class;  // nullopt: not nilpotent
  std::size_t center_size = 0;
  bool abelian = false;
  std::vector<std::size_t> lower_central_sizes;  // |gamma_1|, |gamma_2|, ...
  std::size_t conjugacy_classes = 0;
};
GroupStructure describe_group(const ElementTable& table);

struct DegreeReport {
  unsigned n = 1;
  bool exact = true;
  BigInt satisfied = 0;  // exact: count of tuples; montecarlo: hits
  BigInt total = 0;      // |G|^{n+1} or sample count
  double value = 0;
  double half_width = 0;  // Wilson interval
  double lower = 0;
  double upper = 0;
  double confidence = 0;
  std::string fraction() const;  // reduced a/b for exact mode
};

DegreeReport degree_exact(const PresentationPtr& p, unsigned n, std::uint64_t budget = 100'000'000);
DegreeReport degree_exact(const ElementTable& table, unsigned n, std::uint64_t budget = 100'000'000);
DegreeReport degree_montecarlo(const PresentationPtr& p, unsigned n, std::uint64_t samples, double confidence,
                               std::uint64_t seed);

struct BallDegreePoint {
  unsigned radius = 0;
  std::size_t ball_size = 0;
  bool exact = true;
  double ratio = 0;
};
// Finite-radius curve of the ball-based degree; not a limit.
std::vector<BallDegreePoint> degree_ball_estimate(const PresentationPtr& p, const std::vector<GroupElement>& gens,
                                                  unsigned n, unsigned m_max, std::uint64_t seed,
                                                  std::uint64_t exact_limit = 2'000'000,
                                                  std::uint64_t samples = 200'000);

struct BoundCheck {
  std::string name;
  bool applicable = false;  // hypothesis satisfied
  bool holds = true;
  std::string detail;
};
struct DegreeBoundsReport {
  unsigned n = 1;
  DegreeReport degree;
  DegreeReport degree1;
  GroupStructure structure;
  std::vector<BoundCheck> checks;
  bool all_hold() const;
};
DegreeBoundsReport check_degree_bounds(const PresentationPtr& p, unsigned n);

// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double confidence);

}  // namespace engel
