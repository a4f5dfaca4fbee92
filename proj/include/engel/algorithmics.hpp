#pragma once

#include "engel/group.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace engel {

struct SearchBudget {
  std::uint64_t max_steps = 10'000'000;
  std::size_t max_memory_items = 5'000'000;
  std::optional<double> time_hint_seconds;
};

// kNone is a proof of absence; kExhausted means the budget ran out first.
enum class SearchStatus { kFound, kNone, kExhausted };
std::string to_string(SearchStatus s);

bool word_problem(const PresentationPtr& p, const FreeWord& w);

struct PowerResult {
  SearchStatus status = SearchStatus::kNone;
  BigInt n;  // least nonnegative when x has finite order
  std::uint64_t steps = 0;
};
// n with y = x^n, solved coordinate by coordinate down the pc series.
PowerResult power_decision(const GroupElement& x, const GroupElement& y, const SearchBudget& budget = {});
// Plain scan n = 0, 1, -1, 2, -2, ... up to the step budget.
PowerResult power_decision_scan(const GroupElement& x, const GroupElement& y, const SearchBudget& budget = {});

// Exponents a with prod basis[i]^{a_i} = y; basis must be the pc generating sequence.
ExpVec generalized_dlp(const PresentationPtr& p, const std::vector<GroupElement>& basis, const GroupElement& y);
GroupElement product_of_powers(const std::vector<GroupElement>& basis, const ExpVec& a);

struct DlpResult {
  SearchStatus status = SearchStatus::kNone;
  BigInt n;
};
// Least n in [0, |x|) with x^n = y, baby-step giant-step.
DlpResult dlp_cyclic(const GroupElement& x, const GroupElement& y, const SearchBudget& budget = {});

enum class RootMode { kAny, kAll };
struct RootResult {
  SearchStatus status = SearchStatus::kNone;
  std::vector<GroupElement> roots;
};
RootResult nth_root(const GroupElement& a, const BigInt& n, RootMode mode, const SearchBudget& budget = {});

enum class ConjugacyVariant { kSingle, kMultiple, kPower };
struct ConjugacyResult {
  SearchStatus status = SearchStatus::kNone;
  std::optional<GroupElement> conjugator;  // a_i^c = b_i
  BigInt n;                                // power variant: x^n = y^c
};
ConjugacyResult conjugacy_search(const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
                                 ConjugacyVariant variant, const SearchBudget& budget = {});

struct GeodesicResult {
  SearchStatus status = SearchStatus::kNone;
  std::size_t length = 0;
  FreeWord witness;  // over the alphabet X, letter k = X[k]
};
GeodesicResult geodesic_length(const PresentationPtr& p, const std::vector<GroupElement>& X, const GroupElement& g,
                               const SearchBudget& budget = {});

struct MembershipResult {
  SearchStatus status = SearchStatus::kNone;
  bool member = false;
  std::size_t subgroup_order = 0;
};
MembershipResult subgroup_membership(const PresentationPtr& p, const std::vector<GroupElement>& H,
                                     const GroupElement& g, const SearchBudget& budget = {});

struct GeneratedWord {
  FreeWord word;
  BigInt reduced_length;
};
// Product of `factors` conjugates u r^{+-1} u^{-1} of relators with conjugators of length conj_length.
GeneratedWord random_trivial_word(const PresentationPtr& p, std::size_t factors, std::size_t conj_length, Rng& rng);
// Random free word of the given length, resampled until it is nontrivial in the group.
GeneratedWord random_nontrivial_word(const PresentationPtr& p, std::size_t length, Rng& rng);

}  // namespace engel
