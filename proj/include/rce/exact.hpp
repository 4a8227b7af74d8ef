#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rce/codec.hpp"
#include "rce/election.hpp"
#include "rce/weights.hpp"

namespace rce {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Optimization form of an RCE answer. feasible <=> min_distance <= ell.
// min_distance may be absent only when a search proved infeasibility
// within ell but was refused the budget to find the true optimum.
struct RceAnswer {
  bool feasible = false;
  std::optional<std::size_t> min_distance;
  std::optional<Committee> witness;
};

// Binomial coefficient saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// All size-k committees with maximum lambda-score, in canonical order.
// Branch-and-bound over k-subsets; refuses (BudgetExceeded) when C(m,k) > budget.
std::vector<Committee> enumerate_winners(const Election& e, std::size_t k, const OwaWeights& w,
                                         std::uint64_t budget = kDefaultBudget);

// Maximum lambda-score over size-k committees (scaled). Same budget rule.
std::int64_t max_score(const Election& e, std::size_t k, const OwaWeights& w,
                       std::uint64_t budget = kDefaultBudget);

// Polynomial AV algorithm: keep all higher-scored candidates, then as many
// of S's members among the k-th-score ties as fit. Throws ConfigError for non-AV rules.
RceAnswer solve_rce_av(const RceInstance& inst);
RceAnswer solve_rce_av(const RceInstance& inst, const OwaWeights& w);

// Ground truth: min distance to S over every winner of E'.
RceAnswer solve_rce_exhaustive(const RceInstance& inst, const OwaWeights& w,
                               std::uint64_t budget = kDefaultBudget);

// Reduced election over S plus, per candidate class K, at most k - |K ∩ S|
// lowest-index members of K \ S. to_original[i] is the original id of reduced candidate i.
struct ShrunkElection {
  Election election;
  std::vector<CandidateId> to_original;
  Committee committee;  // S in reduced ids

  Committee lift(const Committee& reduced) const;
};
ShrunkElection shrink_by_classes(const Election& after, const Committee& s, std::size_t k);

// Class shrinking followed by exhaustive search on the reduced election.
RceAnswer solve_rce_shrunk(const RceInstance& inst, const OwaWeights& w,
                           std::uint64_t budget = kDefaultBudget);

// Chamberlin-Courant solver that is FPT in the number of voters. For k > 2^n
// it enumerates covering sets of candidate classes by ascending size; otherwise
// delegates to solve_rce_shrunk with CC weights.
RceAnswer solve_rce_ccav_fpt_n(const RceInstance& inst, std::uint64_t budget = kDefaultBudget);

}  // namespace rce
