#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rce/codec.hpp"
#include "rce/election.hpp"
#include "rce/exact.hpp"
#include "rce/weights.hpp"

namespace rce {

// Log of one execution of a greedy Thiele rule.
struct GreedyRun {
  std::vector<CandidateId> order;
  std::vector<std::int64_t> round_marginals;           // scaled marginal of each pick
  std::vector<std::vector<CandidateId>> tie_sets;      // argmax set of each round

  Committee committee() const { return Committee(order); }
};

struct Lexicographic {};
struct Enumerate {
  std::size_t cap = 100;
};
struct Forced {
  std::vector<CandidateId> order;
};
using TiePolicy = std::variant<Lexicographic, Enumerate, Forced>;

// Raised when a forced order picks a candidate outside that round's argmax set.
class ForcedOrderError : public std::runtime_error {
 public:
  ForcedOrderError(std::size_t round, CandidateId candidate);
  // 1-based round number.
  std::size_t round() const noexcept { return round_; }
  CandidateId candidate() const noexcept { return candidate_; }

 private:
  std::size_t round_;
  CandidateId candidate_;
};

// One greedy execution. Lexicographic (and Enumerate, whose first branch is
// the lexicographic one) picks the least-index argmax; Forced checks the
// given order round by round.
GreedyRun greedy_run(const Election& e, std::size_t k, const OwaWeights& w,
                     const TiePolicy& policy = Lexicographic{});

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct GreedyEnumeration {
  std::vector<Committee> committees;  // distinct, canonical order
  bool truncated = false;             // stopped at the cap
};

// Depth-first search over per-round tie sets. Branches try members of
// `prefer` first, then ascending index; selection sets already expanded
// are skipped since the continuation depends only on the set.
GreedyEnumeration greedy_enumerate(const Election& e, std::size_t k, const OwaWeights& w,
                                   std::size_t cap = kUnlimited, const Committee& prefer = {});

// Whether some greedy run selects exactly the members of t first (any
// order), via a DP over subsets of t. Returns a realizing order when one exists.
std::optional<std::vector<CandidateId>> greedy_prefix_order(const Election& e,
                                                            const Committee& t,
                                                            const OwaWeights& w);

// Whether some greedy run outputs exactly t (|t| = k).
bool greedy_reachable(const Election& e, std::size_t k, const OwaWeights& w, const Committee& t);

// Swap search: for d = 0, 1, ... tries every (S-, S+) with |S-| = |S+| = d
// and returns the first greedy-reachable committee. With `shrink`, runs on
// the class-shrunk election. Refuses (BudgetExceeded) when the number of
// committees needed to decide d <= ell exceeds the budget; past ell it stops
// quietly and reports infeasible without a min_distance.
RceAnswer solve_rce_greedy(const RceInstance& inst, const OwaWeights& w, bool shrink = true,
                           std::uint64_t budget = kDefaultBudget);

// Greedy-CC solver that is FPT in the number of voters: for k > 2^n it
// searches covering sets of class representatives that greedy can pick
// first; otherwise delegates to solve_rce_greedy with shrinking.
RceAnswer solve_rce_greedycc_fpt_n(const RceInstance& inst, std::uint64_t budget = kDefaultBudget);

// Closest committee to s among up to `cap` greedy winners of e (enumerated
// preferring s's members); ties by canonical order.
struct SampledClosest {
  Committee committee;
  std::size_t distance = 0;
  std::size_t found = 0;  // distinct winners enumerated
  bool truncated = false;
};
SampledClosest closest_winner_sampled(const Election& e, std::size_t k, const OwaWeights& w,
                                      const Committee& s, std::size_t cap);

}  // namespace rce
