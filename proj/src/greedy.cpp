#include "rce/greedy.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "rce/errors.hpp"
#include "rce/marginals.hpp"

namespace rce {
namespace {

void check_greedy_size(const Election& e, std::size_t k, const OwaWeights& w) {
  if (k > e.num_candidates()) throw PreconditionError("k exceeds the number of candidates");
  if (k > w.size()) {
    throw ConfigError("committee size " + std::to_string(k) + " exceeds the OWA vector length " +
                      std::to_string(w.size()));
  }
}

struct BitsetHash {
  std::size_t operator()(const std::vector<std::uint64_t>& words) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t x : words) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class TieEnumerator {
 public:
  TieEnumerator(const Election& e, std::size_t k, const OwaWeights& w, std::size_t cap,
                const Committee& prefer)
      : k_(k), cap_(cap), prefer_(prefer), tracker_(e, w),
        key_((e.num_candidates() + 63) / 64, 0) {}

  GreedyEnumeration run() {
    GreedyEnumeration out;
    out.truncated = !visit();
    out.committees.assign(found_.begin(), found_.end());
    return out;
  }

 private:
  // Returns false once the cap is reached.
  bool visit() {
    if (chosen_.size() == k_) {
      found_.insert(Committee(chosen_));
      return found_.size() < cap_;
    }
    if (!visited_.insert(key_).second) return true;
    std::vector<CandidateId> ties = tracker_.argmax();
    std::stable_partition(ties.begin(), ties.end(),
                          [&](CandidateId c) { return prefer_.contains(c); });
    for (CandidateId c : ties) {
      select(c);
      bool more = visit();
      deselect(c);
      if (!more) return false;
    }
    return true;
  }

  void select(CandidateId c) {
    tracker_.add(c);
    chosen_.push_back(c);
    key_[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  void deselect(CandidateId c) {
    key_[c / 64] &= ~(std::uint64_t{1} << (c % 64));
    chosen_.pop_back();
    tracker_.remove(c);
  }

  std::size_t k_;
  std::size_t cap_;
  const Committee& prefer_;
  MarginalTracker tracker_;
  std::vector<CandidateId> chosen_;
  std::vector<std::uint64_t> key_;
  std::unordered_set<std::vector<std::uint64_t>, BitsetHash> visited_;
  std::set<Committee> found_;
};

// Visits every selection U ⊆ t that some greedy run reaches, each once.
class PrefixDp {
 public:
  PrefixDp(const Election& e, const Committee& t, const OwaWeights& w)
      : members_(t.begin(), t.end()),
        tracker_(e, w),
        parent_(std::size_t{1} << members_.size(), kUnreached) {}

  std::optional<std::vector<CandidateId>> run() {
    const std::uint32_t full = static_cast<std::uint32_t>(parent_.size() - 1);
    parent_[0] = kRoot;
    visit(0);
    if (parent_[full] == kUnreached) return std::nullopt;
    std::vector<CandidateId> order;
    for (std::uint32_t mask = full; mask != 0;) {
      std::uint32_t i = parent_[mask];
      order.push_back(members_[i]);
      mask &= ~(std::uint32_t{1} << i);
    }
    std::reverse(order.begin(), order.end());
    return order;
  }

 private:
  static constexpr std::uint32_t kUnreached = 0xffffffffu;
  static constexpr std::uint32_t kRoot = 0xfffffffeu;

  void visit(std::uint32_t mask) {
    const std::int64_t best = tracker_.max_marginal();
    for (std::uint32_t i = 0; i < members_.size(); ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (mask & bit) continue;
      if (parent_[mask | bit] != kUnreached) continue;
      if (tracker_.marginal(members_[i]) != best) continue;
      parent_[mask | bit] = i;
      tracker_.add(members_[i]);
      visit(mask | bit);
      tracker_.remove(members_[i]);
    }
  }

  std::vector<CandidateId> members_;
  MarginalTracker tracker_;
  std::vector<std::uint32_t> parent_;
};

RceAnswer answer_from(const Committee& witness, const Committee& s, std::size_t ell) {
  RceAnswer answer;
  answer.min_distance = committee_distance(s, witness);
  answer.feasible = *answer.min_distance <= ell;
  answer.witness = witness;
  return answer;
}

// Calls f on every d-combination of items (lexicographic); stops when f returns true.
template <typename F>
bool for_each_combination(const std::vector<CandidateId>& items, std::size_t d, F&& f) {
  if (d > items.size()) return false;
  std::vector<std::size_t> pick(d);
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  std::vector<CandidateId> chosen(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) chosen[i] = items[pick[i]];
    if (f(chosen)) return true;
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == items.size() - d + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
}

RceAnswer swap_search(const Election& e, const Committee& s, std::size_t k, std::size_t ell,
                      const OwaWeights& w, std::uint64_t budget) {
  check_greedy_size(e, k, w);
  if (k >= 31) throw BudgetExceeded("k = " + std::to_string(k) + " is too large for the subset DP");
  std::vector<CandidateId> inside(s.begin(), s.end());
  std::vector<CandidateId> outside;
  for (CandidateId c = 0; c < e.num_candidates(); ++c) {
    if (!s.contains(c)) outside.push_back(c);
  }
  const std::uint64_t states = std::uint64_t{1} << k;
  std::uint64_t spent = 0;
  for (std::size_t d = 0; d <= std::min(k, outside.size()); ++d) {
    const std::uint64_t pairs = binomial(k, d) * binomial(outside.size(), d);
    const bool overflow = pairs > budget / states || spent + pairs * states > budget;
    if (overflow) {
      if (d <= ell) {
        throw BudgetExceeded("greedy swap search for (k=" + std::to_string(k) +
                             ", ell=" + std::to_string(ell) + ", m=" +
                             std::to_string(e.num_candidates()) + ") exceeds the budget of " +
                             std::to_string(budget));
      }
      return RceAnswer{};
    }
    spent += pairs * states;
    std::optional<Committee> hit;
    for_each_combination(inside, d, [&](const std::vector<CandidateId>& removed) {
      std::vector<CandidateId> kept;
      std::set_difference(inside.begin(), inside.end(), removed.begin(), removed.end(),
                          std::back_inserter(kept));
      return for_each_combination(outside, d, [&](const std::vector<CandidateId>& added) {
        std::vector<CandidateId> members = kept;
        members.insert(members.end(), added.begin(), added.end());
        Committee t(std::move(members));
        if (!greedy_prefix_order(e, t, w)) return false;
        hit = std::move(t);
        return true;
      });
    });
    if (hit) return answer_from(*hit, s, ell);
  }
  throw std::logic_error("greedy swap search found no reachable committee");
}

}  // namespace

ForcedOrderError::ForcedOrderError(std::size_t round, CandidateId candidate)
    : std::runtime_error("forced order not realizable: candidate " + std::to_string(candidate) +
                         " is not a maximum-marginal choice in round " + std::to_string(round)),
      round_(round),
      candidate_(candidate) {}

GreedyRun greedy_run(const Election& e, std::size_t k, const OwaWeights& w, const TiePolicy& policy) {
  check_greedy_size(e, k, w);
  const Forced* forced = std::get_if<Forced>(&policy);
  if (forced != nullptr && forced->order.size() != k) {
    throw PreconditionError("forced order must have length k");
  }
  MarginalTracker tracker(e, w);
  GreedyRun run;
  for (std::size_t round = 0; round < k; ++round) {
    std::vector<CandidateId> ties = tracker.argmax();
    CandidateId pick = ties.front();
    if (forced != nullptr) {
      pick = forced->order[round];
      if (!std::binary_search(ties.begin(), ties.end(), pick)) {
        throw ForcedOrderError(round + 1, pick);
      }
    }
    run.order.push_back(pick);
    run.round_marginals.push_back(tracker.marginal(pick));
    run.tie_sets.push_back(std::move(ties));
    tracker.add(pick);
  }
  return run;
}

GreedyEnumeration greedy_enumerate(const Election& e, std::size_t k, const OwaWeights& w,
                                   std::size_t cap, const Committee& prefer) {
  check_greedy_size(e, k, w);
  if (cap == 0) throw PreconditionError("enumeration cap must be at least 1");
  return TieEnumerator(e, k, w, cap, prefer).run();
}

std::optional<std::vector<CandidateId>> greedy_prefix_order(const Election& e, const Committee& t,
                                                            const OwaWeights& w) {
  check_greedy_size(e, t.size(), w);
  if (t.size() > 30) throw PreconditionError("subset DP supports at most 30 candidates");
  if (!t.empty() && t.members().back() >= e.num_candidates()) {
    throw PreconditionError("committee member out of range");
  }
  return PrefixDp(e, t, w).run();
}

bool greedy_reachable(const Election& e, std::size_t k, const OwaWeights& w, const Committee& t) {
  if (t.size() != k) throw PreconditionError("committee size differs from k");
  return greedy_prefix_order(e, t, w).has_value();
}

RceAnswer solve_rce_greedy(const RceInstance& inst, const OwaWeights& w, bool shrink,
                           std::uint64_t budget) {
  inst.check();
  if (!shrink) return swap_search(inst.after, inst.committee, inst.k, inst.ell, w, budget);
  ShrunkElection shrunk = shrink_by_classes(inst.after, inst.committee, inst.k);
  RceAnswer answer = swap_search(shrunk.election, shrunk.committee, inst.k, inst.ell, w, budget);
  if (answer.witness) answer.witness = shrunk.lift(*answer.witness);
  return answer;
}

RceAnswer solve_rce_greedycc_fpt_n(const RceInstance& inst, std::uint64_t budget) {
  inst.check();
  const Election& after = inst.after;
  const std::size_t n = after.num_voters();
  const std::size_t k = inst.k;
  const OwaWeights cc = OwaWeights::cc(std::max<std::size_t>(k, 1));
  if (!(n < 63 && k > (std::size_t{1} << n))) return solve_rce_greedy(inst, cc, true, budget);

  std::vector<CandidateId> reps;
  std::vector<std::uint64_t> cover;
  for (const CandidateClass& cls : candidate_classes(after)) {
    if (cls.approvers.empty()) continue;
    CandidateId rep = cls.members.front();
    for (CandidateId c : cls.members) {
      if (inst.committee.contains(c)) {
        rep = c;
        break;
      }
    }
    std::uint64_t voters = 0;
    for (VoterId v : cls.approvers) voters |= std::uint64_t{1} << v;
    reps.push_back(rep);
    cover.push_back(voters);
  }
  if (reps.size() >= 40 || (std::uint64_t{1} << reps.size()) > budget) {
    throw BudgetExceeded(std::to_string(reps.size()) +
                         " candidate classes: subset search exceeds the budget of " +
                         std::to_string(budget));
  }
  std::uint64_t target = 0;
  for (VoterId v = 0; v < n; ++v) {
    if (!after.ballot(v).empty()) target |= std::uint64_t{1} << v;
  }

  std::optional<Committee> best;
  std::size_t best_cost = 0;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << reps.size()); ++subset) {
    std::uint64_t covered = 0;
    std::vector<CandidateId> prefix;
    std::size_t cost = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (!((subset >> i) & 1u)) continue;
      covered |= cover[i];
      prefix.push_back(reps[i]);
      cost += inst.committee.contains(reps[i]) ? 0 : 1;
    }
    if (covered != target) continue;
    if (best && cost > best_cost) continue;
    if (!greedy_prefix_order(after, Committee(prefix), cc)) continue;
    std::vector<CandidateId> members = prefix;
    for (CandidateId c : inst.committee) {
      if (members.size() == k) break;
      if (std::find(members.begin(), members.end(), c) == members.end()) members.push_back(c);
    }
    Committee candidate(std::move(members));
    if (!best || cost < best_cost || candidate < *best) {
      best = std::move(candidate);
      best_cost = cost;
    }
  }
  if (!best) throw std::logic_error("no greedy-selectable covering prefix found");
  return answer_from(*best, inst.committee, inst.ell);
}

SampledClosest closest_winner_sampled(const Election& e, std::size_t k, const OwaWeights& w,
                                      const Committee& s, std::size_t cap) {
  GreedyEnumeration found = greedy_enumerate(e, k, w, cap, s);
  SampledClosest out;
  out.found = found.committees.size();
  out.truncated = found.truncated;
  bool first = true;
  for (const Committee& c : found.committees) {
    std::size_t d = committee_distance(s, c);
    if (first || d < out.distance) {
      out.committee = c;
      out.distance = d;
      first = false;
    }
  }
  return out;
}

}  // namespace rce
