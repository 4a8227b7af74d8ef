#include "rce/exact.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "rce/errors.hpp"
#include "rce/marginals.hpp"

namespace rce {
namespace {

void check_committee_size(const Election& e, std::size_t k, const OwaWeights& w) {
  if (k > e.num_candidates()) throw PreconditionError("k exceeds the number of candidates");
  if (k > w.size()) {
    throw ConfigError("committee size " + std::to_string(k) + " exceeds the OWA vector length " +
                      std::to_string(w.size()));
  }
}

void check_budget(const Election& e, std::size_t k, std::uint64_t budget) {
  if (binomial(e.num_candidates(), k) > budget) {
    throw BudgetExceeded("C(" + std::to_string(e.num_candidates()) + "," + std::to_string(k) +
                         ") committees exceed the search budget of " + std::to_string(budget));
  }
}

// Depth-first search over ascending k-subsets. The bound adds the best
// `remaining` marginals to the current score, which is admissible because
// marginals only shrink as the selection grows (lambda is non-increasing).
class SubsetSearch {
 public:
  SubsetSearch(const Election& e, std::size_t k, const OwaWeights& w, bool collect_ties)
      : e_(e), k_(k), tracker_(e, w), collect_ties_(collect_ties) {}

  void run() { visit(0); }
  std::int64_t best() const { return best_; }
  std::vector<Committee>& winners() { return winners_; }

 private:
  void visit(CandidateId start) {
    const std::size_t remaining = k_ - chosen_.size();
    if (remaining == 0) {
      const std::int64_t score = tracker_.score();
      if (score > best_) {
        best_ = score;
        winners_.clear();
      }
      if (score == best_ && (collect_ties_ || winners_.empty())) winners_.emplace_back(chosen_);
      return;
    }
    const std::size_t m = e_.num_candidates();
    if (best_ != kUnset) {
      scratch_.clear();
      for (CandidateId c = start; c < m; ++c) scratch_.push_back(tracker_.marginal(c));
      std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(remaining - 1),
                       scratch_.end(), std::greater<>());
      std::int64_t bound = tracker_.score();
      for (std::size_t i = 0; i < remaining; ++i) bound += scratch_[i];
      if (bound < best_ || (!collect_ties_ && bound == best_)) return;
    }
    for (CandidateId c = start; c + remaining <= m; ++c) {
      tracker_.add(c);
      chosen_.push_back(c);
      visit(c + 1);
      chosen_.pop_back();
      tracker_.remove(c);
    }
  }

  static constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();

  const Election& e_;
  std::size_t k_;
  MarginalTracker tracker_;
  bool collect_ties_;
  std::int64_t best_ = kUnset;
  std::vector<Committee> winners_;
  std::vector<CandidateId> chosen_;
  std::vector<std::int64_t> scratch_;
};

RceAnswer answer_from(const Committee& witness, const Committee& s, std::size_t ell) {
  RceAnswer answer;
  answer.min_distance = committee_distance(s, witness);
  answer.feasible = *answer.min_distance <= ell;
  answer.witness = witness;
  return answer;
}

RceAnswer closest_of(const std::vector<Committee>& winners, const Committee& s, std::size_t ell) {
  const Committee* best = nullptr;
  std::size_t best_distance = 0;
  for (const Committee& w : winners) {
    std::size_t d = committee_distance(s, w);
    if (best == nullptr || d < best_distance) {
      best = &w;
      best_distance = d;
    }
  }
  return answer_from(*best, s, ell);
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<Committee> enumerate_winners(const Election& e, std::size_t k, const OwaWeights& w,
                                         std::uint64_t budget) {
  check_committee_size(e, k, w);
  check_budget(e, k, budget);
  SubsetSearch search(e, k, w, true);
  search.run();
  return std::move(search.winners());
}

std::int64_t max_score(const Election& e, std::size_t k, const OwaWeights& w, std::uint64_t budget) {
  check_committee_size(e, k, w);
  check_budget(e, k, budget);
  SubsetSearch search(e, k, w, false);
  search.run();
  return search.best();
}

RceAnswer solve_rce_av(const RceInstance& inst) { return solve_rce_av(inst, OwaWeights::av(inst.k)); }

RceAnswer solve_rce_av(const RceInstance& inst, const OwaWeights& w) {
  if (!w.is_av()) throw ConfigError("the AV solver requires approval voting weights");
  inst.check();
  const Election& after = inst.after;
  const std::size_t m = after.num_candidates();
  const std::size_t k = inst.k;
  if (k == 0) return answer_from(Committee{}, inst.committee, inst.ell);

  std::vector<std::size_t> score(m);
  for (CandidateId c = 0; c < m; ++c) score[c] = after.approvers(c).size();
  std::vector<CandidateId> order(m);
  for (CandidateId c = 0; c < m; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](CandidateId a, CandidateId b) { return score[a] > score[b]; });
  const std::size_t kth = score[order[k - 1]];

  std::vector<CandidateId> members;
  std::vector<CandidateId> equal_in_s;
  std::vector<CandidateId> equal_rest;
  for (CandidateId c = 0; c < m; ++c) {
    if (score[c] > kth) {
      members.push_back(c);
    } else if (score[c] == kth) {
      (inst.committee.contains(c) ? equal_in_s : equal_rest).push_back(c);
    }
  }
  const std::size_t need = k - members.size();
  if (!(members.size() < k && need <= equal_in_s.size() + equal_rest.size())) {
    throw std::logic_error("AV partition invariant 0 < k - |C_above| <= |C_equal| violated");
  }
  const std::size_t from_s = std::min(need, equal_in_s.size());
  members.insert(members.end(), equal_in_s.begin(), equal_in_s.begin() + static_cast<std::ptrdiff_t>(from_s));
  members.insert(members.end(), equal_rest.begin(),
                 equal_rest.begin() + static_cast<std::ptrdiff_t>(need - from_s));
  return answer_from(Committee(std::move(members)), inst.committee, inst.ell);
}

RceAnswer solve_rce_exhaustive(const RceInstance& inst, const OwaWeights& w, std::uint64_t budget) {
  inst.check();
  return closest_of(enumerate_winners(inst.after, inst.k, w, budget), inst.committee, inst.ell);
}

Committee ShrunkElection::lift(const Committee& reduced) const {
  std::vector<CandidateId> members;
  members.reserve(reduced.size());
  for (CandidateId c : reduced) members.push_back(to_original.at(c));
  return Committee(std::move(members));
}

ShrunkElection shrink_by_classes(const Election& after, const Committee& s, std::size_t k) {
  const std::size_t m = after.num_candidates();
  std::vector<std::uint8_t> keep(m, 0);
  for (CandidateId c : s) {
    if (c >= m) throw PreconditionError("committee member out of range");
    keep[c] = 1;
  }
  for (const CandidateClass& cls : candidate_classes(after)) {
    std::size_t in_s = 0;
    for (CandidateId c : cls.members) in_s += keep[c];
    std::size_t quota = k > in_s ? k - in_s : 0;
    for (CandidateId c : cls.members) {
      if (quota == 0) break;
      if (!s.contains(c)) {
        keep[c] = 1;
        --quota;
      }
    }
  }

  ShrunkElection out;
  std::vector<CandidateId> to_reduced(m, std::numeric_limits<CandidateId>::max());
  for (CandidateId c = 0; c < m; ++c) {
    if (keep[c]) {
      to_reduced[c] = static_cast<CandidateId>(out.to_original.size());
      out.to_original.push_back(c);
    }
  }
  std::vector<Ballot> ballots;
  ballots.reserve(after.num_voters());
  bool has_empty = after.allow_empty();
  for (const Ballot& b : after.ballots()) {
    Ballot reduced;
    for (CandidateId c : b) {
      if (keep[c]) reduced.push_back(to_reduced[c]);
    }
    has_empty |= reduced.empty();
    ballots.push_back(std::move(reduced));
  }
  out.election = Election(out.to_original.size(), std::move(ballots), has_empty);
  std::vector<CandidateId> reduced_s;
  for (CandidateId c : s) reduced_s.push_back(to_reduced[c]);
  out.committee = Committee(std::move(reduced_s));
  return out;
}

RceAnswer solve_rce_shrunk(const RceInstance& inst, const OwaWeights& w, std::uint64_t budget) {
  inst.check();
  ShrunkElection shrunk = shrink_by_classes(inst.after, inst.committee, inst.k);
  RceAnswer answer = closest_of(enumerate_winners(shrunk.election, inst.k, w, budget),
                                shrunk.committee, inst.ell);
  answer.witness = shrunk.lift(*answer.witness);
  return answer;
}

RceAnswer solve_rce_ccav_fpt_n(const RceInstance& inst, std::uint64_t budget) {
  inst.check();
  const Election& after = inst.after;
  const std::size_t n = after.num_voters();
  const std::size_t k = inst.k;
  const bool many_seats = n < 63 && k > (std::size_t{1} << n);
  if (!many_seats) return solve_rce_shrunk(inst, OwaWeights::cc(std::max<std::size_t>(k, 1)), budget);

  struct ClassInfo {
    std::uint64_t voters = 0;
    CandidateId representative = 0;
    bool from_s = false;
  };
  std::vector<ClassInfo> classes;
  for (const CandidateClass& cls : candidate_classes(after)) {
    if (cls.approvers.empty()) continue;
    ClassInfo info;
    for (VoterId v : cls.approvers) info.voters |= std::uint64_t{1} << v;
    info.representative = cls.members.front();
    for (CandidateId c : cls.members) {
      if (inst.committee.contains(c)) {
        info.representative = c;
        info.from_s = true;
        break;
      }
    }
    classes.push_back(info);
  }
  std::uint64_t target = 0;
  for (VoterId v = 0; v < n; ++v) {
    if (!after.ballot(v).empty()) target |= std::uint64_t{1} << v;
  }

  const std::size_t max_t = std::min(n, classes.size());
  std::uint64_t guesses = 0;
  for (std::size_t t = 0; t <= max_t; ++t) {
    guesses = std::min(guesses + binomial(classes.size(), t), std::numeric_limits<std::uint64_t>::max() - 1);
  }
  if (guesses > budget) {
    throw BudgetExceeded(std::to_string(guesses) + " class subsets exceed the search budget of " +
                         std::to_string(budget));
  }

  std::optional<Committee> best;
  std::size_t best_cost = 0;
  std::vector<std::size_t> pick;
  for (std::size_t t = 0; t <= max_t; ++t) {
    // Iterate t-combinations of classes in lexicographic order.
    pick.resize(t);
    for (std::size_t i = 0; i < t; ++i) pick[i] = i;
    while (true) {
      std::uint64_t covered = 0;
      std::size_t cost = 0;
      for (std::size_t i : pick) {
        covered |= classes[i].voters;
        cost += classes[i].from_s ? 0 : 1;
      }
      if (covered == target && (!best || cost <= best_cost)) {
        std::vector<CandidateId> members;
        for (std::size_t i : pick) members.push_back(classes[i].representative);
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
      std::size_t i = t;
      while (i > 0 && pick[i - 1] == classes.size() - t + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (best && best_cost == 0) break;
  }
  if (!best) throw std::logic_error("no covering set of candidate classes found");
  return answer_from(*best, inst.committee, inst.ell);
}

}  // namespace rce
