#include "rce/solve.hpp"

#include <algorithm>
#include <cstdint>

#include "rce/errors.hpp"

namespace rce {
namespace {

bool many_seats(const RceInstance& inst) {
  const std::size_t n = inst.after.num_voters();
  return n < 63 && inst.k > (std::size_t{1} << n);
}

}  // namespace

Solver parse_solver(const std::string& name) {
  if (name == "auto") return Solver::kAuto;
  if (name == "av") return Solver::kAv;
  if (name == "exhaustive") return Solver::kExhaustive;
  if (name == "ccav-n") return Solver::kCcavN;
  if (name == "greedy") return Solver::kGreedy;
  if (name == "greedy-cc-n") return Solver::kGreedyCcN;
  throw ConfigError("unknown solver '" + name +
                    "' (expected auto|av|exhaustive|ccav-n|greedy|greedy-cc-n)");
}

std::string to_string(Solver solver) {
  switch (solver) {
    case Solver::kAuto:
      return "auto";
    case Solver::kAv:
      return "av";
    case Solver::kExhaustive:
      return "exhaustive";
    case Solver::kCcavN:
      return "ccav-n";
    case Solver::kGreedy:
      return "greedy";
    case Solver::kGreedyCcN:
      return "greedy-cc-n";
  }
  return "?";
}

Solver choose_solver(const Rule& rule, const RceInstance& inst) {
  const OwaWeights w = rule.weights(std::max<std::size_t>(inst.k, 1));
  if (rule.greedy()) {
    if (w.is_av()) return Solver::kAv;  // greedy AV coincides with AV
    return w.is_cc() && many_seats(inst) ? Solver::kGreedyCcN : Solver::kGreedy;
  }
  if (w.is_av()) return Solver::kAv;
  if (w.is_cc() && many_seats(inst)) return Solver::kCcavN;
  return Solver::kExhaustive;
}

RceAnswer solve_rce(const RceInstance& inst, const Rule& rule, Solver solver, std::uint64_t budget) {
  inst.check();
  if (solver == Solver::kAuto) solver = choose_solver(rule, inst);
  const OwaWeights w = rule.weights(std::max<std::size_t>(inst.k, 1));
  const bool greedy_solver = solver == Solver::kGreedy || solver == Solver::kGreedyCcN;
  if (solver != Solver::kAv && greedy_solver != rule.greedy()) {
    throw ConfigError("solver '" + to_string(solver) + "' does not apply to rule '" +
                      rule.to_string() + "'");
  }
  switch (solver) {
    case Solver::kAv:
      return solve_rce_av(inst, w);
    case Solver::kExhaustive:
      return solve_rce_shrunk(inst, w, budget);
    case Solver::kCcavN:
      if (!w.is_cc()) throw ConfigError("solver 'ccav-n' requires the CC rule");
      return solve_rce_ccav_fpt_n(inst, budget);
    case Solver::kGreedy:
      return solve_rce_greedy(inst, w, true, budget);
    case Solver::kGreedyCcN:
      if (!w.is_cc()) throw ConfigError("solver 'greedy-cc-n' requires the greedy-cc rule");
      return solve_rce_greedycc_fpt_n(inst, budget);
    case Solver::kAuto:
      break;
  }
  throw std::logic_error("unreachable solver");
}

bool committee_wins(const Election& e, const Committee& s, const Rule& rule, std::uint64_t budget) {
  const std::size_t k = s.size();
  if (k > e.num_candidates()) throw PreconditionError("committee larger than the candidate set");
  const OwaWeights w = rule.weights(std::max<std::size_t>(k, 1));
  if (rule.greedy() && !w.is_av()) return greedy_reachable(e, k, w, s);
  if (w.is_av()) {
    std::size_t weakest_in = SIZE_MAX;
    std::size_t strongest_out = 0;
    for (CandidateId c = 0; c < e.num_candidates(); ++c) {
      const std::size_t score = e.approvers(c).size();
      if (s.contains(c)) {
        weakest_in = std::min(weakest_in, score);
      } else {
        strongest_out = std::max(strongest_out, score);
      }
    }
    return k == 0 || k == e.num_candidates() || weakest_in >= strongest_out;
  }
  const std::int64_t score = thiele_score(e, s, w).scaled;
  // Class shrinking keeps an optimal committee, so the maximum is unchanged.
  ShrunkElection shrunk = shrink_by_classes(e, s, k);
  return score == max_score(shrunk.election, k, w, budget);
}

}  // namespace rce
