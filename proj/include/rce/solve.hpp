#pragma once

#include <cstdint>
#include <string>

#include "rce/exact.hpp"
#include "rce/greedy.hpp"
#include "rce/weights.hpp"

namespace rce {

enum class Solver { kAuto, kAv, kExhaustive, kCcavN, kGreedy, kGreedyCcN };

Solver parse_solver(const std::string& name);
std::string to_string(Solver solver);

// Solver `auto` picks for the rule and instance: greedy rules use
// greedy-cc-n for CC with k > 2^n and greedy otherwise; Thiele rules use av
// for AV, ccav-n for CC with k > 2^n, and class-shrunk exhaustive otherwise.
Solver choose_solver(const Rule& rule, const RceInstance& inst);

// Runs the selected solver. Throws ConfigError when the solver does not fit the rule.
RceAnswer solve_rce(const RceInstance& inst, const Rule& rule, Solver solver = Solver::kAuto,
                    std::uint64_t budget = kDefaultBudget);

// Whether s is a winning committee of e under the rule (parallel-universe
// tie-breaking for greedy rules).
bool committee_wins(const Election& e, const Committee& s, const Rule& rule,
                    std::uint64_t budget = kDefaultBudget);

}  // namespace rce
