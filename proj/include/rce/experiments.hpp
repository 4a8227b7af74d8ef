#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rce/samplers.hpp"
#include "rce/weights.hpp"

namespace rce {

enum class Experiment { kExp1, kExp2, kExp3 };
std::string to_string(Experiment which);

// Default base seed used when none is given; a constant, never the clock.
inline constexpr std::uint64_t kDefaultBaseSeed = 20240501;
inline constexpr const char* kArtifactVersion = "0.1.0";

struct ExperimentConfig {
  Experiment which = Experiment::kExp1;
  Rule rule = Rule(Rule::Family::kCc, true);
  SamplingModel model = OneD{};
  std::size_t n = 1000;
  std::size_t m = 100;
  std::size_t k = 10;
  std::size_t num_elections = 100;
  std::size_t trials = 100;
  std::vector<double> schedule = change_schedule();
  std::vector<ChangeOp> ops = {ChangeOp::kAdd, ChangeOp::kRemove, ChangeOp::kMix};
  std::size_t enumerate_cap = 100;  // Exp2
  double fixed_pct = 0.025;         // Exp3
  std::uint64_t base_seed = kDefaultBaseSeed;
  std::size_t threads = 0;          // 0 = all hardware threads

  // Experiment defaults: Exp2 and Exp3 use MIX only, Exp3 a single fixed percentage.
  static ExperimentConfig full(Experiment which);
  // 20 base elections x 50 trials.
  static ExperimentConfig desk(Experiment which);

  // Throws ConfigError for non-greedy rules, empty schedules, trials == 0, ...
  void validate() const;
};

// One CSV row. Which payload fields are meaningful depends on the experiment.
struct ExperimentRecord {
  std::size_t election_idx = 0;
  std::size_t trial_idx = 0;
  ChangeOp op = ChangeOp::kMix;
  std::size_t pct_idx = 0;
  double change_pct = 0.0;  // fraction, e.g. 0.025
  // Exp1
  std::size_t distance = 0;
  // Exp2
  std::size_t dist_lexi = 0;
  std::size_t dist_opt = 0;
  std::size_t tied_found = 0;
  // Exp3
  std::size_t round_idx = 0;  // 1-based selection round
  CandidateId candidate = 0;
  double replaced_fraction = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;  // canonical (election, op, pct, trial) order
  std::vector<std::string> skipped;       // one message per skipped trial
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string csv_header(Experiment which);
std::string to_csv(const ExperimentResult& result);
// JSON sidecar: config echo, artifact version, base seed, row count.
std::string manifest_json(const ExperimentResult& result);

// --- aggregation -----------------------------------------------------------

struct MeanPoint {
  ChangeOp op;
  std::size_t pct_idx;
  double change_pct;
  double mean;
  std::size_t count;
};
// Exp1: mean distance per (op, percentage), in schedule order per op.
std::vector<MeanPoint> exp1_means(const ExperimentResult& result);

struct TieSummary {
  std::size_t rows = 0;
  double fraction_positive = 0.0;  // diff > 0
  double fraction_at_least_3 = 0.0;
  double mean_diff = 0.0;
};
// Exp2 rows with the given percentage index (all rows when pct_idx is SIZE_MAX).
TieSummary exp2_summary(const std::vector<ExperimentRecord>& records, std::size_t pct_idx = SIZE_MAX);

// Exp3: mean replaced_fraction per selection round (index 0 = round 1).
std::vector<double> exp3_round_means(const ExperimentResult& result);

// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rce
