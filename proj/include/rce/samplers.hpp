#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rce/election.hpp"

namespace rce {

struct OneD {
  double radius = 0.051;
};
struct TwoD {
  double radius = 0.195;
};
struct Resampling {
  double p = 0.1;
  double phi = 0.75;
};
// Euclidean ballot as each voter's own central vote, then resampling with
// approval probability |ballot| / m.
struct EuclidResampling {
  int dim = 1;
  double radius = 0.051;
  double phi = 0.1;
};
using SamplingModel = std::variant<OneD, TwoD, Resampling, EuclidResampling>;

struct SamplerSpec {
  SamplingModel model;
  std::size_t n = 1000;
  std::size_t m = 100;
  std::uint64_t seed = 0;
};

// Short model name ("1d", "2d", "resampling", "1d+res", "2d+res") and its
// parameter string as written to experiment CSVs.
std::string model_name(const SamplingModel& model);
std::string model_param(const SamplingModel& model);

// Model from its short name and optional parameters (defaults as above;
// Euclidean+Resampling radii default to the plain model's). Throws ConfigError
// for unknown names or parameters that do not apply to the model.
SamplingModel parse_model(const std::string& name, std::optional<double> tau = std::nullopt,
                          std::optional<double> p = std::nullopt, std::optional<double> phi = std::nullopt);

// Voter and candidate positions of a Euclidean sample (empty for Resampling).
struct Positions {
  int dim = 0;
  std::vector<std::vector<double>> voters;
  std::vector<std::vector<double>> candidates;
};

struct Sample {
  Election election;
  Positions positions;
};

// Deterministic in spec.seed. Voter v and candidate c draw from substreams
// derived from (seed, role, index[, attempt]). Empty ballots are redrawn up
// to kMaxRedraws times, after which ConfigError is thrown.
Sample sample_with_positions(const SamplerSpec& spec);
Election sample_election(const SamplerSpec& spec);
std::string format_positions(const Positions& positions);

inline constexpr int kMaxRedraws = 1000;

enum class ChangeOp { kAdd, kRemove, kMix };
std::string to_string(ChangeOp op);
ChangeOp parse_change_op(const std::string& text);

struct ChangeSpec {
  ChangeOp op = ChangeOp::kMix;
  std::size_t r = 0;
};

// ADD: r uniformly random absent (voter, candidate) pairs become approvals;
// REMOVE: r random present pairs are dropped; MIX: floor(r/2) of each, both
// drawn from pools snapshotted on e (adds before removes). The result allows
// empty ballots. Throws PreconditionError when r exceeds the pool.
Election perturb(const Election& e, const ChangeSpec& change, std::uint64_t seed);

// floor(app(e) * pct).
std::size_t changes_for(const Election& e, double pct);

// pct_i = max * (i / (count - 1))^2, i = 0 .. count-1.
std::vector<double> change_schedule(std::size_t count = 15, double max = 0.10);

}  // namespace rce
