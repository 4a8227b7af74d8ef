#include "rce/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <thread>

#include <json.hpp>

#include "rce/errors.hpp"
#include "rce/greedy.hpp"
#include "rce/rng.hpp"

namespace rce {
namespace {

constexpr std::uint64_t kElectionStream = 11;
constexpr std::uint64_t kTrialStream = 12;

std::string fixed(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// RFC 4180: quote fields containing separators, quotes or line breaks.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Committee lexicographic_winner(const Election& e, std::size_t k, const OwaWeights& w) {
  return greedy_run(e, k, w).committee();
}

class ElectionWorker {
 public:
  ElectionWorker(const ExperimentConfig& config, const OwaWeights& w) : config_(config), w_(w) {}

  void run(std::size_t election_idx, std::vector<ExperimentRecord>& rows,
           std::vector<std::string>& skipped) const {
    SamplerSpec spec{config_.model, config_.n, config_.m,
                     derive_seed(config_.base_seed, {kElectionStream, election_idx})};
    const Election e = sample_election(spec);
    const GreedyRun base = greedy_run(e, config_.k, w_);
    const Committee s = base.committee();

    if (config_.which == Experiment::kExp3) {
      run_exp3(election_idx, e, base, rows, skipped);
      return;
    }
    for (ChangeOp op : config_.ops) {
      for (std::size_t p = 0; p < config_.schedule.size(); ++p) {
        const std::size_t r = changes_for(e, config_.schedule[p]);
        for (std::size_t trial = 0; trial < config_.trials; ++trial) {
          ExperimentRecord row;
          row.election_idx = election_idx;
          row.trial_idx = trial;
          row.op = op;
          row.pct_idx = p;
          row.change_pct = config_.schedule[p];
          auto changed = perturbed(e, op, r, election_idx, p, trial, skipped);
          if (!changed) continue;
          const Committee lexi = lexicographic_winner(*changed, config_.k, w_);
          if (config_.which == Experiment::kExp1) {
            row.distance = committee_distance(s, lexi);
          } else {
            row.dist_lexi = committee_distance(s, lexi);
            GreedyEnumeration tied =
                greedy_enumerate(*changed, config_.k, w_, config_.enumerate_cap, s);
            // S'_lexi always belongs to the set S'_opt is chosen from.
            row.dist_opt = row.dist_lexi;
            for (const Committee& c : tied.committees) {
              row.dist_opt = std::min(row.dist_opt, committee_distance(s, c));
            }
            const bool has_lexi =
                std::binary_search(tied.committees.begin(), tied.committees.end(), lexi);
            row.tied_found = tied.committees.size() + (has_lexi ? 0 : 1);
          }
          rows.push_back(row);
        }
      }
    }
  }

 private:
  std::optional<Election> perturbed(const Election& e, ChangeOp op, std::size_t r,
                                    std::size_t election_idx, std::size_t pct_idx, std::size_t trial,
                                    std::vector<std::string>& skipped) const {
    const std::uint64_t seed = derive_seed(
        config_.base_seed, {kTrialStream, election_idx, static_cast<std::uint64_t>(op), pct_idx, trial});
    try {
      return perturb(e, ChangeSpec{op, r}, seed);
    } catch (const PreconditionError& err) {
      skipped.push_back("election " + std::to_string(election_idx) + " op " + to_string(op) +
                        " pct " + std::to_string(pct_idx) + " trial " + std::to_string(trial) +
                        ": " + err.what());
      return std::nullopt;
    }
  }

  void run_exp3(std::size_t election_idx, const Election& e, const GreedyRun& base,
                std::vector<ExperimentRecord>& rows, std::vector<std::string>& skipped) const {
    const std::size_t r = changes_for(e, config_.fixed_pct);
    std::vector<std::size_t> replaced(config_.k, 0);
    std::size_t completed = 0;
    for (std::size_t trial = 0; trial < config_.trials; ++trial) {
      auto changed = perturbed(e, ChangeOp::kMix, r, election_idx, 0, trial, skipped);
      if (!changed) continue;
      const Committee lexi = lexicographic_winner(*changed, config_.k, w_);
      for (std::size_t round = 0; round < config_.k; ++round) {
        if (!lexi.contains(base.order[round])) ++replaced[round];
      }
      ++completed;
    }
    if (completed == 0) return;
    for (std::size_t round = 0; round < config_.k; ++round) {
      ExperimentRecord row;
      row.election_idx = election_idx;
      row.trial_idx = completed;
      row.op = ChangeOp::kMix;
      row.change_pct = config_.fixed_pct;
      row.round_idx = round + 1;
      row.candidate = base.order[round];
      row.replaced_fraction = static_cast<double>(replaced[round]) / static_cast<double>(completed);
      rows.push_back(row);
    }
  }

  const ExperimentConfig& config_;
  const OwaWeights& w_;
};

}  // namespace

std::string to_string(Experiment which) {
  switch (which) {
    case Experiment::kExp1:
      return "exp1";
    case Experiment::kExp2:
      return "exp2";
    case Experiment::kExp3:
      return "exp3";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::full(Experiment which) {
  ExperimentConfig config;
  config.which = which;
  if (which != Experiment::kExp1) config.ops = {ChangeOp::kMix};
  if (which == Experiment::kExp3) config.schedule = {config.fixed_pct};
  return config;
}

ExperimentConfig ExperimentConfig::desk(Experiment which) {
  ExperimentConfig config = full(which);
  config.num_elections = 20;
  config.trials = 50;
  return config;
}

void ExperimentConfig::validate() const {
  if (!rule.greedy()) throw ConfigError("experiments use greedy rules (greedy-cc, greedy-pav, ...)");
  if (k == 0 || k > m) throw ConfigError("committee size must lie in [1, m]");
  if (trials == 0 || num_elections == 0) throw ConfigError("trials and elections must be positive");
  if (which != Experiment::kExp3 && schedule.empty()) throw ConfigError("empty change schedule");
  if (which != Experiment::kExp3 && ops.empty()) throw ConfigError("no change operations");
  for (double p : schedule) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("change percentages must lie in [0,1]");
  }
  if (which == Experiment::kExp2 && enumerate_cap == 0) throw ConfigError("enumeration cap must be >= 1");
  if (which == Experiment::kExp2 && (ops.size() != 1 || ops[0] != ChangeOp::kMix)) {
    throw ConfigError("experiment 2 uses the MIX operation only");
  }
  if (which == Experiment::kExp3 && !(fixed_pct >= 0.0 && fixed_pct <= 1.0)) {
    throw ConfigError("change percentage must lie in [0,1]");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const OwaWeights w = config.rule.weights(config.k);
  ExperimentResult result;
  result.config = config;
  if (result.config.which == Experiment::kExp3) {
    result.config.ops = {ChangeOp::kMix};
    result.config.schedule = {config.fixed_pct};
  }

  const ElectionWorker worker(result.config, w);
  std::vector<std::vector<ExperimentRecord>> rows(config.num_elections);
  std::vector<std::vector<std::string>> skipped(config.num_elections);
  std::size_t threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::clamp<std::size_t>(threads, 1, config.num_elections);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < config.num_elections; i = next++) {
      try {
        worker.run(i, rows[i], skipped[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.num_elections;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < config.num_elections; ++i) {
    result.records.insert(result.records.end(), rows[i].begin(), rows[i].end());
    result.skipped.insert(result.skipped.end(), skipped[i].begin(), skipped[i].end());
  }
  return result;
}

std::string csv_header(Experiment which) {
  switch (which) {
    case Experiment::kExp1:
      return "model,model_param,rule,op,change_pct,election_idx,trial_idx,distance";
    case Experiment::kExp2:
      return "model,model_param,rule,op,change_pct,election_idx,trial_idx,dist_lexi,dist_opt,diff,"
             "tied_found";
    case Experiment::kExp3:
      return "model,model_param,rule,op,change_pct,election_idx,trials,round_idx,candidate,"
             "replaced_fraction";
  }
  return {};
}

std::string to_csv(const ExperimentResult& result) {
  const ExperimentConfig& config = result.config;
  const std::string prefix = csv_field(model_name(config.model)) + "," +
                             csv_field(model_param(config.model)) + "," +
                             csv_field(config.rule.to_string()) + ",";
  std::string out = csv_header(config.which) + "\r\n";
  for (const ExperimentRecord& r : result.records) {
    out += prefix;
    out += to_string(r.op) + "," + fixed(100.0 * r.change_pct, 6) + "," +
           std::to_string(r.election_idx) + "," + std::to_string(r.trial_idx) + ",";
    switch (config.which) {
      case Experiment::kExp1:
        out += std::to_string(r.distance);
        break;
      case Experiment::kExp2:
        out += std::to_string(r.dist_lexi) + "," + std::to_string(r.dist_opt) + "," +
               std::to_string(r.dist_lexi - r.dist_opt) + "," + std::to_string(r.tied_found);
        break;
      case Experiment::kExp3:
        out += std::to_string(r.round_idx) + "," + std::to_string(r.candidate) + "," +
               fixed(r.replaced_fraction, 6);
        break;
    }
    out += "\r\n";
  }
  return out;
}

std::string manifest_json(const ExperimentResult& result) {
  const ExperimentConfig& c = result.config;
  nlohmann::ordered_json j;
  j["experiment"] = to_string(c.which);
  j["artifact_version"] = kArtifactVersion;
  j["base_seed"] = c.base_seed;
  nlohmann::ordered_json cfg;
  cfg["rule"] = c.rule.to_string();
  cfg["model"] = model_name(c.model);
  cfg["model_param"] = model_param(c.model);
  cfg["n"] = c.n;
  cfg["m"] = c.m;
  cfg["k"] = c.k;
  cfg["num_base_elections"] = c.num_elections;
  cfg["trials_per_point"] = c.trials;
  std::vector<std::string> ops;
  for (ChangeOp op : c.ops) ops.push_back(to_string(op));
  cfg["ops"] = ops;
  std::vector<std::string> schedule;
  for (double p : c.schedule) schedule.push_back(fixed(100.0 * p, 6));
  cfg["change_pct"] = schedule;
  if (c.which == Experiment::kExp2) cfg["enumerate_cap"] = c.enumerate_cap;
  if (c.which == Experiment::kExp3) cfg["fixed_pct"] = fixed(100.0 * c.fixed_pct, 6);
  j["config"] = cfg;
  j["columns"] = csv_header(c.which);
  j["rows"] = result.records.size();
  j["skipped"] = result.skipped.size();
  return j.dump(2) + "\n";
}

std::vector<MeanPoint> exp1_means(const ExperimentResult& result) {
  std::vector<MeanPoint> points;
  for (ChangeOp op : result.config.ops) {
    for (std::size_t p = 0; p < result.config.schedule.size(); ++p) {
      points.push_back({op, p, result.config.schedule[p], 0.0, 0});
    }
  }
  auto find = [&](ChangeOp op, std::size_t p) -> MeanPoint& {
    for (MeanPoint& point : points) {
      if (point.op == op && point.pct_idx == p) return point;
    }
    throw std::logic_error("record outside the configured grid");
  };
  for (const ExperimentRecord& r : result.records) {
    MeanPoint& point = find(r.op, r.pct_idx);
    point.mean += static_cast<double>(r.distance);
    ++point.count;
  }
  for (MeanPoint& point : points) {
    if (point.count > 0) point.mean /= static_cast<double>(point.count);
  }
  return points;
}

TieSummary exp2_summary(const std::vector<ExperimentRecord>& records, std::size_t pct_idx) {
  TieSummary summary;
  std::size_t positive = 0;
  std::size_t at_least_3 = 0;
  double total = 0.0;
  for (const ExperimentRecord& r : records) {
    if (pct_idx != SIZE_MAX && r.pct_idx != pct_idx) continue;
    const std::size_t diff = r.dist_lexi - r.dist_opt;
    ++summary.rows;
    positive += diff > 0;
    at_least_3 += diff >= 3;
    total += static_cast<double>(diff);
  }
  if (summary.rows > 0) {
    const auto rows = static_cast<double>(summary.rows);
    summary.fraction_positive = static_cast<double>(positive) / rows;
    summary.fraction_at_least_3 = static_cast<double>(at_least_3) / rows;
    summary.mean_diff = total / rows;
  }
  return summary;
}

std::vector<double> exp3_round_means(const ExperimentResult& result) {
  std::vector<double> sums(result.config.k, 0.0);
  std::vector<std::size_t> counts(result.config.k, 0);
  for (const ExperimentRecord& r : result.records) {
    sums[r.round_idx - 1] += r.replaced_fraction;
    ++counts[r.round_idx - 1];
  }
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (counts[i] > 0) sums[i] /= static_cast<double>(counts[i]);
  }
  return sums;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("spearman needs two equal series");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double average = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) rank[order[t]] = average;
      i = j + 1;
    }
    return rank;
  };
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    cov += (rx[i] - mean) * (ry[i] - mean);
    vx += (rx[i] - mean) * (rx[i] - mean);
    vy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (vx == 0.0 || vy == 0.0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

}  // namespace rce
