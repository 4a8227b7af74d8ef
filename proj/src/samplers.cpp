#include "rce/samplers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "rce/errors.hpp"
#include "rce/rng.hpp"

namespace rce {
namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kCandidateStream = 1;
constexpr std::uint64_t kVoterStream = 2;
constexpr std::uint64_t kCentralStream = 3;
constexpr std::uint64_t kPerturbStream = 4;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0,1]");
}

void check_radius(int dim, double radius) {
  const double limit = dim == 1 ? 1.0 : std::sqrt(2.0);
  if (!(radius >= 0.0 && radius <= limit)) {
    throw ConfigError(dim == 1 ? "1D radius must lie in [0,1]" : "2D radius must lie in [0,sqrt(2)]");
  }
}

std::vector<double> draw_point(Rng& rng, int dim) {
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (double& x : p) x = rng.uniform();
  return p;
}

bool within(const std::vector<double>& a, const std::vector<double>& b, double radius) {
  if (a.size() == 1) return std::fabs(a[0] - b[0]) <= radius;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sq) <= radius;
}

Ballot euclidean_ballot(const std::vector<double>& voter,
                        const std::vector<std::vector<double>>& candidates, double radius) {
  Ballot b;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (within(voter, candidates[c], radius)) b.push_back(static_cast<CandidateId>(c));
  }
  return b;
}

[[noreturn]] void too_many_redraws(std::size_t v) {
  throw ConfigError("voter " + std::to_string(v) + " still has an empty ballot after " +
                    std::to_string(kMaxRedraws) + " redraws");
}

Sample sample_euclidean(const SamplerSpec& spec, int dim, double radius, double phi, bool resample) {
  check_radius(dim, radius);
  check_unit(phi, "phi");
  Sample out;
  out.positions.dim = dim;
  for (std::size_t c = 0; c < spec.m; ++c) {
    Rng rng(derive_seed(spec.seed, {kCandidateStream, c}));
    out.positions.candidates.push_back(draw_point(rng, dim));
  }
  std::vector<Ballot> ballots;
  ballots.reserve(spec.n);
  for (std::size_t v = 0; v < spec.n; ++v) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxRedraws && !done; ++attempt) {
      Rng rng(derive_seed(spec.seed, {kVoterStream, v, static_cast<std::uint64_t>(attempt)}));
      std::vector<double> position = draw_point(rng, dim);
      Ballot ballot = euclidean_ballot(position, out.positions.candidates, radius);
      if (ballot.empty()) continue;
      if (resample) {
        const double p = static_cast<double>(ballot.size()) / static_cast<double>(spec.m);
        std::vector<std::uint8_t> central(spec.m, 0);
        for (CandidateId c : ballot) central[c] = 1;
        ballot.clear();
        for (std::size_t c = 0; c < spec.m; ++c) {
          const bool approve = rng.uniform() < phi ? rng.bernoulli(p) : central[c] != 0;
          if (approve) ballot.push_back(static_cast<CandidateId>(c));
        }
        if (ballot.empty()) continue;
      }
      out.positions.voters.push_back(std::move(position));
      ballots.push_back(std::move(ballot));
      done = true;
    }
    if (!done) too_many_redraws(v);
  }
  out.election = Election(spec.m, std::move(ballots));
  return out;
}

Sample sample_resampling(const SamplerSpec& spec, const Resampling& model) {
  check_unit(model.p, "p");
  check_unit(model.phi, "phi");
  Rng central_rng(derive_seed(spec.seed, {kCentralStream}));
  std::vector<CandidateId> order(spec.m);
  std::iota(order.begin(), order.end(), 0);
  const auto central_size = static_cast<std::size_t>(std::floor(model.p * static_cast<double>(spec.m)));
  for (std::size_t i = 0; i < central_size; ++i) {
    std::swap(order[i], order[i + central_rng.below(spec.m - i)]);
  }
  std::vector<std::uint8_t> central(spec.m, 0);
  for (std::size_t i = 0; i < central_size; ++i) central[order[i]] = 1;

  Sample out;
  std::vector<Ballot> ballots;
  ballots.reserve(spec.n);
  for (std::size_t v = 0; v < spec.n; ++v) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxRedraws && !done; ++attempt) {
      Rng rng(derive_seed(spec.seed, {kVoterStream, v, static_cast<std::uint64_t>(attempt)}));
      Ballot ballot;
      for (std::size_t c = 0; c < spec.m; ++c) {
        const bool approve = rng.uniform() < model.phi ? rng.bernoulli(model.p) : central[c] != 0;
        if (approve) ballot.push_back(static_cast<CandidateId>(c));
      }
      if (ballot.empty()) continue;
      ballots.push_back(std::move(ballot));
      done = true;
    }
    if (!done) too_many_redraws(v);
  }
  out.election = Election(spec.m, std::move(ballots));
  return out;
}

// Uniform r-subset of [0, pool) (Floyd's algorithm), ascending.
std::vector<std::uint64_t> sample_indices(Rng& rng, std::uint64_t pool, std::uint64_t r) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(r * 2);
  for (std::uint64_t j = pool - r; j < pool; ++j) {
    std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct Pair {
  VoterId voter;
  CandidateId candidate;
};

// Maps ascending indices into the concatenation, over voters, of each voter's
// absent (present = false) or approved (present = true) candidates.
std::vector<Pair> locate_pairs(const Election& e, const std::vector<std::uint64_t>& indices,
                               bool present) {
  std::vector<Pair> pairs;
  pairs.reserve(indices.size());
  const std::uint64_t m = e.num_candidates();
  std::uint64_t offset = 0;
  VoterId v = 0;
  for (std::uint64_t index : indices) {
    while (true) {
      const std::uint64_t size = present ? e.ballot(v).size() : m - e.ballot(v).size();
      if (index < offset + size) break;
      offset += size;
      ++v;
    }
    const Ballot& b = e.ballot(v);
    const std::uint64_t j = index - offset;
    if (present) {
      pairs.push_back({v, b[j]});
    } else {
      std::uint64_t c = j;
      for (CandidateId approved : b) {
        if (approved <= c) ++c;
      }
      pairs.push_back({v, static_cast<CandidateId>(c)});
    }
  }
  return pairs;
}

}  // namespace

SamplingModel parse_model(const std::string& name, std::optional<double> tau, std::optional<double> p,
                          std::optional<double> phi) {
  if (name == "1d" || name == "2d") {
    if (p || phi) throw ConfigError("p and phi apply to resampling models only");
    if (name == "1d") return OneD{tau.value_or(OneD{}.radius)};
    return TwoD{tau.value_or(TwoD{}.radius)};
  }
  if (name == "resampling") {
    if (tau) throw ConfigError("tau applies to Euclidean models only");
    Resampling r;
    r.p = p.value_or(r.p);
    r.phi = phi.value_or(r.phi);
    return r;
  }
  if (name == "1d+res" || name == "2d+res") {
    if (p) throw ConfigError("p does not apply to " + name);
    EuclidResampling r;
    r.dim = name == "1d+res" ? 1 : 2;
    r.radius = tau.value_or(r.dim == 1 ? OneD{}.radius : TwoD{}.radius);
    r.phi = phi.value_or(r.phi);
    return r;
  }
  throw ConfigError("unknown model '" + name + "' (expected 1d, 2d, resampling, 1d+res, 2d+res)");
}

std::string model_name(const SamplingModel& model) {
  struct Visitor {
    std::string operator()(const OneD&) const { return "1d"; }
    std::string operator()(const TwoD&) const { return "2d"; }
    std::string operator()(const Resampling&) const { return "resampling"; }
    std::string operator()(const EuclidResampling& m) const { return m.dim == 1 ? "1d+res" : "2d+res"; }
  };
  return std::visit(Visitor{}, model);
}

std::string model_param(const SamplingModel& model) {
  struct Visitor {
    std::string operator()(const OneD& m) const { return format_double(m.radius); }
    std::string operator()(const TwoD& m) const { return format_double(m.radius); }
    std::string operator()(const Resampling& m) const {
      return "p=" + format_double(m.p) + ";phi=" + format_double(m.phi);
    }
    std::string operator()(const EuclidResampling& m) const {
      return format_double(m.radius) + ";phi=" + format_double(m.phi);
    }
  };
  return std::visit(Visitor{}, model);
}

Sample sample_with_positions(const SamplerSpec& spec) {
  if (spec.n == 0 || spec.m == 0) throw ConfigError("n and m must be positive");
  struct Visitor {
    const SamplerSpec& spec;
    Sample operator()(const OneD& m) const { return sample_euclidean(spec, 1, m.radius, 0.0, false); }
    Sample operator()(const TwoD& m) const { return sample_euclidean(spec, 2, m.radius, 0.0, false); }
    Sample operator()(const Resampling& m) const { return sample_resampling(spec, m); }
    Sample operator()(const EuclidResampling& m) const {
      if (m.dim != 1 && m.dim != 2) throw ConfigError("Euclidean dimension must be 1 or 2");
      return sample_euclidean(spec, m.dim, m.radius, m.phi, true);
    }
  };
  return std::visit(Visitor{spec}, spec.model);
}

Election sample_election(const SamplerSpec& spec) { return sample_with_positions(spec).election; }

std::string format_positions(const Positions& positions) {
  std::string out;
  char buf[64];
  auto emit = [&](char role, std::size_t index, const std::vector<double>& p) {
    out += role;
    out += ' ';
    out += std::to_string(index);
    for (double x : p) {
      std::snprintf(buf, sizeof buf, " %.17g", x);
      out += buf;
    }
    out += '\n';
  };
  for (std::size_t c = 0; c < positions.candidates.size(); ++c) emit('c', c, positions.candidates[c]);
  for (std::size_t v = 0; v < positions.voters.size(); ++v) emit('v', v, positions.voters[v]);
  return out;
}

std::string to_string(ChangeOp op) {
  switch (op) {
    case ChangeOp::kAdd:
      return "ADD";
    case ChangeOp::kRemove:
      return "REMOVE";
    case ChangeOp::kMix:
      return "MIX";
  }
  return "?";
}

ChangeOp parse_change_op(const std::string& text) {
  std::string upper = text;
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (upper == "ADD") return ChangeOp::kAdd;
  if (upper == "REMOVE") return ChangeOp::kRemove;
  if (upper == "MIX") return ChangeOp::kMix;
  throw ConfigError("unknown change operation '" + text + "' (expected add|remove|mix)");
}

Election perturb(const Election& e, const ChangeSpec& change, std::uint64_t seed) {
  const std::uint64_t present_pool = e.total_approvals();
  const std::uint64_t absent_pool =
      static_cast<std::uint64_t>(e.num_voters()) * e.num_candidates() - present_pool;
  std::uint64_t adds = 0;
  std::uint64_t removes = 0;
  switch (change.op) {
    case ChangeOp::kAdd:
      adds = change.r;
      break;
    case ChangeOp::kRemove:
      removes = change.r;
      break;
    case ChangeOp::kMix:
      adds = removes = change.r / 2;
      break;
  }
  if (adds > absent_pool) {
    throw PreconditionError("cannot add " + std::to_string(adds) + " approvals: only " +
                            std::to_string(absent_pool) + " absent pairs");
  }
  if (removes > present_pool) {
    throw PreconditionError("cannot remove " + std::to_string(removes) + " approvals: only " +
                            std::to_string(present_pool) + " present");
  }

  Rng rng(derive_seed(seed, {kPerturbStream}));
  std::vector<Pair> added = locate_pairs(e, sample_indices(rng, absent_pool, adds), false);
  std::vector<Pair> removed = locate_pairs(e, sample_indices(rng, present_pool, removes), true);

  std::vector<Ballot> ballots(e.ballots().begin(), e.ballots().end());
  for (const Pair& p : removed) {
    Ballot& b = ballots[p.voter];
    b.erase(std::lower_bound(b.begin(), b.end(), p.candidate));
  }
  for (const Pair& p : added) {
    Ballot& b = ballots[p.voter];
    b.insert(std::lower_bound(b.begin(), b.end(), p.candidate), p.candidate);
  }
  return Election(e.num_candidates(), std::move(ballots), true);
}

std::size_t changes_for(const Election& e, double pct) {
  // The small slack keeps exact products such as 10000 * 0.025 from rounding down.
  return static_cast<std::size_t>(std::floor(static_cast<double>(e.total_approvals()) * pct + 1e-9));
}

std::vector<double> change_schedule(std::size_t count, double max) {
  if (count < 2) throw PreconditionError("change schedule needs at least two points");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(max * x * x);
  }
  return out;
}

}  // namespace rce
