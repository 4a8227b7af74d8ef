// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if any fails.
// Optional arguments select criteria by name substring.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "rce/exact.hpp"
#include "rce/experiments.hpp"
#include "rce/greedy.hpp"
#include "rce/reductions.hpp"

using namespace rce;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome av_oracle() {
  std::mt19937_64 gen(1001);
  const auto start = Clock::now();
  std::size_t mismatches = 0, oracle_mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + gen() % 8;
    const std::size_t m = 1 + gen() % 12;
    const std::size_t k = 1 + gen() % std::min<std::size_t>(m, 4);
    const double density = 0.15 + 0.5 * static_cast<double>(gen() % 100) / 100.0;
    const Election before = oracle::random_election(gen, n, m, density);
    const Election after = oracle::related_election(gen, before, density);
    const Committee s = oracle::pick(gen, enumerate_winners(before, k, OwaWeights::av(k)));
    const RceInstance inst{before, after, k, s, k};
    const RceAnswer fast = solve_rce_av(inst);
    const RceAnswer slow = solve_rce_exhaustive(inst, OwaWeights::av(k));
    if (fast.min_distance != slow.min_distance) ++mismatches;
    if (*fast.min_distance != oracle::min_distance_over(oracle::winners(after, k, oracle::lambda_av), s)) {
      ++oracle_mismatches;
    }
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && oracle_mismatches == 0 && secs < 10.0,
          fmt("1000 instances, %zu mismatches vs exhaustive, %zu vs brute force, %.2f s (limit 10 s)", mismatches,
              oracle_mismatches, secs)};
}

Outcome cc_parameterized() {
  std::mt19937_64 gen(2002);
  std::size_t fpt_bad = 0, shrunk_bad = 0, covering = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + gen() % 4;
    const std::size_t m = 1 + gen() % 10;
    const std::size_t k = 1 + gen() % m;
    const double density = 0.1 + 0.5 * static_cast<double>(gen() % 100) / 100.0;
    const Election before = oracle::random_election(gen, n, m, density);
    const Election after = oracle::related_election(gen, before, density);
    const OwaWeights w = OwaWeights::cc(k);
    const Committee s = oracle::pick(gen, enumerate_winners(before, k, w));
    const RceInstance inst{before, after, k, s, k};
    const RceAnswer truth = solve_rce_exhaustive(inst, w);
    const RceAnswer fpt = solve_rce_ccav_fpt_n(inst);
    const RceAnswer shrunk = solve_rce_shrunk(inst, w);
    if (n < 63 && k > (std::size_t{1} << n)) ++covering;
    auto wins = [&](const RceAnswer& a) {
      return a.witness && thiele_score(after, *a.witness, w).scaled == max_score(after, k, w);
    };
    if (fpt.min_distance != truth.min_distance || !wins(fpt)) ++fpt_bad;
    if (shrunk.min_distance != truth.min_distance || !wins(shrunk)) ++shrunk_bad;
  }
  return {fpt_bad == 0 && shrunk_bad == 0,
          fmt("1000 CC instances (%zu with k > 2^n), ccav-n mismatches %zu, class-shrunk mismatches %zu", covering,
              fpt_bad, shrunk_bad)};
}

Outcome greedy_correctness() {
  std::mt19937_64 gen(3003);
  const auto start = Clock::now();
  std::size_t dp_bad = 0, swap_bad = 0, checked_sets = 0;
  struct RuleCase {
    OwaWeights (*weights)(std::size_t);
    oracle::Lambda lambda;
  };
  const RuleCase rules[] = {{&OwaWeights::cc, oracle::lambda_cc}, {&OwaWeights::pav, oracle::lambda_pav}};
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + gen() % 6;
    const std::size_t m = 1 + gen() % 8;
    const std::size_t k = 1 + gen() % std::min<std::size_t>(m, 4);
    const double density = 0.15 + 0.5 * static_cast<double>(gen() % 100) / 100.0;
    const Election before = oracle::random_election(gen, n, m, density);
    const Election after = oracle::related_election(gen, before, density);
    for (const RuleCase& r : rules) {
      const OwaWeights w = r.weights(k);
      for (const Committee& t : oracle::all_committees(m, k)) {
        ++checked_sets;
        if (greedy_reachable(after, k, w, t) != oracle::greedy_reachable_by_permutations(after, t, r.lambda)) ++dp_bad;
      }
      const auto starts = oracle::greedy_winners(before, k, r.lambda);
      const Committee s = oracle::pick(gen, std::vector<Committee>(starts.begin(), starts.end()));
      const auto targets = oracle::greedy_winners(after, k, r.lambda);
      const std::size_t expected =
          oracle::min_distance_over(std::vector<Committee>(targets.begin(), targets.end()), s);
      const RceAnswer answer = solve_rce_greedy({before, after, k, s, k}, w);
      if (answer.min_distance != expected || !answer.witness || targets.count(*answer.witness) == 0) ++swap_bad;
    }
  }
  const double secs = seconds_since(start);
  return {dp_bad == 0 && swap_bad == 0 && secs < 60.0,
          fmt("500 instances x {CC, PAV}: subset DP disagreements %zu of %zu sets, swap-search mismatches %zu, "
              "%.2f s (limit 60 s)",
              dp_bad, checked_sets, swap_bad, secs)};
}

Outcome reduction_oracle() {
  std::size_t graphs = 0, six = 0, upto5 = 0, violations = 0, cases = 0;
  for (std::size_t nv = 1; nv <= 6; ++nv) {
    const auto all = oracle::nonisomorphic_graphs(nv);
    graphs += all.size();
    (nv == 6 ? six : upto5) += all.size();
    for (const oracle::Edges& edges : all) {
      const Graph g(nv, edges);
      for (std::size_t kappa = 1; kappa <= 3; ++kappa) {
        const bool has_is = oracle::independent_set_exists(nv, edges, kappa);
        if (has_independent_set(g, kappa) != has_is) ++violations;
        for (auto [name, lambda] : {std::pair{"pav", oracle::Lambda(oracle::lambda_pav)},
                                    std::pair{"cc", oracle::Lambda(oracle::lambda_cc)}}) {
          const OwaWeights w = Rule::parse(name).weights(kappa + 1);
          const ReductionOutput red = reduce_is_to_rce(g, kappa, w);
          const RceInstance& inst = red.instance;
          std::vector<CandidateId> members = red.dummies;
          members.insert(members.end(), red.padding.begin(), red.padding.end());
          const Committee d(members);
          const auto before = oracle::winners(inst.before, inst.k, lambda);
          const auto after = oracle::winners(inst.after, inst.k, lambda);
          const bool wins_before = std::find(before.begin(), before.end(), d) != before.end();
          const bool wins_after = std::find(after.begin(), after.end(), d) != after.end();
          ++cases;
          if (!wins_before || wins_after == has_is || election_distance(inst.before, inst.after) != 1 ||
              inst.committee != d) {
            ++violations;
          }
        }
      }
    }
  }
  return {violations == 0 && six == 156,
          fmt("%zu graphs on 1..6 vertices (%zu on <=5, %zu on exactly 6; 156 expected), %zu (graph, kappa, rule) "
              "cases, %zu violations",
              graphs, upto5, six, cases, violations)};
}

Outcome exp1_reproduction() {
  ExperimentConfig config = ExperimentConfig::full(Experiment::kExp1);
  config.ops = {ChangeOp::kMix};
  config.schedule = {0.01, 0.10};
  const auto means = exp1_means(run_experiment(config));
  const double at1 = means[0].mean, at10 = means[1].mean;
  const bool ok = std::abs(at1 - 2.0) <= 0.5 && std::abs(at10 - 5.0) <= 1.0;
  return {ok, fmt("greedy-cc, 1d tau=0.051, MIX, 100x100: mean distance %.3f at 1%% (target 2.0 +- 0.5), %.3f at "
                  "10%% (target 5.0 +- 1.0)",
                  at1, at10)};
}

Outcome exp2_reproduction() {
  std::vector<ExperimentRecord> pooled;
  std::string cells;
  for (const char* rule : {"greedy-cc", "greedy-pav"}) {
    for (const SamplingModel& model : {SamplingModel(OneD{}), SamplingModel(TwoD{})}) {
      ExperimentConfig config = ExperimentConfig::full(Experiment::kExp2);
      config.rule = Rule::parse(rule);
      config.model = model;
      config.schedule = {change_schedule()[5]};
      const ExperimentResult result = run_experiment(config);
      const TieSummary cell = exp2_summary(result.records);
      cells += fmt(" %s/%s %.3f/%.3f;", rule, model_name(model).c_str(), cell.fraction_positive,
                   cell.fraction_at_least_3);
      pooled.insert(pooled.end(), result.records.begin(), result.records.end());
    }
  }
  const TieSummary s = exp2_summary(pooled);
  const bool ok = s.fraction_positive >= 0.23 && s.fraction_positive <= 0.43 && s.fraction_at_least_3 >= 0.03 &&
                  s.fraction_at_least_3 <= 0.13;
  return {ok, fmt("pct=%.4f%%, cap 100, %zu rows: diff>0 %.3f (in [0.23, 0.43]), diff>=3 %.3f (in [0.03, 0.13]); "
                  "per cell diff>0/diff>=3:%s",
                  100.0 * change_schedule()[5], s.rows, s.fraction_positive, s.fraction_at_least_3, cells.c_str())};
}

Outcome exp3_property() {
  int hits = 0;
  std::string cells;
  for (const char* rule : {"greedy-cc", "greedy-pav"}) {
    for (const SamplingModel& model : {SamplingModel(OneD{}), SamplingModel(TwoD{})}) {
      ExperimentConfig config = ExperimentConfig::full(Experiment::kExp3);
      config.rule = Rule::parse(rule);
      config.model = model;
      const std::vector<double> means = exp3_round_means(run_experiment(config));
      const auto top = std::max_element(means.begin(), means.end());
      const bool last = static_cast<std::size_t>(top - means.begin()) == means.size() - 1 &&
                        std::count(means.begin(), means.end(), *top) == 1;
      hits += last;
      cells += fmt(" %s/%s round-k %.3f vs max earlier %.3f%s;", rule, model_name(model).c_str(), means.back(),
                   *std::max_element(means.begin(), means.end() - 1), last ? "" : " (not highest)");
    }
  }
  return {hits >= 3, fmt("round k highest in %d of 4 cells (need 3):%s", hits, cells.c_str())};
}

Outcome determinism() {
  std::size_t differing = 0;
  std::string sizes;
  for (Experiment which : {Experiment::kExp1, Experiment::kExp2, Experiment::kExp3}) {
    ExperimentConfig config = ExperimentConfig::desk(which);
    config.rule = Rule::parse(which == Experiment::kExp2 ? "greedy-pav" : "greedy-cc");
    config.model = which == Experiment::kExp3 ? SamplingModel(TwoD{}) : SamplingModel(OneD{});
    config.threads = 1;
    const std::string first = to_csv(run_experiment(config));
    const std::string second = to_csv(run_experiment(config));
    config.threads = 4;
    const std::string threaded = to_csv(run_experiment(config));
    differing += (first != second) + (first != threaded);
    sizes += fmt(" %s %zu bytes;", to_string(which).c_str(), first.size());
  }
  return {differing == 0, fmt("desk presets run twice (1 thread) and once with 4 threads, %zu differing CSVs:%s",
                              differing, sizes.c_str())};
}

Outcome exact_arithmetic() {
  std::mt19937_64 gen(9009);
  std::size_t disagreements = 0, ties = 0, pairs = 0;
  while (pairs < 100000) {
    const std::size_t m = 4 + gen() % 17;
    const std::size_t k = 1 + gen() % std::min<std::size_t>(m, 10);
    const Election e = oracle::random_election(gen, 1 + gen() % 12, m, 0.2 + 0.5 * static_cast<double>(gen() % 10) / 10.0);
    const OwaWeights w = OwaWeights::pav(k);
    const auto committees = oracle::all_committees(m, k);
    for (int j = 0; j < 100 && pairs < 100000; ++j, ++pairs) {
      const Committee& a = oracle::pick(gen, committees);
      const Committee& b = oracle::pick(gen, committees);
      const std::int64_t fa = thiele_score(e, a, w).scaled, fb = thiele_score(e, b, w).scaled;
      const Rational ra = oracle::score(e, a, oracle::lambda_pav), rb = oracle::score(e, b, oracle::lambda_pav);
      const int fast = (fa > fb) - (fa < fb);
      const int exact = (ra > rb) - (ra < rb);
      ties += exact == 0;
      if (fast != exact) ++disagreements;
    }
  }
  return {disagreements == 0,
          fmt("%zu PAV committee pairs (%zu exact ties), %zu disagreements between scaled integers and rationals",
              pairs, ties, disagreements)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"av-oracle-equivalence", av_oracle},
      {"cc-parameterized-equivalence", cc_parameterized},
      {"greedy-correctness", greedy_correctness},
      {"reduction-oracle", reduction_oracle},
      {"exp1-reproduction", exp1_reproduction},
      {"exp2-reproduction", exp2_reproduction},
      {"exp3-last-round-weakest", exp3_property},
      {"determinism", determinism},
      {"exact-arithmetic", exact_arithmetic},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    if (argc > 1) {
      bool selected = false;
      for (int i = 1; i < argc; ++i) selected |= std::string(name).find(argv[i]) != std::string::npos;
      if (!selected) continue;
    }
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& err) {
      outcome = {false, std::string("exception: ") + err.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %s: %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
