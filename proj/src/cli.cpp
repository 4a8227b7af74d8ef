#include "rce/cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rce/codec.hpp"
#include "rce/errors.hpp"
#include "rce/exact.hpp"
#include "rce/experiments.hpp"
#include "rce/greedy.hpp"
#include "rce/reductions.hpp"
#include "rce/samplers.hpp"
#include "rce/solve.hpp"

namespace rce {
namespace {

struct Common {
  std::string rule;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
  std::size_t threads = 0;
};

void add_common(CLI::App* sub, Common& c, bool rule_required, const std::string& rule_default = {}) {
  auto* rule = sub->add_option("--rule", c.rule, "Rule: [greedy-](av|pav|cc|owa=q1,q2,...)");
  if (rule_required) rule->required();
  if (!rule_default.empty()) {
    c.rule = rule_default;
    rule->capture_default_str();
  }
  sub->add_option("--seed", c.seed, "Base random seed");
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  sub->add_flag("--quiet", c.quiet, "Suppress diagnostics on standard error");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

struct ModelArgs {
  std::string model = "1d";
  std::optional<double> tau;
  std::optional<double> p;
  std::optional<double> phi;
  std::size_t n = 1000;
  std::size_t m = 100;
};

void add_model(CLI::App* sub, ModelArgs& a) {
  sub->add_option("--model", a.model, "Sampler: 1d, 2d, resampling, 1d+res, 2d+res")
      ->check(CLI::IsMember({"1d", "2d", "resampling", "1d+res", "2d+res"}))
      ->capture_default_str();
  sub->add_option("--tau", a.tau, "Approval radius of Euclidean models");
  sub->add_option("--p", a.p, "Resampling: approval probability");
  sub->add_option("--phi", a.phi, "Resampling: resampling probability");
  sub->add_option("-n,--voters", a.n, "Number of voters")->capture_default_str();
  sub->add_option("-m,--candidates", a.m, "Number of candidates")->capture_default_str();
}

SamplingModel make_model(const ModelArgs& a) { return parse_model(a.model, a.tau, a.p, a.phi); }

class Output {
 public:
  Output(const std::string& path, std::ostream& out) : path_(path), out_(out) {}
  std::ostream& stream() { return path_.empty() ? out_ : buffer_; }
  void finish() {
    if (!path_.empty()) write_file(path_, buffer_.str());
  }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostringstream buffer_;
};

std::uint64_t require_seed(const Common& c, const std::string& command) {
  if (!c.seed) throw ConfigError(command + " requires an explicit --seed");
  return *c.seed;
}

std::vector<double> percent_list(const std::vector<double>& percents) {
  std::vector<double> out;
  for (double p : percents) out.push_back(p / 100.0);
  return out;
}

std::string join_spaced(const std::vector<CandidateId>& ids) {
  std::string s;
  for (CandidateId c : ids) s += (s.empty() ? "" : " ") + std::to_string(c);
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resilient committee elections: winners, RCE solvers, samplers and experiments", "rce"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  Common common;
  std::string election_path, committee_text, instance_path, graph_path, solver_name = "auto";
  std::string tie_mode = "lexi", op_name = "MIX", preset = "desk", manifest_path, positions_path;
  std::size_t k = 0, cap = 100, ell = 0, kappa = 0;
  std::optional<std::size_t> changes, elections, trials, cap_opt, k_opt;
  std::optional<double> pct;
  std::vector<double> pct_list;
  std::vector<std::string> ops;
  std::uint64_t budget = kDefaultBudget;
  bool skip_validation = false;
  ModelArgs model;

  auto* score = app.add_subcommand("score", "Exact lambda-score of a committee");
  add_common(score, common, true);
  score->add_option("--election", election_path, "Election (.app)")->required();
  score->add_option("--committee", committee_text, "Committee, e.g. 0,3,5")->required();

  auto* winners = app.add_subcommand("winners", "All winning committees (parallel universes for greedy rules)");
  add_common(winners, common, true);
  winners->add_option("--election", election_path, "Election (.app)")->required();
  winners->add_option("-k,--size", k, "Committee size")->required();
  winners->add_option("--cap", cap_opt, "Stop after this many committees (greedy rules)");
  winners->add_option("--budget", budget, "Search budget")->capture_default_str();

  auto* greedy = app.add_subcommand("greedy", "Run a greedy Thiele rule and log each round");
  add_common(greedy, common, true);
  greedy->add_option("--election", election_path, "Election (.app)")->required();
  greedy->add_option("-k,--size", k, "Committee size")->required();
  greedy->add_option("--ties", tie_mode, "Tie policy: lexi, enumerate")
      ->check(CLI::IsMember({"lexi", "enumerate"}))
      ->capture_default_str();
  greedy->add_option("--cap", cap, "Committee cap for --ties enumerate")->capture_default_str();

  auto* solve = app.add_subcommand("solve-rce", "Closest winning committee of the changed election");
  add_common(solve, common, true);
  solve->add_option("--instance", instance_path, "RCE instance (.json)")->required();
  solve->add_option("--solver", solver_name, "auto, av, exhaustive, ccav-n, greedy, greedy-cc-n")
      ->check(CLI::IsMember({"auto", "av", "exhaustive", "ccav-n", "greedy", "greedy-cc-n"}))
      ->capture_default_str();
  solve->add_option("--budget", budget, "Search budget")->capture_default_str();
  solve->add_flag("--no-validate", skip_validation, "Skip checking that S wins the original election");

  auto* sample = app.add_subcommand("sample", "Draw an approval election");
  add_common(sample, common, false);
  add_model(sample, model);
  sample->add_option("--positions", positions_path, "Write voter/candidate positions to this file");

  auto* perturb_cmd = app.add_subcommand("perturb", "Apply random approval changes to an election");
  add_common(perturb_cmd, common, false);
  perturb_cmd->add_option("--election", election_path, "Election (.app)")->required();
  perturb_cmd->add_option("--op", op_name, "ADD, REMOVE or MIX")->capture_default_str();
  auto* r_opt = perturb_cmd->add_option("-r,--changes", changes, "Number of changed approvals");
  auto* pct_opt = perturb_cmd->add_option("--pct", pct, "Changes as a percentage of all approvals");
  r_opt->excludes(pct_opt);
  pct_opt->excludes(r_opt);

  auto* reduce = app.add_subcommand("reduce-is", "Independent set instance to an RCE instance");
  add_common(reduce, common, true);
  reduce->add_option("--graph", graph_path, "Graph file")->required();
  reduce->add_option("--kappa", kappa, "Independent set size")->required();
  reduce->add_option("--ell", ell, "Distance bound written to the instance")->capture_default_str();

  std::vector<CLI::App*> exps;
  for (Experiment which : {Experiment::kExp1, Experiment::kExp2, Experiment::kExp3}) {
    const char* about = which == Experiment::kExp1   ? "Distance after random changes"
                        : which == Experiment::kExp2 ? "Lexicographic versus best tie-breaking"
                                                     : "Which greedy rounds get replaced";
    auto* sub = app.add_subcommand(to_string(which), about);
    add_common(sub, common, false, "greedy-cc");
    add_model(sub, model);
    sub->add_option("-k,--size", k_opt, "Committee size (default 10)");
    sub->add_option("--preset", preset, "desk (20 elections x 50 trials) or full (100 x 100)")
        ->check(CLI::IsMember({"desk", "full"}))
        ->capture_default_str();
    sub->add_option("--elections", elections, "Number of base elections");
    sub->add_option("--trials", trials, "Trials per point");
    sub->add_option("--manifest", manifest_path, "Manifest path (default: <out>.manifest.json)");
    if (which == Experiment::kExp1) {
      sub->add_option("--ops", ops, "Change operations (default: ADD REMOVE MIX)");
    }
    if (which == Experiment::kExp2) sub->add_option("--cap", cap_opt, "Tied committees enumerated");
    if (which == Experiment::kExp3) {
      sub->add_option("--pct", pct, "Change percentage (default 2.5)");
    } else {
      sub->add_option("--pct", pct_list, "Change percentages (default: 15-point quadratic schedule)");
    }
    exps.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kArtifactVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Output output(common.out, out);
    std::ostream& os = output.stream();
    auto note = [&](const std::string& msg) {
      if (!common.quiet) err << msg << "\n";
    };

    if (score->parsed()) {
      const Election e = load_election(election_path);
      const Committee s = parse_committee(committee_text);
      const Rule rule = Rule::parse(common.rule);
      if (rule.greedy()) throw ConfigError("score takes a Thiele rule (greedy rules have no score)");
      const Score result = thiele_score(e, s, rule.weights(std::max<std::size_t>(s.size(), 1)));
      os << "score " << to_string(result.value()) << "\n";
      os << "scaled " << result.scaled << "\n";
      os << "scale " << result.scale << "\n";
    } else if (winners->parsed()) {
      const Election e = load_election(election_path);
      const Rule rule = Rule::parse(common.rule);
      const OwaWeights w = rule.weights(k);
      if (rule.greedy()) {
        GreedyEnumeration found = greedy_enumerate(e, k, w, cap_opt.value_or(kUnlimited));
        for (const Committee& c : found.committees) os << format_committee(c) << "\n";
        if (found.truncated) note("stopped at the cap; more greedy winners may exist");
      } else {
        if (cap_opt) throw ConfigError("--cap applies to greedy rules only");
        for (const Committee& c : enumerate_winners(e, k, w, budget)) os << format_committee(c) << "\n";
      }
    } else if (greedy->parsed()) {
      const Election e = load_election(election_path);
      const OwaWeights w = Rule::parse(common.rule).weights(k);
      if (tie_mode == "lexi") {
        const GreedyRun run = greedy_run(e, k, w);
        os << "round,candidate,marginal,tied\n";
        for (std::size_t i = 0; i < run.order.size(); ++i) {
          os << i + 1 << "," << run.order[i] << ","
             << to_string(Rational(run.round_marginals[i], w.scale())) << ","
             << join_spaced(run.tie_sets[i]) << "\n";
        }
        os << "committee " << format_committee(run.committee()) << "\n";
      } else {
        GreedyEnumeration found = greedy_enumerate(e, k, w, cap);
        for (const Committee& c : found.committees) os << format_committee(c) << "\n";
        if (found.truncated) note("stopped at the cap; more greedy winners may exist");
      }
    } else if (solve->parsed()) {
      const RceInstance inst = load_instance(instance_path);
      const Rule rule = Rule::parse(common.rule);
      if (!skip_validation && !committee_wins(inst.before, inst.committee, rule, budget)) {
        throw PreconditionError("the committee does not win the original election under " +
                                rule.to_string());
      }
      Solver solver = parse_solver(solver_name);
      if (solver == Solver::kAuto) solver = choose_solver(rule, inst);
      note("solver " + to_string(solver));
      const RceAnswer answer = solve_rce(inst, rule, solver, budget);
      os << "feasible " << (answer.feasible ? "yes" : "no") << "\n";
      if (answer.min_distance) os << "min_distance " << *answer.min_distance << "\n";
      else os << "min_distance >" << inst.ell << "\n";
      if (answer.witness) os << "witness " << format_committee(*answer.witness) << "\n";
      output.finish();
      return answer.feasible ? kExitOk : kExitInfeasible;
    } else if (sample->parsed()) {
      const SamplerSpec spec{make_model(model), model.n, model.m, require_seed(common, "sample")};
      const Sample drawn = sample_with_positions(spec);
      os << format_election(drawn.election);
      if (!positions_path.empty()) write_file(positions_path, format_positions(drawn.positions));
    } else if (perturb_cmd->parsed()) {
      const Election e = load_election(election_path);
      const std::uint64_t seed = require_seed(common, "perturb");
      if (!changes && !pct) throw ConfigError("perturb needs -r or --pct");
      const std::size_t r = changes ? *changes : changes_for(e, *pct / 100.0);
      os << format_election(perturb(e, ChangeSpec{parse_change_op(op_name), r}, seed));
    } else if (reduce->parsed()) {
      const Graph g = parse_graph(read_file(graph_path));
      const Rule rule = Rule::parse(common.rule);
      if (rule.greedy()) throw ConfigError("reduce-is takes a Thiele rule");
      const OwaWeights w =
          rule.family() == Rule::Family::kCustom ? rule.weights(1) : rule.weights(kappa + 1);
      const ReductionOutput red = reduce_is_to_rce(g, kappa, w, ell);
      os << format_instance(red.instance);
    } else {
      std::size_t which = 0;
      while (!exps[which]->parsed()) ++which;
      const auto exp = static_cast<Experiment>(which);
      ExperimentConfig config = preset == "full" ? ExperimentConfig::full(exp) : ExperimentConfig::desk(exp);
      config.rule = Rule::parse(common.rule);
      config.model = make_model(model);
      config.n = model.n;
      config.m = model.m;
      if (k_opt) config.k = *k_opt;
      if (elections) config.num_elections = *elections;
      if (trials) config.trials = *trials;
      if (cap_opt) config.enumerate_cap = *cap_opt;
      if (!ops.empty()) {
        config.ops.clear();
        for (const std::string& op : ops) config.ops.push_back(parse_change_op(op));
      }
      if (!pct_list.empty()) config.schedule = percent_list(pct_list);
      if (pct) config.fixed_pct = *pct / 100.0;
      config.base_seed = common.seed.value_or(kDefaultBaseSeed);
      config.threads = common.threads;
      const ExperimentResult result = run_experiment(config);
      os << to_csv(result);
      std::string manifest = manifest_path;
      if (manifest.empty() && !common.out.empty()) manifest = common.out + ".manifest.json";
      if (!manifest.empty()) write_file(manifest, manifest_json(result));
      for (const std::string& msg : result.skipped) note("skipped " + msg);
      note(std::to_string(result.records.size()) + " rows");
    }
    output.finish();
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace rce
