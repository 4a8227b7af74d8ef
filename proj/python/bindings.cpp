#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rce/codec.hpp"
#include "rce/errors.hpp"
#include "rce/exact.hpp"
#include "rce/experiments.hpp"
#include "rce/greedy.hpp"
#include "rce/reductions.hpp"
#include "rce/samplers.hpp"
#include "rce/solve.hpp"

namespace py = pybind11;
using namespace rce;

namespace {

Committee to_committee(const std::vector<CandidateId>& members) { return Committee(members); }

std::vector<CandidateId> to_list(const Committee& c) { return {c.begin(), c.end()}; }

std::vector<std::vector<CandidateId>> to_lists(const std::vector<Committee>& cs) {
  std::vector<std::vector<CandidateId>> out;
  for (const Committee& c : cs) out.push_back(to_list(c));
  return out;
}

std::vector<Ballot> ballots_of(const Election& e) { return {e.ballots().begin(), e.ballots().end()}; }

py::dict answer_dict(const RceAnswer& a) {
  py::dict d;
  d["feasible"] = a.feasible;
  d["min_distance"] = a.min_distance ? py::cast(*a.min_distance) : py::none();
  d["witness"] = a.witness ? py::cast(to_list(*a.witness)) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_rce, m) {
  m.doc() = "Resilient committee elections: Thiele and greedy winners, RCE solvers, samplers, experiments";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ForcedOrderError>(m, "ForcedOrderError", PyExc_ValueError);

  py::class_<Election>(m, "Election")
      .def(py::init<std::size_t, std::vector<Ballot>, bool>(), py::arg("m"), py::arg("ballots"),
           py::arg("allow_empty") = false)
      .def_property_readonly("num_candidates", &Election::num_candidates)
      .def_property_readonly("num_voters", &Election::num_voters)
      .def_property_readonly("total_approvals", &Election::total_approvals)
      .def_property_readonly("allow_empty", &Election::allow_empty)
      .def_property_readonly("ballots", &ballots_of)
      .def("__eq__", [](const Election& a, const Election& b) { return a == b; })
      .def("__repr__", [](const Election& e) {
        return "Election(m=" + std::to_string(e.num_candidates()) + ", n=" + std::to_string(e.num_voters()) + ")";
      });

  m.def("parse_election", [](const std::string& text) { return parse_election(text); });
  m.def("format_election", &format_election);
  m.def("load_election", [](const std::string& path) { return load_election(path); });
  m.def("save_election", [](const Election& e, const std::string& path) { save_election(e, path); });
  m.def("election_distance", &election_distance);
  m.def("committee_distance", [](const std::vector<CandidateId>& s, const std::vector<CandidateId>& t) {
    return committee_distance(to_committee(s), to_committee(t));
  });
  m.def("candidate_classes", [](const Election& e) {
    std::vector<std::vector<CandidateId>> out;
    for (const CandidateClass& c : candidate_classes(e)) out.push_back(c.members);
    return out;
  });

  m.def(
      "thiele_score_scaled",
      [](const Election& e, const std::vector<CandidateId>& s, const std::string& rule) {
        const Score sc = thiele_score(e, to_committee(s), Rule::parse(rule).weights(std::max<std::size_t>(s.size(), 1)));
        return std::pair{sc.scaled, sc.scale};
      },
      py::arg("election"), py::arg("committee"), py::arg("rule"));
  m.def(
      "marginal_contribution_scaled",
      [](const Election& e, const std::vector<CandidateId>& s, CandidateId c, const std::string& rule) {
        const OwaWeights w = Rule::parse(rule).weights(s.size() + 1);
        return std::pair{marginal_contribution(e, to_committee(s), c, w), w.scale()};
      },
      py::arg("election"), py::arg("committee"), py::arg("candidate"), py::arg("rule"));

  m.def(
      "winners",
      [](const Election& e, std::size_t k, const std::string& rule, std::optional<std::size_t> cap,
         std::uint64_t budget) {
        const Rule r = Rule::parse(rule);
        if (r.greedy()) return to_lists(greedy_enumerate(e, k, r.weights(k), cap.value_or(kUnlimited)).committees);
        return to_lists(enumerate_winners(e, k, r.weights(k), budget));
      },
      py::arg("election"), py::arg("k"), py::arg("rule"), py::arg("cap") = py::none(),
      py::arg("budget") = kDefaultBudget);

  m.def(
      "greedy_run",
      [](const Election& e, std::size_t k, const std::string& rule) {
        const OwaWeights w = Rule::parse(rule).weights(k);
        const GreedyRun run = greedy_run(e, k, w);
        py::dict d;
        d["order"] = run.order;
        d["marginals_scaled"] = run.round_marginals;
        d["scale"] = w.scale();
        d["tie_sets"] = run.tie_sets;
        return d;
      },
      py::arg("election"), py::arg("k"), py::arg("rule"));
  m.def(
      "greedy_reachable",
      [](const Election& e, const std::vector<CandidateId>& t, const std::string& rule) {
        return greedy_reachable(e, t.size(), Rule::parse(rule).weights(t.size()), to_committee(t));
      },
      py::arg("election"), py::arg("committee"), py::arg("rule"));

  py::class_<RceInstance>(m, "RceInstance")
      .def(py::init([](Election before, Election after, std::size_t k, const std::vector<CandidateId>& s,
                       std::size_t ell) {
             RceInstance inst{std::move(before), std::move(after), k, to_committee(s), ell};
             inst.check();
             return inst;
           }),
           py::arg("before"), py::arg("after"), py::arg("k"), py::arg("committee"), py::arg("ell"))
      .def_readonly("before", &RceInstance::before)
      .def_readonly("after", &RceInstance::after)
      .def_readonly("k", &RceInstance::k)
      .def_readonly("ell", &RceInstance::ell)
      .def_property_readonly("committee", [](const RceInstance& i) { return to_list(i.committee); })
      .def("__eq__", [](const RceInstance& a, const RceInstance& b) { return a == b; });
  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); });
  m.def("format_instance", &format_instance);

  m.def(
      "solve_rce",
      [](const RceInstance& inst, const std::string& rule, const std::string& solver, std::uint64_t budget) {
        return answer_dict(solve_rce(inst, Rule::parse(rule), parse_solver(solver), budget));
      },
      py::arg("instance"), py::arg("rule"), py::arg("solver") = "auto", py::arg("budget") = kDefaultBudget);
  m.def(
      "committee_wins",
      [](const Election& e, const std::vector<CandidateId>& s, const std::string& rule) {
        return committee_wins(e, to_committee(s), Rule::parse(rule));
      },
      py::arg("election"), py::arg("committee"), py::arg("rule"));

  m.def(
      "sample_election",
      [](const std::string& model, std::size_t n, std::size_t m_, std::uint64_t seed, std::optional<double> tau,
         std::optional<double> p, std::optional<double> phi) {
        return sample_election({parse_model(model, tau, p, phi), n, m_, seed});
      },
      py::arg("model"), py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("tau") = py::none(),
      py::arg("p") = py::none(), py::arg("phi") = py::none());
  m.def(
      "perturb",
      [](const Election& e, const std::string& op, std::size_t r, std::uint64_t seed) {
        return perturb(e, ChangeSpec{parse_change_op(op), r}, seed);
      },
      py::arg("election"), py::arg("op"), py::arg("r"), py::arg("seed"));
  m.def("changes_for", &changes_for, py::arg("election"), py::arg("pct"));
  m.def("change_schedule", &change_schedule, py::arg("count") = 15, py::arg("max") = 0.10);

  m.def(
      "has_independent_set",
      [](std::size_t nv, std::vector<std::pair<std::size_t, std::size_t>> edges, std::size_t kappa) {
        return has_independent_set(Graph(nv, std::move(edges)), kappa);
      },
      py::arg("num_vertices"), py::arg("edges"), py::arg("kappa"));
  m.def(
      "reduce_is",
      [](std::size_t nv, std::vector<std::pair<std::size_t, std::size_t>> edges, std::size_t kappa,
         const std::string& rule, std::size_t ell) {
        const Rule r = Rule::parse(rule);
        const OwaWeights w = r.family() == Rule::Family::kCustom ? r.weights(1) : r.weights(kappa + 1);
        const ReductionOutput red = reduce_is_to_rce(Graph(nv, std::move(edges)), kappa, w, ell);
        py::dict d;
        d["instance"] = red.instance;
        d["dummies"] = red.dummies;
        d["padding"] = red.padding;
        d["t"] = red.t;
        return d;
      },
      py::arg("num_vertices"), py::arg("edges"), py::arg("kappa"), py::arg("rule"), py::arg("ell") = 0);

  m.def(
      "run_experiment",
      [](const std::string& which, const std::string& rule, const std::string& model, std::optional<double> tau,
         std::optional<double> p, std::optional<double> phi, std::size_t n, std::size_t m_, std::size_t k,
         const std::string& preset, std::optional<std::size_t> elections, std::optional<std::size_t> trials,
         std::optional<std::vector<std::string>> ops, std::optional<std::vector<double>> pct,
         std::optional<std::size_t> cap, std::uint64_t seed, std::size_t threads) {
        Experiment exp = Experiment::kExp1;
        if (which == "exp2") exp = Experiment::kExp2;
        else if (which == "exp3") exp = Experiment::kExp3;
        else if (which != "exp1") throw ConfigError("unknown experiment '" + which + "'");
        if (preset != "desk" && preset != "full") throw ConfigError("preset must be desk or full");
        ExperimentConfig config = preset == "full" ? ExperimentConfig::full(exp) : ExperimentConfig::desk(exp);
        config.rule = Rule::parse(rule);
        config.model = parse_model(model, tau, p, phi);
        config.n = n;
        config.m = m_;
        config.k = k;
        if (elections) config.num_elections = *elections;
        if (trials) config.trials = *trials;
        if (ops) {
          config.ops.clear();
          for (const std::string& op : *ops) config.ops.push_back(parse_change_op(op));
        }
        if (pct) {
          if (exp == Experiment::kExp3) {
            if (pct->size() != 1) throw ConfigError("exp3 takes a single percentage");
            config.fixed_pct = pct->front();
          } else {
            config.schedule = *pct;
          }
        }
        if (cap) config.enumerate_cap = *cap;
        config.base_seed = seed;
        config.threads = threads;
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(config);
        }
        py::dict d;
        d["csv"] = to_csv(result);
        d["manifest"] = manifest_json(result);
        d["skipped"] = result.skipped;
        return d;
      },
      py::arg("which"), py::arg("rule") = "greedy-cc", py::arg("model") = "1d", py::arg("tau") = py::none(),
      py::arg("p") = py::none(), py::arg("phi") = py::none(), py::arg("n") = 1000, py::arg("m") = 100,
      py::arg("k") = 10, py::arg("preset") = "desk", py::arg("elections") = py::none(),
      py::arg("trials") = py::none(), py::arg("ops") = py::none(), py::arg("pct") = py::none(),
      py::arg("cap") = py::none(), py::arg("seed") = kDefaultBaseSeed, py::arg("threads") = 0);

  m.attr("__version__") = kArtifactVersion;
}
