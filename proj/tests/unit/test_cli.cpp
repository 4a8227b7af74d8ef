#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "rce/cli.hpp"
#include "rce/codec.hpp"
#include "rce/reductions.hpp"

using namespace rce;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rce");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "rce_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("help lists every flag") {
  const Run top = run({"--help"});
  CHECK(top.code == kExitOk);
  for (const char* sub : {"score", "winners", "greedy", "solve-rce", "sample", "perturb", "reduce-is", "exp1",
                          "exp2", "exp3"}) {
    CHECK(top.out.find(sub) != std::string::npos);
    const Run help = run({sub, "--help"});
    CHECK(help.code == kExitOk);
    for (const char* flag : {"--rule", "--seed", "--out", "--quiet", "--threads"}) {
      CHECK(help.out.find(flag) != std::string::npos);
    }
  }
  const Run exp = run({"exp1", "--help"});
  for (const char* flag : {"--model", "--tau", "--p", "--phi", "--preset", "--elections", "--trials", "--ops", "--pct",
                           "--manifest"}) {
    CHECK(exp.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"sample", "--bogus"}).code == kExitUsage);
  CHECK(run({"sample", "-n", "10"}).code == kExitUsage);  // no seed
  CHECK(run({"score", "--rule", "borda", "--election", "x", "--committee", "0"}).code == kExitUsage);
  CHECK(run({"sample", "--model", "3d", "--seed", "1"}).code == kExitUsage);
  CHECK(run({"sample", "--model", "1d", "--p", "0.2", "--seed", "1"}).code == kExitUsage);
}

TEST_CASE("file and parse errors exit with 2") {
  const Run missing = run({"score", "--rule", "pav", "--election", path("none.app"), "--committee", "0"});
  CHECK(missing.code == kExitUsage);
  CHECK_FALSE(missing.err.empty());
  write_file(path("bad.app"), "3 2\n0 0\n1\n");
  const Run bad = run({"score", "--rule", "pav", "--election", path("bad.app"), "--committee", "0"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("line 2") != std::string::npos);
  write_file(path("bad.json"), "{");
  CHECK(run({"solve-rce", "--rule", "av", "--instance", path("bad.json")}).code == kExitUsage);
}

TEST_CASE("score, winners and greedy") {
  write_file(path("small.app"), "3 3\n0 1\n1\n1 2\n");
  const Run score = run({"score", "--rule", "pav", "--election", path("small.app"), "--committee", "0,1"});
  CHECK(score.code == kExitOk);
  CHECK(score.out == "score 7/2\nscaled 7\nscale 2\n");

  write_file(path("tie.app"), "2 2\n0\n1\n");
  const Run winners = run({"winners", "--rule", "av", "--election", path("tie.app"), "-k", "1"});
  CHECK(winners.out == "0\n1\n");

  write_file(path("three.app"), "3 3\n0 1\n0\n2\n");
  const Run greedy = run({"greedy", "--rule", "cc", "--election", path("three.app"), "-k", "2"});
  CHECK(greedy.code == kExitOk);
  CHECK(greedy.out == "round,candidate,marginal,tied\n1,0,2,0\n2,2,1,2\ncommittee 0,2\n");
  const Run all = run({"greedy", "--rule", "av", "--election", path("tie.app"), "-k", "1", "--ties", "enumerate"});
  CHECK(all.out == "0\n1\n");
}

TEST_CASE("solve-rce exit codes") {
  // Scores before: a 2, b 2, c 1. After: c leads.
  RceInstance inst{Election(4, {{0, 1, 2}, {0, 1}, {}}, true), Election(4, {{0, 1, 2}, {0, 1, 2}, {2}}), 2, {0, 1}, 1};
  save_instance(inst, path("feasible.json"));
  const Run ok = run({"solve-rce", "--rule", "av", "--instance", path("feasible.json"), "--quiet"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("min_distance 1\n") != std::string::npos);
  CHECK(ok.out.find("witness ") != std::string::npos);

  inst.ell = 0;
  save_instance(inst, path("infeasible.json"));
  const Run no = run({"solve-rce", "--rule", "av", "--instance", path("infeasible.json")});
  CHECK(no.code == kExitInfeasible);
  CHECK(no.out.find("feasible no") != std::string::npos);

  const Run wrong = run({"solve-rce", "--rule", "pav", "--solver", "av", "--instance", path("feasible.json")});
  CHECK(wrong.code == kExitUsage);

  // S = {0, 2} does not win the original election under AV.
  inst.committee = {0, 2};
  save_instance(inst, path("loser.json"));
  CHECK(run({"solve-rce", "--rule", "av", "--instance", path("loser.json")}).code == kExitUsage);
  CHECK(run({"solve-rce", "--rule", "av", "--instance", path("loser.json"), "--no-validate"}).code == kExitOk);
}

TEST_CASE("budget refusals exit with 3") {
  std::vector<Ballot> ballots;
  for (CandidateId c = 0; c < 60; ++c) ballots.push_back({c});
  write_file(path("wide.app"), format_election(Election(60, ballots)));
  const Run refused = run({"winners", "--rule", "pav", "--election", path("wide.app"), "-k", "20"});
  CHECK(refused.code == kExitRefused);
  CHECK(refused.err.find("budget") != std::string::npos);
}

TEST_CASE("sample, perturb and reduce round trips") {
  const Run a = run({"sample", "--model", "1d", "--tau", "0.051", "-n", "1000", "-m", "100", "--seed", "7", "--out",
                     path("e.app"), "--positions", path("e.pos")});
  CHECK(a.code == kExitOk);
  const Run b = run({"sample", "--model", "1d", "--tau", "0.051", "-n", "1000", "-m", "100", "--seed", "7"});
  CHECK(read_file(path("e.app")) == b.out);
  CHECK(fs::exists(path("e.pos")));

  const Run changed = run({"perturb", "--election", path("e.app"), "--op", "mix", "-r", "5", "--seed", "3", "--out",
                           path("f.app")});
  CHECK(changed.code == kExitOk);
  CHECK(election_distance(load_election(path("e.app")), load_election(path("f.app"))) == 4);
  CHECK(run({"perturb", "--election", path("e.app"), "--pct", "1", "--seed", "3"}).code == kExitOk);
  CHECK(run({"perturb", "--election", path("e.app"), "-r", "5"}).code == kExitUsage);
  CHECK(run({"greedy", "--rule", "greedy-pav", "--election", path("f.app"), "-k", "10"}).code == kExitOk);

  write_file(path("k3.graph"), format_graph(Graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  CHECK(run({"reduce-is", "--rule", "pav", "--graph", path("k3.graph"), "--kappa", "2", "--out", path("k3.json")}).code ==
        kExitOk);
  const Run solved = run({"solve-rce", "--rule", "pav", "--instance", path("k3.json"), "--quiet"});
  CHECK(solved.code == kExitOk);
  CHECK(solved.out.find("min_distance 0\n") != std::string::npos);

  write_file(path("p3.graph"), "3\n0 1\n1 2\n");
  CHECK(run({"reduce-is", "--rule", "pav", "--graph", path("p3.graph"), "--kappa", "2", "--out", path("p3.json")}).code ==
        kExitOk);
  CHECK(run({"solve-rce", "--rule", "pav", "--instance", path("p3.json"), "--quiet"}).code == kExitInfeasible);
  CHECK(run({"reduce-is", "--rule", "av", "--graph", path("p3.graph"), "--kappa", "2"}).code == kExitUsage);
}

TEST_CASE("experiment commands") {
  const Run e1 = run({"exp1", "--rule", "greedy-cc", "--model", "1d", "--tau", "0.051", "--elections", "2", "--trials",
                      "2", "-n", "100", "-m", "20", "-k", "4", "--out", path("exp1.csv"), "--quiet"});
  CHECK(e1.code == kExitOk);
  const std::string csv = read_file(path("exp1.csv"));
  CHECK(csv.rfind("model,model_param,rule,op,change_pct,election_idx,trial_idx,distance\r\n", 0) == 0);
  CHECK(fs::exists(path("exp1.csv.manifest.json")));
  const Run again = run({"exp1", "--rule", "greedy-cc", "--model", "1d", "--tau", "0.051", "--elections", "2",
                         "--trials", "2", "-n", "100", "-m", "20", "-k", "4", "--quiet", "--threads", "2"});
  CHECK(again.out == csv);

  const Run e2 = run({"exp2", "--rule", "greedy-pav", "--model", "2d", "--elections", "1", "--trials", "2", "-n", "100",
                      "-m", "20", "-k", "4", "--pct", "1.3", "--cap", "10", "--quiet"});
  CHECK(e2.code == kExitOk);
  CHECK(e2.out.find(",MIX,1.300000,") != std::string::npos);
  const Run e3 = run({"exp3", "--model", "resampling", "--p", "0.2", "--phi", "0.5", "--elections", "1", "--trials",
                      "2", "-n", "100", "-m", "20", "-k", "4", "--quiet"});
  CHECK(e3.code == kExitOk);
  CHECK(e3.out.find("resampling,p=0.2;phi=0.5,greedy-cc,MIX,2.500000,") != std::string::npos);
  CHECK(run({"exp1", "--rule", "pav", "--elections", "1"}).code == kExitUsage);
}
