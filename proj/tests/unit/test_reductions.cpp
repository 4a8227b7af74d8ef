#include <doctest.h>

#include "../support/oracles.hpp"
#include "rce/errors.hpp"
#include "rce/exact.hpp"
#include "rce/reductions.hpp"

using namespace rce;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path() { return Graph(3, {{0, 1}, {1, 2}}); }

Committee dummies(const ReductionOutput& red) {
  std::vector<CandidateId> members = red.dummies;
  members.insert(members.end(), red.padding.begin(), red.padding.end());
  return Committee(members);
}

}  // namespace

TEST_CASE("independent sets") {
  CHECK(has_independent_set(Graph(4), 4));
  CHECK(has_independent_set(Graph(4), 0));
  CHECK_FALSE(has_independent_set(triangle(), 2));
  CHECK(has_independent_set(path(), 2));
  CHECK_FALSE(has_independent_set(path(), 3));
  CHECK_THROWS_AS(has_independent_set(Graph(25), 2), BudgetExceeded);
}

TEST_CASE("graph validation and format") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), PreconditionError);
  const Graph g = parse_graph("# triangle\n3\n0 1\n1 2\n\n2 0\n");
  CHECK(g.edges() == triangle().edges());
  CHECK(parse_graph(format_graph(g)).edges() == g.edges());
  CHECK(g.degree(1) == 2);
  CHECK(g.adjacent(2, 0));
  CHECK_THROWS_AS(parse_graph("3\n0 x\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3\n0 5\n"), ParseError);
}

TEST_CASE("triangle under pav") {
  const ReductionOutput red = reduce_is_to_rce(triangle(), 2, OwaWeights::pav(3));
  CHECK(red.t == 4);
  CHECK(red.s_pad == 0);
  const Election& e = red.instance.before;
  for (CandidateId c = 0; c < e.num_candidates(); ++c) CHECK(e.approvers(c).size() == 20);
  CHECK(election_distance(red.instance.before, red.instance.after) == 1);
  const Committee d = dummies(red);
  CHECK(red.instance.committee == d);
  const auto before = enumerate_winners(e, red.instance.k, OwaWeights::pav(2));
  CHECK(std::find(before.begin(), before.end(), d) != before.end());
  const RceAnswer answer = solve_rce_exhaustive(red.instance, OwaWeights::pav(2));
  CHECK(answer.min_distance == 0u);
  CHECK(answer.witness == d);
}

TEST_CASE("path under pav") {
  const ReductionOutput red = reduce_is_to_rce(path(), 2, OwaWeights::pav(3));
  const auto after = enumerate_winners(red.instance.after, 2, OwaWeights::pav(2));
  REQUIRE_FALSE(after.empty());
  for (const Committee& c : after) {
    for (CandidateId x : red.dummies) CHECK_FALSE(c.contains(x));
  }
  CHECK(solve_rce_exhaustive(red.instance, OwaWeights::pav(2)).min_distance == 2u);
}

TEST_CASE("padding for weights with a longer unit prefix") {
  const OwaWeights w({1, 1, Rational(1, 2), Rational(1, 3), Rational(1, 4)});
  const ReductionOutput red = reduce_is_to_rce(triangle(), 2, w);
  CHECK(red.s_pad == 1);
  CHECK(red.padding.size() == 1);
  CHECK(red.instance.k == 3);
  for (CandidateId c = 0; c < red.instance.before.num_candidates(); ++c) {
    CHECK(red.instance.before.approvers(c).size() ==
          (c == red.padding[0] ? red.instance.before.num_voters() : (3 + 2) * red.t));
  }
  const auto lambda = [](std::size_t j) { return j <= 2 ? Rational(1) : Rational(1, static_cast<std::int64_t>(j - 1)); };
  const auto winners = oracle::winners(red.instance.after, red.instance.k, lambda);
  CHECK(std::find(winners.begin(), winners.end(), dummies(red)) != winners.end());
}

TEST_CASE("reduction rejects av and bad arguments") {
  CHECK_THROWS_AS(reduce_is_to_rce(triangle(), 2, OwaWeights::av(3)), ConfigError);
  CHECK_THROWS_AS(reduce_is_to_rce(triangle(), 0, OwaWeights::pav(3)), PreconditionError);
  CHECK_THROWS_AS(reduce_is_to_rce(Graph(0), 1, OwaWeights::pav(3)), PreconditionError);
}
