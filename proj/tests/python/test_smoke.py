import json
from fractions import Fraction

import pytest

import rce


def small():
    return rce.Election(3, [[0, 1], [1], [1, 2]])


def test_scores():
    e = small()
    assert rce.thiele_score(e, [0, 1], "pav") == Fraction(7, 2)
    assert rce.thiele_score(e, [0, 1], "av") == 4
    assert rce.marginal_contribution(e, [], 1, "cc") == 3
    assert rce.marginal_contribution(e, [1], 0, "cc") == 0


def test_codec_round_trip():
    e = rce.parse_election("3 2\n0 1\n1\n")
    assert e.ballots == [[0, 1], [1]]
    assert rce.format_election(e) == "3 2\n0 1\n1\n"
    with pytest.raises(rce.ParseError):
        rce.parse_election("3 2\n1 1\n0\n")
    with pytest.raises(ValueError):
        rce.Election(3, [[2, 1]])


def test_winners_and_greedy():
    assert rce.winners(rce.Election(2, [[0], [1]]), 1, "av") == [[0], [1]]
    three = rce.Election(3, [[0, 1], [0], [2]])
    run = rce.greedy_run(three, 2, "cc")
    assert run["order"] == [0, 2]
    assert rce.greedy_reachable(three, [0, 2], "greedy-cc")
    assert not rce.greedy_reachable(three, [1, 2], "greedy-cc")
    assert rce.winners(three, 2, "greedy-cc") == [[0, 2]]


def test_solve_rce():
    before = rce.Election(4, [[0, 1, 2], [0, 1], []], True)
    after = rce.Election(4, [[0, 1, 2], [0, 1, 2], [2]])
    inst = rce.RceInstance(before, after, 2, [0, 1], 1)
    answer = rce.solve_rce(inst, "av")
    assert answer["feasible"] and answer["min_distance"] == 1
    assert 2 in answer["witness"]
    assert rce.solve_rce(inst, "av", solver="exhaustive")["min_distance"] == 1
    assert rce.parse_instance(rce.format_instance(inst)) == inst
    doc = json.loads(rce.format_instance(inst))
    assert doc["k"] == 2 and doc["committee"] == [0, 1]


def test_sampling_and_perturbation():
    e = rce.sample_election("1d", 1000, 100, seed=7, tau=0.051)
    assert rce.format_election(e) == rce.format_election(rce.sample_election("1d", 1000, 100, seed=7))
    assert 8 < e.total_approvals / 1000 < 12
    f = rce.perturb(e, "MIX", 5, seed=1)
    assert rce.election_distance(e, f) == 4
    schedule = rce.change_schedule()
    assert len(schedule) == 15 and schedule[7] == pytest.approx(0.025)
    with pytest.raises(ValueError):
        rce.sample_election("3d", 10, 10, seed=1)


def test_reduction():
    red = rce.reduce_is(3, [(0, 1), (1, 2), (0, 2)], 2, "pav")
    assert red["t"] == 4
    assert rce.solve_rce(red["instance"], "pav")["min_distance"] == 0
    assert not rce.has_independent_set(3, [(0, 1), (1, 2), (0, 2)], 2)


def test_budget_refusal():
    e = rce.Election(60, [[c] for c in range(60)])
    with pytest.raises(rce.BudgetExceeded):
        rce.winners(e, 20, "pav", budget=1000)


def test_experiment_is_deterministic():
    kwargs = dict(n=100, m=20, k=4, elections=2, trials=3, pct=[0.0, 0.02], threads=1)
    first = rce.run_experiment("exp1", **kwargs)
    assert first["csv"] == rce.run_experiment("exp1", **kwargs)["csv"]
    lines = first["csv"].splitlines()
    assert lines[0] == "model,model_param,rule,op,change_pct,election_idx,trial_idx,distance"
    assert len(lines) == 1 + 3 * 2 * 2 * 3
    manifest = json.loads(first["manifest"])
    assert manifest["rows"] == len(lines) - 1
    exp2 = rce.run_experiment("exp2", rule="greedy-pav", model="2d", **kwargs)
    rows = exp2["csv"].splitlines()[1:]
    assert all(int(r.split(",")[9]) >= 0 for r in rows)
