"""Resilient committee elections.

Thin Python layer over the C++ core. Scores come back as fractions.Fraction.
"""

from fractions import Fraction

from ._rce import (
    BudgetExceeded,
    Election,
    ForcedOrderError,
    ParseError,
    RceInstance,
    __version__,
    candidate_classes,
    change_schedule,
    changes_for,
    committee_distance,
    committee_wins,
    election_distance,
    format_election,
    format_instance,
    greedy_reachable,
    greedy_run,
    has_independent_set,
    load_election,
    parse_election,
    parse_instance,
    perturb,
    reduce_is,
    run_experiment,
    sample_election,
    save_election,
    solve_rce,
    winners,
)
from . import _rce


def thiele_score(election, committee, rule):
    scaled, scale = _rce.thiele_score_scaled(election, list(committee), rule)
    return Fraction(scaled, scale)


def marginal_contribution(election, committee, candidate, rule):
    scaled, scale = _rce.marginal_contribution_scaled(election, list(committee), candidate, rule)
    return Fraction(scaled, scale)
