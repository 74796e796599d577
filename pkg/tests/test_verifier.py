"""Witness catalog, bounded adversarial search, and the corpus audit."""

from fractions import Fraction

import pytest

from multiwin.ballots import parse_profile
from multiwin.scenarios import ScenarioId, ScenarioInstance
from multiwin.thresholds import CoverageError, MethodId, threshold
from multiwin.verifier import (CATALOG, SearchSpec, Witness, audit_table,
                               construct_witness, covering_token,
                               default_scope, party_seat_vectors, run_method,
                               search_lower_bound, verify_witness)

F = Fraction


# ---------------------------------------------------------------------------
# Witness plumbing


def test_witness_validates_instance_and_fraction():
    profile = parse_profile("!seats 2\n!W 3 : {A B}\n7 : {C}\n")
    inst = ScenarioInstance(profile, "AB", 1, ScenarioId.SAME)
    Witness(inst, F(3, 10))
    with pytest.raises(Exception):
        Witness(inst, F(1, 2))          # fraction mismatch
    bad_inst = ScenarioInstance(profile, "A", 1, ScenarioId.SAME)
    with pytest.raises(Exception):
        Witness(bad_inst, F(3, 10))     # target != common list


def test_run_method_dispatch_and_refusals():
    profile = parse_profile("!seats 1\n2 : {A}\n1 : {B}\n")
    out = run_method(MethodId.av(), profile)
    assert out.sorted_committees() == [("A",)]
    with pytest.raises(CoverageError):
        run_method(MethodId.div(1), profile)
    with pytest.raises(CoverageError):
        run_method(MethodId.cv(), profile)


def test_party_seat_vectors():
    profile = parse_profile("!seats 3\n5 : party P\n3 : party Q\n"
                            "1 : party R\n")
    names, vectors = party_seat_vectors(MethodId.div(1), profile)
    assert names == ("P", "Q", "R")
    assert vectors == {(2, 1, 0)}
    with pytest.raises(CoverageError):
        party_seat_vectors(MethodId.bv(), profile)


# ---------------------------------------------------------------------------
# Catalog constructions: every entry must verify, and where it covers an
# exactly-known threshold its fraction must match that value.


CATALOG_CASES = [
    # (token, method, scenario, ell, S, expected fraction or None)
    ("symmetric-parties", "div:1", "party", 1, 3, F(1, 4)),
    ("symmetric-parties", "quota:1", "party", 2, 3, F(1, 2)),
    ("symmetric-parties", "sntv", "same", 1, 3, F(1, 4)),
    ("common-list-tie", "phragmen-u", "same", 2, 3, F(1, 2)),
    ("common-list-tie", "phragmen-o", "same", 2, 3, F(1, 2)),
    ("common-list-tie", "thiele-elim", "same", 2, 3, F(1, 2)),
    ("common-list-tie", "thiele-opt", "same", 2, 3, F(1, 2)),
    ("divisor-extremes", "div:1", "party", 2, 4, F(2, 5)),
    ("divisor-extremes", "div:1/2", "party", 2, 3, F(3, 5)),
    ("quota-boundary", "quota:1/2", "party", 2, 4, F(5, 12)),
    ("quota-boundary", "quota:0", "party", 2, 4, F(7, 16)),
    ("quota-boundary", "stv:1", "same", 2, 3, F(1, 2)),
    ("quota-boundary", "stv:1", "psc", 2, 3, F(1, 2)),
    ("quota-boundary", "stv:1/2", "wpsc", 2, 3, F(11, 21)),
    ("quota-boundary", "stv:0", "same", 2, 3, F(5, 9)),
    ("equal-split", "sntv", "same", 1, 3, F(1, 4)),
    ("equal-split", "phragmen-u", "same", 1, 4, F(1, 5)),
    ("equal-split", "lv:2", "same", 2, 4, F(2, 5)),
    ("equal-split", "lv:2", "tactic", 2, 4, F(2, 5)),
    ("majority-tie", "bv", "same", 1, 1, F(1, 2)),
    ("majority-tie", "av", "pjr", 1, 2, F(1, 2)),
    ("ejr-window", "bv", "ejr", 2, 3, F(3, 5)),
    ("ejr-window", "bv", "ejr", 3, 5, F(5, 8)),
    ("ejr-window", "av", "ejr", 2, 4, F(4, 7)),
    ("ejr-window", "av", "ejr", 4, 5, F(5, 7)),
    ("ejr-window", "lv:2", "ejr", 1, 3, F(2, 5)),
    ("addition-lp-vertex", "thiele-add", "same", 1, 3, F(3, 11)),
    ("addition-lp-vertex", "thiele-add", "same", 1, 4, F(7, 31)),
    ("cyclic-window-opt", "thiele-opt", "same", 1, 4, F(1, 5)),
    ("weight-floor", "thiele-opt", "same", 2, 3, F(1, 2)),
    ("elimination-trap", "thiele-elim", "pjr", 1, 4, F(5, 21)),
    ("suffix-chain", "thiele-o", "same", 2, 4, F(24, 47)),
    ("suffix-chain", "thiele-o", "tactic", 2, 4, F(18, 41)),
    ("rotated-start", "thiele-o", "wpsc", 3, 5, F(48, 71)),
    ("positional-split", "borda", "tactic", 2, 4, F(22, 49)),
    ("positional-list", "borda", "same", 2, 4, F(11, 20)),
    ("positional-list", "borda", "wpsc", 2, 4, F(11, 20)),
]


@pytest.mark.parametrize("token, label, scenario, ell, seats, fraction",
                         CATALOG_CASES)
def test_catalog_witness_verifies(token, label, scenario, ell, seats,
                                  fraction):
    method = MethodId.parse(label)
    witness = construct_witness(token, method, scenario, ell, seats)
    assert witness.claimed_fraction == fraction
    assert verify_witness(witness, method)


@pytest.mark.parametrize("token, label, scenario, ell, seats, fraction",
                         CATALOG_CASES)
def test_catalog_matches_exact_thresholds(token, label, scenario, ell, seats,
                                          fraction):
    entry = threshold(MethodId.parse(label), ScenarioId(scenario), ell, seats)
    if entry.is_exact and entry.side != "minus":
        assert fraction == entry.value


def test_limit_witnesses_approach_from_below():
    # Suprema that are not attained: the witness must sit strictly below
    # the threshold but within the requested closeness.
    method = MethodId.cvq()
    witness = construct_witness("self-voting", method, "same", 1, 3,
                                eps=F(1, 100))
    assert 1 - F(1, 100) <= witness.claimed_fraction < 1
    assert verify_witness(witness, method)


def test_self_first_burial_witness():
    method = MethodId.phragmen_o()
    witness = construct_witness("self-first-psc", method, "psc", 2, 3,
                                eps=F(1, 10))
    assert witness.claimed_fraction >= 1 - F(1, 10)
    assert verify_witness(witness, method)


def test_fixture_witnesses():
    cases = [
        ("overlap-approvals", "phragmen-u", "ejr", 2, 12, F(409, 2409)),
        ("vote-splitting", "thiele-add", "same", 1, 3, F(13, 50)),
        ("ordered-majority-loss", "thiele-o", "same", 2, 3, F(11, 20)),
        ("ordered-tactic-split", "thiele-o", "same", 1, 2, F(39, 100)),
    ]
    for token, label, scenario, ell, seats, fraction in cases:
        method = MethodId.parse(label)
        witness = construct_witness(token, method, scenario, ell, seats)
        assert witness.claimed_fraction == fraction
        assert verify_witness(witness, method)


def test_unknown_token_rejected():
    with pytest.raises(Exception):
        construct_witness("no-such-token", MethodId.bv(), "same", 1, 1)


def test_hypothesis_guards_fire():
    with pytest.raises(Exception):
        construct_witness("ejr-window", MethodId.lv(2), "ejr", 2, 3)
    with pytest.raises(Exception):
        construct_witness("symmetric-parties", MethodId.quota(1), "party",
                          2, 4)


def test_covering_token_finds_catalog_entries():
    assert covering_token(MethodId.bv(), ScenarioId.EJR, 2, 3) is not None
    assert covering_token(MethodId.div(1), ScenarioId.PARTY, 1, 2) is not None


# ---------------------------------------------------------------------------
# Bounded search


def test_search_rediscovers_per_ballot_peak():
    # The equality witness needs two shared names plus three window
    # decoys, so the candidate budget must be at least five.
    best, witness = search_lower_bound(MethodId.bv(), "ejr", 2, 3,
                                       SearchSpec(max_candidates=5,
                                                  weight_grid=5))
    assert best == F(3, 5)
    assert witness is not None
    assert verify_witness(witness, MethodId.bv())


def test_search_rediscovers_party_floor():
    best, _ = search_lower_bound(MethodId.div(1), "party", 1, 2,
                                 SearchSpec(weight_grid=5))
    assert best == F(1, 3)


def test_search_rediscovers_strategy_split():
    best, _ = search_lower_bound(MethodId.sntv(), "tactic", 2, 3,
                                 SearchSpec(max_candidates=5, weight_grid=5))
    assert best == F(3, 5)


def test_search_returns_zero_when_nothing_found():
    # A single seat with a lone W voter: no bad outcome at any fraction.
    best, witness = search_lower_bound(MethodId.bv(), "same", 1, 1,
                                       SearchSpec(max_candidates=1,
                                                  weight_grid=2))
    assert (best, witness) == (0, None)


def test_search_soundness_small_grid():
    # The search may only find genuine bad outcomes, so it can never
    # exceed an exactly-known threshold.
    spec = SearchSpec(max_candidates=4, weight_grid=3)
    probes = [
        ("av", "ejr"), ("sntv", "same"), ("phragmen-u", "pjr"),
        ("thiele-opt", "same"), ("stv:1", "same"), ("borda", "same"),
        ("thiele-o", "wpsc"), ("quota:0", "party"),
    ]
    for label, scenario in probes:
        method = MethodId.parse(label)
        for seats in (1, 2, 3):
            for ell in range(1, seats + 1):
                try:
                    entry = threshold(method, ScenarioId(scenario), ell,
                                      seats)
                except CoverageError:
                    continue
                if not (entry.is_exact and entry.kind == "pi"):
                    continue
                best, _ = search_lower_bound(method, scenario, ell, seats,
                                             spec)
                assert best <= entry.value


# ---------------------------------------------------------------------------
# Corpus audit


def test_audit_default_scope_clean():
    report = audit_table(smax=5)
    assert report.passed
    assert not report.failures()
    assert len(report.checks) > 1000


def test_audit_with_search_on_restricted_scope():
    scope = [(MethodId.bv(), ScenarioId.EJR),
             (MethodId.div(1), ScenarioId.PARTY),
             (MethodId.sntv(), ScenarioId.SAME)]
    report = audit_table(scope=scope, smax=3,
                         spec=SearchSpec(max_candidates=4, weight_grid=4),
                         with_search=True)
    assert report.passed
    names = {c.name for c in report.checks}
    assert "search<=threshold" in names
    assert "search=threshold" in names


def test_default_scope_covers_all_scenarios():
    scope = default_scope()
    scenarios = {scenario for _, scenario in scope}
    assert scenarios == set(ScenarioId)
