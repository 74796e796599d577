"""Guarantee thresholds: frozen reference grids, spot values across the
method corpus, generic bounds, and representation-criterion verdicts.

All golden rationals below were cross-checked against independent
derivations (closed forms, the LP route, and the witness/search side of
the package) before being frozen.
"""

from fractions import Fraction

import pytest

from multiwin.ballots import WeightScheme
from multiwin.scenarios import ScenarioId
from multiwin.thresholds import (CoverageError, MethodId, TABLE_NAMES,
                                 criterion_check, generic_bounds, table_grid,
                                 threshold)

F = Fraction


# ---------------------------------------------------------------------------
# Method identifiers


@pytest.mark.parametrize("label", [
    "bv", "av", "sntv", "lv:2", "cv", "cvq", "phragmen-u", "phragmen-o",
    "thiele-opt", "thiele-add", "thiele-elim", "thiele-o", "borda",
    "stv", "stv:1/2", "stv:0", "div:1", "div:1/2", "quota:0", "quota:1",
    "thiele-opt:weak", "borda:constant",
])
def test_method_label_round_trip(label):
    method = MethodId.parse(label)
    assert MethodId.parse(method.label()) == method


def test_method_parse_errors():
    for bad in ("bogus", "lv", "div", "thiele-opt:mystery"):
        with pytest.raises(ValueError):
            MethodId.parse(bad)


def test_method_constructors_match_parse():
    assert MethodId.bv() == MethodId.parse("bv")
    assert MethodId.stv(F(1, 2)) == MethodId.parse("stv:1/2")
    assert MethodId.div(1) == MethodId.parse("div:1")
    assert MethodId.thiele_opt(WeightScheme.weak()) == \
        MethodId.parse("thiele-opt:weak")


def test_threshold_argument_validation():
    with pytest.raises(ValueError):
        threshold(MethodId.bv(), ScenarioId.SAME, 3, 2)
    with pytest.raises(ValueError):
        threshold(MethodId.bv(), ScenarioId.SAME, 0, 2)


# ---------------------------------------------------------------------------
# Frozen reference grids (values for every 1 <= ell <= S <= 5)


def _grid_values(name):
    grid = table_grid(name)
    return {key: cell.value for key, cell in grid.cells.items()}


OPTIMAL = {  # ell/(S+1), shared by the divisor gamma=1 reduction family
    (S, ell): F(ell, S + 1) for S in range(1, 6) for ell in range(1, S + 1)}

STL = {(1, 1): F(1, 2), (2, 1): F(1, 3), (2, 2): F(3, 4),
       (3, 1): F(1, 4), (3, 2): F(3, 5), (3, 3): F(5, 6),
       (4, 1): F(1, 5), (4, 2): F(1, 2), (4, 3): F(5, 7), (4, 4): F(7, 8),
       (5, 1): F(1, 6), (5, 2): F(3, 7), (5, 3): F(5, 8), (5, 4): F(7, 9),
       (5, 5): F(9, 10)}

LR = {(1, 1): F(1, 2), (2, 1): F(1, 3), (2, 2): F(3, 4),
      (3, 1): F(1, 4), (3, 2): F(5, 9), (3, 3): F(5, 6),
      (4, 1): F(1, 5), (4, 2): F(7, 16), (4, 3): F(2, 3), (4, 4): F(7, 8),
      (5, 1): F(1, 6), (5, 2): F(9, 25), (5, 3): F(11, 20),
      (5, 4): F(11, 15), (5, 5): F(9, 10)}

BV_EJR = {(1, 1): F(1, 2), (2, 1): F(1, 2), (2, 2): F(1, 2),
          (3, 1): F(1, 2), (3, 2): F(3, 5), (3, 3): F(1, 2),
          (4, 1): F(1, 2), (4, 2): F(4, 7), (4, 3): F(3, 5),
          (4, 4): F(1, 2),
          (5, 1): F(1, 2), (5, 2): F(5, 9), (5, 3): F(5, 8),
          (5, 4): F(3, 5), (5, 5): F(1, 2)}

AV_EJR = {(1, 1): F(1, 2), (2, 1): F(1, 2), (2, 2): F(2, 3),
          (3, 1): F(1, 2), (3, 2): F(3, 5), (3, 3): F(3, 4),
          (4, 1): F(1, 2), (4, 2): F(4, 7), (4, 3): F(2, 3),
          (4, 4): F(4, 5),
          (5, 1): F(1, 2), (5, 2): F(5, 9), (5, 3): F(5, 8),
          (5, 4): F(5, 7), (5, 5): F(5, 6)}

THA_SAME = {(1, 1): F(1, 2), (2, 1): F(1, 3), (2, 2): F(2, 3),
            (3, 1): F(3, 11), (3, 2): F(1, 2), (3, 3): F(3, 4),
            (4, 1): F(7, 31), (4, 2): F(3, 7), (4, 3): F(3, 5),
            (4, 4): F(4, 5),
            (5, 1): F(43, 223), (5, 2): F(7, 19), (5, 3): F(9, 17),
            (5, 4): F(2, 3), (5, 5): F(5, 6)}

THO_TACTIC = {(1, 1): F(1, 2), (2, 1): F(2, 5), (2, 2): F(3, 5),
              (3, 1): F(12, 35), (3, 2): F(1, 2), (3, 3): F(23, 35),
              (4, 1): F(24, 79), (4, 2): F(18, 41), (4, 3): F(23, 41),
              (4, 4): F(55, 79),
              (5, 1): F(720, 2621), (5, 2): F(36, 91), (5, 3): F(1, 2),
              (5, 4): F(55, 91), (5, 5): F(1901, 2621)}

THO_SAME = {(1, 1): F(1, 2), (2, 1): F(2, 5), (2, 2): F(2, 3),
            (3, 1): F(12, 35), (3, 2): F(4, 7), (3, 3): F(3, 4),
            (4, 1): F(24, 79), (4, 2): F(24, 47), (4, 3): F(2, 3),
            (4, 4): F(4, 5),
            (5, 1): F(720, 2621), (5, 2): F(48, 103), (5, 3): F(36, 59),
            (5, 4): F(8, 11), (5, 5): F(5, 6)}

THO_WPSC = {(1, 1): F(1, 2), (2, 1): F(2, 5), (2, 2): F(2, 3),
            (3, 1): F(12, 35), (3, 2): F(4, 7), (3, 3): F(4, 5),
            (4, 1): F(24, 79), (4, 2): F(24, 47), (4, 3): F(8, 11),
            (4, 4): F(6, 7),
            (5, 1): F(720, 2621), (5, 2): F(48, 103), (5, 3): F(48, 71),
            (5, 4): F(4, 5), (5, 5): F(9, 10)}

BORDA_TACTIC = {(1, 1): F(1, 2), (2, 1): F(3, 7), (2, 2): F(4, 7),
                (3, 1): F(11, 29), (3, 2): F(1, 2), (3, 3): F(18, 29),
                (4, 1): F(25, 73), (4, 2): F(22, 49), (4, 3): F(27, 49),
                (4, 4): F(48, 73),
                (5, 1): F(137, 437), (5, 2): F(25, 61), (5, 3): F(1, 2),
                (5, 4): F(36, 61), (5, 5): F(300, 437)}

BORDA_SAME = {(1, 1): F(1, 2), (2, 1): F(3, 7), (2, 2): F(2, 3),
              (3, 1): F(11, 29), (3, 2): F(3, 5), (3, 3): F(3, 4),
              (4, 1): F(25, 73), (4, 2): F(11, 20), (4, 3): F(9, 13),
              (4, 4): F(4, 5),
              (5, 1): F(137, 437), (5, 2): F(25, 49), (5, 3): F(11, 17),
              (5, 4): F(3, 4), (5, 5): F(5, 6)}

GRIDS = {"optimal": OPTIMAL, "stl": STL, "lr": LR, "bv-ejr": BV_EJR,
         "av-ejr": AV_EJR, "tha-same": THA_SAME, "tho-tactic": THO_TACTIC,
         "tho-same": THO_SAME, "tho-wpsc": THO_WPSC,
         "borda-tactic": BORDA_TACTIC, "borda-same": BORDA_SAME}


@pytest.mark.parametrize("name", sorted(GRIDS))
def test_grid_golden(name):
    assert _grid_values(name) == GRIDS[name]


def test_grid_statuses():
    for (_, _), cell in table_grid("stl").cells.items():
        assert cell.is_exact
    # The sequential-addition diagonal beyond ell = 1 is conjectural.
    grid = table_grid("tha-same")
    assert grid.cells[(3, 2)].status == "conjectured"
    assert grid.cells[(3, 1)].is_exact


def test_grid_sequences_included_in_table_names():
    assert "sequences" in TABLE_NAMES
    grid = table_grid("sequences")
    assert grid.cells[("a", 6)] == F(4277, 1440)
    assert grid.cells[("b", 6)] == F(95, 288)
    assert grid.cells[("c", 6)] == 12


def test_unknown_table_rejected():
    with pytest.raises(ValueError):
        table_grid("mystery")


# ---------------------------------------------------------------------------
# Spot values across the wider corpus


SPOT = [
    ("phragmen-u", "same", 2, 3, F(1, 2)),
    ("phragmen-u", "pjr", 2, 3, F(1, 2)),
    ("phragmen-u", "party", 1, 4, F(1, 5)),
    ("thiele-opt", "same", 2, 3, F(1, 2)),
    ("thiele-opt", "pjr", 2, 5, F(1, 3)),
    ("thiele-opt", "ejr", 2, 5, F(1, 3)),
    ("thiele-elim", "same", 1, 4, F(1, 5)),
    ("thiele-add", "pjr", 1, 4, F(7, 31)),
    ("thiele-add", "party", 2, 4, F(2, 5)),
    ("stv:1", "same", 2, 3, F(1, 2)),
    ("stv:1", "psc", 2, 3, F(1, 2)),
    ("stv:1", "wpsc", 2, 3, F(1, 2)),
    ("stv:1", "party", 2, 3, F(1, 2)),
    ("stv:0", "same", 2, 3, F(5, 9)),
    ("stv:1/2", "wpsc", 2, 3, F(11, 21)),
    ("stv:1", "tactic", 2, 3, F(1, 2)),
    ("phragmen-o", "same", 2, 3, F(1, 2)),
    ("phragmen-o", "wpsc", 2, 3, F(1, 2)),
    ("phragmen-o", "psc", 2, 3, F(1)),
    ("thiele-o", "psc", 2, 3, F(1)),
    ("cvq", "same", 2, 3, F(1)),
    ("cvq", "ejr", 1, 3, F(1)),
    ("cvq", "tactic", 2, 3, F(1, 2)),
    ("sntv", "same", 1, 3, F(1, 4)),
    ("sntv", "party", 1, 3, F(1, 4)),
    ("lv:2", "same", 2, 4, F(2, 5)),
    ("lv:2", "tactic", 2, 4, F(2, 5)),
    ("lv:2", "ejr", 2, 3, F(1, 2)),
    ("bv", "same", 2, 3, F(1, 2)),
    ("bv", "pjr", 2, 3, F(1, 2)),
    ("av", "same", 2, 3, F(1, 2)),
    ("quota:1", "party", 2, 3, F(1, 2)),
    ("quota:1/2", "party", 2, 4, F(5, 12)),
    ("div:1/3", "party", 2, 4, F(4, 7)),
    ("borda", "wpsc", 2, 4, F(11, 20)),
]


@pytest.mark.parametrize("label, scenario, ell, seats, value", SPOT)
def test_spot_values(label, scenario, ell, seats, value):
    entry = threshold(MethodId.parse(label), ScenarioId(scenario), ell, seats)
    assert entry.is_exact
    assert entry.value == value


def test_not_attained_suprema_are_marked():
    for label, scenario in (("cvq", "same"), ("phragmen-o", "psc"),
                            ("thiele-o", "psc")):
        entry = threshold(MethodId.parse(label), ScenarioId(scenario), 2, 3)
        assert entry.value == 1
        assert entry.side == "minus"


def test_large_electorate_limits_use_their_own_kind():
    entry = threshold(MethodId.sntv(), ScenarioId.TACTIC, 2, 3)
    assert entry.kind == "pihat"
    assert entry.value == F(1, 2)
    entry = threshold(MethodId.bv(), ScenarioId.TACTIC, 2, 3)
    assert entry.kind == "pi"


def test_open_problems_carry_bounds():
    entry = threshold(MethodId.phragmen_u(), ScenarioId.EJR, 2, 12)
    assert entry.status == "unknown"
    assert entry.lo == F(409, 2409)
    entry = threshold(MethodId.thiele_elim(), ScenarioId.PJR, 1, 4)
    assert entry.status == "unknown"
    assert entry.lo == F(1, 4)


def test_uncovered_pairs_report_unknown():
    entry = threshold(MethodId.cv(), ScenarioId.SAME, 2, 3)
    assert entry.status == "unknown"
    assert entry.lo is None and entry.hi is None
    entry = threshold(MethodId.div(1), ScenarioId.EJR, 1, 2)
    assert entry.status == "unknown"


def test_per_ballot_grid_is_non_monotone_in_ell():
    row = [threshold(MethodId.bv(), ScenarioId.EJR, ell, 3).value
           for ell in (1, 2, 3)]
    assert row == [F(1, 2), F(3, 5), F(1, 2)]


def test_per_ballot_grid_peaks_at_middle_ell():
    # S = 2 is flat at 1/2; from S = 3 the peak sits at the middle.
    for seats in range(3, 13):
        values = [threshold(MethodId.bv(), ScenarioId.EJR, ell, seats).value
                  for ell in range(1, seats + 1)]
        peak = max(range(seats), key=lambda i: (values[i], -i))
        assert peak + 1 == (seats + 1 + 1) // 2
        assert values[0] == values[-1] == F(1, 2)


# ---------------------------------------------------------------------------
# Generic bounds and criteria


def test_generic_bounds_single_seat_floor():
    bounds = generic_bounds(1, 4)
    values = [b.value for b in bounds if b.value is not None]
    assert F(1, 5) in values


def test_generic_bounds_divisible_blocks():
    values = [b.value for b in generic_bounds(2, 3) if b.value is not None]
    assert F(1, 2) in values


def test_generic_bounds_majority_floor():
    values = [b.value for b in generic_bounds(3, 4) if b.value is not None]
    assert F(1, 2) in values


CRITERION_GOLDEN = [
    ("bv", "JR", 3, False),
    ("av", "EJR", 5, False),
    ("lv:2", "PJR", 3, False),
    ("cvq", "JR", 3, False),
    ("sntv", "JR", 5, True),
    ("phragmen-u", "JR", 5, True),
    ("phragmen-u", "PJR", 5, True),
    ("phragmen-u", "EJR", 5, None),
    ("thiele-opt", "EJR", 5, True),
    ("thiele-add", "JR", 5, True),
    ("thiele-add", "PJR", 5, None),
    ("thiele-elim", "JR", 5, False),
    ("stv:1", "DPC", 5, True),
    ("stv:1", "PSC-strong", 5, True),
    ("stv:0", "DPC", 5, False),
    ("phragmen-o", "wPSC-floor", 5, True),
    ("phragmen-o", "PSC-strong", 5, False),
    ("thiele-o", "wPSC-floor", 5, False),
    ("borda", "wPSC-floor", 5, False),
]


@pytest.mark.parametrize("label, criterion, seats, verdict", CRITERION_GOLDEN)
def test_criterion_verdicts(label, criterion, seats, verdict):
    assert criterion_check(MethodId.parse(label), criterion, seats) is verdict


def test_criterion_validation():
    with pytest.raises(ValueError):
        criterion_check(MethodId.bv(), "XYZ", 3)
    with pytest.raises(ValueError):
        criterion_check(MethodId.bv(), "JR", 0)


def test_single_seat_criteria_trivially_hold():
    assert criterion_check(MethodId.bv(), "JR", 1) is True
