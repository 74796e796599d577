"""Empirical side of the thresholds: witnesses, search, and audits.

A Witness packages a concrete scenario instance whose profile provably
admits a bad outcome at the claimed vote fraction.  construct_witness()
rebuilds the extremal instances behind each threshold from a catalog of
named constructions; verify_witness() re-runs the election method and
confirms a bad committee is reachable; search_lower_bound() looks for
bad instances by bounded brute force over unit-ballot profiles (and, for
the tactic scenario, over W's strategies); audit_table() machine-checks
the inequality families the threshold corpus must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations, combinations_with_replacement, permutations
from math import isqrt
from typing import Callable, Iterable, Optional, Sequence

from .ballots import (DEFAULT_BRANCH_CAP, ListBallot, OutcomeSet, PartyBallot,
                      Profile, ProfileError, SetBallot, WeightedBallot,
                      WeightScheme, normalize)
from .ordered import (BordaWeights, StvSpec, borda_count, phragmen_ordered,
                      stv_count, thiele_ordered)
from .party import (AdamsIllDefined, DivisorSpec, QuotaSpec, divisor_apportion,
                    quota_apportion)
from .scenarios import (IndeterminateOutcome, ScenarioId, ScenarioInstance,
                        is_bad_outcome_possible, is_good, is_instance)
from .sequences import ALPHA_CAP, seq_a, seq_b, seq_c, solve_alpha, subsets
from .thresholds import (CoverageError, EXACT, MethodId, PI, ThresholdValue,
                         threshold)
from .unordered import (ApprovalFamilyRule, phragmen_unordered,
                        score_family_count, thiele_addition,
                        thiele_elimination, thiele_optimize)

_SET_METHODS = ("bv", "av", "sntv", "lv", "cvq", "phragmen-u",
                "thiele-opt", "thiele-add", "thiele-elim")
_LIST_METHODS = ("stv", "phragmen-o", "thiele-o", "borda")
_PARTY_METHODS = ("div", "quota")


# ---------------------------------------------------------------------------
# Witness


@dataclass(frozen=True)
class Witness:
    """A scenario instance together with its claimed bad-outcome fraction."""

    instance: ScenarioInstance
    claimed_fraction: Fraction
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "claimed_fraction",
                          Fraction(self.claimed_fraction))
        if not is_instance(self.instance):
            raise ProfileError(
                "profile violates the %s ballot restriction"
                % self.instance.scenario.value)
        if self.claimed_fraction != self.instance.fraction:
            raise ProfileError(
                "claimed fraction %s differs from the instance fraction %s"
                % (self.claimed_fraction, self.instance.fraction))


# ---------------------------------------------------------------------------
# Running a method on a profile


def run_method(method: MethodId, profile: Profile,
               branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """The tie-complete OutcomeSet of the method on the profile."""
    kind = method.kind
    if kind in _PARTY_METHODS:
        raise CoverageError(
            "%s apportions seats to parties; use party_seat_vectors" % kind)
    if kind == "cv":
        raise CoverageError(
            "free-split cumulative voting has no counting engine here; "
            "only its limit threshold is tabulated")
    if kind == "bv":
        return score_family_count(ApprovalFamilyRule.block(), profile,
                                  branch_cap)
    if kind == "av":
        return score_family_count(ApprovalFamilyRule.approval(), profile,
                                  branch_cap)
    if kind == "sntv":
        return score_family_count(ApprovalFamilyRule.sntv(), profile,
                                  branch_cap)
    if kind == "lv":
        return score_family_count(ApprovalFamilyRule.limited(int(method.param)),
                                  profile, branch_cap)
    if kind == "cvq":
        return score_family_count(ApprovalFamilyRule.cvq(), profile,
                                  branch_cap)
    if kind == "phragmen-u":
        return phragmen_unordered(profile, branch_cap)[0]
    if kind == "thiele-opt":
        return thiele_optimize(method.scheme, profile)
    if kind == "thiele-add":
        return thiele_addition(method.scheme, profile, branch_cap)
    if kind == "thiele-elim":
        return thiele_elimination(profile, branch_cap)
    if kind == "stv":
        return stv_count(StvSpec(method.param), profile, branch_cap)
    if kind == "phragmen-o":
        return phragmen_ordered(profile, branch_cap)[0]
    if kind == "thiele-o":
        return thiele_ordered(profile, branch_cap)
    if kind == "borda":
        return borda_count(BordaWeights(method.scheme), profile, branch_cap)
    raise CoverageError("no engine for method %r" % kind)  # pragma: no cover


def party_seat_vectors(method: MethodId, profile: Profile):
    """(party names, reachable seat vectors) for an apportionment method."""
    if profile.kind != "party":
        raise ProfileError("apportionment needs party ballots")
    weights: dict = {}
    for b in profile.ballots:
        party = b.content.party
        weights[party] = weights.get(party, Fraction(0)) + b.weight
    names = tuple(sorted(weights))
    votes = [weights[name] for name in names]
    if method.kind == "div":
        vectors = divisor_apportion(DivisorSpec(method.param), votes,
                                    profile.seats)
    elif method.kind == "quota":
        vectors = quota_apportion(QuotaSpec(method.param), votes,
                                  profile.seats)
    else:
        raise CoverageError("%s is not an apportionment method" % method.kind)
    return names, vectors


def verify_witness(witness: Witness, method: MethodId,
                   branch_cap: int = DEFAULT_BRANCH_CAP) -> bool:
    """True iff the method can produce a bad outcome on the witness."""
    inst = witness.instance
    if inst.profile.kind == "party":
        names, vectors = party_seat_vectors(method, inst.profile)
        (party,) = tuple(inst.target)
        idx = names.index(party)
        return any(vec[idx] < inst.ell for vec in vectors)
    outcomes = run_method(method, inst.profile, branch_cap)
    return is_bad_outcome_possible(inst, outcomes)


# ---------------------------------------------------------------------------
# Profile construction helpers


def _names(prefix: str, count: int) -> list:
    return ["%s%d" % (prefix, i + 1) for i in range(count)]


def _set_profile(groups, seats, extra=()) -> Profile:
    ballots = [WeightedBallot(SetBallot(names), weight, in_w)
               for weight, names, in_w in groups if weight > 0]
    return Profile(ballots, seats, extra)


def _list_profile(groups, seats, extra=()) -> Profile:
    ballots = [WeightedBallot(ListBallot(names), weight, in_w)
               for weight, names, in_w in groups if weight > 0]
    return Profile(ballots, seats, extra)


def _party_profile(groups, seats) -> Profile:
    ballots = [WeightedBallot(PartyBallot(name), weight, in_w)
               for weight, name, in_w in groups if weight > 0]
    # Pad with silent party names so few-party electorates still satisfy
    # the universe >= seats profile invariant; they receive no votes and
    # never win seats.
    pad = _names("Z", max(0, seats - len(ballots)))
    return Profile(ballots, seats, pad)


def _ballot_kind(method: MethodId) -> str:
    if method.kind in _SET_METHODS:
        return "set"
    if method.kind in _LIST_METHODS:
        return "list"
    return "party"


def _make_witness(profile, target, ell, scenario, claimed, source) -> Witness:
    inst = ScenarioInstance(profile, target, ell, scenario)
    return Witness(inst, Fraction(claimed), source)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CoverageError(message)


def _default_eps(eps) -> Fraction:
    return Fraction(1, 20) if eps is None else Fraction(eps)


# ---------------------------------------------------------------------------
# The witness catalog


def _symmetric_parties(method, scenario, ell, seats, eps):
    """(S+1)/ell equal parties of ell names each; one short party per branch."""
    _require((seats + 1) % ell == 0,
             "needs (S+1)/ell integral for equal parties")
    blocks = (seats + 1) // ell
    _require(blocks >= 2, "needs at least two parties")
    if method.kind == "sntv":
        _require(ell == 1, "single-vote ballots hold one name")
    if method.kind == "lv":
        _require(ell <= int(method.param), "party list exceeds the ballot cap")
    kind = _ballot_kind(method)
    value = Fraction(ell, seats + 1)
    if kind == "party":
        groups = [(Fraction(1), "P%d" % (p + 1), p == 0)
                  for p in range(blocks)]
        profile = _party_profile(groups, seats)
        return _make_witness(profile, {"P1"}, ell, scenario, value,
                             "symmetric-parties")
    lists = [["P%d_%d" % (p + 1, i + 1) for i in range(ell)]
             for p in range(blocks)]
    groups = [(Fraction(1), lists[p], p == 0) for p in range(blocks)]
    profile = (_set_profile(groups, seats) if kind == "set"
               else _list_profile(groups, seats))
    return _make_witness(profile, lists[0], ell, scenario, value,
                         "symmetric-parties")


def _common_list_tie(method, scenario, ell, seats, eps):
    """W (weight ell) on one ell-name list versus S+1-ell unit singletons."""
    _require(method.kind in ("phragmen-u", "thiele-opt", "thiele-elim",
                             "phragmen-o"),
             "tie construction applies to the load and credit methods")
    if method.kind == "thiele-opt":
        _require(method.scheme.kind == "harmonic",
                 "exchange tie needs harmonic weights")
    targets = _names("A", ell)
    rest = seats + 1 - ell
    _require(rest >= 1, "needs at least one outside candidate")
    groups = [(Fraction(ell), targets, True)]
    groups += [(Fraction(1), ["B%d" % (j + 1)], False) for j in range(rest)]
    kind = _ballot_kind(method)
    profile = (_set_profile(groups, seats) if kind == "set"
               else _list_profile(groups, seats))
    return _make_witness(profile, targets, ell, scenario,
                         Fraction(ell, seats + 1), "common-list-tie")


def _divisor_extremes(method, scenario, ell, seats, eps):
    """W at ell-1+gamma against S+1-ell parties of gamma votes each."""
    _require(method.kind == "div", "divisor construction")
    _require(ScenarioId(scenario) is ScenarioId.PARTY,
             "apportionment witnesses live in the party scenario")
    gamma = method.param
    _require(gamma > 0, "zero first divisor gives every party a free seat")
    rest = seats + 1 - ell
    groups = [(ell - 1 + gamma, "W", True)]
    groups += [(gamma, "P%d" % (j + 1), False) for j in range(rest)]
    profile = _party_profile(groups, seats)
    value = (ell - 1 + gamma) / (ell - 1 + gamma * (seats + 2 - ell))
    return _make_witness(profile, {"W"}, ell, scenario, value,
                         "divisor-extremes")


def _quota_boundary(method, scenario, ell, seats, eps):
    """W at ell-1+t against S+1-ell parties of t votes, t on the rounding
    boundary of the quota."""
    _require(method.kind in ("quota", "stv"), "quota-family construction")
    delta = method.param
    t = Fraction(seats + 1 - ell + delta, seats + 2 - ell)
    value = Fraction(ell * (seats + 2 - ell) - 1 + delta) \
        / ((seats + delta) * (seats + 2 - ell))
    rest = seats + 1 - ell
    if method.kind == "quota":
        _require(ScenarioId(scenario) is ScenarioId.PARTY,
                 "apportionment witnesses live in the party scenario")
        groups = [(ell - 1 + t, "W", True)]
        groups += [(t, "P%d" % (j + 1), False) for j in range(rest)]
        profile = _party_profile(groups, seats)
        return _make_witness(profile, {"W"}, ell, scenario, value,
                             "quota-boundary")
    _require(ScenarioId(scenario) in (ScenarioId.PARTY, ScenarioId.SAME,
                                      ScenarioId.PSC, ScenarioId.WPSC),
             "transfer witnesses cover the list scenarios")
    targets = _names("A", ell)
    groups = [(ell - 1 + t, targets, True)]
    groups += [(t, ["B%d" % (j + 1)], False) for j in range(rest)]
    profile = _list_profile(groups, seats)
    return _make_witness(profile, targets, ell, scenario, value,
                         "quota-boundary")


def _equal_split(method, scenario, ell, seats, eps):
    """W splits evenly over its targets; everyone ties at the boundary."""
    scenario = ScenarioId(scenario)
    rest = seats + 1 - ell
    if method.kind == "lv":
        limit = int(method.param)
        _require(limit <= seats, "ballot cap exceeds the seat count")
        u = min(limit, rest)
        v = min(limit, ell)
        targets = _names("A", ell)
        decoys = _names("B", rest)
        if scenario is ScenarioId.TACTIC:
            groups = [(Fraction(u), [targets[(i + j) % ell] for j in range(v)],
                       True) for i in range(ell)]
            groups += [(Fraction(v), [decoys[(i + j) % rest]
                                      for j in range(u)], False)
                       for i in range(rest)]
            value = Fraction(ell * u, ell * u + rest * v)
            profile = normalize(_set_profile(groups, seats))
            return _make_witness(profile, targets, ell, scenario, value,
                                 "equal-split")
        _require(scenario in (ScenarioId.SAME, ScenarioId.PJR,
                              ScenarioId.EJR), "set-ballot scenarios only")
        _require(ell <= limit, "common list exceeds the ballot cap")
        groups = [(Fraction(u), targets, True)]
        groups += [(Fraction(1), [decoys[(i + j) % rest] for j in range(u)],
                    False) for i in range(rest)]
        value = Fraction(u, u + rest)
        profile = normalize(_set_profile(groups, seats))
        return _make_witness(profile, targets, ell, scenario, value,
                             "equal-split")
    _require(method.kind in ("sntv", "cvq", "stv", "phragmen-u",
                             "phragmen-o", "thiele-opt", "thiele-elim"),
             "even-split ties apply to the score, load and credit methods")
    if method.kind == "thiele-opt":
        _require(method.scheme.kind == "harmonic",
                 "even-split ties need harmonic weights")
    _require(scenario is ScenarioId.TACTIC or ell == 1,
             "single-name ballots support several seats only tactically")
    kind = _ballot_kind(method)
    targets = _names("A", ell)
    groups = [(Fraction(1), [t], True) for t in targets]
    groups += [(Fraction(1), ["B%d" % (j + 1)], False) for j in range(rest)]
    profile = (_set_profile(groups, seats) if kind == "set"
               else _list_profile(groups, seats))
    return _make_witness(profile, targets, ell, scenario,
                         Fraction(ell, seats + 1), "equal-split")


def _majority_tie(method, scenario, ell, seats, eps):
    """Two blocks of equal weight on disjoint lists; the larger list can
    sweep every seat."""
    _require(method.kind in ("bv", "av"), "unlimited-score methods only")
    _require(ScenarioId(scenario) in (ScenarioId.PARTY, ScenarioId.SAME,
                                      ScenarioId.TACTIC, ScenarioId.PJR),
             "the half threshold covers the list scenarios")
    targets = _names("A", ell)
    groups = [(Fraction(1), targets, True),
              (Fraction(1), _names("B", seats), False)]
    profile = _set_profile(groups, seats)
    return _make_witness(profile, targets, ell, scenario, Fraction(1, 2),
                         "majority-tie")


def _ejr_window(method, scenario, ell, seats, eps):
    """W ballots add rotating decoy windows to the common target set; the
    decoys tie everywhere and can fill all seats."""
    _require(method.kind in ("bv", "av", "lv"), "score-family methods only")
    _require(ScenarioId(scenario) is ScenarioId.EJR,
             "per-ballot representation witnesses")
    if method.kind == "bv":
        cap = seats
    elif method.kind == "lv":
        cap = int(method.param)
        _require(cap <= seats, "ballot cap exceeds the seat count")
    else:
        cap = None
    if cap is not None:
        _require(2 * ell - 1 <= cap,
                 "window ballots exceed the cap; no construction known")
    window = seats if cap is None else min(cap, seats)
    targets = _names("A", ell)
    decoys = _names("D", seats)
    groups = []
    for i in range(seats):
        ballot = targets + [decoys[(i + j) % seats] for j in range(ell - 1)]
        groups.append((Fraction(window), ballot, True))
    for i in range(seats):
        ballot = [decoys[(i + j) % seats] for j in range(window)]
        groups.append((Fraction(seats + 1 - ell), ballot, False))
    profile = normalize(_set_profile(groups, seats))
    value = Fraction(window, window + seats + 1 - ell)
    return _make_witness(profile, targets, ell, scenario, value, "ejr-window")


def _self_voting(method, scenario, ell, seats, eps):
    """A huge block spreads one split vote per member over its own list
    while each opponent keeps a whole vote; approaches fraction 1."""
    _require(method.kind == "cvq", "vote-splitting dilution construction")
    scenario = ScenarioId(scenario)
    _require(scenario in (ScenarioId.PARTY, ScenarioId.SAME,
                          ScenarioId.PJR, ScenarioId.EJR),
             "dilution covers the list scenarios")
    eps = _default_eps(eps)
    _require(0 < eps < 1, "eps must lie in (0, 1)")
    w = max(ell, -(-seats * (1 - eps) // eps))   # ceil(S(1-eps)/eps)
    w = int(w)
    # One name more than the block's weight: each listed name scores
    # w/(w+1) < 1, so the unit opponents win all seats outright.
    block = _names("A", w + 1)
    groups = [(Fraction(w), block, True)]
    groups += [(Fraction(1), ["B%d" % (k + 1)], False) for k in range(seats)]
    profile = _set_profile(groups, seats)
    target = (block if scenario in (ScenarioId.PARTY, ScenarioId.SAME)
              else block[:ell])
    return _make_witness(profile, target, ell, scenario,
                         Fraction(w, w + seats), "self-voting")


def _addition_lp_vertex(method, scenario, ell, seats, eps):
    """W holds 1/w_ell votes on its list; the adversary plays a vertex of
    the minimum-mass election program for the other S+1-ell seats."""
    _require(method.kind == "thiele-add", "sequential addition construction")
    scenario = ScenarioId(scenario)
    if scenario in (ScenarioId.TACTIC, ScenarioId.EJR):
        _require(ell == 1, "only the one-seat value is known here")
    else:
        _require(scenario in (ScenarioId.SAME, ScenarioId.PJR),
                 "covered scenarios: same, pjr (all ell), tactic/ejr at ell=1")
    scheme = method.scheme
    wl = scheme.w(ell)
    _require(wl > 0, "zero list weight saturates the threshold at 1")
    n = seats + 1 - ell
    _require(n <= ALPHA_CAP,
             "vote-mass program capped at order %d" % ALPHA_CAP)
    outcome = solve_alpha(n, scheme)
    targets = _names("A", ell)
    decoys = _names("B", n)
    groups = [(1 / wl, targets, True)]
    for sigma, x in zip(subsets(n), outcome.point):
        if x > 0:
            groups.append((x, [decoys[i] for i in sigma], False))
    profile = _set_profile(groups, seats)
    value = (1 / wl) / (1 / wl + outcome.value)
    return _make_witness(profile, targets, ell, scenario, value,
                         "addition-lp-vertex")


def _cyclic_window_opt(method, scenario, ell, seats, eps):
    """One block on a single name against rotating k-windows sized to the
    best satisfaction-per-name ratio."""
    _require(method.kind == "thiele-opt", "optimization construction")
    _require(ell == 1, "single-seat construction")
    _require(ScenarioId(scenario) in (ScenarioId.SAME, ScenarioId.PJR,
                                      ScenarioId.EJR),
             "covered scenarios: same, pjr, ejr")
    scheme = method.scheme
    best = max(k * scheme.w(k) for k in range(1, seats + 1))
    _require(best > 0, "all weights vanish")
    star = next(k for k in range(1, seats + 1) if k * scheme.w(k) == best)
    decoys = _names("B", seats)
    groups = [(best, ["A1"], True)]
    groups += [(Fraction(1), [decoys[(i + j) % seats] for j in range(star)],
                False) for i in range(seats)]
    profile = normalize(_set_profile(groups, seats))
    return _make_witness(profile, ["A1"], 1, scenario, best / (best + seats),
                         "cyclic-window-opt")


def _weight_floor(method, scenario, ell, seats, eps):
    """W holds 1/w_ell votes on its list against unit singletons; trading
    the last list seat for an extra singleton is satisfaction-neutral."""
    _require(method.kind == "thiele-opt", "optimization construction")
    _require(ScenarioId(scenario) in (ScenarioId.SAME, ScenarioId.PJR,
                                      ScenarioId.EJR),
             "covered scenarios: same, pjr, ejr")
    scheme = method.scheme
    wl = scheme.w(ell)
    targets = _names("A", ell)
    if wl == 0:
        # Beyond the last positive weight extra list seats are worthless,
        # so every committee keeping the worthwhile prefix ties; the
        # saturated threshold 1 is attained with silent spare candidates.
        _require(ell >= 2, "the first weight is always positive")
        spares = _names("B", seats - 1)
        profile = _set_profile([(Fraction(1), targets, True)], seats,
                               extra=spares)
        return _make_witness(profile, targets, ell, scenario, Fraction(1),
                             "weight-floor")
    rest = seats + 1 - ell
    groups = [(1 / wl, targets, True)]
    groups += [(Fraction(1), ["B%d" % (j + 1)], False) for j in range(rest)]
    profile = _set_profile(groups, seats)
    value = 1 / (wl * rest + 1)
    return _make_witness(profile, targets, ell, scenario, value,
                         "weight-floor")


def _elimination_trap(method, scenario, ell, seats, eps):
    """Decoy clusters keep W's candidate at minimum score until it is
    eliminated, after which the clusters collapse one name at a time."""
    _require(method.kind == "thiele-elim", "elimination construction")
    _require(ScenarioId(scenario) in (ScenarioId.PJR, ScenarioId.EJR),
             "covered scenarios: pjr, ejr")
    _require(ell == 1, "single-seat construction")
    m = max(1, isqrt(seats))
    limit = Fraction(m, m * m + seats)

    def fraction_for(n):
        return Fraction(m * (n + 1), m * (m * n + 1) + (m + n) * seats)

    n = seats
    if eps is not None:
        eps = Fraction(eps)
        _require(eps > 0, "eps must be positive")
        while limit - fraction_for(n) > eps:
            n += 1
    groups = []
    for i in range(m):
        cluster = ["C%d_%d" % (i + 1, j + 1) for j in range(n)]
        groups.append((Fraction(n + 1), ["A"] + cluster, True))
        if m >= 2:
            groups += [(Fraction(m - 1), [name], False) for name in cluster]
    groups += [(Fraction(m + n), ["B%d" % (k + 1)], False)
               for k in range(seats)]
    profile = _set_profile(groups, seats)
    return _make_witness(profile, ["A"], 1, scenario, fraction_for(n),
                         "elimination-trap")


def _suffix_chain(method, scenario, ell, seats, eps):
    """Nested suffix lists weighted by the extremal mass sequence keep
    every next candidate at score exactly one."""
    _require(method.kind == "thiele-o", "ordered sequential construction")
    scenario = ScenarioId(scenario)
    _require(scenario in (ScenarioId.SAME, ScenarioId.TACTIC),
             "covered scenarios: same, tactic")
    n = seats + 1 - ell
    targets = _names("A", ell)
    decoys = _names("B", n)
    groups = []
    if scenario is ScenarioId.SAME:
        w_weight = Fraction(ell)
        groups.append((w_weight, targets, True))
    else:
        w_weight = seq_a(ell)
        groups += [(seq_b(i), targets[i - 1:], True)
                   for i in range(1, ell + 1)]
    groups += [(seq_b(i), decoys[i - 1:], False) for i in range(1, n + 1)]
    profile = _list_profile(groups, seats)
    return _make_witness(profile, targets, ell, scenario,
                         w_weight / (w_weight + seq_a(n)), "suffix-chain")


def _rotated_start(method, scenario, ell, seats, eps):
    """Every W ballot opens with a fixed prefix and rotates the next name,
    so the late list positions split W's weight as finely as possible."""
    _require(method.kind == "thiele-o", "ordered sequential construction")
    _require(ScenarioId(scenario) is ScenarioId.WPSC,
             "covered scenario: wpsc")
    n = seats + 1 - ell
    k = (ell - 1) // 2
    c = Fraction(seq_c(ell))
    targets = _names("A", ell)
    groups = []
    for j in range(k, ell):
        rest = [targets[i] for i in range(k, ell) if i != j]
        ballot = targets[:k] + [targets[j]] + rest
        groups.append((c / (ell - k), ballot, True))
    decoys = _names("B", n)
    groups += [(seq_b(i), decoys[i - 1:], False) for i in range(1, n + 1)]
    profile = _list_profile(groups, seats)
    return _make_witness(profile, targets, ell, scenario, c / (c + seq_a(n)),
                         "rotated-start")


def _self_first_psc(method, scenario, ell, seats, eps):
    """Each W voter ranks a different own-side name first, splitting the
    top-position support; unit opponents with doubled weight sweep."""
    _require(method.kind in ("phragmen-o", "thiele-o"),
             "ordered methods whose top-set guarantee fails")
    _require(ScenarioId(scenario) is ScenarioId.PSC, "covered scenario: psc")
    eps = _default_eps(eps)
    _require(0 < eps < 1, "eps must lie in (0, 1)")
    q = max(ell, int(-(-2 * seats * (1 - eps) // eps)))
    targets = _names("A", q)
    groups = [(Fraction(1), targets[i:] + targets[:i], True)
              for i in range(q)]
    groups += [(Fraction(2), ["B%d" % (k + 1)], False) for k in range(seats)]
    profile = _list_profile(groups, seats)
    return _make_witness(profile, targets, ell, scenario,
                         Fraction(q, q + 2 * seats), "self-first-psc")


def _load_fixture(name: str) -> Profile:
    from .ballots import parse_profile
    text = resources.files(__package__).joinpath(
        "profiles", name).read_text(encoding="utf-8")
    return parse_profile(text)


_FIXTURE_WITNESSES = {
    # token: (file, method label, scenario, ell, seats, target, fraction)
    "overlap-approvals": ("overlap_approvals_2409.profile", "phragmen-u",
                          ScenarioId.EJR, 2, 12, ("A", "B"),
                          Fraction(409, 2409)),
    "vote-splitting": ("split_vote_1912.profile", "thiele-add",
                       ScenarioId.SAME, 1, 3, ("K", "L", "M"),
                       Fraction(13, 50)),
    "ordered-majority-loss": ("ordered_majority_loss.profile", "thiele-o",
                              ScenarioId.SAME, 2, 3, ("A", "B", "C"),
                              Fraction(11, 20)),
    "ordered-tactic-split": ("ordered_tactic_after.profile", "thiele-o",
                             ScenarioId.SAME, 1, 2, ("C", "D"),
                             Fraction(39, 100)),
}


def _fixture_witness(token):
    file_name, label, fix_scenario, fix_ell, fix_seats, target, frac = \
        _FIXTURE_WITNESSES[token]

    def build(method, scenario, ell, seats, eps):
        _require(method.kind == label, "fixture is for method %s" % label)
        _require(ScenarioId(scenario) is fix_scenario,
                 "fixture scenario is %s" % fix_scenario.value)
        _require((ell, seats) == (fix_ell, fix_seats),
                 "fixture parameters are ell=%d, S=%d"
                 % (fix_ell, fix_seats))
        profile = _load_fixture(file_name)
        return _make_witness(profile, target, ell, scenario, frac, token)

    return build


CATALOG: dict = {
    "divisor-extremes": _divisor_extremes,
    "quota-boundary": _quota_boundary,
    "majority-tie": _majority_tie,
    "ejr-window": _ejr_window,
    "equal-split": _equal_split,
    "common-list-tie": _common_list_tie,
    "symmetric-parties": _symmetric_parties,
    "addition-lp-vertex": _addition_lp_vertex,
    "cyclic-window-opt": _cyclic_window_opt,
    "weight-floor": _weight_floor,
    "suffix-chain": _suffix_chain,
    "rotated-start": _rotated_start,
    "positional-split": None,       # filled in below
    "positional-list": None,
    "self-voting": _self_voting,
    "elimination-trap": _elimination_trap,
    "self-first-psc": _self_first_psc,
}
for _token in _FIXTURE_WITNESSES:
    CATALOG[_token] = _fixture_witness(_token)


def _positional_split(method, scenario, ell, seats, eps):
    """Both sides rotate their lists so every candidate earns the average
    positional weight; all S+1 candidates tie."""
    _require(method.kind == "borda", "positional construction")
    _require(ScenarioId(scenario) is ScenarioId.TACTIC,
             "covered scenario: tactic")
    scheme = method.scheme
    n = seats + 1 - ell
    mean_l = scheme.psi(ell) / ell
    mean_n = scheme.psi(n) / n
    targets = _names("A", ell)
    decoys = _names("B", n)
    groups = [(mean_n / ell, targets[i:] + targets[:i], True)
              for i in range(ell)]
    groups += [(mean_l / n, decoys[i:] + decoys[:i], False)
               for i in range(n)]
    profile = normalize(_list_profile(groups, seats))
    return _make_witness(profile, targets, ell, scenario,
                         mean_n / (mean_n + mean_l), "positional-split")


def _positional_list(method, scenario, ell, seats, eps):
    """W keeps one common list, so its last name earns only w_ell per
    vote, while the adversary rotates for the average weight."""
    _require(method.kind == "borda", "positional construction")
    _require(ScenarioId(scenario) in (ScenarioId.SAME, ScenarioId.WPSC),
             "covered scenarios: same, wpsc")
    scheme = method.scheme
    n = seats + 1 - ell
    wl = scheme.w(ell)
    mean_n = scheme.psi(n) / n
    targets = _names("A", ell)
    decoys = _names("B", n)
    groups = [(mean_n, targets, True)]
    if wl > 0:
        groups += [(wl / n, decoys[i:] + decoys[:i], False)
                   for i in range(n)]
        profile = normalize(_list_profile(groups, seats))
    else:
        profile = _list_profile(groups, seats, extra=decoys)
    return _make_witness(profile, targets, ell, scenario,
                         mean_n / (mean_n + wl), "positional-list")


CATALOG["positional-split"] = _positional_split
CATALOG["positional-list"] = _positional_list


def construct_witness(token: str, method: MethodId, scenario, ell: int,
                      seats: int, eps=None) -> Witness:
    """Rebuild the named extremal construction as a concrete Witness."""
    if token not in CATALOG:
        raise ValueError("unknown construction token %r (choose from %s)"
                         % (token, ", ".join(sorted(CATALOG))))
    if not 1 <= ell <= seats:
        raise ValueError("need 1 <= ell <= seats")
    return CATALOG[token](method, scenario, ell, seats, eps)


def covering_token(method: MethodId, scenario, ell: int,
                   seats: int) -> Optional[str]:
    """A catalog token whose witness attains the exact threshold, if any."""
    try:
        entry = threshold(method, scenario, ell, seats)
    except (CoverageError, ValueError):
        return None
    if not (entry.is_exact and entry.kind == PI):
        return None
    for token, builder in CATALOG.items():
        try:
            witness = builder(method, scenario, ell, seats, None)
        except (CoverageError, ValueError, ProfileError):
            continue
        if witness.claimed_fraction == entry.value:
            return token
    return None


# ---------------------------------------------------------------------------
# Bounded brute-force search


@dataclass(frozen=True)
class SearchSpec:
    """Bounds for the brute-force enumeration of unit-ballot profiles."""

    max_candidates: int = 5
    weight_grid: int = 5            # largest total number of unit ballots
    max_ballot_groups: int = 8
    max_ballot_length: int = 3
    branch_cap: int = DEFAULT_BRANCH_CAP

    def __post_init__(self):
        for name in ("max_candidates", "weight_grid", "max_ballot_groups",
                     "max_ballot_length", "branch_cap"):
            if getattr(self, name) < 1:
                raise ValueError("%s must be positive" % name)


def _fraction_ladder(grid: int):
    """(fraction, total, w_count) triples, largest fraction first."""
    seen = []
    for total in range(2, grid + 1):
        for w_count in range(1, total):
            seen.append((Fraction(w_count, total), total, w_count))
    seen.sort(key=lambda item: (-item[0], item[1], item[2]))
    return seen


def _method_cap(method: MethodId, seats: int) -> Optional[int]:
    if method.kind == "bv":
        return seats
    if method.kind == "sntv":
        return 1
    if method.kind == "lv":
        return int(method.param)
    return None


def _ballot_options(method: MethodId, pool: Sequence[str], spec: SearchSpec,
                    seats: int) -> list:
    """All ballots over `pool` the method accepts, in sorted order."""
    cap = _method_cap(method, seats)
    longest = spec.max_ballot_length if cap is None else min(
        spec.max_ballot_length, cap)
    options = []
    if _ballot_kind(method) == "set":
        for size in range(1, longest + 1):
            options.extend(frozenset(combo)
                           for combo in combinations(sorted(pool), size))
        return sorted(options, key=sorted)
    for size in range(1, longest + 1):
        options.extend(permutations(sorted(pool), size))
    return sorted(options)


def _w_options(method: MethodId, scenario: ScenarioId, targets, decoys,
               spec: SearchSpec, seats: int) -> list:
    """Ballots W members may cast under the scenario's restriction."""
    cap = _method_cap(method, seats)
    ell = len(targets)
    if scenario is ScenarioId.TACTIC:
        return _ballot_options(method, list(targets) + list(decoys), spec,
                               seats)
    if _ballot_kind(method) == "set":
        if scenario in (ScenarioId.PARTY, ScenarioId.SAME):
            if cap is not None and ell > cap:
                return []
            return [frozenset(targets)]
        if scenario in (ScenarioId.PJR, ScenarioId.EJR):
            base = frozenset(targets)
            room = spec.max_ballot_length - ell
            if cap is not None:
                room = min(room, cap - ell)
            options = []
            for extra in range(0, max(room, 0) + 1):
                options.extend(base | frozenset(combo)
                               for combo in combinations(sorted(decoys),
                                                         extra))
            return sorted(set(options), key=sorted)
        return []
    if scenario in (ScenarioId.PARTY, ScenarioId.SAME):
        return [tuple(targets)]
    if scenario in (ScenarioId.PSC, ScenarioId.WPSC):
        return sorted(permutations(targets))
    return []


def _profile_from_counts(method, counts_w, counts_adv, seats, universe):
    groups = []
    for ballot, count in counts_w:
        content = (SetBallot(ballot) if isinstance(ballot, frozenset)
                   else ListBallot(ballot))
        groups.append(WeightedBallot(content, Fraction(count), True))
    for ballot, count in counts_adv:
        content = (SetBallot(ballot) if isinstance(ballot, frozenset)
                   else ListBallot(ballot))
        groups.append(WeightedBallot(content, Fraction(count), False))
    return Profile(groups, seats, universe)


def _multisets(options, size):
    """Sorted multisets as ((ballot, count), ...) tuples."""
    for combo in combinations_with_replacement(range(len(options)), size):
        counts: list = []
        for idx in combo:
            if counts and counts[-1][0] == idx:
                counts[-1] = (idx, counts[-1][1] + 1)
            else:
                counts.append((idx, 1))
        yield tuple((options[idx], count) for idx, count in counts)


def _party_search(method, ell, seats, spec):
    best = (Fraction(0), None)
    for fraction, total, w_votes in _fraction_ladder(spec.weight_grid):
        rest = total - w_votes
        max_parties = spec.max_candidates - 1
        seen = set()
        for parts in _partitions(rest, max_parties):
            if parts in seen:
                continue
            seen.add(parts)
            names = ["P%d" % (j + 1) for j in range(len(parts))]
            groups = [(Fraction(w_votes), "W", True)]
            groups += [(Fraction(v), names[j], False)
                       for j, v in enumerate(parts)]
            try:
                profile = _party_profile(groups, seats)
                pnames, vectors = party_seat_vectors(method, profile)
            except (AdamsIllDefined, ProfileError, ValueError):
                continue
            idx = pnames.index("W")
            if any(vec[idx] < ell for vec in vectors):
                inst = ScenarioInstance(profile, {"W"}, ell, ScenarioId.PARTY)
                return fraction, Witness(inst, fraction, "search")
    return best


def _partitions(total: int, max_parts: int):
    """Partitions of `total` into at most max_parts positive parts,
    largest part first (canonical, order-free)."""
    if total == 0:
        yield ()
        return

    def rec(remaining, parts_left, largest):
        if remaining == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for tail in rec(remaining - first, parts_left - 1, first):
                yield (first,) + tail

    yield from rec(total, max_parts, total)


def _bad_profile(method, scenario, inst, spec):
    try:
        outcomes = run_method(method, inst.profile, spec.branch_cap)
    except (ProfileError, ValueError):
        return False
    try:
        return is_bad_outcome_possible(inst, outcomes)
    except IndeterminateOutcome:
        return False


def search_lower_bound(method: MethodId, scenario, ell: int, seats: int,
                       spec: Optional[SearchSpec] = None):
    """Best (largest) W-fraction with a reachable bad outcome in the grid.

    Returns (fraction, witness); (0, None) if no bad instance was found.
    For the tactic scenario a fraction counts as bad only when every
    enumerated W strategy admits some adversary profile with a bad
    outcome; the enumeration bounds make the result a lower bound on the
    true threshold in every scenario.
    """
    scenario = ScenarioId(scenario)
    if not 1 <= ell <= seats:
        raise ValueError("need 1 <= ell <= seats")
    if spec is None:
        spec = SearchSpec()
    if method.kind in _PARTY_METHODS:
        if scenario is not ScenarioId.PARTY:
            raise CoverageError("apportionment methods use the party scenario")
        return _party_search(method, ell, seats, spec)
    if method.kind == "cv":
        raise CoverageError("no counting engine for free-split cumulative")

    pool_size = max(spec.max_candidates, seats)
    targets = tuple(_names("A", ell))
    decoys = tuple(_names("B", pool_size - ell))
    universe = targets + decoys
    adv_options = _ballot_options(method, decoys, spec, seats)
    w_options = _w_options(method, scenario, targets, decoys, spec, seats)
    if not w_options or not adv_options:
        return Fraction(0), None

    def instances(fraction, total, w_votes):
        for counts_w in _multisets(w_options, w_votes):
            for counts_adv in _multisets(adv_options, total - w_votes):
                if len(counts_w) + len(counts_adv) > spec.max_ballot_groups:
                    continue
                try:
                    profile = _profile_from_counts(
                        method, counts_w, counts_adv, seats, universe)
                except ProfileError:
                    continue
                inst = ScenarioInstance(profile, targets, ell, scenario)
                if not is_instance(inst):
                    continue
                yield counts_w, inst

    for fraction, total, w_votes in _fraction_ladder(spec.weight_grid):
        if scenario is ScenarioId.TACTIC:
            all_bad = True
            first_bad = None
            for counts_w in _multisets(w_options, w_votes):
                strategy_bad = None
                for counts_adv in _multisets(adv_options, total - w_votes):
                    if (len(counts_w) + len(counts_adv)
                            > spec.max_ballot_groups):
                        continue
                    try:
                        profile = _profile_from_counts(
                            method, counts_w, counts_adv, seats, universe)
                    except ProfileError:
                        continue
                    inst = ScenarioInstance(profile, targets, ell, scenario)
                    if _bad_profile(method, scenario, inst, spec):
                        strategy_bad = inst
                        break
                if strategy_bad is None:
                    all_bad = False
                    break
                if first_bad is None:
                    first_bad = strategy_bad
            if all_bad and first_bad is not None:
                return fraction, Witness(first_bad, fraction, "search")
        else:
            for _, inst in instances(fraction, total, w_votes):
                if _bad_profile(method, scenario, inst, spec):
                    return fraction, Witness(inst, fraction, "search")
    return Fraction(0), None


# ---------------------------------------------------------------------------
# Inequality audit


@dataclass(frozen=True)
class AuditCheck:
    name: str
    subject: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class AuditReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    def failures(self) -> list:
        return [check for check in self.checks if not check.ok]


def default_scope() -> list:
    """The method/scenario pairs the audit covers by default."""
    methods = [MethodId.div(1), MethodId.div(Fraction(1, 2)),
               MethodId.quota(0), MethodId.quota(1),
               MethodId.bv(), MethodId.av(), MethodId.sntv(), MethodId.lv(2),
               MethodId.cv(), MethodId.cvq(), MethodId.phragmen_u(),
               MethodId.thiele_opt(), MethodId.thiele_add(),
               MethodId.thiele_elim(), MethodId.stv(1), MethodId.stv(0),
               MethodId.phragmen_o(), MethodId.thiele_o(), MethodId.borda()]
    return [(m, sc) for m in methods for sc in ScenarioId]


def _entry_or_none(method, scenario, ell, seats):
    try:
        return threshold(method, scenario, ell, seats)
    except (CoverageError, ValueError):
        return None


_CHAINS = (
    (ScenarioId.PARTY, ScenarioId.SAME),
    (ScenarioId.SAME, ScenarioId.PJR),
    (ScenarioId.PJR, ScenarioId.EJR),
    (ScenarioId.SAME, ScenarioId.WPSC),
    (ScenarioId.WPSC, ScenarioId.PSC),
    (ScenarioId.TACTIC, ScenarioId.SAME),
)


def audit_table(scope: Optional[list] = None, smax: int = 5,
                spec: Optional[SearchSpec] = None,
                with_search: bool = False) -> AuditReport:
    """Machine-check the inequality families over the scope.

    Chain inequalities, seat-count closure, the universal lower bounds,
    and tactic subadditivity are checked on every applicable entry.  With
    with_search=True, pi-exact entries at S <= 3 are additionally probed
    by search_lower_bound: search must never exceed the threshold, and
    must attain it when the witness catalog covers the pair inside the
    search grid.
    """
    if scope is None:
        scope = default_scope()
    if spec is None:
        spec = SearchSpec(max_candidates=4, weight_grid=4)
    checks: list = []
    methods = []
    for method, _ in scope:
        if method not in methods:
            methods.append(method)
    scoped = set((m.label(), ScenarioId(sc)) for m, sc in scope)

    def in_scope(method, scenario):
        return (method.label(), scenario) in scoped

    for method in methods:
        for seats in range(1, smax + 1):
            for ell in range(1, seats + 1):
                subject = "%s ell=%d S=%d" % (method.label(), ell, seats)
                entries = {}
                for sc in ScenarioId:
                    if in_scope(method, sc):
                        entries[sc] = _entry_or_none(method, sc, ell, seats)
                # chain inequalities, decidable violations only
                for low_sc, high_sc in _CHAINS:
                    low = entries.get(low_sc)
                    high = entries.get(high_sc)
                    if low is None or high is None:
                        continue
                    if low.lo is not None and high.hi is not None:
                        ok = low.lo <= high.hi
                        checks.append(AuditCheck(
                            "chain %s<=%s" % (low_sc.value, high_sc.value),
                            subject, ok,
                            "" if ok else "%s > %s" % (low.lo, high.hi)))
                # seat-count closure on exact pi values
                for sc, entry in entries.items():
                    if entry is None or not entry.is_exact:
                        continue
                    if entry.kind != PI:
                        continue
                    partner = _entry_or_none(method, sc, seats + 1 - ell,
                                             seats)
                    if partner is None or not partner.is_exact \
                            or partner.kind != PI:
                        continue
                    ok = entry.value + partner.value >= 1
                    checks.append(AuditCheck(
                        "closure %s" % sc.value, subject, ok,
                        "" if ok else "%s + %s < 1"
                        % (entry.value, partner.value)))
                    # universal lower bounds
                    if (seats + 1) % ell == 0:
                        ok = entry.value >= Fraction(ell, seats + 1)
                        checks.append(AuditCheck(
                            "floor %s" % sc.value, subject, ok,
                            "" if ok else "%s < %d/%d"
                            % (entry.value, ell, seats + 1)))
            # tactic subadditivity over exact tactic values
            if in_scope(method, ScenarioId.TACTIC):
                values = {}
                for ell in range(1, seats + 1):
                    entry = _entry_or_none(method, ScenarioId.TACTIC, ell,
                                           seats)
                    if entry is not None and entry.is_exact:
                        values[ell] = entry.value
                for ell_a in values:
                    for ell_b in values:
                        ell_sum = ell_a + ell_b
                        if ell_sum in values:
                            ok = (values[ell_sum]
                                  <= values[ell_a] + values[ell_b])
                            checks.append(AuditCheck(
                                "tactic subadditive",
                                "%s S=%d %d+%d" % (method.label(), seats,
                                                   ell_a, ell_b),
                                ok, "" if ok else "%s > %s + %s"
                                % (values[ell_sum], values[ell_a],
                                   values[ell_b])))
    if with_search:
        for method, sc in scope:
            sc = ScenarioId(sc)
            for seats in range(1, min(smax, 3) + 1):
                for ell in range(1, seats + 1):
                    entry = _entry_or_none(method, sc, ell, seats)
                    if entry is None or not entry.is_exact \
                            or entry.kind != PI:
                        continue
                    try:
                        found, _ = search_lower_bound(method, sc, ell, seats,
                                                      spec)
                    except CoverageError:
                        continue
                    subject = "%s %s ell=%d S=%d" % (method.label(), sc.value,
                                                     ell, seats)
                    ok = found <= entry.value
                    checks.append(AuditCheck(
                        "search<=threshold", subject, ok,
                        "" if ok else "%s > %s" % (found, entry.value)))
                    token = covering_token(method, sc, ell, seats)
                    if token is not None and _witness_in_grid(
                            CATALOG[token](method, sc, ell, seats, None),
                            spec):
                        ok = found == entry.value
                        checks.append(AuditCheck(
                            "search=threshold", subject, ok,
                            "" if ok else "found %s, expected %s (via %s)"
                            % (found, entry.value, token)))
    return AuditReport(tuple(checks))


def _witness_in_grid(witness: Witness, spec: SearchSpec) -> bool:
    """Is the witness profile representable as unit ballots in the grid?"""
    profile = witness.instance.profile
    total = profile.total_weight
    if any(b.weight.denominator != 1 for b in profile.ballots):
        return False
    if total > spec.weight_grid:
        return False
    if len(profile.candidates) > max(spec.max_candidates, profile.seats):
        return False
    if len(profile.ballots) > spec.max_ballot_groups:
        return False
    for b in profile.ballots:
        if len(b.content.names()) > spec.max_ballot_length:
            return False
    return True
