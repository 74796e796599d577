"""Counting engines for unordered (approval-style) ballots.

Every engine is tie-complete: wherever the rule's prose says "the
candidate with the largest score" and several candidates tie, all
resolutions are explored and the union of reachable committees is
returned as an OutcomeSet.

Engines: the score family (block vote, approval, SNTV, limited vote,
equal-and-even cumulative), sequential load-balancing (min-max load),
and the sequential-weight family (global optimization, addition,
elimination).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional

from .ballots import (DEFAULT_BRANCH_CAP, OutcomeSet, Profile, ProfileError,
                      SetBallot, WeightScheme)


class InsufficientSupportError(ProfileError):
    """Seats remain but no candidate can legally receive one."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class ApprovalFamilyRule:
    """Score rules differing only in ballot cap and per-name credit."""

    kind: str                 # "block" | "approval" | "sntv" | "limited" | "cvq"
    limit: Optional[int] = None

    @staticmethod
    def block() -> "ApprovalFamilyRule":
        return ApprovalFamilyRule("block")

    @staticmethod
    def approval() -> "ApprovalFamilyRule":
        return ApprovalFamilyRule("approval")

    @staticmethod
    def sntv() -> "ApprovalFamilyRule":
        return ApprovalFamilyRule("sntv")

    @staticmethod
    def limited(limit: int) -> "ApprovalFamilyRule":
        if limit < 1:
            raise ValueError("limited vote needs limit >= 1")
        return ApprovalFamilyRule("limited", limit)

    @staticmethod
    def cvq() -> "ApprovalFamilyRule":
        return ApprovalFamilyRule("cvq")

    def cap(self, seats: int) -> Optional[int]:
        """Maximum ballot size, or None for no cap."""
        if self.kind == "block":
            return seats
        if self.kind == "sntv":
            return 1
        if self.kind == "limited":
            if self.limit > seats:
                raise ValueError("limited vote cap exceeds seat count")
            return self.limit
        return None


@dataclass(frozen=True)
class LoadState:
    """Per-ballot-group loads and the history of round-maximum loads."""

    loads: tuple
    history: tuple

    @property
    def max_load(self) -> Fraction:
        return max(self.loads)


def _set_ballots(profile: Profile) -> list:
    if profile.kind != "set":
        raise ProfileError("engine requires unordered (set) ballots")
    return [(b.content.members, b.weight) for b in profile.ballots]


def score_family_count(rule: ApprovalFamilyRule, profile: Profile,
                       branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """Top-S by total score, with the cap and credit of the given rule."""
    ballots = _set_ballots(profile)
    seats = profile.seats
    cap = rule.cap(seats)
    scores = {c: Fraction(0) for c in profile.candidates}
    for members, weight in ballots:
        if cap is not None and len(members) > cap:
            raise ProfileError(
                "ballot %s exceeds the %d-name cap" % (sorted(members), cap))
        credit = weight / len(members) if rule.kind == "cvq" else weight
        for name in members:
            scores[name] += credit
    return boundary_committees(scores, seats, branch_cap)


def boundary_committees(scores: dict, seats: int,
                        branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """All top-`seats` sets obtainable by resolving ties at the boundary."""
    ranked = sorted(scores, key=lambda c: (-scores[c], c))
    pivot = scores[ranked[seats - 1]]
    fixed = [c for c in ranked if scores[c] > pivot]
    tied = [c for c in ranked if scores[c] == pivot]
    need = seats - len(fixed)
    truncated = comb(len(tied), need) > branch_cap
    committees = []
    for extra in combinations(tied, need):
        committees.append(frozenset(fixed) | frozenset(extra))
        if len(committees) >= branch_cap:
            break
    return OutcomeSet(committees, truncated)


def _waterfill(supporters: list) -> Fraction:
    """Least t with sum of weight * max(0, t - load) over supporters = 1."""
    supporters = sorted(supporters, key=lambda pair: pair[1])
    total_w = Fraction(0)
    total_wl = Fraction(0)
    for i, (weight, load) in enumerate(supporters):
        total_w += weight
        total_wl += weight * load
        t = (1 + total_wl) / total_w
        if i + 1 == len(supporters) or t <= supporters[i + 1][1]:
            return t
    raise AssertionError("water-fill failed")  # pragma: no cover


def sequential_loads(profile: Profile, supporters_of: Callable,
                     branch_cap: int = DEFAULT_BRANCH_CAP):
    """Shared min-max-load engine for unordered and ordered ballots.

    supporters_of(content, elected) must return the candidates the
    ballot currently supports.  Each round the engine elects a candidate
    minimizing the resulting maximum ballot load; the new unit of load
    is spread over that candidate's supporters so their maximum is as
    small as possible (ballots already above the waterline keep their
    load).  Ties branch.
    """
    ballots = [(b.content, b.weight) for b in profile.ballots]
    seats = profile.seats
    zero = tuple(Fraction(0) for _ in ballots)
    states = {(frozenset(), zero): ()}     # -> history of round maxima
    truncated = False
    for _ in range(seats):
        next_states: dict = {}
        for (elected, loads), history in sorted(
                states.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][1])):
            supporters: dict = {}
            for idx, (content, weight) in enumerate(ballots):
                for cand in supporters_of(content, elected):
                    if cand not in elected:
                        supporters.setdefault(cand, []).append(idx)
            if not supporters:
                raise InsufficientSupportError(
                    "no supported candidate left for an open seat")
            global_max = max(loads) if any(loads) else Fraction(0)
            best_key = None
            options = []
            for cand in sorted(supporters):
                idxs = supporters[cand]
                t = _waterfill([(ballots[i][1], loads[i]) for i in idxs])
                key = max(t, global_max)
                if best_key is None or key < best_key:
                    best_key = key
                    options = [(cand, t)]
                elif key == best_key:
                    options.append((cand, t))
            for cand, t in options:
                new_loads = list(loads)
                for i in supporters[cand]:
                    if new_loads[i] < t:
                        new_loads[i] = t
                state = (elected | {cand}, tuple(new_loads))
                if state not in next_states:
                    next_states[state] = history + (best_key,)
            if len(next_states) > branch_cap:
                truncated = True
                break
        states = next_states
        if truncated:
            break
    outcomes: dict = {}
    for (elected, loads), history in sorted(
            states.items(), key=lambda kv: (sorted(kv[0][0]), kv[0][1])):
        if elected not in outcomes:
            outcomes[elected] = LoadState(loads, history)
    return OutcomeSet(outcomes.keys(), truncated), outcomes


def phragmen_unordered(profile: Profile,
                       branch_cap: int = DEFAULT_BRANCH_CAP):
    """Min-max-load rule on unordered ballots; a ballot supports every
    unelected name on it (with one shared load account per ballot)."""
    _set_ballots(profile)

    def supporters_of(content, elected):
        return content.members - elected

    return sequential_loads(profile, supporters_of, branch_cap)


def thiele_optimize(scheme: WeightScheme, profile: Profile,
                    budget: int = 500000) -> OutcomeSet:
    """All committees maximizing total satisfaction, by full enumeration."""
    ballots = _set_ballots(profile)
    seats = profile.seats
    universe = sorted(profile.candidates)
    if comb(len(universe), seats) > budget:
        raise BudgetExceededError(
            "C(%d, %d) committees exceed the enumeration budget"
            % (len(universe), seats))
    best = None
    winners: list = []
    for committee in combinations(universe, seats):
        members = frozenset(committee)
        value = sum((weight * scheme.psi(len(ballot & members))
                     for ballot, weight in ballots), Fraction(0))
        if best is None or value > best:
            best = value
            winners = [members]
        elif value == best:
            winners.append(members)
    return OutcomeSet(winners)


def addition_scores(scheme: WeightScheme, ballots: list, elected: frozenset):
    """Candidate scores for one sequential-addition round."""
    scores: dict = {}
    for members, weight in ballots:
        credit = weight * scheme.w(len(members & elected) + 1)
        if credit == 0:
            continue
        for cand in members:
            if cand not in elected:
                scores[cand] = scores.get(cand, Fraction(0)) + credit
    return scores


def thiele_addition(scheme: WeightScheme, profile: Profile,
                    branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """Greedy sequential max-score election with tie branching."""
    ballots = _set_ballots(profile)
    seats = profile.seats
    states = {frozenset()}
    truncated = False
    for _ in range(seats):
        next_states = set()
        for elected in states:
            scores = addition_scores(scheme, ballots, elected)
            if not scores:
                raise InsufficientSupportError(
                    "no candidate receives any score for an open seat")
            best = max(scores.values())
            for cand, value in scores.items():
                if value == best:
                    next_states.add(elected | {cand})
            if len(next_states) > branch_cap:
                truncated = True
                break
        states = next_states
        if truncated:
            break
    return OutcomeSet(states, truncated)


def thiele_addition_paths(scheme: WeightScheme, profile: Profile,
                          branch_cap: int = DEFAULT_BRANCH_CAP):
    """Yield (committee, winning-score sequence) along every branch."""
    ballots = _set_ballots(profile)
    seats = profile.seats
    paths = [(frozenset(), ())]
    for _ in range(seats):
        next_paths = []
        seen = set()
        for elected, trail in paths:
            scores = addition_scores(scheme, ballots, elected)
            if not scores:
                raise InsufficientSupportError(
                    "no candidate receives any score for an open seat")
            best = max(scores.values())
            for cand, value in scores.items():
                if value == best:
                    state = elected | {cand}
                    if state not in seen:
                        seen.add(state)
                        next_paths.append((state, trail + (best,)))
            if len(next_paths) > branch_cap:
                break
        paths = next_paths
    return paths


def thiele_elimination(profile: Profile,
                       branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """Repeated elimination of a minimum-score candidate (harmonic credit:
    a ballot with k remaining names gives each of them weight/k)."""
    ballots = _set_ballots(profile)
    seats = profile.seats
    states = {frozenset(profile.candidates)}
    truncated = False
    while states and len(next(iter(states))) > seats:
        next_states = set()
        for remaining in states:
            scores = {c: Fraction(0) for c in remaining}
            for members, weight in ballots:
                live = members & remaining
                if not live:
                    continue
                credit = weight / len(live)
                for cand in live:
                    scores[cand] += credit
            worst = min(scores.values())
            for cand, value in scores.items():
                if value == worst:
                    next_states.add(remaining - {cand})
            if len(next_states) > branch_cap:
                truncated = True
                break
        states = next_states
        if truncated:
            break
    return OutcomeSet(states, truncated)
