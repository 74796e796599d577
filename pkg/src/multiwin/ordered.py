"""Counting engines for ordered (preference-list) ballots.

Engines: ideal fractional single-vote transfer (unrounded quota, uniform
surplus transfer), ordered min-max load balancing (a ballot counts only
for its highest-ranked unelected name), ordered sequential weights (the
first unelected name at position k receives weight 1/k), and positional
scoring with a configurable weight scheme.

All engines branch ties and return tie-complete OutcomeSets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .ballots import (DEFAULT_BRANCH_CAP, OutcomeSet, Profile, ProfileError,
                      WeightScheme)
from .unordered import (InsufficientSupportError, boundary_committees,
                        sequential_loads)


@dataclass(frozen=True)
class StvSpec:
    """Unrounded quota Q = V / (S + delta); delta = 1 is the Droop quota,
    delta = 0 the Hare quota."""

    delta: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta > 1:
            raise ValueError("delta must be <= 1")


@dataclass(frozen=True)
class BordaWeights:
    scheme: WeightScheme


def _list_ballots(profile: Profile) -> list:
    if profile.kind != "list":
        raise ProfileError("engine requires ordered (list) ballots")
    return [(b.content.ranking, b.weight) for b in profile.ballots]


def _first_choice(ranking, excluded) -> Optional[str]:
    for name in ranking:
        if name not in excluded:
            return name
    return None


def stv_count(spec: StvSpec, profile: Profile,
              branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """Fractional transfer counting; see _stv_states for the procedure."""
    committees = set()
    truncated = False
    for state in _stv_states(spec, profile, branch_cap):
        if state.final:
            committees.add(state.elected)
        if state.truncated:
            truncated = True
    return OutcomeSet(committees, truncated)


@dataclass(frozen=True)
class StvState:
    """One node of the branching count: elected/eliminated sets and the
    live ballot groups (ranking, remaining value)."""

    elected: frozenset
    eliminated: frozenset
    groups: tuple
    final: bool = False
    truncated: bool = False
    early: bool = False          # filled by the stop-early rule

    @property
    def live_value(self) -> Fraction:
        return sum((value for _, value in self.groups), Fraction(0))


def _stv_states(spec: StvSpec, profile: Profile,
                branch_cap: int = DEFAULT_BRANCH_CAP) -> Iterator[StvState]:
    """Explore the count, yielding every intermediate and final state.

    Each ballot counts for its first non-elected, non-eliminated name.
    A candidate whose count reaches the quota Q is elected and every
    ballot counting for it is rescaled by (v - Q) / v; otherwise a
    minimum-count candidate is eliminated at full value.  Both choices
    branch on ties.  When the remaining candidates only just fill the
    remaining seats, all of them are elected.  The surplus of the last
    elected candidate is not transferred.
    """
    ballots = _list_ballots(profile)
    seats = profile.seats
    total = profile.total_weight
    if seats + spec.delta <= 0:
        raise ValueError("need S + delta > 0")
    quota = total / (seats + spec.delta)

    def canonical(groups):
        merged: dict = {}
        for ranking, value in groups:
            if value > 0:
                merged[ranking] = merged.get(ranking, Fraction(0)) + value
        return tuple(sorted(merged.items()))

    start = StvState(frozenset(), frozenset(),
                     canonical([(r, w) for r, w in ballots]))
    frontier = [start]
    seen = {(start.elected, start.eliminated, start.groups)}
    count = 0
    while frontier:
        state = frontier.pop()
        yield state
        if state.final:
            continue
        elected, eliminated, groups = state.elected, state.eliminated, state.groups
        if len(elected) == seats:
            yield StvState(elected, eliminated, groups, final=True,
                           early=state.early)
            continue
        remaining = profile.candidates - elected - eliminated
        unfilled = seats - len(elected)
        if len(remaining) < unfilled:
            raise InsufficientSupportError(
                "only %d candidates left for %d open seats"
                % (len(remaining), unfilled))
        if len(remaining) == unfilled:
            yield StvState(elected | remaining, eliminated, groups,
                           final=True, early=True)
            continue
        votes = {c: Fraction(0) for c in remaining}
        piles: dict = {}
        for ranking, value in groups:
            cand = _first_choice(ranking, elected | eliminated)
            if cand is not None:
                votes[cand] += value
                piles.setdefault(cand, []).append((ranking, value))
        reachers = sorted(c for c in remaining if votes[c] >= quota)
        branches = []
        if reachers:
            for cand in reachers:
                surplus_factor = (votes[cand] - quota) / votes[cand]
                new_groups = []
                for ranking, value in groups:
                    head = _first_choice(ranking, elected | eliminated)
                    if head == cand:
                        value = value * surplus_factor
                    new_groups.append((ranking, value))
                branches.append(StvState(elected | {cand}, eliminated,
                                         canonical(new_groups)))
        else:
            worst = min(votes.values())
            for cand in sorted(c for c in remaining if votes[c] == worst):
                branches.append(StvState(elected, eliminated | {cand}, groups))
        for nxt in branches:
            key = (nxt.elected, nxt.eliminated, nxt.groups)
            if key in seen:
                continue
            seen.add(key)
            count += 1
            if count > branch_cap:
                yield StvState(elected, eliminated, groups, final=True,
                               truncated=True)
                return
            frontier.append(nxt)


def phragmen_ordered(profile: Profile,
                     branch_cap: int = DEFAULT_BRANCH_CAP):
    """Min-max-load rule where each ballot supports only its
    highest-ranked unelected candidate."""
    _list_ballots(profile)

    def supporters_of(content, elected):
        head = _first_choice(content.ranking, elected)
        return () if head is None else (head,)

    return sequential_loads(profile, supporters_of, branch_cap)


def thiele_ordered(profile: Profile,
                   branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """Sequential max-score election where a ballot counts for its first
    unelected name with weight 1/k, k being that name's position."""
    ballots = _list_ballots(profile)
    seats = profile.seats
    states = {frozenset()}
    truncated = False
    for _ in range(seats):
        next_states = set()
        for elected in states:
            scores: dict = {}
            for ranking, weight in ballots:
                for pos, name in enumerate(ranking):
                    if name not in elected:
                        scores[name] = (scores.get(name, Fraction(0))
                                        + weight / (pos + 1))
                        break
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


def borda_count(weights: BordaWeights, profile: Profile,
                branch_cap: int = DEFAULT_BRANCH_CAP) -> OutcomeSet:
    """Positional scoring: the name at position k earns weight * w_k."""
    ballots = _list_ballots(profile)
    scores = {c: Fraction(0) for c in profile.candidates}
    for ranking, weight in ballots:
        for pos, name in enumerate(ranking):
            scores[name] += weight * weights.scheme.w(pos + 1)
    return boundary_committees(scores, profile.seats, branch_cap)
