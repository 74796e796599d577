"""Scenario instances and good/bad-outcome predicates.

A scenario restricts how the designated voter set W (the ballot groups
flagged in the profile) votes, and defines what counts as a good outcome
for W: getting at least ell representatives in the sense the scenario
cares about.  The supported scenarios are:

- party:   all voters vote for disjoint identical lists; W on one list.
- same:    W votes one common list A (ordered: one common sequence).
- tactic:  no ballot restriction; W aims at ell target candidates and the
           strategy optimization lives in the verifier's bounded search.
- pjr:     every W ballot contains A; good when at least ell candidates
           approved by someone in W are elected.
- ejr:     every W ballot contains A; good when some W ballot has at
           least ell of its names elected.
- psc:     (ordered) every W ballot lists exactly the set A as its top
           |A| names; good when at least ell of A are elected.
- wpsc:    psc with |A| = ell; good when all of A is elected.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .ballots import (ListBallot, OutcomeSet, PartyBallot, Profile,
                      SetBallot)


class ScenarioId(Enum):
    PARTY = "party"
    SAME = "same"
    TACTIC = "tactic"
    PJR = "pjr"
    EJR = "ejr"
    PSC = "psc"
    WPSC = "wpsc"


class ScenarioTypeError(TypeError):
    """Scenario applied to an incompatible ballot kind."""


class IndeterminateOutcome(RuntimeError):
    """A truncated OutcomeSet cannot answer a possibility question."""


def _ballot_names(ballot) -> frozenset:
    content = ballot.content
    if isinstance(content, PartyBallot):
        return frozenset((content.party,))
    if isinstance(content, SetBallot):
        return content.members
    return frozenset(content.ranking)


@dataclass(frozen=True)
class ScenarioInstance:
    profile: Profile
    target: frozenset
    ell: int
    scenario: ScenarioId

    def __init__(self, profile: Profile, target, ell: int,
                 scenario: ScenarioId):
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "target", frozenset(target))
        object.__setattr__(self, "ell", int(ell))
        object.__setattr__(self, "scenario", ScenarioId(scenario))
        if not 1 <= self.ell <= profile.seats:
            raise ValueError("need 1 <= ell <= seats")

    @property
    def fraction(self) -> Fraction:
        """W's share of the total vote weight."""
        return self.profile.w_weight / self.profile.total_weight


def is_instance(inst: ScenarioInstance) -> bool:
    """Does the profile satisfy the scenario's ballot restriction?"""
    profile = inst.profile
    scenario = inst.scenario
    w_ballots = profile.w_ballots()
    if scenario is ScenarioId.TACTIC:
        return True
    if not w_ballots:
        return False
    kind = profile.kind

    if scenario is ScenarioId.PARTY:
        lists = {}
        for b in profile.ballots:
            names = _ballot_names(b)
            for prior in lists:
                if prior != names and prior & names:
                    return False
            # Members of one party must cast identical ballots; for
            # ordered ballots that means the same sequence, not merely
            # the same support set.
            if lists.setdefault(names, b.content) != b.content:
                return False
        w_lists = {_ballot_names(b) for b in w_ballots}
        if len(w_lists) != 1:
            return False
        w_list = next(iter(w_lists))
        if kind == "party":
            return inst.target == w_list
        return inst.target <= w_list and len(w_list) >= inst.ell

    if kind == "party":
        raise ScenarioTypeError("scenario %s needs candidate ballots"
                                % scenario.value)

    if scenario is ScenarioId.SAME:
        contents = {b.content for b in w_ballots}
        if len(contents) != 1:
            return False
        names = _ballot_names(w_ballots[0])
        return len(names) >= inst.ell and inst.target == names

    if scenario in (ScenarioId.PJR, ScenarioId.EJR):
        if kind != "set":
            raise ScenarioTypeError("%s needs unordered ballots"
                                    % scenario.value)
        if len(inst.target) < inst.ell:
            return False
        return all(inst.target <= b.content.members for b in w_ballots)

    if scenario in (ScenarioId.PSC, ScenarioId.WPSC):
        if kind != "list":
            raise ScenarioTypeError("%s needs ordered ballots"
                                    % scenario.value)
        m = len(inst.target)
        if scenario is ScenarioId.WPSC and m != inst.ell:
            return False
        if m < inst.ell:
            return False
        for b in w_ballots:
            ranking = b.content.ranking
            if frozenset(ranking[:m]) != inst.target:
                return False
        return True

    raise AssertionError("unhandled scenario %s" % scenario)  # pragma: no cover


def is_good(inst: ScenarioInstance, committee) -> bool:
    """Is this committee a good outcome for W under the scenario?"""
    committee = frozenset(committee)
    scenario = inst.scenario
    if scenario in (ScenarioId.PARTY, ScenarioId.SAME):
        # Good means ell members of W's own list are elected; the list may
        # be a superset of the declared target set.
        w_list = frozenset().union(
            *(_ballot_names(b) for b in inst.profile.w_ballots()))
        return len(w_list & committee) >= inst.ell
    if scenario in (ScenarioId.TACTIC, ScenarioId.PSC):
        return len(inst.target & committee) >= inst.ell
    if scenario is ScenarioId.WPSC:
        return inst.target <= committee
    if scenario is ScenarioId.PJR:
        union = frozenset().union(
            *(_ballot_names(b) for b in inst.profile.w_ballots()))
        return len(union & committee) >= inst.ell
    if scenario is ScenarioId.EJR:
        return any(len(_ballot_names(b) & committee) >= inst.ell
                   for b in inst.profile.w_ballots())
    raise AssertionError("unhandled scenario %s" % scenario)  # pragma: no cover


def is_bad_outcome_possible(inst: ScenarioInstance,
                            outcomes: OutcomeSet) -> bool:
    """Is some reachable committee bad for W?"""
    if outcomes.truncated:
        raise IndeterminateOutcome(
            "outcome set truncated by the branch cap; badness undecidable")
    return any(not is_good(inst, committee)
               for committee in outcomes.committees)
