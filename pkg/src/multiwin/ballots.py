"""Election data model: ballots, profiles, committees, outcome sets.

A profile is a multiset of weighted ballot groups, all of one kind:
party ballots, unordered candidate sets, or ordered candidate lists.
Weights are positive rationals; a "set of voters W" is represented by
flagging ballot groups as part of the designated voter set.

Because several engines branch on ties, results are reported as an
OutcomeSet: every committee reachable under some resolution of every
tie, deduplicated and canonically ordered.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .numerics import format_rational, parse_rational

DEFAULT_BRANCH_CAP = 10000

RESERVED_CHARS = set("{}[]#:!")


class ProfileError(ValueError):
    """Raised for structurally invalid profiles or ballots."""


class ProfileParseError(ProfileError):
    """Raised on malformed profile files; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


def _check_name(name: str) -> str:
    if not name or any(ch.isspace() or ch in RESERVED_CHARS for ch in name):
        raise ProfileError("invalid candidate/party name: %r" % name)
    return name


@dataclass(frozen=True)
class PartyBallot:
    party: str

    def names(self) -> tuple[str, ...]:
        return (self.party,)


@dataclass(frozen=True)
class SetBallot:
    members: frozenset[str]

    def __init__(self, members: Iterable[str]):
        object.__setattr__(self, "members", frozenset(members))
        if not self.members:
            raise ProfileError("unordered ballot must be non-empty")

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class ListBallot:
    ranking: tuple[str, ...]

    def __init__(self, ranking: Sequence[str]):
        ranking = tuple(ranking)
        if not ranking:
            raise ProfileError("ordered ballot must be non-empty")
        if len(set(ranking)) != len(ranking):
            raise ProfileError("ordered ballot has duplicate names: %r" % (ranking,))
        object.__setattr__(self, "ranking", ranking)

    def names(self) -> tuple[str, ...]:
        return self.ranking


BallotContent = PartyBallot | SetBallot | ListBallot


@dataclass(frozen=True)
class WeightedBallot:
    content: BallotContent
    weight: Fraction
    in_w: bool = False

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight <= 0:
            raise ProfileError("ballot weight must be positive")


def _content_kind(content: BallotContent) -> str:
    if isinstance(content, PartyBallot):
        return "party"
    if isinstance(content, SetBallot):
        return "set"
    return "list"


@dataclass(frozen=True)
class Profile:
    ballots: tuple[WeightedBallot, ...]
    candidates: frozenset[str]
    seats: int

    def __init__(self, ballots: Iterable[WeightedBallot], seats: int,
                 candidates: Iterable[str] = ()):
        ballots = tuple(ballots)
        if not ballots:
            raise ProfileError("profile needs at least one ballot group")
        kinds = {_content_kind(b.content) for b in ballots}
        if len(kinds) != 1:
            raise ProfileError("profile mixes ballot kinds: %s" % sorted(kinds))
        universe = set(candidates)
        for b in ballots:
            universe.update(b.content.names())
        for name in universe:
            _check_name(name)
        if seats < 1:
            raise ProfileError("seats must be positive")
        if len(universe) < seats:
            raise ProfileError("candidate universe smaller than seat count")
        object.__setattr__(self, "ballots", ballots)
        object.__setattr__(self, "candidates", frozenset(universe))
        object.__setattr__(self, "seats", seats)

    @property
    def kind(self) -> str:
        return _content_kind(self.ballots[0].content)

    @property
    def total_weight(self) -> Fraction:
        return sum((b.weight for b in self.ballots), Fraction(0))

    @property
    def w_weight(self) -> Fraction:
        """Total weight of the designated voter set W."""
        return sum((b.weight for b in self.ballots if b.in_w), Fraction(0))

    def w_ballots(self) -> tuple[WeightedBallot, ...]:
        return tuple(b for b in self.ballots if b.in_w)


Committee = frozenset


@dataclass(frozen=True)
class OutcomeSet:
    committees: frozenset[frozenset[str]]
    truncated: bool = False

    def __init__(self, committees: Iterable[frozenset[str]], truncated: bool = False):
        committees = frozenset(frozenset(c) for c in committees)
        if not committees:
            raise ProfileError("outcome set must be non-empty")
        object.__setattr__(self, "committees", committees)
        object.__setattr__(self, "truncated", bool(truncated))

    def sorted_committees(self) -> list[tuple[str, ...]]:
        return sorted(tuple(sorted(c)) for c in self.committees)

    def __contains__(self, committee) -> bool:
        return frozenset(committee) in self.committees

    def __len__(self) -> int:
        return len(self.committees)


@dataclass(frozen=True)
class WeightScheme:
    """Non-increasing ballot weights w_1 >= w_2 >= ... >= 0 with w_1 = 1.

    kind is one of "harmonic" (w_k = 1/k), "weak" (1, 0, 0, ...),
    "constant" (all 1), or "explicit" (finite prefix plus constant tail).
    """

    kind: str
    prefix: tuple[Fraction, ...] = ()
    tail: Fraction = Fraction(0)

    @staticmethod
    def harmonic() -> "WeightScheme":
        return WeightScheme("harmonic")

    @staticmethod
    def weak() -> "WeightScheme":
        return WeightScheme("weak")

    @staticmethod
    def constant() -> "WeightScheme":
        return WeightScheme("constant")

    @staticmethod
    def explicit(prefix: Sequence, tail=Fraction(0)) -> "WeightScheme":
        prefix = tuple(Fraction(x) for x in prefix)
        tail = Fraction(tail)
        scheme = WeightScheme("explicit", prefix, tail)
        seq = list(prefix) + [tail]
        if not prefix or prefix[0] != 1:
            raise ProfileError("weight scheme requires w_1 = 1")
        if any(a < b for a, b in zip(seq, seq[1:])) or seq[-1] < 0:
            raise ProfileError("weights must be non-increasing and >= 0")
        return scheme

    def w(self, k: int) -> Fraction:
        """The weight w_k for the k-th approved/elected name, k >= 1."""
        if k < 1:
            raise ValueError("weight index must be >= 1")
        if self.kind == "harmonic":
            return Fraction(1, k)
        if self.kind == "weak":
            return Fraction(1) if k == 1 else Fraction(0)
        if self.kind == "constant":
            return Fraction(1)
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.tail

    def psi(self, n: int) -> Fraction:
        """Satisfaction psi(n) = sum_{k<=n} w_k."""
        return sum((self.w(k) for k in range(1, n + 1)), Fraction(0))

    def label(self) -> str:
        if self.kind == "explicit":
            parts = ",".join(format_rational(x) for x in self.prefix)
            return "explicit(%s;tail=%s)" % (parts, format_rational(self.tail))
        return self.kind


def normalize(profile: Profile) -> Profile:
    """Merge ballot groups with identical content (and W flag), keeping order."""
    merged: dict = {}
    order = []
    for b in profile.ballots:
        key = (b.content, b.in_w)
        if key in merged:
            merged[key] = merged[key] + b.weight
        else:
            merged[key] = b.weight
            order.append(key)
    ballots = [WeightedBallot(content, merged[(content, in_w)], in_w)
               for (content, in_w) in order]
    return Profile(ballots, profile.seats, profile.candidates)


def scale(profile: Profile, factor) -> Profile:
    """Multiply every ballot weight by a positive rational factor."""
    factor = Fraction(factor)
    if factor <= 0:
        raise ProfileError("scale factor must be positive")
    ballots = [replace(b, weight=b.weight * factor) for b in profile.ballots]
    return Profile(ballots, profile.seats, profile.candidates)


def parse_profile(text: str) -> Profile:
    """Parse the profile file format.

    One ballot group per line: `<weight> : <ballot>` where the ballot is
    `party NAME`, `{A B C}` (unordered) or `[A B C]` (ordered, left =
    most preferred).  `#` starts a comment.  Directives: `!seats S`,
    `!candidates A B ...`; a `!W` prefix marks the group as part of the
    designated voter set W.
    """
    seats: Optional[int] = None
    extra: list[str] = []
    ballots: list[WeightedBallot] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("!seats"):
            rest = line[len("!seats"):].strip()
            try:
                seats = int(rest)
            except ValueError:
                raise ProfileParseError(line_no, "bad seat count %r" % rest)
            continue
        if line.startswith("!candidates"):
            extra.extend(line[len("!candidates"):].split())
            continue
        in_w = False
        if line.startswith("!W"):
            in_w = True
            line = line[2:].strip()
        elif line.startswith("!"):
            raise ProfileParseError(line_no, "unknown directive %r" % line)
        if ":" not in line:
            raise ProfileParseError(line_no, "expected '<weight> : <ballot>'")
        weight_text, _, ballot_text = line.partition(":")
        try:
            weight = parse_rational(weight_text)
        except ValueError as exc:
            raise ProfileParseError(line_no, "bad weight: %s" % exc)
        ballot_text = ballot_text.strip()
        try:
            content = _parse_ballot(ballot_text)
            ballots.append(WeightedBallot(content, weight, in_w))
        except ProfileError as exc:
            raise ProfileParseError(line_no, str(exc))
    if seats is None:
        raise ProfileParseError(0, "missing '!seats' directive")
    if not ballots:
        raise ProfileParseError(0, "no ballot groups")
    return Profile(ballots, seats, extra)


def _parse_ballot(text: str) -> BallotContent:
    if text.startswith("party "):
        return PartyBallot(_check_name(text[len("party "):].strip()))
    if text.startswith("{") and text.endswith("}"):
        names = text[1:-1].split()
        if not names:
            raise ProfileError("empty unordered ballot")
        if len(set(names)) != len(names):
            raise ProfileError("duplicate names in ballot")
        return SetBallot(names)
    if text.startswith("[") and text.endswith("]"):
        names = text[1:-1].split()
        if not names:
            raise ProfileError("empty ordered ballot")
        return ListBallot(names)
    raise ProfileError("unrecognized ballot %r" % text)


def parse_profile_file(path) -> Profile:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_profile(handle.read())


def format_profile(profile: Profile) -> str:
    """Render a profile in the same text format parse_profile accepts."""
    lines = ["!seats %d" % profile.seats]
    on_ballots = set()
    for b in profile.ballots:
        on_ballots.update(b.content.names())
    silent = sorted(profile.candidates - on_ballots)
    if silent:
        lines.append("!candidates %s" % " ".join(silent))
    for b in profile.ballots:
        if isinstance(b.content, PartyBallot):
            ballot = "party %s" % b.content.party
        elif isinstance(b.content, SetBallot):
            ballot = "{%s}" % " ".join(sorted(b.content.members))
        else:
            ballot = "[%s]" % " ".join(b.content.ranking)
        prefix = "!W " if b.in_w else ""
        lines.append("%s%s : %s" % (prefix, format_rational(b.weight), ballot))
    return "\n".join(lines) + "\n"
