"""Proportionality thresholds pi(ell, S) for every covered method/scenario.

threshold() computes, at query time and in exact rational arithmetic, the
largest vote fraction for which the designated voter group W can still be
denied ell of S seats under the given method and scenario.  Values carry a
kind (pi for the plain supremum, pihat for the large-electorate limit form),
a status (exact, proved bound, conjectured, or unknown with partial
bounds), and an optional attainment side: "plus" means a bad outcome
exists at exactly the threshold fraction, "minus" means it does not.

generic_bounds() lists the method-independent constraints, and
criterion_check() evaluates classical representation criteria (JR, PJR,
EJR, DPC, strong and weak PSC floors) as threshold inequalities.
table_grid() regenerates the named reference grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .ballots import WeightScheme
from .numerics import harmonic
from .scenarios import ScenarioId
from .sequences import ALPHA_CAP, alpha, seq_a, seq_c

PI = "pi"
PIHAT = "pihat"

PLUS = "plus"
MINUS = "minus"
UNSPECIFIED = "unspecified"

EXACT = "exact"
LOWER_BOUND = "lower_bound"
UPPER_BOUND = "upper_bound"
INTERVAL = "interval"
CONJECTURED = "conjectured"
UNKNOWN = "unknown"

METHOD_KINDS = ("div", "quota", "bv", "av", "sntv", "lv", "cv", "cvq",
                "phragmen-u", "thiele-opt", "thiele-add", "thiele-elim",
                "stv", "phragmen-o", "thiele-o", "borda")

_PARAM_KINDS = {"div": "gamma", "quota": "delta", "stv": "delta", "lv": "limit"}
_SCHEME_KINDS = ("thiele-opt", "thiele-add", "borda")


class CoverageError(ValueError):
    """Method/scenario combination outside the computable corpus."""


@dataclass(frozen=True)
class MethodId:
    """Identifier of an election method, with its parameter if any."""

    kind: str
    param: Optional[Fraction] = None      # gamma, delta, or the LV limit
    scheme: Optional[WeightScheme] = None

    def __post_init__(self):
        if self.kind not in METHOD_KINDS:
            raise ValueError("unknown method kind %r" % self.kind)
        if self.kind in _PARAM_KINDS:
            if self.param is None:
                raise ValueError("%s requires a parameter" % self.kind)
            if self.kind == "lv":
                if int(self.param) != self.param or self.param < 1:
                    raise ValueError("limited vote needs an integer limit >= 1")
                object.__setattr__(self, "param", Fraction(int(self.param)))
            else:
                object.__setattr__(self, "param", Fraction(self.param))
                if not 0 <= self.param <= 1:
                    raise ValueError("parameter must lie in [0, 1]")
        elif self.param is not None:
            raise ValueError("%s takes no numeric parameter" % self.kind)
        if self.kind in _SCHEME_KINDS:
            if self.scheme is None:
                object.__setattr__(self, "scheme", WeightScheme.harmonic())
        elif self.scheme is not None:
            raise ValueError("%s takes no weight scheme" % self.kind)

    # -- constructors ----------------------------------------------------
    @staticmethod
    def div(gamma) -> "MethodId":
        return MethodId("div", Fraction(gamma))

    @staticmethod
    def quota(delta) -> "MethodId":
        return MethodId("quota", Fraction(delta))

    @staticmethod
    def bv() -> "MethodId":
        return MethodId("bv")

    @staticmethod
    def av() -> "MethodId":
        return MethodId("av")

    @staticmethod
    def sntv() -> "MethodId":
        return MethodId("sntv")

    @staticmethod
    def lv(limit: int) -> "MethodId":
        return MethodId("lv", Fraction(limit))

    @staticmethod
    def cv() -> "MethodId":
        return MethodId("cv")

    @staticmethod
    def cvq() -> "MethodId":
        return MethodId("cvq")

    @staticmethod
    def phragmen_u() -> "MethodId":
        return MethodId("phragmen-u")

    @staticmethod
    def thiele_opt(scheme: Optional[WeightScheme] = None) -> "MethodId":
        return MethodId("thiele-opt", scheme=scheme)

    @staticmethod
    def thiele_add(scheme: Optional[WeightScheme] = None) -> "MethodId":
        return MethodId("thiele-add", scheme=scheme)

    @staticmethod
    def thiele_elim() -> "MethodId":
        return MethodId("thiele-elim")

    @staticmethod
    def stv(delta=Fraction(1)) -> "MethodId":
        return MethodId("stv", Fraction(delta))

    @staticmethod
    def phragmen_o() -> "MethodId":
        return MethodId("phragmen-o")

    @staticmethod
    def thiele_o() -> "MethodId":
        return MethodId("thiele-o")

    @staticmethod
    def borda(scheme: Optional[WeightScheme] = None) -> "MethodId":
        return MethodId("borda", scheme=scheme)

    # -- text form --------------------------------------------------------
    def label(self) -> str:
        if self.kind in _PARAM_KINDS:
            if self.kind == "lv":
                return "lv:%d" % int(self.param)
            return "%s:%s" % (self.kind, self.param)
        if self.kind in _SCHEME_KINDS and self.scheme.kind != "harmonic":
            return "%s:%s" % (self.kind, self.scheme.label())
        return self.kind

    @staticmethod
    def parse(text: str) -> "MethodId":
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if kind not in METHOD_KINDS:
            raise ValueError("unknown method %r" % text)
        if kind in _PARAM_KINDS:
            if not arg:
                if kind == "stv":
                    return MethodId.stv()
                raise ValueError("%s requires a parameter, e.g. %s:1" % (kind, kind))
            return MethodId(kind, Fraction(arg))
        if kind in _SCHEME_KINDS:
            if not arg or arg == "harmonic":
                return MethodId(kind)
            if arg in ("weak", "constant"):
                return MethodId(kind, scheme=WeightScheme(arg))
            if arg.startswith("explicit(") and arg.endswith(")"):
                body = arg[len("explicit("):-1]
                head, _, tail = body.partition(";tail=")
                prefix = [Fraction(x) for x in head.split(",") if x]
                tail = Fraction(tail) if tail else Fraction(0)
                return MethodId(kind, scheme=WeightScheme.explicit(prefix, tail))
            raise ValueError("unknown weight scheme %r" % arg)
        return MethodId(kind)


@dataclass(frozen=True)
class ThresholdValue:
    """A threshold with its precision and provenance metadata.

    For status exact/conjectured, value is the (claimed) threshold.  For
    lower_bound/upper_bound, value is the bound itself.  For interval and
    unknown, value is None and lo/hi carry whatever is proved.  lo and hi
    always bracket the true threshold.
    """

    value: Optional[Fraction]
    kind: str = PI
    side: str = UNSPECIFIED
    status: str = EXACT
    source: str = ""
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    note: str = ""

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))
            if not 0 <= self.value <= 1:
                raise ValueError("threshold must lie in [0, 1]")
        if self.status == EXACT:
            object.__setattr__(self, "lo", self.value)
            object.__setattr__(self, "hi", self.value)
        elif self.status == LOWER_BOUND and self.lo is None:
            object.__setattr__(self, "lo", self.value)
        elif self.status == UPPER_BOUND and self.hi is None:
            object.__setattr__(self, "hi", self.value)
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError("lower bound exceeds upper bound")

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT


def _exact(value, kind=PI, side=UNSPECIFIED, source="", note="") -> ThresholdValue:
    return ThresholdValue(Fraction(value), kind, side, EXACT, source, note=note)


def _unknown(kind=PI, source="", lo=None, hi=None, note="") -> ThresholdValue:
    return ThresholdValue(None, kind, UNSPECIFIED, UNKNOWN, source,
                          lo=lo, hi=hi, note=note)


def _check_args(ell: int, seats: int) -> None:
    if not 1 <= ell <= seats:
        raise ValueError("need 1 <= ell <= seats (got ell=%s, S=%s)"
                         % (ell, seats))


def threshold(method: MethodId, scenario, ell: int, seats: int) -> ThresholdValue:
    """The proportionality threshold for (method, scenario, ell, seats)."""
    _check_args(ell, seats)
    scenario = ScenarioId(scenario)
    handler = _DISPATCH[method.kind]
    result = handler(method, scenario, ell, seats)
    if result is None:
        return _unknown(source="no-result",
                        note="no proved value for %s under %s"
                        % (method.label(), scenario.value))
    return result


# ---------------------------------------------------------------------------
# Party-ballot apportionment methods


def _div_threshold(method, scenario, ell, seats):
    gamma = method.param
    if scenario is not ScenarioId.PARTY:
        return None
    if gamma == 0:
        if ell == 1:
            return _unknown(
                source="first-seat-guarantee",
                lo=Fraction(1, seats + 1), hi=Fraction(1),
                note="with divisor 0 every listed party gets a seat first; "
                     "the one-seat threshold depends on how the surplus of "
                     "parties over seats is resolved")
        return _exact(1, source="first-seat-guarantee", side=UNSPECIFIED)
    value = (Fraction(ell - 1) + gamma) / (Fraction(ell - 1)
                                           + gamma * (seats + 2 - ell))
    side = UNSPECIFIED
    if gamma == 1:
        # With a fixed tie-break toward the larger side, the extreme profile
        # is bad exactly at the threshold iff W is not the larger side.
        side = PLUS if 2 * ell <= seats + 1 else MINUS
    return _exact(value, source="divisor-party-extremes", side=side)


def _quota_threshold(method, scenario, ell, seats):
    delta = method.param
    if scenario is not ScenarioId.PARTY:
        return None
    value = Fraction(ell * (seats + 2 - ell) - 1 + delta) \
        / ((seats + delta) * (seats + 2 - ell))
    return _exact(value, source="quota-party-extremes")


# ---------------------------------------------------------------------------
# Unordered score-family methods


def _half(kind=PI, source="majority-blocking"):
    return _exact(Fraction(1, 2), kind=kind, source=source)


def _bv_av_threshold(method, scenario, ell, seats):
    if scenario in (ScenarioId.PARTY, ScenarioId.SAME, ScenarioId.TACTIC):
        return _half()
    if scenario is ScenarioId.PJR:
        return _half(source="pjr-union-reduction")
    if scenario is ScenarioId.EJR:
        if method.kind == "av" or ell * 2 <= seats + 1:
            value = Fraction(seats, 2 * seats + 1 - ell)
            return _exact(value, source="ejr-overlap-window")
        value = Fraction(2 * seats + 1 - 2 * ell, 3 * seats + 2 - 3 * ell)
        return _exact(value, source="ejr-overlap-window")
    return None


def _lv_tactic_value(limit: int, ell: int, seats: int) -> Fraction:
    a = min(limit, seats + 1 - ell)
    b = min(limit, ell)
    return Fraction(ell * a, ell * a + (seats + 1 - ell) * b)


def _lv_threshold(method, scenario, ell, seats):
    limit = int(method.param)
    if limit > seats:
        raise CoverageError("limited vote cap exceeds seat count")
    if scenario is ScenarioId.TACTIC:
        value = _lv_tactic_value(limit, ell, seats)
        if ell <= limit:
            # The equal-split strategy needs no rounding when ballots may
            # simply repeat the same list, so the limit form is attained.
            return _exact(value, kind=PI, source="equal-split-strategy")
        return _exact(value, kind=PIHAT, source="equal-split-strategy")
    if ell > limit:
        return None
    if scenario in (ScenarioId.SAME, ScenarioId.PJR):
        value = _lv_tactic_value(limit, ell, seats)
        source = ("pjr-union-reduction" if scenario is ScenarioId.PJR
                  else "equal-split-strategy")
        return _exact(value, source=source)
    if scenario is ScenarioId.EJR:
        if 2 * ell <= seats + 1:
            value = Fraction(limit, seats + limit + 1 - ell)
        else:
            value = Fraction(seats + limit + 1 - 2 * ell,
                             2 * seats + limit + 2 - 3 * ell)
        return _exact(value, source="ejr-overlap-window")
    if scenario is ScenarioId.PARTY and limit == 1:
        return _exact(Fraction(1, seats + 1), source="equal-split-strategy")
    return None


def _sntv_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.TACTIC:
        if ell == 1:
            return _exact(Fraction(1, seats + 1), kind=PI,
                          source="equal-split-strategy")
        return _exact(Fraction(ell, seats + 1), kind=PIHAT,
                      source="equal-split-strategy")
    if ell == 1 and scenario in (ScenarioId.PARTY, ScenarioId.SAME,
                                 ScenarioId.PJR, ScenarioId.EJR):
        return _exact(Fraction(1, seats + 1), source="single-name-plurality")
    return None


def _cv_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.TACTIC:
        return _exact(Fraction(ell, seats + 1), kind=PIHAT,
                      source="equal-split-strategy")
    return None


def _cvq_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.TACTIC:
        # The ideal equal-and-even split lets W divide exactly, so the
        # limit value is attained for every electorate size.
        return _exact(Fraction(ell, seats + 1), kind=PI,
                      source="equal-split-strategy")
    if scenario in (ScenarioId.PARTY, ScenarioId.SAME,
                    ScenarioId.PJR, ScenarioId.EJR):
        # Self-voting blocks reach any fraction below 1, but at exactly 1
        # there is no adversary left, so the supremum is not attained.
        return _exact(Fraction(1), side=MINUS, source="self-voting-dilution")
    return None


# ---------------------------------------------------------------------------
# Phragmen (unordered) and the Thiele family


def _optimal(ell, seats, kind=PI, source="dhondt-reduction"):
    return _exact(Fraction(ell, seats + 1), kind=kind, source=source)


def _phragmen_u_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.PARTY:
        return _optimal(ell, seats)
    if scenario in (ScenarioId.SAME, ScenarioId.TACTIC, ScenarioId.PJR):
        return _optimal(ell, seats, source="free-voting-power")
    if scenario is ScenarioId.EJR:
        if ell == 1:
            return _optimal(ell, seats, source="free-voting-power")
        lo = Fraction(ell, seats + 1)
        note = "open; bad instances exceed ell/(S+1)"
        if (ell, seats) == (2, 12):
            lo = Fraction(409, 2409)
            note = "open; a 12-seat overlap election reaches 409/2409"
        return _unknown(source="overlap-open-problem", lo=lo,
                        hi=Fraction(1), note=note)
    return None


def _max_kw(scheme: WeightScheme, seats: int) -> Fraction:
    return max(k * scheme.w(k) for k in range(1, seats + 1))


def _weights_subharmonic(scheme: WeightScheme, seats: int) -> bool:
    return all(scheme.w(k) <= Fraction(1, k) for k in range(1, seats + 1))


def _thiele_opt_threshold(method, scenario, ell, seats):
    scheme = method.scheme
    if scheme.kind == "harmonic":
        if scenario is ScenarioId.PARTY:
            return _optimal(ell, seats)
        if scenario in (ScenarioId.SAME, ScenarioId.TACTIC,
                        ScenarioId.PJR, ScenarioId.EJR):
            return _optimal(ell, seats, source="satisfaction-exchange")
        return None
    if scenario in (ScenarioId.SAME, ScenarioId.PJR, ScenarioId.EJR):
        if ell == 1:
            value = 1 / (1 + Fraction(seats) / _max_kw(scheme, seats))
            return _exact(value, source="satisfaction-exchange")
        if scheme.kind == "weak":
            return _exact(Fraction(1), source="single-bonus-saturation")
        wl = scheme.w(ell)
        if wl == 0:
            return _exact(Fraction(1), source="single-bonus-saturation")
        value = 1 / (wl * (seats + 1 - ell) + 1)
        return ThresholdValue(value, PI, UNSPECIFIED, LOWER_BOUND,
                              "weight-floor-extremes", hi=Fraction(1),
                              note="proved lower bound only")
    if scenario is ScenarioId.TACTIC:
        if _weights_subharmonic(scheme, seats):
            return _exact(Fraction(ell, seats + 1), kind=PIHAT,
                          source="equal-split-strategy")
        return None
    return None


def _gamma_or_none(scheme: WeightScheme, n: int) -> Optional[Fraction]:
    if n > ALPHA_CAP:
        return None
    return alpha(n, scheme)


def _thiele_add_threshold(method, scenario, ell, seats):
    scheme = method.scheme
    harmonic_w = scheme.kind == "harmonic"
    if scenario is ScenarioId.PARTY:
        if harmonic_w:
            return _optimal(ell, seats)
        return None
    if scheme.kind == "weak":
        if scenario is ScenarioId.TACTIC:
            return _exact(Fraction(ell, seats + 1), kind=PIHAT,
                          source="equal-split-strategy")
        if scenario in (ScenarioId.SAME, ScenarioId.PJR, ScenarioId.EJR):
            if ell == 1:
                return _exact(Fraction(1, seats + 1),
                              source="sequential-mass-lp")
            return _exact(Fraction(1), source="single-bonus-saturation")
        return None
    if scenario in (ScenarioId.SAME, ScenarioId.TACTIC,
                    ScenarioId.PJR, ScenarioId.EJR):
        if ell == 1:
            gam = _gamma_or_none(scheme, seats)
            if gam is None:
                psi = scheme.psi(seats)
                return ThresholdValue(
                    None, PI, UNSPECIFIED, INTERVAL, "sequential-mass-bounds",
                    lo=Fraction(1, seats + 1), hi=1 / (1 + seats / psi),
                    note="exact value needs the order-%d vote-mass program"
                         % seats)
            return _exact(1 / (1 + gam), source="sequential-mass-lp")
        gam = _gamma_or_none(scheme, seats + 1 - ell)
        if scenario in (ScenarioId.SAME, ScenarioId.PJR):
            if gam is None:
                return _unknown(source="sequential-mass-bounds",
                                lo=Fraction(ell, seats + 1), hi=Fraction(1))
            wl = scheme.w(ell)
            if wl == 0:
                return _exact(Fraction(1), source="single-bonus-saturation")
            value = (1 / wl) / (1 / wl + gam)
            if harmonic_w:
                return ThresholdValue(
                    value, PI, UNSPECIFIED, CONJECTURED,
                    "sequential-mass-lp", lo=value, hi=Fraction(1),
                    note="proved lower bound; equality conjectured")
            return ThresholdValue(value, PI, UNSPECIFIED, LOWER_BOUND,
                                  "sequential-mass-lp", hi=Fraction(1),
                                  note="proved lower bound only")
        if scenario is ScenarioId.EJR:
            lo = None
            if gam is not None and scheme.w(ell) > 0:
                lo = (1 / scheme.w(ell)) / (1 / scheme.w(ell) + gam)
            return _unknown(source="sequential-mass-bounds", lo=lo,
                            hi=Fraction(1), note="open for ell >= 2")
        # tactic, ell >= 2
        hi = None
        gam_s = _gamma_or_none(scheme, seats)
        if gam_s is not None:
            hi = min(Fraction(1), ell * (1 / (1 + gam_s)))
        return _unknown(kind=PIHAT, source="vote-splitting-cap", hi=hi,
                        note="open for ell >= 2; bounded by ell times the "
                             "one-seat threshold")
    return None


def _thiele_elim_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.PARTY:
        return _optimal(ell, seats)
    if scenario in (ScenarioId.SAME, ScenarioId.TACTIC):
        return _exact(Fraction(ell, seats + 1), source="credit-conservation")
    if scenario in (ScenarioId.PJR, ScenarioId.EJR):
        best = max(Fraction(m, m * m + seats)
                   for m in range(1, seats + 2))
        lo = max(best, Fraction(ell, seats + 1))
        return _unknown(source="decoy-cluster-trap", lo=lo, hi=Fraction(1),
                        note="open; decoy clusters push the bound above "
                             "ell/(S+1)")
    return None


# ---------------------------------------------------------------------------
# Ordered-ballot methods


def _stv_threshold(method, scenario, ell, seats):
    delta = method.param
    if scenario in (ScenarioId.PARTY, ScenarioId.SAME,
                    ScenarioId.WPSC, ScenarioId.PSC):
        value = Fraction(ell * (seats + 2 - ell) - 1 + delta) \
            / ((seats + delta) * (seats + 2 - ell))
        return _exact(value, source="quota-transfer-extremes")
    if scenario is ScenarioId.TACTIC:
        opt = Fraction(ell, seats + 1)
        if delta == 1 or ell == 1:
            return _exact(opt, source="equal-split-strategy")
        same = Fraction(ell * (seats + 2 - ell) - 1 + delta) \
            / ((seats + delta) * (seats + 2 - ell))
        return ThresholdValue(None, PI, UNSPECIFIED, INTERVAL,
                              "equal-split-strategy", lo=opt, hi=same,
                              note="limit form is exactly ell/(S+1)")
    return None


def _phragmen_o_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.PARTY:
        return _optimal(ell, seats)
    if scenario in (ScenarioId.SAME, ScenarioId.TACTIC, ScenarioId.WPSC):
        return _optimal(ell, seats, source="free-voting-power")
    if scenario is ScenarioId.PSC:
        return _exact(Fraction(1), side=MINUS, source="self-first-burial")
    return None


def _thiele_o_threshold(method, scenario, ell, seats):
    if scenario is ScenarioId.PARTY:
        return _optimal(ell, seats)
    a_rest = seq_a(seats + 1 - ell)
    if scenario is ScenarioId.TACTIC:
        value = seq_a(ell) / (seq_a(ell) + a_rest)
        if ell == 1:
            # For a single seat target the limit value is also attained.
            return _exact(value, kind=PI, source="suffix-chain-extremes")
        return _exact(value, kind=PIHAT, source="suffix-chain-extremes")
    if scenario is ScenarioId.SAME:
        return _exact(Fraction(ell) / (ell + a_rest),
                      source="suffix-chain-extremes")
    if scenario is ScenarioId.WPSC:
        return _exact(Fraction(seq_c(ell)) / (seq_c(ell) + a_rest),
                      source="suffix-chain-extremes")
    if scenario is ScenarioId.PSC:
        return _exact(Fraction(1), side=MINUS, source="self-first-burial")
    return None


def _borda_mean(scheme: WeightScheme, k: int) -> Fraction:
    return scheme.psi(k) / k


def _borda_threshold(method, scenario, ell, seats):
    scheme = method.scheme
    rest = _borda_mean(scheme, seats + 1 - ell)
    if scenario is ScenarioId.TACTIC:
        value = rest / (_borda_mean(scheme, ell) + rest)
        if ell == 1 and scheme.kind == "harmonic":
            return _exact(value, kind=PI, source="positional-averages")
        return _exact(value, kind=PIHAT, source="positional-averages")
    if scenario in (ScenarioId.SAME, ScenarioId.WPSC):
        return _exact(rest / (scheme.w(ell) + rest),
                      source="positional-averages")
    if scenario is ScenarioId.PARTY and scheme.kind == "harmonic":
        return _optimal(ell, seats)
    return None


_DISPATCH = {
    "div": _div_threshold,
    "quota": _quota_threshold,
    "bv": _bv_av_threshold,
    "av": _bv_av_threshold,
    "sntv": _sntv_threshold,
    "lv": _lv_threshold,
    "cv": _cv_threshold,
    "cvq": _cvq_threshold,
    "phragmen-u": _phragmen_u_threshold,
    "thiele-opt": _thiele_opt_threshold,
    "thiele-add": _thiele_add_threshold,
    "thiele-elim": _thiele_elim_threshold,
    "stv": _stv_threshold,
    "phragmen-o": _phragmen_o_threshold,
    "thiele-o": _thiele_o_threshold,
    "borda": _borda_threshold,
}


# ---------------------------------------------------------------------------
# Generic, method-independent bounds


@dataclass(frozen=True)
class GenericBound:
    """A universal constraint on pi(ell, S) for every reasonable method."""

    description: str
    source: str
    value: Optional[Fraction] = None


def generic_bounds(ell: int, seats: int) -> list:
    """Method-independent constraints applying at (ell, seats)."""
    _check_args(ell, seats)
    bounds = []
    if ell == 1:
        bounds.append(GenericBound(
            "pi(1,S) >= 1/(S+1): S+1 equal singleton blocks tie",
            "symmetric-singletons", Fraction(1, seats + 1)))
    if (seats + 1) % ell == 0:
        bounds.append(GenericBound(
            "pi(ell,S) >= ell/(S+1) when (S+1)/ell is an integer",
            "symmetric-blocks", Fraction(ell, seats + 1)))
    bounds.append(GenericBound(
        "pi(ell,S) + pi(S+1-ell,S) >= 1: both sides cannot be guaranteed "
        "more than S seats in total", "seat-count-closure"))
    if 2 * ell >= seats + 1:
        bounds.append(GenericBound(
            "best achievable pi(ell,S) over all methods is 1/2 for "
            "ell >= (S+1)/2", "majority-floor", Fraction(1, 2)))
    return bounds


# ---------------------------------------------------------------------------
# Representation criteria


CRITERIA = ("JR", "PJR", "EJR", "DPC", "PSC-strong", "wPSC-floor")

_CRITERION_SCENARIO = {
    "JR": ScenarioId.PJR,
    "PJR": ScenarioId.PJR,
    "EJR": ScenarioId.EJR,
    "DPC": ScenarioId.PSC,
    "PSC-strong": ScenarioId.PSC,
    "wPSC-floor": ScenarioId.WPSC,
}


def _compare(entry: ThresholdValue, target: Fraction, allow_equal: bool):
    """Does the entry satisfy `pi < target` (or <= when allow_equal)?

    Returns True/False when decidable from the entry's bounds, else None.
    """
    if entry.is_exact:
        if allow_equal:
            return entry.value <= target
        if entry.value < target:
            return True
        if entry.value > target:
            return False
        return entry.side == MINUS  # at equality only the minus side passes
    if entry.hi is not None and (entry.hi < target
                                 or (allow_equal and entry.hi <= target)):
        return True
    if entry.lo is not None and entry.lo > target:
        return False
    return None


def criterion_check(method: MethodId, criterion: str, seats: int):
    """True / False / None (unknown) for a representation criterion."""
    if criterion not in CRITERIA:
        raise ValueError("unknown criterion %r" % criterion)
    if seats < 1:
        raise ValueError("seats must be >= 1")
    scenario = _CRITERION_SCENARIO[criterion]
    if criterion == "JR":
        if seats == 1:
            return True
        ells = [1]
    elif criterion == "DPC":
        ells = range(1, seats + 1)
    else:
        if seats == 1:
            return True
        ells = range(1, seats)
    unknown = False
    for ell in ells:
        entry = threshold(method, scenario, ell, seats)
        if criterion == "DPC":
            verdict = _compare(entry, Fraction(ell, seats + 1),
                               allow_equal=True)
        else:
            verdict = _compare(entry, Fraction(ell, seats),
                               allow_equal=False)
        if verdict is False:
            return False
        if verdict is None:
            unknown = True
    return None if unknown else True


# ---------------------------------------------------------------------------
# Reference grids


TABLE_NAMES = ("optimal", "stl", "lr", "bv-ejr", "av-ejr", "tha-same",
               "tho-tactic", "tho-same", "tho-wpsc", "borda-tactic",
               "borda-same", "sequences")

_TABLE_SPECS = {
    "optimal": (MethodId.div(1), ScenarioId.PARTY,
                "threshold ell/(S+1), shared by many methods"),
    "stl": (MethodId.div(Fraction(1, 2)), ScenarioId.PARTY,
            "party threshold of the odd-divisor method"),
    "lr": (MethodId.quota(0), ScenarioId.PARTY,
           "party threshold of largest remainder with the full quota"),
    "bv-ejr": (MethodId.bv(), ScenarioId.EJR,
               "block vote, per-ballot representation"),
    "av-ejr": (MethodId.av(), ScenarioId.EJR,
               "approval vote, per-ballot representation"),
    "tha-same": (MethodId.thiele_add(), ScenarioId.SAME,
                 "sequential harmonic addition, common list"),
    "tho-tactic": (MethodId.thiele_o(), ScenarioId.TACTIC,
                   "ordered sequential weights, optimal strategy (limit)"),
    "tho-same": (MethodId.thiele_o(), ScenarioId.SAME,
                 "ordered sequential weights, common list"),
    "tho-wpsc": (MethodId.thiele_o(), ScenarioId.WPSC,
                 "ordered sequential weights, common top set"),
    "borda-tactic": (MethodId.borda(), ScenarioId.TACTIC,
                     "harmonic positional scoring, optimal strategy (limit)"),
    "borda-same": (MethodId.borda(), ScenarioId.SAME,
                   "harmonic positional scoring, common list"),
}


@dataclass(frozen=True)
class TableGrid:
    name: str
    title: str
    row_label: str
    col_label: str
    rows: tuple                 # row keys (S values, or sequence names)
    cols: tuple                 # column keys (ell values, or n values)
    cells: dict                 # (row, col) -> ThresholdValue | Fraction


def table_grid(name: str, max_seats: int = 5) -> TableGrid:
    """Regenerate one of the named reference grids."""
    if name == "sequences":
        from .sequences import seq_b
        ns = tuple(range(1, 7))
        cells = {}
        for n in ns:
            cells[("a", n)] = seq_a(n)
            cells[("b", n)] = seq_b(n)
            cells[("c", n)] = Fraction(seq_c(n))
        return TableGrid("sequences", "extremal vote-mass sequences",
                         "sequence", "n", ("a", "b", "c"), ns, cells)
    if name not in _TABLE_SPECS:
        raise ValueError("unknown table %r (choose from %s)"
                         % (name, ", ".join(TABLE_NAMES)))
    method, scenario, title = _TABLE_SPECS[name]
    rows = tuple(range(1, max_seats + 1))
    cells = {}
    for seats in rows:
        for ell in range(1, seats + 1):
            cells[(seats, ell)] = threshold(method, scenario, ell, seats)
    return TableGrid(name, title, "S", "ell", rows,
                     tuple(range(1, max_seats + 1)), cells)
