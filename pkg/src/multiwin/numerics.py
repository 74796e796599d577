"""Exact rational arithmetic helpers.

The sole numeric type in all counting and threshold math is
fractions.Fraction (arbitrary-precision, always in canonical form).
This module adds parsing/formatting in the "p/q" text convention used
by the file formats and the CLI, decimal rendering for display only,
and the harmonic numbers H_n.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (sign on the numerator only) into a Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if "/" in text:
        num, _, den = text.partition("/")
        num = num.strip()
        den = den.strip()
        if den.startswith(("+", "-")):
            raise ValueError("sign must be on the numerator: %r" % text)
        if int(den) == 0:
            raise ValueError("zero denominator: %r" % text)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def to_decimal_str(value: Fraction, digits: int = 3) -> str:
    """Display-only decimal rendering, rounded half-up to `digits` places."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    value = abs(value)
    scaled = value * 10**digits
    whole = scaled.numerator // scaled.denominator
    rem = scaled - whole
    if rem * 2 >= 1:
        whole += 1
    text = str(whole).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return "%s%s.%s" % (sign, text[:-digits], text[-digits:])


_HARMONIC_CACHE = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """The n-th harmonic number H_n = sum_{i<=n} 1/i, exactly."""
    if n < 1:
        raise ValueError("harmonic requires n >= 1")
    while len(_HARMONIC_CACHE) <= n:
        k = len(_HARMONIC_CACHE)
        _HARMONIC_CACHE.append(_HARMONIC_CACHE[-1] + Fraction(1, k))
    return _HARMONIC_CACHE[n]
