"""Interval-partitioned rational functions with exact integer coefficients.

Each piece is stored in factored form, ``const * prod(P_k(r)**m_k) /
prod(Q_k(r)**n_k)``, with the integer coefficient tuples kept highest degree
first.  Floating-point evaluation uses compensated Horner per factor, which
gives results as accurate as if computed in twice the working precision and
sidesteps the cancellation in the degree ~26 numerators.  Rational arguments
can be evaluated exactly with :meth:`PiecewiseRational.exact`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Tuple

import numpy as np

from ..errors import DomainError

Coeffs = Tuple[int, ...]
Factor = Tuple[Coeffs, int]

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitter for doubles
_REVERSE_AT = 16.0  # evaluate in s = 1/r past this point to avoid overflow


def _two_sum(a: float, b: float) -> Tuple[float, float]:
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a: float) -> Tuple[float, float]:
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> Tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def comp_horner(coeffs: Sequence[float], x: float) -> float:
    """Compensated Horner evaluation of ``coeffs`` (highest degree first)."""
    s = float(coeffs[0])
    c = 0.0
    for a in coeffs[1:]:
        p, pi = _two_prod(s, x)
        s, sigma = _two_sum(p, float(a))
        c = c * x + (pi + sigma)
    return s + c


def horner_exact(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in coeffs:
        acc = acc * x + a
    return acc


@dataclass(frozen=True)
class Surd:
    """The real number ``(p + q*sqrt(d)) / s`` with integers and ``s > 0``."""

    p: int
    q: int = 0
    d: int = 1
    s: int = 1

    @classmethod
    def rational(cls, value) -> "Surd":
        f = Fraction(value)
        return cls(f.numerator, 0, 1, f.denominator)

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.s

    def cmp(self, x: Fraction) -> int:
        """Return sign(x - self), computed exactly."""
        u = self.s * x - self.p
        if self.q == 0:
            return (u > 0) - (u < 0)
        t = self.q * self.q * self.d
        if self.q > 0:
            if u <= 0:
                return -1
            return (u * u > t) - (u * u < t)
        if u >= 0:
            return 1
        return (t > u * u) - (t < u * u)

    def __str__(self) -> str:
        if self.q == 0:
            return str(Fraction(self.p, self.s))
        return f"({self.p}{self.q:+d}*sqrt({self.d}))/{self.s}"


@dataclass(frozen=True)
class RationalPiece:
    const: Fraction
    numerator: Tuple[Factor, ...]
    denominator: Tuple[Factor, ...]

    @property
    def degree_gap(self) -> int:
        num = sum((len(c) - 1) * m for c, m in self.numerator)
        den = sum((len(c) - 1) * m for c, m in self.denominator)
        return num - den

    def exact(self, r: Fraction) -> Fraction:
        num = Fraction(1)
        for c, m in self.numerator:
            num *= horner_exact(c, r) ** m
        den = Fraction(1)
        for c, m in self.denominator:
            den *= horner_exact(c, r) ** m
        return self.const * num / den

    def __call__(self, r: float) -> float:
        if r < _REVERSE_AT:
            num = 1.0
            for c, m in self.numerator:
                num *= comp_horner(c, r) ** m
            den = 1.0
            for c, m in self.denominator:
                den *= comp_horner(c, r) ** m
            return float(self.const) * num / den
        # r**deg * P(1/r) with the coefficients reversed
        s = 1.0 / r
        num = 1.0
        for c, m in self.numerator:
            num *= comp_horner(c[::-1], s) ** m
        den = 1.0
        for c, m in self.denominator:
            den *= comp_horner(c[::-1], s) ** m
        return float(self.const) * num / den * r ** self.degree_gap


def piece(const, numerator, denominator) -> RationalPiece:
    return RationalPiece(
        Fraction(*const) if isinstance(const, tuple) else Fraction(const),
        tuple((tuple(c), m) for c, m in numerator),
        tuple((tuple(c), m) for c, m in denominator),
    )


class PiecewiseRational:
    """A function of ``r >= 1`` defined piece by piece on ``[b_i, b_{i+1})``.

    ``breakpoints`` holds the left endpoints, starting with 1; the last piece
    extends to infinity.  ``at_infinity`` is the value returned for
    ``r = math.inf``.
    """

    def __init__(self, name: str, breakpoints: Sequence[Surd],
                 pieces: Sequence[RationalPiece], at_infinity: float):
        if len(breakpoints) != len(pieces):
            raise ValueError("one left breakpoint per piece")
        if breakpoints[0] != Surd(1):
            raise ValueError("first breakpoint must be 1")
        self.name = name
        self.breakpoints = tuple(breakpoints)
        self.pieces = tuple(pieces)
        self.at_infinity = at_infinity

    def __repr__(self) -> str:
        return f"PiecewiseRational({self.name!r}, {len(self.pieces)} pieces)"

    @staticmethod
    def _as_fraction(r) -> Fraction:
        if isinstance(r, Rational):
            return Fraction(r)
        return Fraction(float(r))

    def piece_index(self, r) -> int:
        x = self._as_fraction(r)
        if x < 1:
            raise DomainError(f"{self.name}: r must be >= 1, got {r}")
        idx = 0
        for i, b in enumerate(self.breakpoints):
            if b.cmp(x) >= 0:
                idx = i
            else:
                break
        return idx

    def __call__(self, r) -> float:
        r = float(r)
        if math.isnan(r):
            raise DomainError(f"{self.name}: r is NaN")
        if math.isinf(r):
            if r < 0:
                raise DomainError(f"{self.name}: r must be >= 1, got {r}")
            return self.at_infinity
        return self.pieces[self.piece_index(r)](r) + 0.0  # drop a negative zero

    def exact(self, r) -> Fraction:
        """Exact value at a rational (or float, taken exactly) argument."""
        x = self._as_fraction(r)
        return self.pieces[self.piece_index(x)].exact(x)

    def evaluate(self, rs) -> np.ndarray:
        return np.array([self(r) for r in np.asarray(rs, dtype=float).ravel()]
                        ).reshape(np.shape(rs))
