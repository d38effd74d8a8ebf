"""Closed-form moments of the AND/OR edge-density kernels for uniform data.

For X uniform on a triangle and expansion parameter ``r``:

* ``mean_*``       E h12, the edge probability;
* ``var_kernel_*`` Var h12, which equals mean * (1 - mean);
* ``cov_kernel_*`` nu = Cov(h12, h13).

The edge density is a U-statistic, so ``sqrt(n) * (rho - mean)`` is
asymptotically normal with variance ``4 * nu``.  The coefficient tables give
``nu`` itself; the factor 4 is applied only where the variance of the density
is requested.

Every function takes ``exact=True`` to return a :class:`fractions.Fraction`
for rational (or float) arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import DegenerateLimit, DomainError, TooFewVertices
from ..kinds import Kind
from . import _tables as tb
from .piecewise import PiecewiseRational

P_AND = PiecewiseRational("p_and", tb.MEAN_BREAKPOINTS, tb.MEAN_AND, 1.0)
P_OR = PiecewiseRational("p_or", tb.MEAN_BREAKPOINTS, tb.MEAN_OR, 1.0)
VAR_AND = PiecewiseRational("var_and", tb.MEAN_BREAKPOINTS, tb.VAR_AND, 0.0)
VAR_OR = PiecewiseRational("var_or", tb.MEAN_BREAKPOINTS, tb.VAR_OR, 0.0)
NU_AND = PiecewiseRational("nu_and", tb.NU_BREAKPOINTS, tb.NU_AND, 0.0)
NU_OR = PiecewiseRational("nu_or", tb.NU_BREAKPOINTS, tb.NU_OR, 0.0)

_TABLE = {
    Kind.AND: (P_AND, VAR_AND, NU_AND),
    Kind.OR: (P_OR, VAR_OR, NU_OR),
}


def _is_inf(r) -> bool:
    return not isinstance(r, Fraction) and math.isinf(float(r))


def _eval(fn: PiecewiseRational, r, exact: bool):
    if exact:
        if _is_inf(r):
            if float(r) < 0:
                raise DomainError(f"{fn.name}: r must be >= 1, got {r}")
            return Fraction(fn.at_infinity)
        return fn.exact(r)
    return fn(r)


def _kind(kind) -> Kind:
    k = Kind.parse(kind)
    if k is Kind.ARC:
        raise DomainError("closed forms exist only for the and/or kernels; "
                          "use Monte Carlo for the arc density")
    return k


def mean_and(r, exact=False):
    return _eval(P_AND, r, exact)


def mean_or(r, exact=False):
    return _eval(P_OR, r, exact)


def var_kernel_and(r, exact=False):
    return _eval(VAR_AND, r, exact)


def var_kernel_or(r, exact=False):
    return _eval(VAR_OR, r, exact)


def cov_kernel_and(r, exact=False):
    """nu_and(r) = Cov(h12, h13) for the reflexivity-graph kernel."""
    return _eval(NU_AND, r, exact)


def cov_kernel_or(r, exact=False):
    """nu_or(r) = Cov(h12, h13) for the underlying-graph kernel."""
    return _eval(NU_OR, r, exact)


def mean(r, kind, exact=False):
    return _eval(_TABLE[_kind(kind)][0], r, exact)


def var_kernel(r, kind, exact=False):
    return _eval(_TABLE[_kind(kind)][1], r, exact)


def cov_kernel(r, kind, exact=False):
    return _eval(_TABLE[_kind(kind)][2], r, exact)


def finite_sample_variance(n: int, r, kind, exact=False):
    """Exact variance of the edge density for ``n`` uniform points.

    ``2/(n(n-1)) Var h12 + 4(n-2)/(n(n-1)) nu``.
    """
    if n < 2:
        raise TooFewVertices(f"need n >= 2 vertices, got {n}")
    k = _kind(kind)
    var = var_kernel(r, k, exact)
    nu = cov_kernel(r, k, exact)
    if exact:
        return Fraction(2, n * (n - 1)) * var + Fraction(4 * (n - 2), n * (n - 1)) * nu
    return 2.0 / (n * (n - 1)) * var + 4.0 * (n - 2) / (n * (n - 1)) * nu


@dataclass(frozen=True)
class AsymptoticParams:
    """Normal approximation N(mean, variance_of_sqrt_n_scaled / n)."""

    kind: Kind
    r: float
    n: int
    mean: float
    nu: float

    @property
    def variance_of_sqrt_n_scaled(self) -> float:
        return 4.0 * self.nu

    @property
    def variance(self) -> float:
        return 4.0 * self.nu / self.n

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


def check_clt_range(r, kind) -> None:
    """Raise DegenerateLimit where the density has a point-mass limit."""
    k = _kind(kind)
    r = float(r)
    if math.isinf(r):
        raise DegenerateLimit(f"{k.value} density is identically 1 at r = inf")
    if k is Kind.AND and r == 1.0:
        raise DegenerateLimit("and density is identically 0 at r = 1")
    if r < 1.0 or math.isnan(r):
        raise DomainError(f"r must be >= 1, got {r}")


def normal_params(n: int, r, kind) -> AsymptoticParams:
    if n < 1:
        raise TooFewVertices(f"need n >= 1, got {n}")
    check_clt_range(r, kind)
    k = _kind(kind)
    return AsymptoticParams(k, float(r), int(n), mean(r, k), cov_kernel(r, k))


@dataclass(frozen=True)
class MultiTriangleParams:
    """Null parameters of the multi-triangle edge densities.

    ``version`` selects which pair (mean, nu) the generic accessors return:
    ``"I"`` for the density over all pairs, ``"II"`` for the density over
    within-triangle pairs.
    """

    kind: Kind
    r: float
    version: str
    weights: tuple
    sum_w2: float
    sum_w3: float
    p: float
    nu_single: float
    tilde_mean: float
    tilde_nu: float
    check_mean: float
    check_nu: float

    @property
    def mean(self) -> float:
        return self.tilde_mean if self.version == "I" else self.check_mean

    @property
    def nu(self) -> float:
        return self.tilde_nu if self.version == "I" else self.check_nu

    @property
    def variance_of_sqrt_n_scaled(self) -> float:
        return 4.0 * self.nu

    def variance(self, n: int) -> float:
        return 4.0 * self.nu / n


def validate_weights(weights: Sequence[float], tol: float = 1e-9) -> np.ndarray:
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0:
        raise ValueError("empty weight vector")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("weights must be finite and nonnegative")
    if abs(w.sum() - 1.0) > tol:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    return w


def _multi(weights, r, kind, version) -> MultiTriangleParams:
    w = validate_weights(weights)
    k = _kind(kind)
    s2 = float(np.sum(w ** 2))
    s3 = float(np.sum(w ** 3))
    p = mean(r, k)
    nu = cov_kernel(r, k)
    return MultiTriangleParams(
        kind=k, r=float(r), version=version, weights=tuple(w.tolist()),
        sum_w2=s2, sum_w3=s3, p=p, nu_single=nu,
        tilde_mean=p * s2,
        tilde_nu=nu * s3 + p * p * (s3 - s2 * s2),
        check_mean=p,
        check_nu=nu * s3 / (s2 * s2),
    )


def multi_triangle_params_I(weights, r, kind) -> MultiTriangleParams:
    """Mean ``p * sum w^2`` and ``nu * sum w^3 + p^2 (sum w^3 - (sum w^2)^2)``.

    ``weights`` are the triangle areas relative to the hull area.
    """
    return _multi(weights, r, kind, "I")


def multi_triangle_params_II(weights, r, kind) -> MultiTriangleParams:
    """Mean ``p`` and ``nu * sum w^3 / (sum w^2)^2`` (within-triangle pairs)."""
    return _multi(weights, r, kind, "II")


def curves(rs) -> np.ndarray:
    """Rows ``r, p_and, p_or, var_and, var_or, nu_and, nu_or``."""
    rs = np.asarray(rs, dtype=float).ravel()
    out = np.empty((rs.size, 7))
    for i, r in enumerate(rs):
        out[i] = (r, mean_and(r), mean_or(r), var_kernel_and(r), var_kernel_or(r),
                  cov_kernel_and(r), cov_kernel_or(r))
    return out
