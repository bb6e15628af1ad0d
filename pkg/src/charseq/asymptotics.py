"""Limit formulas for demerit factors of character combination sequence families.

Everything is written over generic numbers, so feeding
:class:`fractions.Fraction` arguments to the Legendre and quartic-vs-Legendre
formulas gives exact rational results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect

from .fields import DomainError

ROOT_XTOL = 1e-12
# printed values of the optimum constants, used only to bracket the roots
_PRINTED_DF_MIN = 0.157677
_PRINTED_MF_MAX = 6.342061
_PRINTED_LAMBDA_APP = 1.057827


def omega(x, y):
    """Omega(x, y) = sum over integers n of max(0, 1 - |n x - y|)^2."""
    if x == 0:
        raise DomainError("Omega(x, y) is undefined at x = 0")
    lo, hi = (y - 1) / x, (y + 1) / x
    if lo > hi:
        lo, hi = hi, lo
    total = 0
    for n in range(math.floor(lo), math.ceil(hi) + 1):
        d = 1 - abs(n * x - y)
        if d > 0:
            total += d * d
    return total


def omega_array(x, y) -> np.ndarray:
    """Vectorized :func:`omega` over broadcast arrays of x and y (x nonzero)."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(x == 0):
        raise DomainError("Omega(x, y) is undefined at x = 0")
    a, b = (y - 1) / x, (y + 1) / x
    n_lo = int(np.floor(np.minimum(a, b).min()))
    n_hi = int(np.ceil(np.maximum(a, b).max()))
    total = np.zeros(x.shape)
    for n in range(n_lo, n_hi + 1):
        d = np.maximum(0.0, 1.0 - np.abs(n * x - y))
        total += d * d
    return total


@dataclass(frozen=True)
class LimitInputs:
    """Limiting parameters of a family: S, U, V, Lambda, and the shift ratios.

    ``delta`` is the limit of (r - s)/p, ``sigma`` of (r + s)/p and ``r`` of
    r/p for a single sequence.
    """

    s: float
    u: float = 0
    v: float = 0
    lam: float = 1
    delta: float | None = None
    sigma: float | None = None
    r: float | None = None

    def __post_init__(self):
        if self.lam <= 0:
            raise DomainError(f"Lambda must be positive, got {self.lam}")


def limit_cdf(inputs: LimitInputs):
    s, u, v, lam = inputs.s, inputs.u, inputs.v, inputs.lam
    x = 1 / Fraction(lam) if isinstance(lam, (int, Fraction)) else 1 / lam
    out = s * 2 * lam / 3 + omega(x, 0)
    if u != 0:
        if inputs.delta is None:
            raise DomainError("delta is required when U is nonzero")
        out += u * omega(x, inputs.delta / lam)
    if v != 0:
        if inputs.sigma is None:
            raise DomainError("sigma is required when V is nonzero")
        out += v * omega(x, 1 + inputs.sigma / lam)
    return out


def limit_df(inputs: LimitInputs):
    s, v, lam = inputs.s, inputs.v, inputs.lam
    x = 1 / Fraction(lam) if isinstance(lam, (int, Fraction)) else 1 / lam
    out = -1 + s * 2 * lam / 3 + 2 * omega(x, 0)
    if v != 0:
        if inputs.r is None:
            raise DomainError("r is required when V is nonzero")
        out += v * omega(x, 1 + 2 * inputs.r / lam)
    return out


def _cos2(gamma, cos2g):
    return math.cos(2 * gamma) if cos2g is None else cos2g


def limit_df_quartic(lam, r, gamma=0.0, cos2g=None):
    """Limit DF of quartic f or g families; ``cos2g`` overrides cos(2 gamma)."""
    c = _cos2(gamma, cos2g)
    x = 1 / Fraction(lam) if isinstance(lam, (int, Fraction)) else 1 / lam
    return -1 - (3 + c) * lam / 3 + 2 * omega(x, 0) + omega(x, 1 + 2 * r / lam)


def limit_df_legendre(lam, r):
    return limit_df(LimitInputs(s=-2, u=1, v=1, lam=lam, r=r))


def limit_cdf_fg(lam, gamma=0.0, cos2g=None):
    """Limit CDF of the quartic pair (f, g)."""
    c = _cos2(gamma, cos2g)
    x = 1 / Fraction(lam) if isinstance(lam, (int, Fraction)) else 1 / lam
    return (-1 + c) * lam / 3 + omega(x, 0)


def limit_cdf_fh(lam):
    """Limit CDF of a quartic sequence against a Legendre sequence."""
    return limit_cdf(LimitInputs(s=0, u=0, v=0, lam=lam))


def _poly(coeffs):
    return lambda x: float(np.polyval(coeffs, x))


# 27 x^3 - 417 x^2 + 249 x - 29 has reciprocal roots to 29 x^3 - 249 x^2 + 417 x - 27
DF_MIN_POLY = (27, -417, 249, -29)
MF_MAX_POLY = (29, -249, 417, -27)
LAMBDA_APP_POLY = (4, 0, -30, 27)


@dataclass(frozen=True)
class OptimumConstants:
    df_min: float
    mf_max: float
    lambda_app: float
    r_offset: float
    r_period: float = 0.5

    @property
    def r_offsets(self) -> str:
        return f"{{{self.r_offset:.9g} + n/2 : n integer}}"


def optimum_constants() -> OptimumConstants:
    """Roots giving the optimal asymptotic demerit factor and the length ratio achieving it."""
    df_min = bisect(_poly(DF_MIN_POLY), _PRINTED_DF_MIN - 0.05, _PRINTED_DF_MIN + 0.05, xtol=ROOT_XTOL)
    mf_max = bisect(_poly(MF_MAX_POLY), _PRINTED_MF_MAX - 0.5, _PRINTED_MF_MAX + 0.5, xtol=ROOT_XTOL)
    lam = bisect(_poly(LAMBDA_APP_POLY), _PRINTED_LAMBDA_APP - 0.5, _PRINTED_LAMBDA_APP + 0.5, xtol=ROOT_XTOL)
    return OptimumConstants(df_min, mf_max, lam, (1 - 2 * lam) / 4)


def lambda_app() -> float:
    return optimum_constants().lambda_app


def psc_limit_natural() -> Fraction:
    """sqrt((1/2 - c/3)^2) + 2/3 + c/3 = 7/6, since 1/2 - c/3 >= 1/6 for every c in [-1, 1]."""
    return Fraction(7, 6)


def appended_limit_coefficients() -> dict[str, float]:
    """Constant and cos(2 gamma) parts of the appended limits for the quartic pair."""
    lam = lambda_app()
    r = (3 - 2 * lam) / 4
    df_const = limit_df_quartic(lam, r, cos2g=0.0)
    cdf_const = limit_cdf_fg(lam, cos2g=0.0)
    return {
        "df_constant": df_const,
        "df_cos_coefficient": limit_df_quartic(lam, r, cos2g=1.0) - df_const,
        "cdf_constant": cdf_const,
        "cdf_cos_coefficient": limit_cdf_fg(lam, cos2g=1.0) - cdf_const,
    }


def psc_limit_appended(gamma: float = 0.0) -> float:
    """Limit PSC of the appended quartic pair at angle gamma."""
    lam = lambda_app()
    r = (3 - 2 * lam) / 4
    d = limit_df_quartic(lam, r, gamma)
    return math.sqrt(d * d) + limit_cdf_fg(lam, gamma)
