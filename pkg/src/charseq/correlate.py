"""Aperiodic and periodic correlation, demerit factors and the Pursley-Sarwate criterion.

Integer-valued sequences are correlated in exact int64 arithmetic and their
demerit factors are carried as :class:`fractions.Fraction`.  Complex
sequences use double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.fft

from .fields import DomainError
from .sequences import CharCombination, ResidueClassSpec, Sequence, residue_class_table

# beyond this length "auto" switches to the transform kernel
DIRECT_MAX_LENGTH = 8192
# rounding guard for the transform kernel on integer input
FFT_ROUND_GUARD = 0.25


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """C(s) for s = -(length-1) .. length-1; ``values[s + length - 1]`` is C(s)."""

    length: int
    values: np.ndarray

    @property
    def min_shift(self) -> int:
        return -(self.length - 1)

    @property
    def shifts(self) -> np.ndarray:
        return np.arange(self.min_shift, self.length)

    def at(self, s: int):
        if abs(s) >= self.length:
            return 0
        return self.values[s + self.length - 1]

    def sum_squares(self):
        """Sum over s of |C(s)|^2; an exact int for integer profiles."""
        v = self.values
        if v.dtype.kind in "iu":
            # chunked so int64 partial sums of squares never overflow
            return sum(int(np.dot(c, c)) for c in np.array_split(v, max(1, len(v) // 50_000)))
        return float(np.sum(np.abs(v) ** 2))


@dataclass(frozen=True)
class MeritReport:
    cdf: float
    cmf: float
    df_f: float
    df_g: float
    psc: float
    cdf_exact: Fraction | None = None
    df_f_exact: Fraction | None = None
    df_g_exact: Fraction | None = None


def _as_array(x) -> np.ndarray:
    return x.terms if isinstance(x, Sequence) else np.asarray(x)


def _direct(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    # C(s) = sum_j f_j conj(g_{j+s}); convolution with reversed conj(g) lists s from l-1 down
    return np.convolve(f, np.conj(g[::-1]) if g.dtype.kind == "c" else g[::-1])[::-1]


def _transform(f: np.ndarray, g: np.ndarray, exact: bool) -> np.ndarray:
    l = len(f)
    n = scipy.fft.next_fast_len(2 * l - 1)
    if exact:
        F = scipy.fft.rfft(f.astype(float), n)
        G = scipy.fft.rfft(g.astype(float), n)
        raw = scipy.fft.irfft(np.conj(F) * G, n)
    else:
        F = scipy.fft.fft(f.astype(complex), n)
        G = scipy.fft.fft(g.astype(complex), n)
        raw = scipy.fft.ifft(np.conj(F) * G, n)
    # raw[s mod n] = sum_j conj(f_j) g_{j+s}; conjugate to get C(s)
    raw = np.conj(raw)
    out = np.concatenate([raw[n - (l - 1) :], raw[:l]]) if l > 1 else raw[:1]
    if exact:
        rounded = np.rint(out)
        err = float(np.max(np.abs(out - rounded))) if len(out) else 0.0
        if err > FFT_ROUND_GUARD:
            raise ArithmeticError(f"transform kernel rounding residual {err} too large for exact output")
        return rounded.astype(np.int64)
    return out


def cross_correlation(f, g, method: str = "direct") -> CorrelationProfile:
    """Aperiodic crosscorrelation C_{f,g}(s) = sum_j f_j conj(g_{j+s}).

    ``method`` is "direct" (O(l^2) summation), "fft" (transform, rounded to
    integers when both inputs are integer-valued) or "auto".
    """
    a, b = _as_array(f), _as_array(g)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise ValueError("empty sequences")
    exact = a.dtype.kind in "iu" and b.dtype.kind in "iu"
    if exact:
        a, b = a.astype(np.int64), b.astype(np.int64)
    if method == "auto":
        method = "direct" if len(a) <= DIRECT_MAX_LENGTH else "fft"
    if method == "direct":
        values = _direct(a, b)
    elif method == "fft":
        values = _transform(a, b, exact)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CorrelationProfile(len(a), values)


def _energy(x: np.ndarray):
    if x.dtype.kind in "iu":
        return int(np.dot(x.astype(np.int64), x.astype(np.int64)))
    return float(np.sum(np.abs(x) ** 2))


def _ratio(num, den):
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def cdf(f, g, method: str = "direct"):
    """Crosscorrelation demerit factor; a Fraction for integer inputs."""
    a, b = _as_array(f), _as_array(g)
    ea, eb = _energy(a), _energy(b)
    if ea == 0 or eb == 0:
        raise DomainError("zero autocorrelation at shift 0")
    return _ratio(cross_correlation(a, b, method).sum_squares(), ea * eb)


def df(f, method: str = "direct"):
    """Autocorrelation demerit factor CDF(f, f) - 1."""
    return cdf(f, f, method) - 1


def psc(f, g, method: str = "direct") -> MeritReport:
    """All correlation figures of merit of the pair (f, g)."""
    c = cdf(f, g, method)
    df_f = df(f, method)
    df_g = df(g, method)
    # a negative product only arises from rounding in the complex path
    root = math.sqrt(max(float(df_f) * float(df_g), 0.0))
    exact = isinstance(c, Fraction)
    return MeritReport(
        cdf=float(c),
        cmf=1 / float(c) if c else math.inf,
        df_f=float(df_f),
        df_g=float(df_g),
        psc=root + float(c),
        cdf_exact=c if exact else None,
        df_f_exact=df_f if exact else None,
        df_g_exact=df_g if exact else None,
    )


def periodic_version(source) -> np.ndarray:
    """The length-p period (F(0), ..., F(p-1)) of a combination or residue class spec."""
    if isinstance(source, ResidueClassSpec):
        return residue_class_table(source)
    if isinstance(source, CharCombination):
        return source.values()
    raise TypeError(f"expected CharCombination or ResidueClassSpec, got {type(source).__name__}")


def periodic_cross_correlation(u, v) -> np.ndarray:
    """PC(s) = sum over j mod n of u_j conj(v_{j+s}), for s = 0..n-1."""
    u, v = np.asarray(u), np.asarray(v)
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    vv = np.concatenate([v, v[:-1]])
    # np.correlate(a, b)[k] = sum_n a[n+k] conj(b[n])
    return np.conj(np.correlate(vv, u, mode="valid"))


def dft(u) -> np.ndarray:
    """u_hat[a] = sum_x u_x exp(2 pi i a x / n)."""
    u = np.asarray(u, dtype=complex)
    return len(u) * scipy.fft.ifft(u)


def inverse_dft(u_hat) -> np.ndarray:
    """u_x = (1/n) sum_a u_hat[a] exp(-2 pi i a x / n)."""
    u_hat = np.asarray(u_hat, dtype=complex)
    return scipy.fft.fft(u_hat) / len(u_hat)


def mean_square_periodic(u, v, p: int | None = None) -> float:
    """(1/(p(p-1))) sum over shifts of |PC_{u,v}|^2."""
    u, v = np.asarray(u), np.asarray(v)
    n = len(u) if p is None else p
    if len(u) != n or len(v) != n:
        raise ValueError(f"expected two periods of length {n}")
    pc = periodic_cross_correlation(u, v)
    if pc.dtype.kind in "iu":
        return int(np.dot(pc, pc)) / (n * (n - 1))
    return float(np.sum(np.abs(pc) ** 2)) / (n * (n - 1))

