"""Prime fields, their multiplicative and additive characters, and Gauss sums.

Characters of F_p^* are indexed by an exponent ``k`` modulo ``p - 1``: the
character omega^k sends the primitive root ``alpha`` to exp(2 pi i k/(p-1)).
Every multiplicative character is extended by chi(0) = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_below(n: int) -> list[int]:
    """All primes < n, by a sieve."""
    if n < 3:
        return []
    sieve = np.ones(n, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(n - 1) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(q) for q in np.flatnonzero(sieve)]


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _check_odd_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 3 or not is_prime(int(p)):
        raise DomainError(f"expected an odd prime, got {p!r}")


def find_primitive_root(p: int) -> int:
    """Smallest positive residue of multiplicative order exactly p - 1."""
    _check_odd_prime(p)
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


@dataclass(frozen=True, eq=False)
class PrimeField:
    """The field F_p with its smallest primitive root and discrete-log table.

    ``dlog[x]`` is the exponent e in 0..p-2 with alpha^e = x for x in 1..p-1;
    ``dlog[0]`` holds -1 as a sentinel.  ``powers[e]`` is alpha^e.
    """

    p: int
    alpha: int
    dlog: np.ndarray = field(repr=False)
    powers: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, p: int) -> PrimeField:
        alpha = find_primitive_root(p)
        powers = np.empty(p - 1, dtype=np.int64)
        dlog = np.full(p, -1, dtype=np.int64)
        x = 1
        for e in range(p - 1):
            powers[e] = x
            dlog[x] = e
            x = (x * alpha) % p
        powers.flags.writeable = False
        dlog.flags.writeable = False
        return cls(p, alpha, dlog, powers)

    @property
    def order(self) -> int:
        return self.p - 1

    def character(self, k: int) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self, k % (self.p - 1))

    def trivial(self) -> MultiplicativeCharacter:
        return self.character(0)

    def quadratic(self) -> MultiplicativeCharacter:
        return self.character((self.p - 1) // 2)

    def quartic(self) -> MultiplicativeCharacter:
        """theta_p with theta_p(alpha) = i; requires p = 1 mod 4."""
        if self.p % 4 != 1:
            raise DomainError(f"no quartic character for p={self.p}")
        return self.character((self.p - 1) // 4)

    def additive(self, a: int) -> AdditiveCharacter:
        return AdditiveCharacter(self, a % self.p)


@lru_cache(maxsize=256)
def prime_field(p: int) -> PrimeField:
    """Cached :class:`PrimeField` constructor."""
    return PrimeField.build(p)


@dataclass(frozen=True)
class MultiplicativeCharacter:
    field: PrimeField
    k: int

    @property
    def order(self) -> int:
        n = self.field.p - 1
        return n // math.gcd(self.k, n)

    @property
    def is_trivial(self) -> bool:
        return self.k == 0

    def conj(self) -> MultiplicativeCharacter:
        return self.field.character(-self.k)

    def __call__(self, a: int) -> complex:
        return char_value(self, a)

    def values(self) -> np.ndarray:
        """Values at 0..p-1 as a complex vector (zero at 0)."""
        p = self.field.p
        out = np.zeros(p, dtype=complex)
        e = self.field.dlog[1:]
        out[1:] = np.exp(1j * TWO_PI * ((self.k * e) % (p - 1)) / (p - 1))
        return out

    def at_minus_one(self) -> int:
        """chi(-1), which is always +1 or -1."""
        return 1 if self.k % 2 == 0 else -1


@dataclass(frozen=True)
class AdditiveCharacter:
    field: PrimeField
    a: int

    def __call__(self, x: int) -> complex:
        p = self.field.p
        return cmath.exp(1j * TWO_PI * ((self.a * x) % p) / p)

    def values(self) -> np.ndarray:
        p = self.field.p
        return np.exp(1j * TWO_PI * ((self.a * np.arange(p)) % p) / p)


def char_value(chi: MultiplicativeCharacter, a: int) -> complex:
    p = chi.field.p
    if not 0 <= a < p:
        raise ValueError(f"residue {a} out of range 0..{p - 1}")
    if a == 0:
        return 0j
    e = (chi.k * int(chi.field.dlog[a])) % (p - 1)
    # exact values at the fourth roots of unity keep small tables clean
    if (4 * e) % (p - 1) == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * e // (p - 1)]
    return cmath.exp(1j * TWO_PI * e / (p - 1))


def gauss_sum_direct(a: int, chi: MultiplicativeCharacter) -> complex:
    """tau_a(chi) = sum over x != 0 of eps_a(x) chi(x), by direct summation."""
    p = chi.field.p
    x = np.arange(1, p)
    eps = np.exp(1j * TWO_PI * ((a * x) % p) / p)
    return complex(np.sum(eps * chi.values()[1:]))


@lru_cache(maxsize=4096)
def _gauss_sum_cached(p: int, k: int) -> complex:
    return gauss_sum_direct(1, prime_field(p).character(k))


def gauss_sum(chi: MultiplicativeCharacter) -> complex:
    """tau(chi) = tau_1(chi), evaluated by direct summation in double precision."""
    if chi.field is prime_field(chi.field.p):
        return _gauss_sum_cached(chi.field.p, chi.k)
    return gauss_sum_direct(1, chi)


def gauss_sum_general(a: int, chi: MultiplicativeCharacter) -> complex:
    """tau_a(chi) reduced to tau(chi): p-1 for a=0 and trivial chi, else conj(chi)(a) tau(chi)."""
    p = chi.field.p
    if not 0 <= a < p:
        raise ValueError(f"residue {a} out of range 0..{p - 1}")
    if a == 0 and chi.is_trivial:
        return complex(p - 1)
    return char_value(chi.conj(), a) * gauss_sum(chi)


@dataclass(frozen=True)
class TwoSquares:
    """p = a^2 + b^2 with a odd, b even; a = sqrt(p) cos(gamma), b = sqrt(p) sin(gamma)."""

    p: int
    a: int
    b: int
    gamma: float

    @property
    def cos_two_gamma_exact(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b, self.p)


def _check_one_mod_four(p: int) -> None:
    _check_odd_prime(p)
    if p % 4 != 1:
        raise DomainError(f"p={p} is not 1 mod 4")


@lru_cache(maxsize=4096)
def two_squares(p: int) -> TwoSquares:
    """Unique decomposition p = a^2 + b^2, a odd and b even, by scanning even b."""
    _check_one_mod_four(p)
    for b in range(2, math.isqrt(p) + 1, 2):
        rest = p - b * b
        a = math.isqrt(rest)
        if a * a == rest:
            return TwoSquares(p, a, b, math.atan2(b, a))
    raise AssertionError(f"no two-squares decomposition found for prime {p}")


def cos_two_gamma(p: int) -> float:
    """(a^2 - b^2)/p, which equals Re(tau(theta_p)^4 / p^2)."""
    return float(two_squares(p).cos_two_gamma_exact)


def cos_two_gamma_from_gauss(p: int) -> float:
    """Floating-point cross-check of :func:`cos_two_gamma` through the quartic Gauss sum."""
    _check_one_mod_four(p)
    tau = gauss_sum(prime_field(p).quartic())
    return (tau**4 / p**2).real
