"""Character combination sequences and the 2m-th residue class families.

The quartic families ``f`` and ``g`` and the Legendre family ``h`` are residue
class sequences with (m, classes) equal to (2, {0, 1}), (2, {0, 3}) and
(1, {0}).  Coset ``j`` means alpha^j F_p^{*2m} for the smallest primitive
root alpha; a different root can swap the labels of ``f`` and ``g``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fields import DomainError, PrimeField, is_prime, prime_field

NORM_TOL = 1e-9

FAMILIES = {
    "f": (2, frozenset({0, 1})),
    "g": (2, frozenset({0, 3})),
    "h": (1, frozenset({0})),
}


@dataclass(frozen=True, eq=False)
class CharCombination:
    """Sparse coefficients {k: f_chi} over characters omega^k of F_p^*."""

    field: PrimeField
    coeffs: dict[int, complex]

    def __post_init__(self):
        n = self.field.p - 1
        clean = {}
        for k, c in self.coeffs.items():
            c = complex(c)
            if c != 0:
                clean[k % n] = clean.get(k % n, 0) + c
        if abs(clean.get(0, 0)) > NORM_TOL:
            raise DomainError("trivial character must have zero coefficient")
        clean.pop(0, None)
        norm = sum(abs(c) ** 2 for c in clean.values())
        if abs(norm - 1) > NORM_TOL:
            raise DomainError(f"coefficients not normalized: sum |f|^2 = {norm}")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @property
    def p(self) -> int:
        return self.field.p

    def coeff(self, k: int) -> complex:
        return self.coeffs.get(k % (self.field.p - 1), 0j)

    def values(self) -> np.ndarray:
        """F(0), ..., F(p-1) as a complex vector."""
        p = self.field.p
        e = self.field.dlog[1:]
        out = np.zeros(p, dtype=complex)
        for k, c in self.coeffs.items():
            out[1:] += c * np.exp(2j * np.pi * ((k * e) % (p - 1)) / (p - 1))
        return out


@dataclass(frozen=True)
class ResidueClassSpec:
    m: int
    p: int
    classes: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "classes", frozenset(self.classes))
        if self.m < 1:
            raise DomainError(f"m must be positive, got {self.m}")
        if not is_prime(self.p) or self.p % (2 * self.m) != 1:
            raise DomainError(f"p={self.p} is not a prime that is 1 mod {2 * self.m}")
        if len(self.classes) != self.m or not self.classes <= set(range(2 * self.m)):
            raise DomainError(
                f"need exactly {self.m} distinct coset indices in 0..{2 * self.m - 1}, got {sorted(self.classes)}"
            )

    @property
    def field(self) -> PrimeField:
        return prime_field(self.p)


@dataclass(frozen=True, eq=False)
class Sequence:
    """Terms F(shift), ..., F(shift + length - 1) of a period-p generating function.

    Residue families keep ``terms`` as int64 in {-1, 0, 1}; general
    combinations use complex terms.
    """

    p: int
    shift: int
    length: int
    terms: np.ndarray = field(repr=False)
    unimodularized: bool = False

    def __post_init__(self):
        self.terms.flags.writeable = False

    @property
    def is_integer(self) -> bool:
        return self.terms.dtype.kind in "iu"

    def __len__(self) -> int:
        return self.length

    def tolist(self) -> list:
        return self.terms.tolist()


def family_spec(kind: str, p: int) -> ResidueClassSpec:
    if kind not in FAMILIES:
        raise ValueError(f"unknown family {kind!r}; expected one of f, g, h")
    m, classes = FAMILIES[kind]
    return ResidueClassSpec(m, p, classes)


def residue_class_table(spec: ResidueClassSpec) -> np.ndarray:
    """The period F_{p,A}(0..p-1) as int64 values in {-1, 0, 1}."""
    coset = spec.field.dlog[1:] % (2 * spec.m)
    selected = np.isin(coset, sorted(spec.classes))
    out = np.zeros(spec.p, dtype=np.int64)
    out[1:] = np.where(selected, 1, -1)
    return out


def _window(period: np.ndarray, s: int, l: int) -> np.ndarray:
    if l < 1:
        raise ValueError(f"length must be positive, got {l}")
    idx = (s + np.arange(l)) % len(period)
    return period[idx]


def residue_class_sequence(spec: ResidueClassSpec, s: int, l: int) -> Sequence:
    return Sequence(spec.p, s, l, _window(residue_class_table(spec), s, l))


def quartic_f(p: int, s: int, l: int) -> Sequence:
    if p % 4 != 1:
        raise DomainError(f"quartic sequences need p = 1 mod 4, got {p}")
    return residue_class_sequence(family_spec("f", p), s, l)


def quartic_g(p: int, s: int, l: int) -> Sequence:
    if p % 4 != 1:
        raise DomainError(f"quartic sequences need p = 1 mod 4, got {p}")
    return residue_class_sequence(family_spec("g", p), s, l)


def legendre_h(p: int, s: int, l: int) -> Sequence:
    return residue_class_sequence(family_spec("h", p), s, l)


def family_sequence(kind: str, p: int, s: int, l: int, unimodular: bool = True) -> Sequence:
    seq = {"f": quartic_f, "g": quartic_g, "h": legendre_h}[kind](p, s, l)
    return unimodularize(seq) if unimodular else seq


def unimodularize(seq: Sequence) -> Sequence:
    """Replace every zero term by +1."""
    terms = seq.terms.copy()
    terms[terms == 0] = 1
    return Sequence(seq.p, seq.shift, seq.length, terms, unimodularized=True)


def combination_coefficients(spec: ResidueClassSpec) -> CharCombination:
    """Character combination of a residue class sequence.

    For theta_j = omega^(j (p-1)/2m), j = 1..2m-1, the coefficient is
    (1/m) sum over selected cosets c of exp(-pi i j c / m).
    """
    step = (spec.p - 1) // (2 * spec.m)
    coeffs = {}
    for j in range(1, 2 * spec.m):
        c = sum(cmath.exp(-1j * math.pi * j * a / spec.m) for a in spec.classes) / spec.m
        c = complex(round(c.real, 15), round(c.imag, 15))
        if c != 0:
            coeffs[j * step] = c
    return CharCombination(spec.field, coeffs)


def family_combination(kind: str, p: int) -> CharCombination:
    return combination_coefficients(family_spec(kind, p))


def evaluate_combination(comb: CharCombination, j: int) -> complex:
    """F(j mod p) = sum of f_chi chi(j)."""
    p = comb.field.p
    a = j % p
    if a == 0:
        return 0j
    e = int(comb.field.dlog[a])
    return sum(c * cmath.exp(2j * math.pi * ((k * e) % (p - 1)) / (p - 1)) for k, c in comb.coeffs.items())


def combination_sequence(comb: CharCombination, s: int, l: int) -> Sequence:
    """Complex-valued character combination sequence with shift s and length l."""
    return Sequence(comb.p, s, l, _window(comb.values(), s, l))


def round_half_away(x) -> int:
    """Nearest integer, halves away from zero; exact for int, Fraction and float input."""
    q = Fraction(x)
    n = math.floor(abs(q) + Fraction(1, 2))
    return n if q >= 0 else -n


def natural_params(p: int) -> tuple[int, int]:
    """Shift (p-1)/4 and length p."""
    if p % 4 != 1:
        raise DomainError(f"natural quartic parameters need p = 1 mod 4, got {p}")
    return (p - 1) // 4, p


def appended_params(p: int, lam) -> tuple[int, int]:
    """Shift nearest p(3 - 2 lam)/4 and length nearest p lam, rounding halves away from zero.

    ``lam`` may be a float or a Fraction; the products are formed exactly.
    """
    if lam <= 0:
        raise DomainError(f"Lambda must be positive, got {lam}")
    q = Fraction(lam)
    return round_half_away(p * (3 - 2 * q) / 4), round_half_away(p * q)
