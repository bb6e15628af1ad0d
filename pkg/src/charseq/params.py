"""The S, U, V, W parameters of a pair of character combination sequences.

Three routes are provided: direct evaluation of the defining Gauss-sum
sums over the sparse supports, the combinatorial closed forms for U and V of
residue class sequences, and the tabulated values for the f, g, h families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import DomainError, cos_two_gamma, gauss_sum, is_prime
from .sequences import CharCombination

IMAG_TOL = 1e-8


@dataclass(frozen=True)
class PairParameters:
    s: float
    u: float
    v: float
    w_f: float
    w_g: float

    @property
    def periodic_mean_square(self) -> float:
        """S + 1 + U + V, the normalized mean square periodic crosscorrelation."""
        return self.s + 1 + self.u + self.v


@dataclass(frozen=True)
class QuadrupleSumDiagnostics:
    full: complex
    diagonal: complex
    swapped: complex
    conjugate: complex
    params: PairParameters

    @property
    def discrepancies(self) -> tuple[float, float, float, float]:
        p = self.params
        return (
            abs(self.full - p.periodic_mean_square),
            abs(self.diagonal - 1),
            abs(self.swapped - p.u),
            abs(self.conjugate - p.v),
        )

    @property
    def max_discrepancy(self) -> float:
        return max(self.discrepancies)


def _check_pair(fc: CharCombination, gc: CharCombination) -> int:
    if fc.field.p != gc.field.p:
        raise ValueError(f"combinations over different fields: p={fc.field.p} vs p={gc.field.p}")
    return fc.field.p


def _scaled_taus(fc: CharCombination, gc: CharCombination) -> dict[int, complex]:
    """tau(chi)/sqrt(p) for every character in either support, so four of them carry 1/p^2."""
    field = fc.field
    scale = math.sqrt(field.p)
    return {k: gauss_sum(field.character(k)) / scale for k in set(fc.coeffs) | set(gc.coeffs)}


def _term(fc, gc, t, phi, chi, psi, omega) -> complex:
    return (
        fc.coeffs[phi]
        * gc.coeffs[chi]
        * (fc.coeffs[psi] * gc.coeffs[omega]).conjugate()
        * t[phi]
        * t[chi]
        * (t[psi] * t[omega]).conjugate()
    )


def _quadruples(fc: CharCombination, gc: CharCombination):
    """All (phi, chi, psi, omega) in supp f x supp g x supp f x supp g with phi chi = psi omega."""
    n = fc.field.p - 1
    for phi in fc.coeffs:
        for chi in gc.coeffs:
            for psi in fc.coeffs:
                omega = (phi + chi - psi) % n
                if omega in gc.coeffs:
                    yield phi, chi, psi, omega


def _uvw(fc: CharCombination, gc: CharCombination) -> tuple[float, float, float, float]:
    u = abs(sum(c * gc.coeff(k).conjugate() for k, c in fc.coeffs.items())) ** 2
    # phi(-1) = (-1)^k for phi = omega^k
    v = abs(sum(c * gc.coeff(-k) * (1 if k % 2 == 0 else -1) for k, c in fc.coeffs.items())) ** 2
    w_f = sum(abs(c) for c in fc.coeffs.values())
    w_g = sum(abs(c) for c in gc.coeffs.values())
    return u, v, w_f, w_g


def parameters_from_combinations(fc: CharCombination, gc: CharCombination) -> PairParameters:
    """S, U, V, W_f, W_g evaluated directly from the two character combinations."""
    p = _check_pair(fc, gc)
    n = p - 1
    t = _scaled_taus(fc, gc)
    total = 0j
    for phi, chi, psi, omega in _quadruples(fc, gc):
        if phi in ((-chi) % n, psi, omega):
            continue
        total += _term(fc, gc, t, phi, chi, psi, omega)
    f, g = fc.coeff, gc.coeff
    total -= sum(abs(f(k) * g(k)) ** 2 for k in fc.coeffs)
    total -= sum(abs(f(k) * g(-k)) ** 2 for k in fc.coeffs)
    total -= sum(f(k) * f(-k).conjugate() * g(-k) * g(k).conjugate() for k in fc.coeffs)
    eta = n // 2
    total += abs(f(eta) * g(eta)) ** 2
    if abs(total.imag) >= IMAG_TOL:
        raise ArithmeticError(f"S has a non-vanishing imaginary part {total.imag:.3e} (p={p})")
    u, v, w_f, w_g = _uvw(fc, gc)
    return PairParameters(total.real, u, v, w_f, w_g)


def quadruple_sum_identities(fc: CharCombination, gc: CharCombination) -> QuadrupleSumDiagnostics:
    """Evaluate the four restricted quadruple sums that express S+1+U+V, 1, U and V."""
    p = _check_pair(fc, gc)
    n = p - 1
    t = _scaled_taus(fc, gc)
    full = diagonal = swapped = conjugate = 0j
    for q in _quadruples(fc, gc):
        phi, chi, psi, omega = q
        term = _term(fc, gc, t, *q)
        full += term
        if phi == psi and chi == omega:
            diagonal += term
        if phi == omega and chi == psi:
            swapped += term
        if (phi + chi) % n == 0 and (psi + omega) % n == 0:
            conjugate += term
    return QuadrupleSumDiagnostics(full, diagonal, swapped, conjugate, parameters_from_combinations(fc, gc))


def closed_form_uv(m: int, classes_a, classes_b, p: int) -> tuple[float, float]:
    """U and V of two 2m-th residue class sequences from coset overlaps."""
    if not is_prime(p) or p % (2 * m) != 1:
        raise DomainError(f"p={p} is not a prime that is 1 mod {2 * m}")
    a, b = set(classes_a), set(classes_b)
    u = (2 * len(a & b) / m - 1) ** 2
    if p % (4 * m) == 1:
        return u, u
    # -1 lies in the coset alpha^m F_p^{*2m}
    minus_b = {(j + m) % (2 * m) for j in b}
    return u, (2 * len(a & minus_b) / m - 1) ** 2


_QUARTIC = {"f", "g"}


def tabulated_parameters(p: int, left: str, right: str) -> PairParameters:
    """Tabulated S, U, V, W for the f, g (quartic) and h (Legendre) families."""
    for kind in (left, right):
        if kind not in ("f", "g", "h"):
            raise ValueError(f"unknown family {kind!r}")
    if not is_prime(p) or p < 3:
        raise DomainError(f"expected an odd prime, got {p}")
    if (left in _QUARTIC or right in _QUARTIC) and p % 4 != 1:
        raise DomainError(f"quartic families need p = 1 mod 4, got {p}")
    w = {"f": math.sqrt(2), "g": math.sqrt(2), "h": 1.0}
    w_f, w_g = w[left], w[right]
    if left == "h" and right == "h":
        return PairParameters(-2.0, 1.0, 1.0, w_f, w_g)
    if left == "h" or right == "h":
        return PairParameters(0.0, 0.0, 0.0, w_f, w_g)
    c = cos_two_gamma(p)
    if left == right:
        return PairParameters((-3 - c) / 2, 1.0, 1.0, w_f, w_g)
    return PairParameters((-1 + c) / 2, 0.0, 0.0, w_f, w_g)
