from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charseq.fields import DomainError, prime_field, primes_below
from charseq.sequences import (
    CharCombination,
    ResidueClassSpec,
    Sequence,
    appended_params,
    combination_coefficients,
    combination_sequence,
    evaluate_combination,
    family_combination,
    family_sequence,
    legendre_h,
    natural_params,
    quartic_f,
    quartic_g,
    residue_class_sequence,
    residue_class_table,
    round_half_away,
    unimodularize,
)
from oracles import legendre_symbol

QUARTIC_PRIMES = [p for p in primes_below(200) if p % 4 == 1]


def test_residue_class_examples():
    assert residue_class_sequence(ResidueClassSpec(2, 5, frozenset({0, 1})), 0, 5).tolist() == [0, 1, 1, -1, -1]
    assert residue_class_sequence(ResidueClassSpec(1, 7, frozenset({0})), 0, 7).tolist() == [0, 1, 1, -1, 1, -1, -1]
    assert residue_class_sequence(ResidueClassSpec(2, 5, frozenset({0, 3})), 0, 5).tolist() == [0, 1, -1, 1, -1]


def test_family_examples():
    assert quartic_f(5, 0, 5).tolist() == [0, 1, 1, -1, -1]
    assert quartic_g(5, 0, 5).tolist() == [0, 1, -1, 1, -1]
    assert legendre_h(7, 0, 7).tolist() == [0, 1, 1, -1, 1, -1, -1]


def test_legendre_matches_euler_criterion():
    for p in primes_below(300)[1:]:
        assert legendre_h(p, 0, p).tolist() == [legendre_symbol(a, p) for a in range(p)]


def test_shift_and_periodic_extension():
    base = quartic_f(13, 0, 13).tolist()
    seq = quartic_f(13, 5, 30).tolist()
    assert seq == [base[(5 + j) % 13] for j in range(30)]
    assert quartic_f(13, -3, 4).tolist() == [base[10], base[11], base[12], base[0]]


def test_spec_validation():
    with pytest.raises(DomainError):
        ResidueClassSpec(2, 7, frozenset({0, 1}))  # 7 is not 1 mod 4
    with pytest.raises(DomainError):
        ResidueClassSpec(2, 13, frozenset({0}))  # wrong number of classes
    with pytest.raises(DomainError):
        ResidueClassSpec(2, 13, frozenset({0, 4}))
    with pytest.raises(DomainError):
        quartic_f(7, 0, 7)
    with pytest.raises(ValueError):
        quartic_f(13, 0, 0)


def test_unimodularize():
    assert unimodularize(quartic_f(5, 0, 5)).tolist() == [1, 1, 1, -1, -1]
    assert unimodularize(legendre_h(7, 0, 7)).tolist() == [1, 1, 1, -1, 1, -1, -1]
    seq = quartic_f(13, 1, 12)
    assert unimodularize(seq).tolist() == seq.tolist()
    assert unimodularize(seq).unimodularized


def test_sequence_terms_are_read_only():
    seq = quartic_f(13, 0, 13)
    with pytest.raises(ValueError):
        seq.terms[0] = 5
    assert isinstance(seq, Sequence) and seq.is_integer and len(seq) == 13


def test_combination_coefficients_examples():
    f = family_combination("f", 13)
    assert f.coeff(3) == pytest.approx((1 - 1j) / 2)
    assert f.coeff(9) == pytest.approx((1 + 1j) / 2)
    assert f.coeff(6) == 0
    g = family_combination("g", 13)
    assert g.coeff(3) == pytest.approx((1 + 1j) / 2)
    assert g.coeff(9) == pytest.approx((1 - 1j) / 2)
    h = family_combination("h", 7)
    assert h.coeffs == {3: 1}


def test_combination_evaluation_examples():
    assert evaluate_combination(family_combination("f", 5), 0) == 0
    assert evaluate_combination(family_combination("f", 5), 2) == pytest.approx(1, abs=1e-9)
    assert evaluate_combination(family_combination("h", 7), 3) == pytest.approx(-1, abs=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_combination_reproduces_table(m):
    for p in primes_below(150):
        if p % (2 * m) != 1:
            continue
        for classes in ({0}, {1}, {0, 1}, {0, 3}, {1, 2, 4}, {0, 2, 4}):
            if len(classes) != m or max(classes) >= 2 * m:
                continue
            spec = ResidueClassSpec(m, p, frozenset(classes))
            comb = combination_coefficients(spec)
            assert np.max(np.abs(comb.values() - residue_class_table(spec))) < 1e-9
            window = combination_sequence(comb, 4, 2 * p).terms
            assert np.allclose(window, residue_class_sequence(spec, 4, 2 * p).terms)


def test_combination_validation():
    F = prime_field(13)
    with pytest.raises(DomainError):
        CharCombination(F, {0: 1})
    with pytest.raises(DomainError):
        CharCombination(F, {6: 0.5})
    assert CharCombination(F, {6: -1}).coeffs == {6: -1}


def test_natural_and_appended_params():
    assert natural_params(13) == (3, 13)
    assert appended_params(13, 1.057827) == (3, 14)
    for p in QUARTIC_PRIMES:
        assert appended_params(p, 1) == (round_half_away(Fraction(p, 4)), p)
    with pytest.raises(DomainError):
        natural_params(7)
    with pytest.raises(DomainError):
        appended_params(13, 0)


def test_round_half_away():
    assert [round_half_away(x) for x in (0.5, 1.5, 2.5, -0.5, -2.5, Fraction(7, 2), 3)] == [1, 2, 3, -1, -3, 4, 3]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(QUARTIC_PRIMES), st.sampled_from("fgh"), st.integers(-500, 500), st.integers(1, 600))
def test_zero_count_property(p, kind, s, l):
    seq = family_sequence(kind, p, s, l, unimodular=False)
    zeros = int(np.sum(seq.terms == 0))
    assert zeros in (l // p, -(-l // p))
    assert set(np.unique(seq.terms)) <= {-1, 0, 1}
    uni = family_sequence(kind, p, s, l)
    assert set(np.unique(uni.terms)) <= {-1, 1}
