import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charseq import asymptotics as asy
from charseq.fields import DomainError


def omega_reference(x, y):
    return sum(max(0.0, 1 - abs(n * x - y)) ** 2 for n in range(-200, 201))


def test_omega_examples():
    assert asy.omega(1, 0) == 1
    assert asy.omega(0.5, 0) == 1.5
    assert asy.omega(1, 1.5) == 0.5
    assert asy.omega(Fraction(1, 2), 0) == Fraction(3, 2)
    with pytest.raises(DomainError):
        asy.omega(0, 1)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.02, 5), st.floats(-3, 3))
def test_omega_matches_reference(x, y):
    assert asy.omega(x, y) == pytest.approx(omega_reference(x, y), abs=1e-12)
    assert asy.omega(-x, y) == pytest.approx(asy.omega(x, y), abs=1e-12)


def test_omega_array_matches_scalar():
    xs = np.linspace(0.1, 3, 25)
    ys = np.linspace(-2, 2, 25)
    arr = asy.omega_array(xs[:, None], ys[None, :])
    assert np.allclose(arr, [[asy.omega(x, y) for y in ys] for x in xs], atol=1e-12)


def test_limit_cdf_examples():
    assert asy.limit_cdf(asy.LimitInputs(s=0, lam=1)) == 1
    assert asy.limit_cdf_fg(1, math.pi / 2) == pytest.approx(1 / 3, abs=1e-12)
    assert asy.limit_cdf_fg(1, 0.0) == pytest.approx(1, abs=1e-12)
    assert asy.limit_cdf_fh(1) == 1
    assert asy.limit_cdf_fg(asy.lambda_app(), math.pi / 2) == pytest.approx(0.300758, abs=1e-5)


def test_limit_df_examples():
    assert asy.limit_df(asy.LimitInputs(s=-2, u=1, v=1, lam=Fraction(1), r=Fraction(1, 4))) == Fraction(1, 6)
    assert asy.limit_df_legendre(Fraction(1), Fraction(1, 4)) == Fraction(1, 6)
    lam = asy.lambda_app()
    r = (1 - 2 * lam) / 4
    assert asy.limit_df_legendre(lam, r) == pytest.approx(0.157677, abs=1e-5)
    assert asy.limit_df_quartic(1, 0.25, math.pi / 2) == pytest.approx(5 / 6)
    assert asy.limit_df_quartic(lam, r, 0.0) == pytest.approx(0.157677, abs=1e-5)
    assert asy.limit_df_quartic(lam, r, 0.0) == pytest.approx(0.510286 - 0.352609, abs=1e-5)


def test_limit_inputs_validation():
    with pytest.raises(DomainError):
        asy.LimitInputs(s=0, lam=0)
    with pytest.raises(DomainError):
        asy.limit_cdf(asy.LimitInputs(s=0, u=1, lam=1))
    with pytest.raises(DomainError):
        asy.limit_df(asy.LimitInputs(s=-2, v=1, lam=1))


def test_legendre_limit_never_below_one_sixth_at_unit_ratio():
    for r in np.linspace(-1, 1, 201):
        assert asy.limit_df_legendre(1.0, r) >= 1 / 6 - 1e-12


def test_optimum_constants():
    c = asy.optimum_constants()
    assert c.df_min == pytest.approx(0.157677, abs=1e-6)
    assert c.lambda_app == pytest.approx(1.057827, abs=1e-6)
    assert c.mf_max == pytest.approx(6.342061, abs=1e-6)
    assert c.mf_max * c.df_min == pytest.approx(1, abs=1e-10)
    assert f"{c.df_min:.6f}"[:8] == "0.157677"
    assert math.floor(c.mf_max * 1e6) == 6342061
    assert math.floor(c.lambda_app * 1e6) == 1057827


def test_psc_limits():
    assert asy.psc_limit_natural() == Fraction(7, 6)
    assert asy.psc_limit_appended() == pytest.approx(1.163654, abs=1e-5)
    assert asy.psc_limit_appended(math.pi / 2) == pytest.approx(1.163654, abs=1e-5)


def test_appended_coefficients():
    h = asy.appended_limit_coefficients()
    assert h["df_constant"] == pytest.approx(0.510286, abs=1e-6)
    assert h["df_cos_coefficient"] == pytest.approx(-0.352609, abs=1e-6)
    assert h["cdf_constant"] == pytest.approx(0.653368, abs=1e-6)
    assert h["cdf_cos_coefficient"] == pytest.approx(0.352609, abs=1e-6)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 3), st.floats(-1, 1), st.floats(0, math.pi / 2))
def test_limit_df_never_below_optimum(lam, r, gamma):
    df_min = asy.optimum_constants().df_min
    assert asy.limit_df_legendre(lam, r) >= df_min - 1e-9
    assert asy.limit_df_quartic(lam, r, gamma) >= df_min - 1e-9
