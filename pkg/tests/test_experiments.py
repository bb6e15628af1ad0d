import csv
import io

import pytest

from charseq.asymptotics import lambda_app, omega
from charseq.experiments import (
    ExperimentConfig,
    fractional_primes,
    figure_primes,
    header,
    pair_shape,
    render_csv,
    run_figure,
    write_figure,
)


def parse(text):
    return list(csv.reader(io.StringIO(text)))


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig("nobody")
    with pytest.raises(ValueError):
        ExperimentConfig("aaron", p_max=12)
    with pytest.raises(ValueError):
        ExperimentConfig("aaron", jobs=0)
    with pytest.raises(ValueError):
        ExperimentConfig("aaron", lam=-1)


def test_figure_primes():
    primes = figure_primes(2000)
    assert primes[0] == 13 and primes[-1] < 2000
    assert all(p % 4 == 1 for p in primes)
    assert len(primes) == 146


def test_fractional_primes():
    primes = fractional_primes()
    assert len(primes) == 100
    assert primes[:4] == [5, 17, 37, 101]
    assert primes == sorted(primes)


def test_figure_rows_and_columns():
    text = write_figure(ExperimentConfig("aaron", p_max=200))
    rows = parse(text)
    assert rows[0] == header("aaron")
    assert [int(r[0]) for r in rows[1:]] == figure_primes(200)
    assert "\r" not in text


def test_appended_legendre_asymptote_column_constant():
    rows = parse(write_figure(ExperimentConfig("edith", p_max=100)))
    col = rows[0].index("asym_cdf")
    values = {r[col] for r in rows[1:]}
    assert values == {format(omega(1 / lambda_app(), 0), ".9g")}


def test_figure_is_deterministic_and_parallel_safe(tmp_path):
    out = tmp_path / "appended.csv"
    first = write_figure(ExperimentConfig("boris", p_max=300, out=str(out)))
    assert out.read_text() == first
    assert write_figure(ExperimentConfig("boris", p_max=300, jobs=2)) == first


def test_lambda_override_changes_lengths():
    plain = run_figure(ExperimentConfig("edward", p_max=60))[1]
    stretched = run_figure(ExperimentConfig("edward", p_max=60, lam=1.5))[1]
    assert [r[0] for r in plain] == [r[0] for r in stretched]
    assert plain != stretched


def test_render_csv_format():
    assert render_csv(["a", "b"], [[1, 0.1234567891234]]) == "a,b\n1,0.123456789\n"


def test_pair_shape():
    assert pair_shape(13, ("f", "g")) == (3, 13)
    assert pair_shape(13, ("f", "g"), appended=True) == (3, 14)
    assert pair_shape(7, ("h", "h")) == (2, 7)
    assert pair_shape(7, ("h", "h"), shift=1, length=9) == (1, 9)
    with pytest.raises(ValueError):
        pair_shape(7, ("f", "h"))
    with pytest.raises(ValueError):
        pair_shape(13, ("f", "g"), shift=1)
