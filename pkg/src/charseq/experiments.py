"""Regenerate the demerit-factor figures as CSV tables."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .asymptotics import lambda_app, limit_cdf_fg, limit_cdf_fh, limit_df_legendre, limit_df_quartic
from .correlate import cdf, df
from .fields import cos_two_gamma, is_prime, primes_below
from .sequences import appended_params, family_sequence, natural_params, round_half_away

FIGURES = ("aaron", "edward", "boris", "edith", "cecilia")
# partner family and parameterization of each prime-indexed figure
_PAIRS = {
    "aaron": ("g", "natural"),
    "edward": ("h", "natural"),
    "boris": ("g", "appended"),
    "edith": ("h", "appended"),
}
MIN_PRIME = 13
FRACTIONAL_COUNT = 100


@dataclass(frozen=True)
class ExperimentConfig:
    figure: str
    p_max: int = 2000
    lam: float | None = None
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise ValueError(f"unknown figure {self.figure!r}; choose from {', '.join(FIGURES)}")
        if self.p_max < MIN_PRIME:
            raise ValueError(f"p_max must be at least {MIN_PRIME}")
        if self.lam is not None and self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".9g")


def figure_primes(p_max: int) -> list[int]:
    return [p for p in primes_below(p_max) if p % 4 == 1 and p >= MIN_PRIME]


def fractional_primes(count: int = FRACTIONAL_COUNT) -> list[int]:
    """The smallest primes of the form 1 + (2c)^2."""
    out = []
    c = 1
    while len(out) < count:
        q = 1 + 4 * c * c
        if is_prime(q):
            out.append(q)
        c += 1
    return out


def header(figure: str) -> list[str]:
    if figure == "cecilia":
        return ["k", "p_k", "fractional_length", "cdf", "asym_curve"]
    partner, mode = _PAIRS[figure]
    tag = "nat" if mode == "natural" else "app"
    if partner == "g":
        return ["p", "cos2gamma", f"df_f_{tag}", f"df_g_{tag}", f"cdf_fg_{tag}", "asym_df", "asym_cdf"]
    return ["p", "cos2gamma", f"df_f_{tag}", f"df_h_{tag}", f"cdf_fh_{tag}", "asym_df_f", "asym_df_h", "asym_cdf"]


def _shape(p: int, mode: str, lam) -> tuple[int, int, float, float]:
    """Shift, length and the limiting ratios (Lambda, R) they realize."""
    if mode == "natural" and lam is None:
        s, l = natural_params(p)
        return s, l, 1.0, 0.25
    if lam is None:
        lam = lambda_app()
    s, l = appended_params(p, lam)
    return s, l, lam, (3 - 2 * lam) / 4


def prime_row(figure: str, lam, p: int) -> list:
    partner, mode = _PAIRS[figure]
    s, l, big_lam, r = _shape(p, mode, lam)
    c = cos_two_gamma(p)
    f = family_sequence("f", p, s, l)
    other = family_sequence(partner, p, s, l)
    df_f, df_o, cross = df(f), df(other), cdf(f, other)
    asym_df_f = limit_df_quartic(big_lam, r, cos2g=c)
    if partner == "g":
        return [p, c, df_f, df_o, cross, asym_df_f, limit_cdf_fg(big_lam, cos2g=c)]
    return [p, c, df_f, df_o, cross, asym_df_f, limit_df_legendre(big_lam, r), limit_cdf_fh(big_lam)]


def fractional_row(k: int, p: int) -> list:
    frac = Fraction(k, 10)
    l = round_half_away(p * frac)
    s = round_half_away(p * (3 - 2 * frac) / 4)
    f = family_sequence("f", p, s, l)
    g = family_sequence("g", p, s, l)
    return [k, p, frac, cdf(f, g, method="auto"), limit_cdf_fg(frac, cos2g=-1)]


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(*item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_star, [(fn, item) for item in items]))


def _star(job):
    fn, item = job
    return fn(*item)


def run_figure(config: ExperimentConfig) -> tuple[list[str], list[list]]:
    """Header and rows for a figure, rows in ascending prime (or k) order."""
    if config.figure == "cecilia":
        items = list(enumerate(fractional_primes(), start=1))
        rows = _map(fractional_row, items, config.jobs)
    else:
        primes = figure_primes(config.p_max)
        rows = _map(partial(prime_row, config.figure, config.lam), [(p,) for p in primes], config.jobs)
    return header(config.figure), rows


def render_csv(head: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(head)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


def write_figure(config: ExperimentConfig) -> str:
    text = render_csv(*run_figure(config))
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def pair_shape(p: int, kinds: tuple[str, str], appended: bool = False, shift=None, length=None):
    """Resolve the shift/length options of the pair command."""
    if shift is not None or length is not None:
        if shift is None or length is None:
            raise ValueError("--shift and --length must be given together")
        return shift, length
    if appended:
        return appended_params(p, lambda_app())
    if p % 4 == 1:
        return natural_params(p)
    if "f" in kinds or "g" in kinds:
        raise ValueError(f"quartic families need p = 1 mod 4, got {p}")
    # Legendre-only pairs at p = 3 mod 4 fall back to shift round(p/4)
    return round_half_away(Fraction(p, 4)), p

