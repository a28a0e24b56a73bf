"""Acceptance gate: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; a summary section is printed at the end of every run either way.
"""
import math
import time
from pathlib import Path

import numpy as np

from helpers import fd_derivatives_of_xf
from macint.cli import main
from macint.engine import TruncationParams, antiderivative_at, definite, partial_sum_trace
from macint.oracle import gamma_weierstrass, quad, reference_corpus
from macint.taylor import derivatives_of_xf
from macint.weights import inner_series_scaled

INTEGRAND = "x^5/(x^7+1)"
TABLE = [0.2661, 0.3222, 0.3575, 0.3852, 0.3942, 0.3862, 0.3733]
GOLDEN = Path(__file__).parent / "golden" / "table.csv"


def test_criterion_01_table_reproduction(acceptance):
    start = time.perf_counter()
    rows = partial_sum_trace(INTEGRAND, 0.5, 1.5, 6, 10)
    elapsed = time.perf_counter() - start
    worst = max(abs(v - t) for (_, v), t in zip(rows, TABLE))
    ok = [p for p, _ in rows] == list(range(7)) and worst <= 5e-4 and elapsed < 1.0
    acceptance(1, "table reproduction", ok, f"max deviation {worst:.2e}, {elapsed * 1e3:.1f} ms")


def test_criterion_02_oracle_anchor(acceptance):
    start = time.perf_counter()
    res = quad(INTEGRAND, 0.5, 1.5, 1e-8)
    elapsed = time.perf_counter() - start
    ok = abs(res.value - 0.3698) <= 1e-3 and elapsed < 0.1
    acceptance(2, "oracle anchor", ok, f"value {res.value:.9f}, {elapsed * 1e3:.2f} ms")


def test_criterion_03_closed_form_inner_series(acceptance):
    worst0 = worst1 = 0.0
    for x in np.linspace(0.2, 1.8, 33):
        x = float(x)
        worst0 = max(worst0, abs(inner_series_scaled(0, x, 400) + math.log(x)))
        worst1 = max(worst1, abs(inner_series_scaled(1, x, 400) - (x * math.log(x) + 1 - x)))
    ok = worst0 < 1e-12 and worst1 < 1e-12
    acceptance(3, "closed-form inner series", ok, f"max errors {worst0:.1e}, {worst1:.1e}")


def test_criterion_04_normalization(acceptance):
    bad = []
    for entry in reference_corpus():
        for p, q in ((6, 10), (14, 120)):
            value = antiderivative_at(entry.expr, 1.0, TruncationParams(p, q)).value
            if value != 0.0:
                bad.append((entry.name, p, q, value))
    acceptance(4, "M(1) = 0 exactly", not bad, f"{len(bad)} nonzero" if bad else "all zero")


def test_criterion_05_polynomial_exactness(acceptance):
    closed = {"1": 1.0, "x": (1.5 ** 2 - 0.5 ** 2) / 2, "x^2": (1.5 ** 3 - 0.5 ** 3) / 3}
    errors = {t: abs(definite(t, 0.5, 1.5, TruncationParams(4, 400)) - v) for t, v in closed.items()}
    worst = max(errors.values())
    acceptance(5, "polynomial exactness", worst < 1e-8, f"max error {worst:.1e}")


def test_criterion_06_telescoping(acceptance):
    worst = 0.0
    for n in range(51):
        for N in range(51):
            product = math.prod((n + v) / (n + v + 1) for v in range(1, N + 3))
            want = (n + 1) / (n + N + 3)
            worst = max(worst, abs(product - want) / want)
    acceptance(6, "telescoping product", worst <= 1e-12, f"max relative error {worst:.1e}")


def test_criterion_07_derivative_engine(acceptance):
    worst = 0.0
    for entry in reference_corpus():
        for x0 in (0.5, 1.0, 1.5):
            got = derivatives_of_xf(entry.expr, x0, 4)
            want = fd_derivatives_of_xf(entry.expr, x0, 4)
            for g, w in zip(got, want):
                worst = max(worst, abs(g - w) / max(abs(w), 1e-300))
    acceptance(7, "derivatives vs finite differences", worst <= 1e-5,
               f"max relative error {worst:.1e}")


def test_criterion_08_convergence_trend(acceptance):
    reference = quad(INTEGRAND, 0.5, 1.5, 1e-10).value
    values = dict(partial_sum_trace(INTEGRAND, 0.5, 1.5, 6, 10))
    early = sum(abs(values[p] - reference) for p in (0, 1, 2)) / 3
    late = sum(abs(values[p] - reference) for p in (4, 5, 6)) / 3
    acceptance(8, "convergence trend", late < early, f"early {early:.4f}, late {late:.4f}")


def test_criterion_09_gamma_reference(acceptance):
    depth = 10 ** 5
    g1, g2 = gamma_weierstrass(1.0, depth), gamma_weierstrass(2.0, depth)
    rec = max(abs(gamma_weierstrass(x + 1, depth) - x * gamma_weierstrass(x, depth))
              / abs(x * gamma_weierstrass(x, depth)) for x in (0.5, 1.0, 1.3))
    ok = abs(g1 - 1) <= 1e-4 and abs(g2 - 1) <= 1e-4 and rec <= 1e-3
    acceptance(9, "gamma reference", ok,
               f"|G(1)-1| {abs(g1 - 1):.1e}, |G(2)-1| {abs(g2 - 1):.1e}, recurrence {rec:.1e}")


def test_criterion_10_cli_golden(acceptance, tmp_path):
    out = tmp_path / "table.csv"
    code = main(["table", "--out", str(out)])
    golden = GOLDEN.read_bytes()
    rows = [line.split(",") for line in golden.decode().splitlines()[1:]]
    consistent = all(abs(float(v) - t) <= 5e-4 for (_, v), t in zip(rows, TABLE))
    ok = code == 0 and out.read_bytes() == golden and consistent and len(rows) == 7
    acceptance(10, "CLI golden table", ok, "byte-identical" if ok else "mismatch")
