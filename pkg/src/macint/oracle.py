"""Independent ground truth: adaptive Gauss-Kronrod quadrature, the
Weierstrass-product Gamma function and the reference integrand corpus.

Nothing here touches the series machinery, so results from this module can
be used to check it.
"""

from __future__ import annotations

import functools
import heapq
import math
import sys
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from .errors import ConvergenceError, DomainError
from .expr import Expr, as_expr, evaluate

DEFAULT_GAMMA_DEPTH = 100_000
DEFAULT_EULER_TERMS = 10_000_000
MAX_SUBDIVISIONS = 10_000

# 15-point Kronrod abscissae on [-1, 1] (non-negative half, descending) and
# weights; the 7-point Gauss rule uses every other abscissa starting at 1.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    subdivisions: int


def _as_callable(f):
    if callable(f) and not isinstance(f, Expr):
        return f
    expr = as_expr(f)
    return lambda t: evaluate(expr, t)


def _gk15(func, a, b):
    """One Gauss-Kronrod 7/15 panel on [a, b]: (kronrod, error estimate)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    f_center = func(center)
    kronrod = [_WGK[7] * f_center]
    gauss = [_WG[3] * f_center]
    absolute = [abs(kronrod[0])]
    for j in range(7):
        dx = half * _XGK[j]
        pair = (func(center - dx), func(center + dx))
        for v in pair:
            kronrod.append(_WGK[j] * v)
            absolute.append(abs(_WGK[j] * v))
            if j % 2 == 1:
                gauss.append(_WG[j // 2] * v)
    k = math.fsum(kronrod) * half
    g = math.fsum(gauss) * half
    if not math.isfinite(k):
        raise DomainError(f"integrand is not finite on [{a}, {b}]")
    # Floor the estimate at the rounding level of the panel sum.
    floor = 50.0 * _EPS * math.fsum(absolute) * abs(half)
    return k, max(abs(k - g), floor)


def quad(
    f: Union[Expr, str, Callable[[float], float]],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_subdivisions: int = MAX_SUBDIVISIONS,
) -> QuadResult:
    """Integrate ``f`` over [a, b] by globally adaptive GK15 bisection.

    The panel with the largest error estimate is split until the summed
    estimates fall to ``tol``.  Raises :class:`ConvergenceError` once
    ``max_subdivisions`` panels are in use without meeting the tolerance and
    :class:`DomainError` on a non-finite sample.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    func = _as_callable(f)
    a, b = float(a), float(b)
    if a == b:
        return QuadResult(0.0, 0.0, 1)
    value, err = _gk15(func, a, b)
    # Max-heap on error estimate.
    heap = [(-err, a, b, value)]
    values = {(a, b): value}
    errors = {(a, b): err}
    total_err = err
    while total_err > tol:
        if len(heap) >= max_subdivisions:
            raise ConvergenceError(
                f"quadrature did not reach tol={tol:g} within {max_subdivisions} "
                f"subintervals (error estimate {total_err:.3g})"
            )
        _, lo, hi, _ = heapq.heappop(heap)
        del values[(lo, hi)]
        del errors[(lo, hi)]
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise ConvergenceError("subinterval width reached machine resolution")
        for seg in ((lo, mid), (mid, hi)):
            v, e = _gk15(func, *seg)
            values[seg] = v
            errors[seg] = e
            heapq.heappush(heap, (-e, seg[0], seg[1], v))
        total_err = math.fsum(errors.values())
    return QuadResult(math.fsum(values.values()), total_err, len(heap))


# --------------------------------------------------------------------------
# Gamma function and Euler's constant
# --------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def euler_gamma_const(terms: int = DEFAULT_EULER_TERMS) -> float:
    """Euler-Mascheroni constant as ``H_n - ln n - 1/(2n)`` with n = ``terms``."""
    if terms < 10:
        raise ValueError("terms must be at least 10")
    # Chunked, smallest terms first, to bound memory and rounding.
    partials = []
    chunk = 1_000_000
    for hi in range(terms, 0, -chunk):
        lo = max(hi - chunk, 0)
        partials.append(float(np.sum(1.0 / np.arange(hi, lo, -1, dtype=float))))
    harmonic = math.fsum(partials)
    return harmonic - math.log(terms) - 0.5 / terms


def gamma_weierstrass(x: float, depth: int = DEFAULT_GAMMA_DEPTH) -> float:
    """Gamma(x) for real x > 0 from the Weierstrass product cut at ``depth`` factors.

    Factors ``exp(x/n) / (1 + x/n)`` are multiplied in ascending ``n``.  The
    relative truncation error is roughly ``x**2 / (2 * depth)``.
    """
    if not x > 0:
        raise DomainError(f"gamma_weierstrass needs x > 0, got {x}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    r = x / np.arange(1, depth + 1, dtype=float)
    # Huge x overflows to inf/inf; callers see the resulting nan.
    with np.errstate(over="ignore", invalid="ignore"):
        factors = np.exp(r) / (1.0 + r)
    product = math.prod(factors.tolist())
    return math.exp(-euler_gamma_const() * x) / x * product


# --------------------------------------------------------------------------
# Reference corpus
# --------------------------------------------------------------------------

CORPUS_TEXTS = (
    "exp(x^2)",
    "exp(-x^2)",
    "sin(x^2)",
    "cos(x^2)",
    "sin(x)/x",
    "exp(exp(x))",
    "x^5/(x^7+1)",
)
CORPUS_INTERVAL = (0.5, 1.5)


class CorpusEntry(NamedTuple):
    name: str
    expr: Expr
    interval: tuple
    reference: float
    abs_error: float


@functools.lru_cache(maxsize=None)
def _corpus():
    entries = []
    for text in CORPUS_TEXTS:
        expr = as_expr(text)
        res = quad(expr, *CORPUS_INTERVAL, tol=1e-10)
        entries.append(CorpusEntry(text, expr, CORPUS_INTERVAL, res.value, res.abs_error_estimate))
    return tuple(entries)


def reference_corpus() -> list:
    """Integrands with non-elementary antiderivatives plus the x^5/(x^7+1)
    example, each with a quadrature reference value on [0.5, 1.5]."""
    return list(_corpus())
