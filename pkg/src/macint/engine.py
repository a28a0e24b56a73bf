"""Maclaurin Integration: series antiderivatives on (0, 2).

For f satisfying the validity conditions the antiderivative is

    F(x) = - sum_u  g^(u)(x) * S_u(x),      g(x) = x f(x),

with S_u the inner series from :mod:`macint.weights`.  Writing
g^(u)/u! = c_u (Taylor coefficient) and u! S_u = T_u, each term becomes
c_u * T_u, which never forms a factorial.  Truncating u at p and the inner
index n at q gives M(x; p, q).

The series fixes the constant of integration itself: every T_u vanishes at
x = 1, so M(1; p, q) = 0 for any integrand and truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, SingularityError
from .expr import Expr, as_expr, evaluate
from .taylor import DEFAULT_GAMMA_DEPTH, xf_jet
from .weights import build_weights, inner_series_scaled, tail_bound

DEFAULT_P = 6
DEFAULT_Q = 10
PROBE_ORDER = 6


@dataclass(frozen=True)
class TruncationParams:
    p: int = DEFAULT_P  # highest derivative order u
    q: int = DEFAULT_Q  # highest inner index n

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")


@dataclass(frozen=True)
class EvalReport:
    """M(x; p, q) with its per-order terms.

    ``value == -sum(terms)``.  ``constant_fixed_by_series`` records that no
    additive constant is chosen by the caller: the series normalizes
    M(1) = 0.
    """

    x: float
    value: float
    terms: tuple
    tail_estimate: float
    constant_fixed_by_series: bool = True


@dataclass(frozen=True)
class ConditionReport:
    defined_ok: bool
    continuous_ok: bool
    smooth_ok: bool
    defined_witnesses: tuple = ()
    continuous_witnesses: tuple = ()
    smooth_witnesses: tuple = ()
    heuristic: bool = field(default=True, repr=False)

    @property
    def ok(self) -> bool:
        return self.defined_ok and self.continuous_ok and self.smooth_ok

    @property
    def witnesses(self) -> tuple:
        return tuple(sorted({*self.defined_witnesses, *self.continuous_witnesses,
                             *self.smooth_witnesses}))


def _check_point(x):
    if not 0.0 < x < 2.0:
        raise DomainError(f"evaluation point must lie in (0, 2), got {x}")


def _terms(f, x, p, q, gamma_depth):
    """Per-order terms c_u T_u for u = 0..p and the xf jet coefficients."""
    _check_point(x)
    coeffs = xf_jet(f, x, p, gamma_depth).coeffs
    table = build_weights(p, q)
    terms = tuple(c * inner_series_scaled(u, x, q, table) for u, c in enumerate(coeffs))
    return terms, coeffs


def _negated_sum(terms):
    # fsum is exact-then-rounded; + 0.0 turns -0.0 into 0.0.
    return -math.fsum(terms) + 0.0


def antiderivative_at(f, x, params=None, gamma_depth=DEFAULT_GAMMA_DEPTH) -> EvalReport:
    """Evaluate M(x; p, q) for the integrand ``f`` (expression or text)."""
    params = params or TruncationParams()
    x = float(x)
    terms, coeffs = _terms(as_expr(f), x, params.p, params.q, gamma_depth)
    tail = abs(terms[-1]) + math.fsum(
        abs(c) * tail_bound(u, x, params.q) for u, c in enumerate(coeffs)
    )
    return EvalReport(x, _negated_sum(terms), terms, tail)


def definite(f, a, b, params=None, gamma_depth=DEFAULT_GAMMA_DEPTH) -> float:
    """M(b) - M(a)."""
    f = as_expr(f)
    return (antiderivative_at(f, b, params, gamma_depth).value
            - antiderivative_at(f, a, params, gamma_depth).value)


def partial_sum_trace(f, a, b, p_max, q=DEFAULT_Q, gamma_depth=DEFAULT_GAMMA_DEPTH) -> list:
    """``[(p, M(b; p, q) - M(a; p, q)) for p in 0..p_max]``.

    Jets are computed once at order ``p_max``; lower-order coefficients of a
    jet do not depend on its order, so row p equals ``definite`` at p.
    """
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    f = as_expr(f)
    terms_a, _ = _terms(f, float(a), p_max, q, gamma_depth)
    terms_b, _ = _terms(f, float(b), p_max, q, gamma_depth)
    return [
        (p, _negated_sum(terms_b[: p + 1]) - _negated_sum(terms_a[: p + 1]))
        for p in range(p_max + 1)
    ]


def tail_magnitude(f, x, p, q=DEFAULT_Q, gamma_depth=DEFAULT_GAMMA_DEPTH) -> float:
    """|c_{p+1}(x) T_{p+1}(x; q)|, the size of the first dropped outer term."""
    terms, _ = _terms(as_expr(f), float(x), p + 1, q, gamma_depth)
    return abs(terms[-1])


# --------------------------------------------------------------------------
# Validity conditions
# --------------------------------------------------------------------------

_BISECTIONS = 40
_EARLY_STEPS = 3
_JUMP_RTOL = 1e-6


def _activity(f_lo, f_mid, f_hi):
    # Endpoint jump plus the midpoint's departure from the chord.
    return abs(f_hi - f_lo) + abs(f_mid - 0.5 * (f_lo + f_hi))


def _jump_persists(f, lo, hi, f_lo, f_hi):
    """Follow the most active subintervals of [lo, hi] by bisection.  Return a
    location if the activity does not die away (a jump or a pole), else None.

    For a continuous function the activity at least halves per step, so a
    pair that has not halved after a few steps is followed down to
    machine-resolution widths.  The two most active halves are kept at every
    step because a hot midpoint leaves it ambiguous which side holds a pole.
    """
    mid = 0.5 * (lo + hi)
    f_mid = evaluate(f, mid)
    if not math.isfinite(f_mid):
        return mid
    beam = [(_activity(f_lo, f_mid, f_hi), lo, mid, hi, f_lo, f_mid, f_hi)]
    start = beam[0][0]
    for step in range(1, _BISECTIONS + 1):
        if all(c[0] <= _JUMP_RTOL * (1.0 + max(map(abs, c[4:]))) for c in beam):
            return None
        if step == _EARLY_STEPS + 1 and max(c[0] for c in beam) <= 0.5 * start:
            return None
        children = []
        for _, lo, mid, hi, f_lo, f_mid, f_hi in beam:
            for a, b, f_a, f_b in ((lo, mid, f_lo, f_mid), (mid, hi, f_mid, f_hi)):
                m = 0.5 * (a + b)
                f_m = evaluate(f, m)
                if not math.isfinite(f_m):
                    return m
                children.append((_activity(f_a, f_m, f_b), a, m, b, f_a, f_m, f_b))
        children.sort(key=lambda c: c[0], reverse=True)
        beam = children[:2]
    return beam[0][2]


def check_conditions(f, grid_size=101, probe_order=PROBE_ORDER,
                     gamma_depth=DEFAULT_GAMMA_DEPTH) -> ConditionReport:
    """Sample the validity conditions on the open grid 2i/(grid_size+1).

    * defined: every sample evaluates to a finite number;
    * continuous: every sample is finite and no jump between neighbouring
      samples survives repeated bisection;
    * smooth: jets of x*f to ``probe_order`` exist at every sample.

    Sampling can miss features narrower than the mesh; treat the result as
    a screening heuristic.
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    f = as_expr(f)
    xs = [2.0 * i / (grid_size + 1) for i in range(1, grid_size + 1)]
    ys = [evaluate(f, x) for x in xs]

    undefined = tuple(x for x, y in zip(xs, ys) if not math.isfinite(y))

    discontinuous = set(undefined)
    for i in range(grid_size - 1):
        if math.isfinite(ys[i]) and math.isfinite(ys[i + 1]):
            where = _jump_persists(f, xs[i], xs[i + 1], ys[i], ys[i + 1])
            if where is not None:
                discontinuous.add(where)

    rough = []
    for x in xs:
        try:
            xf_jet(f, x, probe_order, gamma_depth)
        except SingularityError:
            rough.append(x)

    return ConditionReport(
        defined_ok=not undefined,
        continuous_ok=not discontinuous,
        smooth_ok=not rough,
        defined_witnesses=undefined,
        continuous_witnesses=tuple(sorted(discontinuous)),
        smooth_witnesses=tuple(rough),
    )
