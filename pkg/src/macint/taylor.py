"""Truncated Taylor series ("jets") and high-order derivatives of x*f(x).

A jet of order K at ``x0`` stores ``c_k = h^(k)(x0) / k!`` for k = 0..K.
Jets of composite expressions come from the usual coefficient recurrences,
so derivatives of any order are available without symbolic
differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularityError
from .expr import (
    Add, Call, Constant, Div, Expr, Mul, NamedConstant, Neg, Pow, Sub, Variable,
    as_expr, evaluate, is_constant,
)
from .oracle import euler_gamma_const

DEFAULT_GAMMA_DEPTH = 1000


@dataclass(frozen=True)
class TaylorJet:
    """Taylor coefficients ``coeffs[k] = h^(k)(x0)/k!``, k = 0..order."""

    x0: float
    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, k: int) -> float:
        return math.factorial(k) * self.coeffs[k]

    # Arithmetic.  Both operands must share x0 and order.

    def __add__(self, other):
        return TaylorJet(self.x0, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return TaylorJet(self.x0, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TaylorJet(self.x0, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        K = len(a)
        return TaylorJet(
            self.x0,
            tuple(math.fsum(a[j] * b[k - j] for j in range(k + 1)) for k in range(K)),
        )

    def __truediv__(self, other):
        a, b = self.coeffs, other.coeffs
        if b[0] == 0:
            raise SingularityError(f"division by a jet vanishing at x0={self.x0}")
        q = []
        for k in range(len(a)):
            s = a[k] - math.fsum(b[j] * q[k - j] for j in range(1, k + 1))
            q.append(s / b[0])
        return TaylorJet(self.x0, tuple(q))

    def scale(self, s: float):
        return TaylorJet(self.x0, tuple(s * a for a in self.coeffs))


def constant_jet(value: float, x0: float, order: int) -> TaylorJet:
    return TaylorJet(x0, (float(value),) + (0.0,) * order)


def variable_jet(x0: float, order: int) -> TaylorJet:
    coeffs = [float(x0)] + [0.0] * order
    if order >= 1:
        coeffs[1] = 1.0
    return TaylorJet(x0, tuple(coeffs))


# --------------------------------------------------------------------------
# Elementary functions of jets
# --------------------------------------------------------------------------

def jet_exp(f: TaylorJet) -> TaylorJet:
    a = f.coeffs
    h = [math.exp(a[0])]
    for k in range(1, len(a)):
        h.append(math.fsum(j * a[j] * h[k - j] for j in range(1, k + 1)) / k)
    return TaylorJet(f.x0, tuple(h))


def jet_ln(f: TaylorJet) -> TaylorJet:
    a = f.coeffs
    if a[0] <= 0:
        raise SingularityError(f"ln of non-positive value {a[0]} at x0={f.x0}")
    h = [math.log(a[0])]
    for k in range(1, len(a)):
        s = math.fsum(j * h[j] * a[k - j] for j in range(1, k))
        h.append((a[k] - s / k) / a[0])
    return TaylorJet(f.x0, tuple(h))


def jet_sin_cos(f: TaylorJet):
    a = f.coeffs
    s = [math.sin(a[0])]
    c = [math.cos(a[0])]
    for k in range(1, len(a)):
        s.append(math.fsum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k)
        c.append(-math.fsum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k)
    return TaylorJet(f.x0, tuple(s)), TaylorJet(f.x0, tuple(c))


def jet_sqrt(f: TaylorJet) -> TaylorJet:
    a = f.coeffs
    if a[0] <= 0:
        raise SingularityError(f"sqrt of non-positive value {a[0]} at x0={f.x0}")
    h = [math.sqrt(a[0])]
    for k in range(1, len(a)):
        s = math.fsum(h[j] * h[k - j] for j in range(1, k))
        h.append((a[k] - s) / (2.0 * h[0]))
    return TaylorJet(f.x0, tuple(h))


def jet_int_pow(f: TaylorJet, n: int) -> TaylorJet:
    if n < 0:
        return constant_jet(1.0, f.x0, f.order) / jet_int_pow(f, -n)
    result = constant_jet(1.0, f.x0, f.order)
    base = f
    # Square-and-multiply keeps exact zeros exact for polynomial bases.
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def jet_real_pow(f: TaylorJet, alpha: float) -> TaylorJet:
    """``f**alpha`` for non-integer alpha; requires f(x0) > 0."""
    a = f.coeffs
    if a[0] <= 0:
        raise SingularityError(f"non-integer power of non-positive value {a[0]} at x0={f.x0}")
    h = [a[0] ** alpha]
    for k in range(1, len(a)):
        s = math.fsum(((alpha + 1.0) * j - k) * a[j] * h[k - j] for j in range(1, k + 1))
        h.append(s / (k * a[0]))
    return TaylorJet(f.x0, tuple(h))


def compose(series, inner: TaylorJet) -> TaylorJet:
    """Jet of ``sum_k series[k] * (inner - inner(x0))**k``, by Horner's rule."""
    K = inner.order
    series = list(series[: K + 1]) + [0.0] * (K + 1 - len(series))
    shifted = TaylorJet(inner.x0, (0.0,) + inner.coeffs[1:])
    result = constant_jet(series[K], inner.x0, K)
    for k in range(K - 1, -1, -1):
        result = result * shifted + constant_jet(series[k], inner.x0, K)
    return result


def log_gamma_series(a0: float, order: int, depth: int = DEFAULT_GAMMA_DEPTH) -> list:
    """Taylor coefficients at ``a0`` of the log of the Weierstrass product

        exp(-gamma*a)/a * prod_{n<=depth} exp(a/n)/(1 + a/n).

    Summing logarithms of the factors is the same truncated product, taken
    in a form whose Taylor coefficients are closed-form sums over n.
    """
    if a0 <= 0:
        raise SingularityError(f"gamma needs a positive argument, got {a0}")
    n = np.arange(1, depth + 1, dtype=float)
    shifted = n + a0
    euler = euler_gamma_const()
    series = [
        -euler * a0 - math.log(a0) + float(np.sum(a0 / n - np.log1p(a0 / n))),
    ]
    if order >= 1:
        series.append(-euler - 1.0 / a0 + float(np.sum(1.0 / n - 1.0 / shifted)))
    for k in range(2, order + 1):
        sign = 1.0 if k % 2 == 0 else -1.0
        series.append(sign / k * (a0 ** -k + float(np.sum(shifted ** -k))))
    return series


def jet_gamma(f: TaylorJet, depth: int = DEFAULT_GAMMA_DEPTH) -> TaylorJet:
    return jet_exp(compose(log_gamma_series(f.coeffs[0], f.order, depth), f))


# --------------------------------------------------------------------------
# Expression -> jet
# --------------------------------------------------------------------------

def _integer_exponent(expr):
    """Integer value of a constant exponent, or None."""
    if isinstance(expr, Constant) and isinstance(expr.value, int):
        return expr.value
    if is_constant(expr):
        v = evaluate(expr, 0.0)
        if math.isfinite(v) and v.is_integer() and abs(v) < 2**31:
            return int(v)
    return None


class _JetBuilder:
    def __init__(self, x0, order, gamma_depth):
        self.x0 = float(x0)
        self.order = order
        self.gamma_depth = gamma_depth

    def const(self, v):
        return constant_jet(v, self.x0, self.order)

    def build(self, node):
        if isinstance(node, Variable):
            return variable_jet(self.x0, self.order)
        if isinstance(node, (Constant, NamedConstant)):
            return self.const(evaluate(node, self.x0))
        if isinstance(node, Neg):
            return -self.build(node.operand)
        if isinstance(node, Add):
            return self.build(node.left) + self.build(node.right)
        if isinstance(node, Sub):
            return self.build(node.left) - self.build(node.right)
        if isinstance(node, Mul):
            return self.build(node.left) * self.build(node.right)
        if isinstance(node, Div):
            return self.build(node.left) / self.build(node.right)
        if isinstance(node, Pow):
            return self.power(node)
        if isinstance(node, Call):
            return self.call(node.fn, self.build(node.arg))
        raise TypeError(f"not an expression node: {node!r}")

    def power(self, node):
        n = _integer_exponent(node.exponent)
        base = self.build(node.base)
        if n is not None:
            return jet_int_pow(base, n)
        if is_constant(node.exponent):
            return jet_real_pow(base, evaluate(node.exponent, self.x0))
        # b**e = exp(e * ln b)
        return jet_exp(self.build(node.exponent) * jet_ln(base))

    def call(self, fn, arg):
        if fn == "exp":
            return jet_exp(arg)
        if fn == "ln":
            return jet_ln(arg)
        if fn == "sqrt":
            return jet_sqrt(arg)
        if fn == "gamma":
            return jet_gamma(arg, self.gamma_depth)
        s, c = jet_sin_cos(arg)
        if fn == "sin":
            return s
        if fn == "cos":
            return c
        if c.coeffs[0] == 0:
            raise SingularityError(f"tan pole at x0={self.x0}")
        return s / c


def _check_finite(jet):
    if not all(math.isfinite(c) for c in jet.coeffs):
        raise SingularityError(f"non-finite Taylor coefficient at x0={jet.x0}")
    return jet


def jet_of(f, x0: float, order: int, gamma_depth: int = DEFAULT_GAMMA_DEPTH) -> TaylorJet:
    """Taylor jet of ``f`` at ``x0`` to the given order.

    Raises :class:`SingularityError` when some subexpression is not smooth
    at ``x0`` (division by zero, ln/sqrt of a non-positive value, ...).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    try:
        jet = _JetBuilder(x0, order, gamma_depth).build(as_expr(f))
    except (OverflowError, ValueError, ZeroDivisionError) as exc:
        raise SingularityError(f"cannot expand at x0={x0}: {exc}") from exc
    return _check_finite(jet)


def xf_jet(f, x0: float, order: int, gamma_depth: int = DEFAULT_GAMMA_DEPTH) -> TaylorJet:
    """Jet of ``x * f(x)`` at ``x0``, formed as jet(x) * jet(f)."""
    return _check_finite(variable_jet(x0, order) * jet_of(f, x0, order, gamma_depth))


def derivatives_of_xf(f, x0: float, p: int, gamma_depth: int = DEFAULT_GAMMA_DEPTH) -> list:
    """``[g(x0), g'(x0), ..., g^(p)(x0)]`` for ``g(x) = x * f(x)``."""
    jet = xf_jet(f, x0, p, gamma_depth)
    return [jet.derivative(u) for u in range(p + 1)]
