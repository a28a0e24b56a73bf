"""Independent oracles shared by the test modules."""

from math import comb

import mpmath

from macint.expr import (
    Add, Call, Constant, Div, Mul, NamedConstant, Neg, Pow, Sub, Variable,
)

_MP_FUNCS = {
    "sin": mpmath.sin, "cos": mpmath.cos, "tan": mpmath.tan, "exp": mpmath.exp,
    "ln": mpmath.log, "sqrt": mpmath.sqrt, "gamma": mpmath.gamma,
}
_MP_CONSTS = {"pi": lambda: mpmath.pi, "e": lambda: mpmath.e, "euler_gamma": lambda: mpmath.euler}


def mp_eval(node, x):
    """Evaluate an expression tree in mpmath at the current working precision."""
    if isinstance(node, Variable):
        return x
    if isinstance(node, Constant):
        return mpmath.mpf(node.value)
    if isinstance(node, NamedConstant):
        return _MP_CONSTS[node.name]()
    if isinstance(node, Neg):
        return -mp_eval(node.operand, x)
    if isinstance(node, Call):
        return _MP_FUNCS[node.fn](mp_eval(node.arg, x))
    if isinstance(node, Pow):
        return mp_eval(node.base, x) ** mp_eval(node.exponent, x)
    left, right = mp_eval(node.left, x), mp_eval(node.right, x)
    if isinstance(node, Add):
        return left + right
    if isinstance(node, Sub):
        return left - right
    if isinstance(node, Mul):
        return left * right
    if isinstance(node, Div):
        return left / right
    raise TypeError(node)


def central_difference(g, x, u, eps):
    """u-th central difference of g at x on the stencil x + (u/2 - k) h, with
    the step rule h = eps**(1/(u+2))."""
    if u == 0:
        return g(x)
    h = eps ** (mpmath.mpf(1) / (u + 2))
    total = sum((-1) ** k * comb(u, k) * g(x + (mpmath.mpf(u) / 2 - k) * h) for k in range(u + 1))
    return total / h ** u


def fd_derivatives_of_xf(f, x0, max_u, dps=50):
    """Finite-difference derivatives of x*f(x), in ``dps``-digit arithmetic."""
    with mpmath.workdps(dps):
        eps = mpmath.mpf(10) ** (-dps)
        x = mpmath.mpf(x0)
        g = lambda t: t * mp_eval(f, t)
        return [float(central_difference(g, x, u, eps)) for u in range(max_u + 1)]
