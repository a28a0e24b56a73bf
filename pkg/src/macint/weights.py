"""Inner series of the integration formula, in factorial-free form.

For derivative order u the inner series is

    S_u(x) = sum_{n>=0} (1-x)^(n+u+1) / ((n+1)(n+2)...(n+u+1)).

Everything here works with the rescaled series T_u = u! * S_u, whose
coefficients ``w(u, n) = u! n! / (n+u+1)!`` all lie in (0, 1].
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class WeightTable:
    """``w[u, n] = u! n! / (n+u+1)!`` for u <= max_u, n <= max_n."""

    max_u: int
    max_n: int
    w: np.ndarray = field(repr=False, compare=False)

    def __getitem__(self, index):
        return float(self.w[index])


@functools.lru_cache(maxsize=64)
def build_weights(max_u: int, max_n: int) -> WeightTable:
    if max_u < 0 or max_n < 0:
        raise ValueError("max_u and max_n must be non-negative")
    n = np.arange(max_n + 1, dtype=float)
    w = np.empty((max_u + 1, max_n + 1))
    w[0] = 1.0 / (n + 1.0)
    for u in range(1, max_u + 1):
        w[u] = w[u - 1] * (u / (n + u + 1.0))
    w.setflags(write=False)
    return WeightTable(max_u, max_n, w)


def _check_domain(x):
    if not 0.0 < x < 2.0:
        raise DomainError(f"x must lie in the open interval (0, 2), got {x}")


def inner_series_scaled(u: int, x: float, q: int, table: WeightTable | None = None) -> float:
    """T_u(x; q) = sum_{n=0}^{q} w(u,n) (1-x)^(n+u+1), Horner in t = 1-x."""
    _check_domain(x)
    if table is None:
        table = build_weights(u, q)
    if u > table.max_u or q > table.max_n:
        raise ValueError(f"weight table too small for u={u}, q={q}")
    t = 1.0 - x
    row = table.w[u]
    acc = 0.0
    for n in range(q, -1, -1):
        acc = acc * t + float(row[n])
    lead = 1.0
    for _ in range(u + 1):
        lead *= t
    return lead * acc


def weight(u: int, n: int) -> float:
    """Single weight w(u, n) by the same recurrence, without a table."""
    w = 1.0 / (n + 1.0)
    for k in range(1, u + 1):
        w *= k / (n + k + 1.0)
    return w


def tail_bound(u: int, x: float, q: int) -> float:
    """Upper bound on ``|T_u(x) - T_u(x; q)|``: the dropped terms are at most
    a geometric series in |1-x| starting from w(u, q+1) |1-x|^(q+u+2)."""
    _check_domain(x)
    r = abs(1.0 - x)
    if r == 0.0:
        return 0.0
    return r ** (q + u + 2) * weight(u, q + 1) / (1.0 - r)


def unscaled_inner_series(u: int, x: float, q: int) -> float:
    """S_u(x; q) = T_u(x; q) / u!, the series exactly as it appears in the formula."""
    value = inner_series_scaled(u, x, q)
    for k in range(2, u + 1):
        value /= k
    return value
