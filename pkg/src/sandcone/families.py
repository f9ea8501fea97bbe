"""Closed forms for cones over paths, stars and coconut trees."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .graphs import coconut_tree
from .linalg import AbelianGroup
from .polys import UniPoly
from .sandpile import RootedGraph, cone_group, reduced_laplacian

PHI = (1 + math.sqrt(5)) / 2


@lru_cache(maxsize=None)
def _fib_pair(n: int) -> tuple[int, int]:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a, b


def fib(n: int) -> int:
    if n < 0:
        raise ValueError("fib needs n >= 0")
    return _fib_pair(n)[0]


def fib_poly(n: int) -> UniPoly:
    """Fibonacci-like polynomial: even steps add, odd steps add ``y`` times."""
    if n < 0:
        raise ValueError("fib_poly needs n >= 0")
    prev, cur = UniPoly(), UniPoly((1,))
    if n == 0:
        return prev
    y = UniPoly((0, 1))
    for k in range(2, n + 1):
        nxt = cur + prev if k % 2 == 0 else cur + y * prev
        prev, cur = cur, nxt
    return cur


def star_poly(n: int) -> UniPoly:
    if n < 1:
        raise ValueError("star_poly needs n >= 1")
    p = UniPoly((1,))
    for k in range(2, n + 1):
        p = UniPoly((1, 1)) * p + UniPoly((2 ** (k - 2),))
    return p


def m_ps(p: int, s: int) -> int:
    if p < 1 or s < 1:
        raise ValueError(f"m_ps needs p, s >= 1, got {(p, s)}")
    first = (s - 2) * fib(2 * p - 1) + 2 * fib(2 * p + 1)
    second = s * fib(2 * p - 1) + 2 * fib(2 * p)
    assert first == second, (p, s, first, second)
    return first


@dataclass(frozen=True)
class FamilyPrediction:
    tau: int
    group: AbelianGroup
    t1y: UniPoly | None = None

    def __post_init__(self) -> None:
        if self.group.order != self.tau:
            raise ValueError(f"group order {self.group.order} != tau {self.tau}")


def coconut_prediction(p: int, s: int) -> FamilyPrediction:
    """Spanning-tree count and sandpile group of the cone over ``CT(p, s)``.

    ``(p, s) = (1, 1)`` (a single edge) is computed directly.
    """
    if p < 1 or s < 1:
        raise ValueError(f"coconut parameters must be >= 1, got {(p, s)}")
    m = m_ps(p, s)
    tau = 2 ** (s - 1) * m
    if (p, s) == (1, 1):
        return FamilyPrediction(tau, cone_group(coconut_tree(1, 1)))
    if s == 1 or p % 3 == 2:
        cyclic = [2] * (s - 1) + [m]
    else:
        cyclic = [2] * (s - 2) + [2 * m]
    return FamilyPrediction(tau, AbelianGroup.from_cyclic(cyclic))


def fan_prediction(n: int) -> FamilyPrediction:
    """Cone over the path on ``n`` vertices."""
    if n < 1:
        raise ValueError("fan needs n >= 1")
    tau = fib(2 * n)
    return FamilyPrediction(tau, AbelianGroup.from_cyclic([tau]), fib_poly(2 * n))


def thagomizer_prediction(n: int) -> FamilyPrediction:
    """Cone over the star on ``n`` vertices."""
    if n < 2:
        raise ValueError("thagomizer needs n >= 2")
    tau = 2 ** (n - 2) * (n + 1)
    if n == 2:
        group = AbelianGroup.from_cyclic([3])
    else:
        group = AbelianGroup.from_cyclic([2] * (n - 3) + [2 * (n + 1)])
    return FamilyPrediction(tau, group, star_poly(n))


def doubled_cone_coconut_tau(p: int, s: int) -> int:
    """Spanning trees of the coconut cone with the cone edge at the path end doubled."""
    if p < 1 or s < 1:
        raise ValueError(f"coconut parameters must be >= 1, got {(p, s)}")
    return 2 ** (s - 1) * (2 * fib(2 * p + 2) + (s - 2) * fib(2 * p))


def trunk_relations(p: int, s: int) -> list[list[int]]:
    """Vectors ``F(2i+1) e_{i} - F(2i-1) e_{i+1}`` along the coconut trunk.

    Trunk vertex ``i`` (1-based) is label ``i-1`` in :func:`coconut_tree`;
    each vector should vanish in the sandpile group of the cone.
    """
    n = p + s
    out = []
    for i in range(1, p):
        v = [0] * n
        v[i - 1] = fib(2 * i + 1)
        v[i] = -fib(2 * i - 1)
        out.append(v)
    return out


def coconut_reduced_laplacian(p: int, s: int):
    return reduced_laplacian(RootedGraph.cone_over(coconut_tree(p, s)))


def alpha_for(beta: float) -> float:
    """Exponent with ``beta / 2 = (phi^2 / 2) ** alpha``."""
    lo, hi = 2.0, PHI**2
    if not (lo - 1e-12 <= beta <= hi + 1e-12):
        raise ValueError(f"beta={beta} outside [2, phi^2]")
    return math.log(beta / 2) / math.log(hi / 2)


def asymptotic_ratio(beta: float, n: int) -> float:
    """``tau(Cone(CT(p, n-p)))^(1/n)`` with ``p = floor(alpha n)`` clamped to ``[1, n-1]``."""
    if n < 2:
        raise ValueError("asymptotic_ratio needs n >= 2")
    alpha = alpha_for(beta)
    p = min(max(math.floor(alpha * n), 1), n - 1)
    s = n - p
    tau = 2 ** (s - 1) * m_ps(p, s)
    return math.exp(math.log(tau) / n)
