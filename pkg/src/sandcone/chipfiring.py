"""Chip-firing on rooted multigraphs.

A configuration is a tuple of chip counts over the non-root vertices in
increasing label order (see :meth:`RootedGraph.position`).
"""

from __future__ import annotations

import math
from itertools import product
from typing import Sequence

from .polys import UniPoly
from .sandpile import RootedGraph, reduced_laplacian

ChipConfig = tuple[int, ...]

DEFAULT_ENUMERATION_BOUND = 10**7


class NotReadyError(ValueError):
    pass


class UnstableConfigError(ValueError):
    pass


class _Board:
    """Reduced-Laplacian columns of a rooted graph, cached for firing."""

    def __init__(self, rg: RootedGraph):
        lbar = reduced_laplacian(rg).to_lists()
        k = len(lbar)
        self.size = k
        self.degree = [lbar[i][i] for i in range(k)]
        # (neighbor position, multiplicity) pairs for each position
        self.out = [[(j, -lbar[j][i]) for j in range(k) if j != i and lbar[j][i]] for i in range(k)]
        root_nbrs = rg.graph.neighbor_counts[rg.root]
        self.root_vector = [0] * k
        for v, c in root_nbrs.items():
            self.root_vector[rg.position(v)] += c

    def check(self, c: Sequence[int]) -> None:
        if len(c) != self.size:
            raise ValueError(f"configuration has {len(c)} entries, expected {self.size}")
        if any(x < 0 for x in c):
            raise ValueError("chip counts must be nonnegative")

    def is_stable(self, c: Sequence[int]) -> bool:
        return all(x < d for x, d in zip(c, self.degree))

    def stabilize(self, c: list[int]) -> list[int]:
        deg, out = self.degree, self.out
        while True:
            v = next((i for i, (x, d) in enumerate(zip(c, deg)) if x >= d), None)
            if v is None:
                return c
            # k consecutive firings of v, all legal
            k = c[v] // deg[v]
            c[v] -= k * deg[v]
            for w, mult in out[v]:
                c[w] += k * mult


def fire(rg: RootedGraph, c: ChipConfig, v: int) -> ChipConfig:
    """Fire non-root vertex ``v`` once."""
    board = _Board(rg)
    board.check(c)
    i = rg.position(v)
    if c[i] < board.degree[i]:
        raise NotReadyError(f"vertex {v} holds {c[i]} chips, needs {board.degree[i]}")
    out = list(c)
    out[i] -= board.degree[i]
    for w, mult in board.out[i]:
        out[w] += mult
    return tuple(out)


def stabilize(rg: RootedGraph, c: ChipConfig) -> ChipConfig:
    """Fire ready vertices (lowest position first) until none is ready."""
    board = _Board(rg)
    board.check(c)
    return tuple(board.stabilize(list(c)))


def is_stable(rg: RootedGraph, c: ChipConfig) -> bool:
    board = _Board(rg)
    board.check(c)
    return board.is_stable(c)


def _is_recurrent(board: _Board, c: Sequence[int]) -> bool:
    fired = [x + r for x, r in zip(c, board.root_vector)]
    return board.stabilize(fired) == list(c)


def is_recurrent(rg: RootedGraph, c: ChipConfig) -> bool:
    """Fire the root, stabilize, and compare with ``c``."""
    board = _Board(rg)
    board.check(c)
    if not board.is_stable(c):
        raise UnstableConfigError("recurrence is only defined for stable configurations")
    return _is_recurrent(board, c)


def enumerate_recurrents(rg: RootedGraph, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[ChipConfig]:
    """All recurrent configurations, in mixed-radix order of the stable ones."""
    board = _Board(rg)
    space = math.prod(board.degree)
    if space > bound:
        raise ValueError(f"{space} stable configurations exceeds bound {bound}")
    return [c for c in product(*(range(d) for d in board.degree)) if _is_recurrent(board, c)]


def weight_enumerator(rg: RootedGraph, bound: int = DEFAULT_ENUMERATION_BOUND) -> UniPoly:
    """Sum of ``y^(total chips)`` over recurrent configurations."""
    counts: dict[int, int] = {}
    for c in enumerate_recurrents(rg, bound):
        w = sum(c)
        counts[w] = counts.get(w, 0) + 1
    if not counts:
        return UniPoly()
    return UniPoly(tuple(counts.get(k, 0) for k in range(max(counts) + 1)))
