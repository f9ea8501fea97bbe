"""Laplacians, sandpile groups and spanning-tree counts."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Multigraph, Tree, cone, leaves
from .linalg import AbelianGroup, IntMatrix, cokernel, determinant, is_full_image


class LoopError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class RootedGraph:
    """A connected multigraph with a chosen sink vertex."""

    graph: Multigraph
    root: int

    def __post_init__(self) -> None:
        if not 0 <= self.root < self.graph.n:
            raise ValueError(f"root {self.root} out of range for n={self.graph.n}")
        if not self.graph.is_connected():
            raise DisconnectedGraphError("rooted graph must be connected")

    @classmethod
    def cone_over(cls, t: Tree) -> RootedGraph:
        """``Cone(t)`` rooted at its cone vertex."""
        return cls(cone(t), t.n)

    @property
    def nonroot(self) -> list[int]:
        return [v for v in range(self.graph.n) if v != self.root]

    def position(self, v: int) -> int:
        """Index of non-root vertex ``v`` in configuration vectors."""
        if v == self.root:
            raise ValueError("the root has no configuration slot")
        return v if v < self.root else v - 1


def laplacian(g: Multigraph) -> IntMatrix:
    if g.has_loops:
        raise LoopError("Laplacian is defined for loopless multigraphs")
    rows = [[0] * g.n for _ in range(g.n)]
    for (u, v), c in g.multiplicities:
        rows[u][u] += c
        rows[v][v] += c
        rows[u][v] -= c
        rows[v][u] -= c
    return IntMatrix.from_rows(rows) if g.n else IntMatrix(0, 0, ())


def reduced_laplacian(rg: RootedGraph) -> IntMatrix:
    return laplacian(rg.graph).delete(rg.root)


def sandpile_group(rg: RootedGraph) -> AbelianGroup:
    return cokernel(reduced_laplacian(rg))


def cone_group(t: Tree) -> AbelianGroup:
    return sandpile_group(RootedGraph.cone_over(t))


def spanning_tree_count(g: Multigraph) -> int:
    """Matrix-tree count; evaluated at two roots and checked to agree."""
    if not g.is_connected():
        raise DisconnectedGraphError("spanning trees of a disconnected graph")
    lap = laplacian(g)
    if g.n <= 1:
        return 1
    first = abs(determinant(lap.delete(0)))
    last = abs(determinant(lap.delete(g.n - 1)))
    if first != last:
        raise AssertionError(f"reduced Laplacian determinants disagree: {first} vs {last}")
    return first


def mu(group: AbelianGroup) -> int:
    """Minimal number of generators."""
    return group.rank


def verify_leaf_generators(t: Tree, v1: int) -> bool:
    """Do the leaves other than ``v1`` generate ``K(Cone(t))`` (root = cone vertex)?"""
    leaf_set = leaves(t)
    if v1 not in leaf_set:
        raise ValueError(f"vertex {v1} is not a leaf")
    lbar = reduced_laplacian(RootedGraph.cone_over(t))
    basis = [[1 if i == v else 0 for i in range(t.n)] for v in sorted(leaf_set) if v != v1]
    return is_full_image(lbar, basis)
