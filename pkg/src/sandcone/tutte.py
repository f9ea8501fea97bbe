"""Tutte polynomials of multigraphs.

Three independent routes:

* :func:`tutte` -- deletion-contraction with loop stripping and
  block (cut-vertex) factorization, branching on a heaviest parallel class;
* :func:`tutte_1y_direct` -- a separate ``x = 1`` recursion over ``Z[y]``;
* :func:`tutte_by_activities` -- spanning-tree activity generating function.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Sequence

from .graphs import Edge, Multigraph, contract_counts
from .polys import BI_ONE, BI_X, BI_Y, BiPoly, UniPoly

Counts = dict[Edge, int]
_Key = tuple[int, tuple[tuple[Edge, int], ...]]


def _key(n: int, counts: Counts) -> _Key:
    return n, tuple(sorted(counts.items()))


def _delete_one(counts: Counts, e: Edge) -> Counts:
    out = dict(counts)
    if out[e] == 1:
        del out[e]
    else:
        out[e] -= 1
    return out


def _simple_adjacency(n: int, counts: Counts) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in counts:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _biconnected_edge_sets(n: int, adj: list[set[int]]) -> list[list[Edge]]:
    """Hopcroft-Tarjan blocks of a simple graph, as lists of edges."""
    disc = [-1] * n
    low = [0] * n
    clock = 0
    estack: list[Edge] = []
    blocks: list[list[Edge]] = []
    for s in range(n):
        if disc[s] != -1 or not adj[s]:
            continue
        disc[s] = low[s] = clock
        clock += 1
        stack = [(s, -1, iter(sorted(adj[s])))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    estack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(sorted(adj[w]))))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    block = []
                    while True:
                        e = estack.pop()
                        block.append(e)
                        if e == (u, v):
                            break
                    blocks.append(block)
    return blocks


def _blocks(n: int, counts: Counts) -> list[tuple[int, Counts]]:
    """Split a loopless multigraph into blocks, each relabeled densely."""
    out = []
    for block in _biconnected_edge_sets(n, _simple_adjacency(n, counts)):
        verts = sorted({w for e in block for w in e})
        index = {v: i for i, v in enumerate(verts)}
        sub: Counts = {}
        for a, b in block:
            u, v = (a, b) if a < b else (b, a)
            sub[(index[u], index[v])] = counts[(u, v)]
        out.append((len(verts), sub))
    return out


# ---------------------------------------------------------------------------
# Main route


class _Factorizing:
    def __init__(self) -> None:
        self.memo: dict[_Key, BiPoly] = {}

    def graph(self, n: int, counts: Counts) -> BiPoly:
        key = _key(n, counts)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        loops = sum(c for (u, v), c in counts.items() if u == v)
        plain = {e: c for e, c in counts.items() if e[0] != e[1]}
        result = BI_ONE
        for k, sub in _blocks(n, plain):
            result = result * self.block(k, sub)
        if loops:
            result = result.times_monomial(0, loops)
        self.memo[key] = result
        return result

    def block(self, k: int, counts: Counts) -> BiPoly:
        if k == 2 and sum(counts.values()) == 1:
            return BI_X
        key = _key(k, counts)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        e = max(counts, key=lambda f: (counts[f], (-f[0], -f[1])))
        result = self.graph(k, _delete_one(counts, e)) + self.graph(k - 1, contract_counts(k, counts, *e))
        self.memo[key] = result
        return result


def _connected_without(n: int, counts: Counts, e: Edge) -> bool:
    """Are the endpoints of ``e`` still joined after deleting one copy of it?"""
    u, v = e
    if counts[e] > 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for (a, b) in counts:
        if a != b and (a, b) != e:
            adj[a].append(b)
            adj[b].append(a)
    seen = {u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            return True
        for z in adj[w]:
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return False


class _Plain:
    """Textbook recursion on the smallest edge, no factorization."""

    def __init__(self) -> None:
        self.memo: dict[_Key, BiPoly] = {}

    def graph(self, n: int, counts: Counts) -> BiPoly:
        if not counts:
            return BI_ONE
        key = _key(n, counts)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        e = min(counts)
        if e[0] == e[1]:
            result = BI_Y * self.graph(n, _delete_one(counts, e))
        elif not _connected_without(n, counts, e):
            result = BI_X * self.graph(n - 1, contract_counts(n, counts, *e))
        else:
            result = self.graph(n, _delete_one(counts, e)) + self.graph(n - 1, contract_counts(n, counts, *e))
        self.memo[key] = result
        return result


def tutte(g: Multigraph, strategy: str = "factor") -> BiPoly:
    """Tutte polynomial ``T_g(x, y)``.

    ``strategy="factor"`` (default) strips loops, factors over blocks and
    branches on a heaviest parallel class; ``"plain"`` always branches on the
    smallest edge.  Disconnected inputs give the product over components.
    """
    counts = dict(g.multiplicities)
    if strategy == "factor":
        return _Factorizing().graph(g.n, counts)
    if strategy == "plain":
        return _Plain().graph(g.n, counts)
    raise ValueError(f"unknown strategy {strategy!r}")


def tutte_1y(g: Multigraph) -> UniPoly:
    """``T_g(1, y)`` by specializing the bivariate polynomial."""
    return tutte(g).at_x1()


# ---------------------------------------------------------------------------
# x = 1 route


def _bridges(n: int, counts: Counts) -> list[Edge]:
    return [e for e, c in sorted(counts.items()) if e[0] != e[1] and c == 1 and not _connected_without(n, counts, e)]


def tutte_1y_direct(g: Multigraph) -> UniPoly:
    """``T_g(1, y)`` by its own recursion in ``Z[y]``.

    At ``x = 1`` a bridge contributes a factor 1, so bridges are contracted
    away, loops contribute ``y``, and the smallest remaining edge branches.
    """
    memo: dict[_Key, UniPoly] = {}

    def rec(n: int, counts: Counts) -> UniPoly:
        key = _key(n, counts)
        if key in memo:
            return memo[key]
        start = key
        loops = 0
        while True:
            for e in [e for e in counts if e[0] == e[1]]:
                loops += counts.pop(e)
            bridges = _bridges(n, counts)
            if not bridges:
                break
            counts = contract_counts(n, counts, *bridges[0])
            n -= 1
        if counts:
            e = min(counts)
            body = rec(n, _delete_one(counts, e)) + rec(n - 1, contract_counts(n, counts, *e))
        else:
            body = UniPoly((1,))
        result = body.shift(loops)
        memo[start] = result
        return result

    return rec(g.n, dict(g.multiplicities))


# ---------------------------------------------------------------------------
# Activity route

DEFAULT_ACTIVITY_EDGE_BOUND = 18


def spanning_trees(g: Multigraph) -> list[tuple[int, ...]]:
    """Spanning trees as sorted index tuples into ``g.edge_list()``."""
    edges = g.edge_list()
    if g.n == 0:
        return [()]
    out = []
    for combo in combinations(range(len(edges)), g.n - 1):
        parent = list(range(g.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for i in combo:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            out.append(combo)
    return out


def _tree_path_edges(n: int, edges: list[Edge], tree: Sequence[int], u: int, v: int) -> list[int]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in tree:
        a, b = edges[i]
        adj[a].append((b, i))
        adj[b].append((a, i))
    via: dict[int, tuple[int, int] | None] = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for z, i in adj[w]:
            if z not in via:
                via[z] = (w, i)
                queue.append(z)
    path = []
    w = v
    while via[w] is not None:
        prev, i = via[w]  # type: ignore[misc]
        path.append(i)
        w = prev
    return path


def tutte_by_activities(
    g: Multigraph,
    edge_order: Sequence[int] | None = None,
    max_edges: int = DEFAULT_ACTIVITY_EDGE_BOUND,
) -> BiPoly:
    """Sum over spanning trees of ``x^(internal activity) y^(external activity)``.

    ``edge_order`` lists indices into ``g.edge_list()`` from smallest to
    largest; default is the identity order.
    """
    edges = g.edge_list()
    m = len(edges)
    if m > max_edges:
        raise ValueError(f"{m} edges exceeds activity bound {max_edges}")
    if not g.is_connected():
        raise ValueError("activity expansion needs a connected graph")
    order = list(range(m)) if edge_order is None else list(edge_order)
    if sorted(order) != list(range(m)):
        raise ValueError("edge_order must be a permutation of edge indices")
    rank = [0] * m
    for r, i in enumerate(order):
        rank[i] = r

    acc: dict[tuple[int, int], int] = {}
    for tree in spanning_trees(g):
        in_tree = set(tree)
        fundamental = {
            f: _tree_path_edges(g.n, edges, tree, *edges[f]) for f in range(m) if f not in in_tree
        }
        # external: f precedes every edge of its fundamental cycle
        ext = sum(1 for f, cyc in fundamental.items() if all(rank[f] < rank[e] for e in cyc))
        # internal: e precedes every edge whose fundamental cycle passes through it
        inte = sum(
            1
            for e in tree
            if all(rank[e] < rank[f] for f, cyc in fundamental.items() if e in cyc)
        )
        acc[(inte, ext)] = acc.get((inte, ext), 0) + 1
    return BiPoly.from_dict(acc)


# ---------------------------------------------------------------------------
# Cut-vertex factorization


def cut_vertex_factor(g: Multigraph) -> list[Multigraph]:
    """Blocks of ``g``: biconnected pieces, bridges, and one block per looped vertex."""
    if not g.is_connected():
        raise ValueError("cut-vertex factorization needs a connected graph")
    counts = dict(g.multiplicities)
    plain = {e: c for e, c in counts.items() if e[0] != e[1]}
    out = [Multigraph(k, tuple(sub.items())) for k, sub in _blocks(g.n, plain)]
    for (u, v), c in sorted(counts.items()):
        if u == v:
            out.append(Multigraph(1, (((0, 0), c),)))
    return out
