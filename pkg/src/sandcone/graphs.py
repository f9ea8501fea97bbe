"""Labeled trees, multigraphs, cone constructions and tree enumeration.

Vertices are dense integers ``0..n-1``.  The cone vertex added by :func:`cone`
is always the largest label, so "root = cone vertex" means ``root == n``
for a cone over an ``n``-vertex tree.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

Edge = tuple[int, int]


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Tree:
    """A simple labeled tree on vertices ``0..n-1``."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"a tree needs at least one vertex, got n={self.n}")
        edges = tuple(sorted(_pair(int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        if len(edges) != self.n - 1:
            raise ValueError(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(edges)}")
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
        if len(set(edges)) != len(edges):
            raise ValueError("parallel edges in tree")
        if not _connected(self.n, edges):
            raise ValueError("edges do not form a connected graph")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; loops ``(v, v)`` allowed.

    ``multiplicities`` is a sorted tuple of ``((u, v), count)`` items with
    ``u <= v`` and ``count >= 1``, so equality is edge-multiset equality.
    """

    n: int
    multiplicities: tuple[tuple[Edge, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        merged: Counter = Counter()
        for (u, v), c in self.multiplicities:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            if c < 0:
                raise ValueError("negative multiplicity")
            merged[_pair(u, v)] += c
        items = tuple(sorted((e, c) for e, c in merged.items() if c > 0))
        object.__setattr__(self, "multiplicities", items)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Multigraph:
        """Build from an edge list; repeated pairs become parallel edges."""
        return cls(n, tuple(Counter(_pair(u, v) for u, v in edges).items()))

    @cached_property
    def counts(self) -> dict[Edge, int]:
        return dict(self.multiplicities)

    def multiplicity(self, u: int, v: int) -> int:
        return self.counts.get(_pair(u, v), 0)

    def edge_list(self) -> list[Edge]:
        """Edges with parallel copies repeated, in sorted order."""
        return [e for e, c in self.multiplicities for _ in range(c)]

    @property
    def edge_count(self) -> int:
        return sum(c for _, c in self.multiplicities)

    @property
    def has_loops(self) -> bool:
        return any(u == v for (u, v), _ in self.multiplicities)

    def degree(self, v: int) -> int:
        """Degree with a loop counted twice."""
        d = 0
        for (a, b), c in self.multiplicities:
            if a == v:
                d += c
            if b == v:
                d += c
        return d

    @cached_property
    def neighbor_counts(self) -> tuple[dict[int, int], ...]:
        """Per vertex: neighbor -> number of edges to it (loops excluded)."""
        nbrs: list[dict[int, int]] = [{} for _ in range(self.n)]
        for (u, v), c in self.multiplicities:
            if u != v:
                nbrs[u][v] = nbrs[u].get(v, 0) + c
                nbrs[v][u] = nbrs[v].get(u, 0) + c
        return tuple(nbrs)

    def is_connected(self) -> bool:
        return _connected(self.n, (e for e, _ in self.multiplicities))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edge_list()]}


def _connected(n: int, edges: Iterable[Edge]) -> bool:
    if n <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


# ---------------------------------------------------------------------------
# Constructors


def path_tree(n: int) -> Tree:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    """Star on ``n`` vertices with center 0."""
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return Tree(n, tuple((0, i) for i in range(1, n)))


def coconut_tree(p: int, s: int) -> Tree:
    """Path ``0..p-1`` with ``s`` leaves ``p..p+s-1`` hung on vertex ``p-1``."""
    if p < 1 or s < 1:
        raise ValueError(f"coconut tree needs p, s >= 1, got p={p}, s={s}")
    edges = [(i, i + 1) for i in range(p - 1)]
    edges += [(p - 1, p + j) for j in range(s)]
    return Tree(p + s, tuple(edges))


def cone(t: Tree) -> Multigraph:
    """Join a new vertex ``t.n`` to every vertex of ``t``."""
    edges = list(t.edges) + [(v, t.n) for v in range(t.n)]
    return Multigraph.from_edges(t.n + 1, edges)


def cone_plus(t: Tree, v: int) -> Multigraph:
    """Cone over ``t`` with the cone edge at ``v`` doubled."""
    if not 0 <= v < t.n:
        raise ValueError(f"vertex {v} not in tree on {t.n} vertices")
    edges = list(t.edges) + [(u, t.n) for u in range(t.n)] + [(v, t.n)]
    return Multigraph.from_edges(t.n + 1, edges)


def delete_edge(g: Multigraph, e: Edge) -> Multigraph:
    """Remove one copy of ``e``."""
    key = _pair(*e)
    c = g.counts.get(key, 0)
    if c == 0:
        raise ValueError(f"edge {e} not in graph")
    counts = dict(g.counts)
    counts[key] = c - 1
    return Multigraph(g.n, tuple(counts.items()))


def contract_counts(n: int, counts: dict[Edge, int], u: int, v: int) -> dict[Edge, int]:
    """Contract one copy of non-loop ``{u, v}`` in a raw multiplicity map.

    The merged vertex keeps label ``min(u, v)``; labels above ``max(u, v)``
    shift down by one.  Remaining parallel copies become loops.
    """
    if u > v:
        u, v = v, u

    def relabel(w: int) -> int:
        if w == v:
            return u
        return w - 1 if w > v else w

    out: dict[Edge, int] = {}
    for (a, b), c in counts.items():
        if (a, b) == (u, v):
            c -= 1
            if c == 0:
                continue
        key = _pair(relabel(a), relabel(b))
        out[key] = out.get(key, 0) + c
    return out


def contract_edge(g: Multigraph, e: Edge) -> Multigraph:
    u, v = _pair(*e)
    if g.counts.get((u, v), 0) == 0:
        raise ValueError(f"edge {e} not in graph")
    if u == v:
        raise ValueError("cannot contract a loop")
    return Multigraph(g.n - 1, tuple(contract_counts(g.n, g.counts, u, v).items()))


def remove_loops(g: Multigraph) -> Multigraph:
    return Multigraph(g.n, tuple((e, c) for e, c in g.multiplicities if e[0] != e[1]))


def delete_vertex(t: Tree, v: int) -> Tree:
    """Delete leaf ``v`` and relabel the rest densely."""
    if t.degree(v) != 1:
        raise ValueError(f"vertex {v} is not a leaf")
    shift = lambda w: w - 1 if w > v else w  # noqa: E731
    return Tree(t.n - 1, tuple((shift(a), shift(b)) for a, b in t.edges if v not in (a, b)))


def leaves(t: Tree) -> frozenset[int]:
    if t.n < 2:
        raise ValueError("leaf set of a single-vertex tree is not defined")
    return frozenset(v for v in range(t.n) if t.degree(v) == 1)


def relabel_tree(t: Tree, perm: list[int]) -> Tree:
    """Apply ``v -> perm[v]``."""
    return Tree(t.n, tuple((perm[a], perm[b]) for a, b in t.edges))


# ---------------------------------------------------------------------------
# Isomorphism classes


def _centroids(t: Tree) -> list[int]:
    if t.n == 1:
        return [0]
    parent, order = _bfs_order(t, 0)
    size = [1] * t.n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    best: list[int] = []
    best_val = t.n
    for v in range(t.n):
        heaviest = t.n - size[v]
        for w in t.adjacency[v]:
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if heaviest < best_val:
            best, best_val = [v], heaviest
        elif heaviest == best_val:
            best.append(v)
    return best


def _bfs_order(t: Tree, root: int) -> tuple[list[int], list[int]]:
    parent = [-1] * t.n
    order = [root]
    seen = [False] * t.n
    seen[root] = True
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in t.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    return parent, order


def _rooted_codes(t: Tree, root: int) -> tuple[list[bytes], list[list[int]]]:
    parent, order = _bfs_order(t, root)
    children: list[list[int]] = [[] for _ in range(t.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    codes: list[bytes] = [b""] * t.n
    for v in reversed(order):
        children[v].sort(key=lambda w: codes[w])
        codes[v] = b"(" + b"".join(codes[w] for w in children[v]) + b")"
    return codes, children


def _canonical_rooting(t: Tree) -> tuple[int, list[bytes], list[list[int]]]:
    best = None
    for c in _centroids(t):
        codes, children = _rooted_codes(t, c)
        if best is None or codes[c] < best[1][best[0]]:
            best = (c, codes, children)
    assert best is not None
    return best


def canonical_code(t: Tree) -> bytes:
    """Isomorphism-invariant encoding: centroid-rooted sorted parenthesization."""
    root, codes, _ = _canonical_rooting(t)
    return codes[root]


def canonical_form(t: Tree) -> Tree:
    """Relabel ``t`` by preorder of its canonical rooting (root becomes 0)."""
    root, _, children = _canonical_rooting(t)
    perm = [0] * t.n
    stack = [root]
    label = 0
    while stack:
        v = stack.pop()
        perm[v] = label
        label += 1
        stack.extend(reversed(children[v]))
    return relabel_tree(t, perm)


def tree_from_code(code: bytes) -> Tree:
    """Inverse of :func:`canonical_code` up to isomorphism."""
    edges: list[Edge] = []
    stack: list[int] = []
    count = 0
    for ch in code:
        if ch == ord("("):
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
            count += 1
        elif ch == ord(")"):
            stack.pop()
        else:
            raise ValueError(f"bad tree code byte {ch!r}")
    return Tree(count, tuple(edges))


DEFAULT_MAX_N = 12


def enumerate_trees(n: int, max_n: int = DEFAULT_MAX_N) -> list[Tree]:
    """One tree per isomorphism class on ``n`` vertices, sorted by code.

    Grows every class on ``k`` vertices by a pendant leaf at each vertex
    and deduplicates by canonical code.
    """
    if not 1 <= n <= max_n:
        raise ValueError(f"n={n} outside 1..{max_n}")
    level = {canonical_code(Tree(1)): Tree(1)}
    for k in range(1, n):
        nxt: dict[bytes, Tree] = {}
        for t in level.values():
            for v in range(k):
                grown = Tree(k + 1, t.edges + ((v, k),))
                code = canonical_code(grown)
                if code not in nxt:
                    nxt[code] = canonical_form(grown)
        level = nxt
    return [level[c] for c in sorted(level)]


def iter_tree_classes(n_values: Iterable[int], max_n: int = DEFAULT_MAX_N) -> Iterator[Tree]:
    for n in n_values:
        yield from enumerate_trees(n, max_n)


# ---------------------------------------------------------------------------
# Generalized tree shift


def tree_path(t: Tree, x: int, y: int) -> list[int]:
    """Vertices on the unique path from ``x`` to ``y`` inclusive."""
    parent, _ = _bfs_order(t, x)
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def generalized_tree_shift(t: Tree, x: int, y: int) -> Tree | None:
    """Shift the branches at ``y`` (away from ``x``) over to ``x``.

    Returns ``None`` when some interior vertex of the x-y path has degree
    other than 2.  A valid shift may return a tree isomorphic to ``t``;
    callers compare canonical codes to tell.
    """
    if not (0 <= x < t.n and 0 <= y < t.n):
        raise ValueError(f"vertices {(x, y)} out of range for n={t.n}")
    if x == y:
        raise ValueError("shift needs distinct vertices")
    path = tree_path(t, x, y)
    if any(t.degree(w) != 2 for w in path[1:-1]):
        return None
    x_prime = path[-2]
    moved = [w for w in t.adjacency[y] if w != x_prime]
    edges = [e for e in t.edges if not (y in e and (e[0] in moved or e[1] in moved))]
    edges += [(x, w) for w in moved]
    return Tree(t.n, tuple(edges))


# ---------------------------------------------------------------------------
# JSON


def graph_from_json(data: dict) -> Multigraph:
    return Multigraph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])


def tree_from_json(data: dict) -> Tree:
    return Tree(int(data["n"]), tuple(tuple(e) for e in data["edges"]))


def load_graph(path: str | Path) -> Multigraph:
    return graph_from_json(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# Family strings


@dataclass(frozen=True)
class TreeFamily:
    """A named tree: ``path``, ``star``, ``coconut`` or ``explicit``."""

    kind: str
    params: tuple[int, ...] = ()
    tree: Tree | None = field(default=None, compare=False)

    def build(self) -> Tree:
        if self.kind == "path":
            return path_tree(*self.params)
        if self.kind == "star":
            return star_tree(*self.params)
        if self.kind == "coconut":
            return coconut_tree(*self.params)
        assert self.tree is not None
        return self.tree

    def __str__(self) -> str:
        if self.kind == "explicit":
            return "explicit"
        return f"{self.kind}:{','.join(map(str, self.params))}"


def parse_family(text: str) -> TreeFamily:
    """Parse ``path:N``, ``star:N``, ``coconut:P,S`` or ``file:PATH``."""
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"malformed family {text!r}; expected KIND:ARGS")
    if kind == "file":
        path = Path(arg)
        if not path.is_file():
            raise FileNotFoundError(f"no such file: {arg}")
        return TreeFamily("explicit", (), tree_from_json(json.loads(path.read_text())))
    try:
        params = tuple(int(a) for a in arg.split(","))
    except ValueError:
        raise ValueError(f"malformed family {text!r}; parameters must be integers") from None
    arity = {"path": 1, "star": 1, "coconut": 2}
    if kind not in arity:
        raise ValueError(f"unknown family kind {kind!r}")
    if len(params) != arity[kind]:
        raise ValueError(f"{kind} takes {arity[kind]} parameter(s), got {len(params)}")
    family = TreeFamily(kind, params)
    family.build()  # validates parameter bounds
    return family
