import random

import pytest

from sandcone.graphs import Multigraph, Tree

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def prufer_tree(seq: list[int], n: int) -> Tree:
    """Labeled tree from a Prufer sequence (``n >= 2``)."""
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    edges = []
    for a in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, a))
        degree[leaf] -= 1
        degree[a] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Tree(n, tuple(edges))


def random_tree(rng: random.Random, n: int) -> Tree:
    if n == 1:
        return Tree(1)
    if n == 2:
        return Tree(2, ((0, 1),))
    return prufer_tree([rng.randrange(n) for _ in range(n - 2)], n)


def random_multigraph(
    rng: random.Random, max_n: int = 6, max_edges: int = 10, loops: bool = True
) -> Multigraph:
    """Connected multigraph: random spanning tree plus random extra edges."""
    n = rng.randint(2, max_n)
    edges = list(random_tree(rng, n).edges)
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n) if loops else rng.choice([w for w in range(n) if w != u])
        edges.append((u, v))
    return Multigraph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240519)


@pytest.fixture
def acceptance():
    def record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_RESULTS.append((name, ok, detail))
        print(f"{'PASS' if ok else 'FAIL'} {name} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
