import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sandcone.families import fib_poly, star_poly
from sandcone.graphs import (
    Multigraph,
    coconut_tree,
    cone,
    cone_plus,
    contract_edge,
    delete_edge,
    delete_vertex,
    leaves,
    path_tree,
    star_tree,
)
from sandcone.polys import BI_ONE, BI_X, BI_Y, BiPoly, UniPoly, product
from sandcone.sandpile import spanning_tree_count
from sandcone.tutte import (
    cut_vertex_factor,
    spanning_trees,
    tutte,
    tutte_1y,
    tutte_1y_direct,
    tutte_by_activities,
)

from .conftest import random_multigraph, random_tree

K3 = cone(path_tree(2))
K3_POLY = BiPoly.from_dict({(2, 0): 1, (1, 0): 1, (0, 1): 1})


# --- polynomial arithmetic -------------------------------------------------


def test_unipoly_basics():
    p = UniPoly((1, 2, 0, 0))
    assert p.coeffs == (1, 2) and p.degree == 1
    assert UniPoly().degree == -1 and UniPoly() == UniPoly((0,))
    assert (p * p).coeffs == (1, 4, 4)
    assert (p - p) == UniPoly()
    assert p.shift(2).coeffs == (0, 0, 1, 2)
    assert p(3) == 7
    assert str(UniPoly((64, 112, 104))) == "64 + 112y + 104y^2"
    assert UniPoly((1, 1)).coefficientwise_le(UniPoly((1, 2, 1)))
    assert not UniPoly((2,)).coefficientwise_le(UniPoly((1, 5)))


@given(
    st.lists(st.integers(-20, 20), max_size=6),
    st.lists(st.integers(-20, 20), max_size=6),
    st.integers(-4, 4),
)
def test_unipoly_ring_homomorphism(a, b, y):
    p, q = UniPoly(tuple(a)), UniPoly(tuple(b))
    assert (p + q)(y) == p(y) + q(y)
    assert (p * q)(y) == p(y) * q(y)
    assert (p - q)(y) == p(y) - q(y)


@given(
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-9, 9), max_size=6),
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-9, 9), max_size=6),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
def test_bipoly_ring_homomorphism(a, b, x, y):
    p, q = BiPoly.from_dict(a), BiPoly.from_dict(b)
    assert (p + q)(x, y) == p(x, y) + q(x, y)
    assert (p * q)(x, y) == p(x, y) * q(x, y)
    assert p.at_x1()(y) == p(1, y)
    assert all(c != 0 for _, c in p.terms)


def test_bipoly_helpers():
    assert BI_X(5, 7) == 5 and BI_Y(5, 7) == 7 and BI_ONE(5, 7) == 1
    assert product([BI_X, BI_X, BI_Y]) == BiPoly.monomial(2, 1)
    assert K3_POLY.triples() == [(0, 1, 1), (1, 0, 1), (2, 0, 1)]
    assert K3_POLY.times_monomial(1, 0) == K3_POLY * BI_X


# --- Tutte -----------------------------------------------------------------


def test_tutte_examples():
    assert tutte(Multigraph.from_edges(2, [(0, 1)])) == BI_X
    assert tutte(Multigraph.from_edges(1, [(0, 0)])) == BI_Y
    assert tutte(Multigraph(1)) == BI_ONE
    assert tutte(K3) == K3_POLY
    assert tutte(K3, strategy="plain") == K3_POLY
    with pytest.raises(ValueError):
        tutte(K3, strategy="magic")


def test_tutte_1y_examples():
    assert tutte_1y(cone(path_tree(7))) == UniPoly((64, 112, 104, 63, 26, 7, 1))
    assert tutte_1y(cone(star_tree(7))) == UniPoly((64, 63, 57, 42, 22, 7, 1))


def test_tutte_disconnected_is_product():
    g = Multigraph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
    assert tutte(g) == K3_POLY * BI_X


def test_activity_examples():
    for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]]:
        assert tutte_by_activities(K3, order) == K3_POLY
    doubled = Multigraph.from_edges(3, [(0, 1), (0, 1), (1, 2), (0, 2)])
    assert tutte_by_activities(doubled) == tutte(doubled)
    with pytest.raises(ValueError):
        tutte_by_activities(K3, [0, 0, 1])
    with pytest.raises(ValueError):
        tutte_by_activities(cone(path_tree(12)))


def test_spanning_trees_counts():
    assert len(spanning_trees(K3)) == 3
    assert len(spanning_trees(cone(path_tree(4)))) == 21


def test_strategies_agree_on_random_multigraphs(rng):
    for _ in range(60):
        g = random_multigraph(rng, max_n=6, max_edges=10)
        poly = tutte(g)
        assert poly == tutte(g, strategy="plain")
        assert poly.is_nonnegative()
        assert tutte_1y_direct(g) == poly.at_x1()
        loopless = Multigraph(g.n, tuple((e, c) for e, c in g.multiplicities if e[0] != e[1]))
        assert poly(1, 1) == spanning_tree_count(loopless)


def test_activities_agree_for_several_orders(rng):
    for _ in range(30):
        g = random_multigraph(rng, max_n=6, max_edges=10)
        poly = tutte(g)
        m = g.edge_count
        for _ in range(3):
            order = list(range(m))
            rng.shuffle(order)
            assert tutte_by_activities(g, order) == poly


def test_cut_vertex_examples():
    bowtie = Multigraph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    blocks = cut_vertex_factor(bowtie)
    assert sorted(b.edge_count for b in blocks) == [3, 3]
    assert tutte(bowtie) == K3_POLY * K3_POLY
    lollipop = Multigraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert sorted(b.edge_count for b in cut_vertex_factor(lollipop)) == [1, 3]
    looped = Multigraph.from_edges(2, [(0, 1), (1, 1), (1, 1)])
    assert product(tutte(b) for b in cut_vertex_factor(looped)) == tutte(looped)


def test_cut_vertex_product_on_random_multigraphs(rng):
    for _ in range(40):
        g = random_multigraph(rng, max_n=6, max_edges=10)
        assert product(tutte(b) for b in cut_vertex_factor(g)) == tutte(g)


def test_deleted_cone_edge_leaves_pendant_bridge():
    t = coconut_tree(3, 2)
    for leaf in leaves(t):
        g = delete_edge(cone(t), (leaf, t.n))
        rest = delete_vertex(t, leaf)
        blocks = cut_vertex_factor(g)
        assert sum(1 for b in blocks if b.edge_count == 1) == 1
        assert tutte(g) == BI_X * tutte(cone(rest))


def _leaf_cases():
    rng = random.Random(3)
    for n in range(2, 9):
        for _ in range(3):
            yield random_tree(rng, n)


@pytest.mark.parametrize("t", list(_leaf_cases()))
def test_leaf_recursions(t):
    cone_t = tutte(cone(t))
    for leaf in leaves(t):
        (v,) = t.adjacency[leaf]
        rest = delete_vertex(t, leaf)
        v_rest = v - 1 if v > leaf else v
        plus = tutte(cone_plus(rest, v_rest))
        assert cone_t == BI_X * tutte(cone(rest)) + plus
        assert tutte(cone_plus(t, leaf)) == cone_t + BI_Y * plus
        assert tutte(contract_edge(cone(t), (leaf, t.n))) == plus


@pytest.mark.parametrize("n", range(1, 11))
def test_fan_and_doubled_fan_polynomials(n):
    assert tutte_1y(cone(path_tree(n))) == fib_poly(2 * n)
    assert tutte_1y(cone_plus(path_tree(n), n - 1)) == fib_poly(2 * n + 1)
    assert tutte_1y(cone_plus(path_tree(n), 0)) == fib_poly(2 * n + 1)


@pytest.mark.parametrize("n", range(2, 11))
def test_star_polynomials(n):
    assert tutte_1y(cone(star_tree(n))) == star_poly(n)
