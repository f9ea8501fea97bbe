import math
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandcone.graphs import star_tree
from sandcone.linalg import (
    AbelianGroup,
    InfiniteCokernelError,
    IntMatrix,
    cokernel,
    determinant,
    in_image,
    is_full_image,
    smith_normal_form,
)
from sandcone.sandpile import RootedGraph, reduced_laplacian


def matrices(max_rows=4, max_cols=4, lo=-9, hi=9, square=False):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_rows))
        c = r if square else draw(st.integers(1, max_cols))
        rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
        return IntMatrix.from_rows(rows)

    return build()


def leibniz(rows: list[list[int]]) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inversions * math.prod(rows[i][perm[i]] for i in range(n))
    return total


def determinantal_divisors(m: IntMatrix) -> list[int]:
    """``D_k`` = gcd of all k x k minors; SNF has ``d_1 ... d_k = D_k``."""
    rows = m.to_lists()
    out = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                g = math.gcd(g, leibniz([[rows[i][j] for j in cs] for i in rs]))
        out.append(g)
    return out


def test_snf_examples():
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 2]])) == [2, 2]
    assert smith_normal_form(IntMatrix.from_rows([[1]])) == [1]
    m = IntMatrix.from_rows([[2, 4], [4, 2]])
    assert smith_normal_form(m) == [2, 6]
    assert abs(determinant(m)) == 12


def test_snf_rectangular_and_zero():
    assert smith_normal_form(IntMatrix.from_rows([[0, 0, 0], [0, 0, 0]])) == [0, 0]
    assert smith_normal_form(IntMatrix.from_rows([[2, 4, 6]])) == [2]
    assert smith_normal_form(IntMatrix.from_rows([[6], [10], [15]])) == [1]


@settings(max_examples=300)
@given(matrices())
def test_snf_matches_determinantal_divisors(m):
    diag = smith_normal_form(m)
    assert len(diag) == min(m.rows, m.cols)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    prods = [math.prod(diag[: k + 1]) for k in range(len(diag))]
    assert prods == determinantal_divisors(m)


@settings(max_examples=200)
@given(matrices(square=True), st.randoms(use_true_random=False))
def test_snf_permutation_and_sign_invariance(m, r):
    rows = m.to_lists()
    rp = list(range(m.rows))
    cp = list(range(m.cols))
    r.shuffle(rp)
    r.shuffle(cp)
    shuffled = [[rows[i][j] for j in cp] for i in rp]
    flip = r.randrange(m.rows)
    shuffled[flip] = [-x for x in shuffled[flip]]
    assert smith_normal_form(IntMatrix.from_rows(shuffled)) == smith_normal_form(m)


@settings(max_examples=200)
@given(matrices(max_rows=5, square=True, lo=-20, hi=20))
def test_determinant_matches_leibniz(m):
    det = determinant(m)
    assert det == leibniz(m.to_lists())
    diag = smith_normal_form(m)
    if det:
        assert math.prod(diag) == abs(det)
    else:
        assert 0 in diag


def test_determinant_examples():
    for n in range(1, 6):
        assert determinant(IntMatrix.identity(n)) == 1
    assert determinant(IntMatrix.from_rows([[2, -1], [-1, 2]])) == 3
    assert determinant(IntMatrix(0, 0, ())) == 1
    with pytest.raises(ValueError):
        determinant(IntMatrix.from_rows([[1, 2]]))


def test_determinant_is_exact_for_big_entries():
    big = 10**30
    m = IntMatrix.from_rows([[big, 1], [1, big]])
    assert determinant(m) == big * big - 1


def _classify(a: int, b: int) -> AbelianGroup:
    # Z_a + Z_b = Z_gcd + Z_lcm
    g = math.gcd(a, b)
    return AbelianGroup(tuple(d for d in (g, a * b // g) if d > 1))


@settings(max_examples=300)
@given(st.integers(1, 50), st.integers(1, 50))
def test_cokernel_diag_matches_gcd_lcm(a, b):
    got = cokernel(IntMatrix.diagonal([a, b]))
    assert got == _classify(a, b)
    assert got.order == a * b


def test_cokernel_examples():
    assert cokernel(IntMatrix.identity(3)) == AbelianGroup()
    assert cokernel(IntMatrix.identity(3)).order == 1
    g = cokernel(IntMatrix.diagonal([2, 2, 12]))
    assert g.invariant_factors == (2, 2, 12) and g.order == 48
    lap = reduced_laplacian(RootedGraph.cone_over(star_tree(4)))
    assert str(cokernel(lap)) == "Z_2 x Z_10"


def test_cokernel_singular():
    with pytest.raises(InfiniteCokernelError) as info:
        cokernel(IntMatrix.from_rows([[1, 1, 0], [1, 1, 0], [0, 0, 0]]))
    assert info.value.free_rank == 2
    with pytest.raises(ValueError):
        cokernel(IntMatrix.from_rows([[1, 2]]))


def test_is_full_image():
    two = IntMatrix.diagonal([2, 2])
    assert is_full_image(two, [[1, 0], [0, 1]])
    assert not is_full_image(two, [[1, 0]])
    assert is_full_image(two, [[1, 1], [0, 1]])
    assert is_full_image(IntMatrix.identity(3), [])
    with pytest.raises(ValueError):
        is_full_image(two, [[1, 0, 0]])


def _solve(m: IntMatrix, v: list[int]) -> list[Fraction]:
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(v[i])] for i, row in enumerate(m.to_lists())]
    for k in range(n):
        p = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[p] = a[p], a[k]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] / a[i][i] for i in range(n)]


@settings(max_examples=300)
@given(matrices(max_rows=4, square=True, lo=-6, hi=6), st.lists(st.integers(-12, 12), min_size=4, max_size=4))
def test_in_image_matches_rational_solve(m, v):
    v = v[: m.rows]
    if determinant(m) == 0:
        with pytest.raises(InfiniteCokernelError):
            in_image(m, v)
        return
    expected = all(x.denominator == 1 for x in _solve(m, v))
    assert in_image(m, v) == expected


def test_in_image_of_own_columns():
    m = IntMatrix.from_rows([[4, -1, 0], [-1, 3, -1], [0, -1, 2]])
    for j in range(3):
        assert in_image(m, m.column(j))
    assert not in_image(m, [1, 0, 0])


def test_group_string_and_parse():
    g = AbelianGroup((2, 2, 2, 24))
    assert str(g) == "Z_2^3 x Z_24"
    assert g.to_json() == {"factors": [2, 2, 2, 24]}
    assert AbelianGroup.from_json(g.to_json()) == g
    assert AbelianGroup.parse("Z_2^3 x Z_24") == g
    assert str(AbelianGroup()) == "0"
    assert AbelianGroup.parse("0") == AbelianGroup()
    assert AbelianGroup.parse("Z_2 x Z_3") == AbelianGroup((6,))
    with pytest.raises(ValueError):
        AbelianGroup.parse("Z2")


def test_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup((1, 4))
    with pytest.raises(ValueError):
        AbelianGroup((4, 6))
    assert AbelianGroup((2, 4)).order == 8 and AbelianGroup((2, 4)).rank == 2


@given(st.lists(st.integers(1, 60), max_size=6))
def test_from_cyclic_preserves_order_and_invariants(orders):
    g = AbelianGroup.from_cyclic(orders)
    assert g.order == math.prod(orders)
    # the presentation diag(orders) has the same cokernel
    if orders:
        assert g == cokernel(IntMatrix.diagonal(orders))


def test_matrix_helpers():
    m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert m.delete(1).to_lists() == [[1, 3], [7, 9]]
    assert m.column(2) == [3, 6, 9]
    assert m.matvec([1, 0, -1]) == [-2, -2, -2]
    assert m.with_columns([[0, 0, 1]]).cols == 4
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
