import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from arrbs.arrangement import ArrangementError, restrict
from arrbs.corpus import boolean, complete, generic_lines
from arrbs.exactmath import rank, univariate
from arrbs.lattice import Lattice, build_lattice, dense_edges, lct

from conftest import arrangements

BUDUR = complete(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "budur")


def whitney(A):
    """chi(t) = sum over subsets S of (-1)^|S| t^(n - rank S)."""
    coeffs = [0] * (A.dim + 1)
    for k in range(A.p + 1):
        for S in itertools.combinations(range(A.p), k):
            coeffs[A.dim - rank([A.normals[i] for i in S], A.dim)] += (-1) ** k
    return univariate(coeffs)


def chi_or_power(A, n):
    return univariate([0] * n + [1]) if A is None else Lattice(A).char_poly()


def test_boolean_mobius():
    L = Lattice(boolean(2))
    assert [L.mobius(E) for E in L.edges] == [1, -1, -1, 1]
    assert L.char_poly() == univariate([1, -2, 1])


def test_three_lines():
    L = Lattice(generic_lines(3))
    assert L.rank_counts() == (1, 3, 1)
    assert L.mobius(L.bottom) == 2
    assert L.char_poly() == univariate([2, -3, 1])
    assert L.proj_complement_euler(L.bottom) == -1


def test_budur_lattice():
    L = build_lattice(BUDUR)
    assert L.rank_counts() == (1, 4, 6, 1)
    assert L.char_poly() == univariate([-3, 6, -4, 1])
    assert L.proj_complement_euler(L.bottom) == 1
    assert len(dense_edges(L)) == 5
    assert all(len(W.J) == 2 for W in L.edges if W.rank == 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_boolean_charpoly(n):
    L = Lattice(boolean(n))
    expected = univariate([1])
    for _ in range(n):
        expected = expected * univariate([-1, 1])
    assert L.char_poly() == expected
    assert [W.rank for W in L.dense_edges] == [1] * n


def test_dense_examples():
    L = Lattice(complete(2, [[1, 0], [0, 1], [1, 1]], "xy(x+y)"))
    assert len(L.dense_edges) == 4
    L = Lattice(complete(3, [[1, 0, 0], [0, 1, 0], [1, 1, 0]], "line pencil"))
    # rank-2 edge is dense, the ambient origin does not exist (rank 2 is the bottom)
    assert sorted(W.rank for W in L.dense_edges) == [1, 1, 1, 2]


@pytest.mark.parametrize("A, value", [
    (boolean(3), Fraction(1)),
    (generic_lines(3), Fraction(2, 3)),
    (generic_lines(6), Fraction(1, 3)),
    (BUDUR, Fraction(3, 4)),
])
def test_lct_examples(A, value):
    assert lct(A) == value


def test_lct_rejects_nonreduced():
    with pytest.raises(ArrangementError):
        lct(complete(2, [[1, 0], [1, 0]], "x2"))


def test_interval_mobius_off_interval():
    L = Lattice(boolean(2))
    H0, H1 = L.edge_for([0]), L.edge_for([1])
    assert L.interval_mobius(H0, H1) == 0
    assert L.interval_mobius(H0, L.bottom) == -1


@given(arrangements(max_dim=4, max_hyperplanes=8))
def test_charpoly_matches_whitney(A):
    assert Lattice(A).char_poly() == whitney(A)


@settings(max_examples=60)
@given(arrangements(max_dim=4, max_hyperplanes=8))
def test_deletion_restriction(A):
    L = Lattice(A)
    for i in range(A.p):
        D = A.delete(i) if A.p > 1 else None
        # restricting a line to its origin leaves the zero space, chi = 1
        R = restrict(A, L.hyperplane_edge(i)) if A.dim > 1 else None
        lhs = L.char_poly()
        rhs = chi_or_power(D, A.dim) - chi_or_power(R, A.dim - 1)
        assert lhs == rhs


@given(arrangements(max_dim=4, max_hyperplanes=7))
def test_mobius_sums_and_signs(A):
    L = Lattice(A)
    for W in L.edges:
        if W.rank:
            assert sum(L.mobius(V) for V in L.below(W)) == 0
        # geometric lattices alternate in sign
        assert (-1) ** W.rank * L.mobius(W) > 0


@given(arrangements(max_dim=4, max_hyperplanes=7))
def test_centrality(A):
    L = Lattice(A)
    for W in L.edges:
        if W.rank:
            assert L.char_poly(W).evaluate([1]) == 0


@given(arrangements(max_dim=4, max_hyperplanes=7))
def test_stratification_sums_to_one(A):
    L = Lattice(A)
    assert sum(L.stratum_euler(W) for W in L.edges) == 1


@given(arrangements(max_dim=4, max_hyperplanes=7))
def test_density_two_routes(A):
    L = Lattice(A)
    for W in L.edges:
        assert L.is_dense(W) == L.is_dense_by_decomposition(W)


@given(arrangements(max_dim=3, max_hyperplanes=6))
def test_restriction_charpoly_matches_restricted_lattice(A):
    L = Lattice(A)
    for W in L.edges:
        if L.dim(W) == 0:
            continue
        R = restrict(A, W)
        assert L.restriction_char_poly(W) == chi_or_power(R, L.dim(W))


@given(arrangements(max_dim=4, max_hyperplanes=7))
def test_localized_charpoly_matches_whitney(A):
    from arrbs.arrangement import essentialize, localize

    L = Lattice(A)
    for W in L.edges:
        if W.rank:
            B, _ = essentialize(localize(A, W))
            assert L.char_poly(W) == whitney(B)


@given(arrangements(max_dim=4, max_hyperplanes=7))
def test_lct_bounds(A):
    R = A.reduced()
    c = lct(R)
    assert 0 < c <= 1
    assert c == min(Fraction(W.rank, len(W.J)) for W in Lattice(R).dense_edges)
