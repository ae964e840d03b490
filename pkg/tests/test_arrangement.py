import json
from fractions import Fraction

import pytest
from hypothesis import given

from arrbs.arrangement import (
    Arrangement,
    ArrangementError,
    FactorizationKind,
    brute_force_blocks,
    connected_blocks,
    decompose,
    essentialize,
    is_irreducible,
    localize,
    parse,
    product,
    restrict,
)
from arrbs.corpus import boolean, complete
from arrbs.exactmath import rank
from arrbs.lattice import Lattice

from conftest import arrangements


def test_parse_plain_example():
    A = parse("3 2\n1 0 0 : 1 0\n0 1 0 : 0 1\n1 1 0 : 2 1\n")
    assert A.dim == 3 and A.factors == 2 and A.p == 3
    assert A.mults[2] == (2, 1)
    assert A.kind is FactorizationKind.GENERAL


def test_parse_json_example():
    A = parse(json.dumps({"dim": 2, "factors": 1, "hyperplanes": [
        {"normal": [1, 0], "mults": [1]}, {"normal": ["1/2", "-1/2"], "mults": [3]}]}))
    assert A.normals[1] == (1, -1)
    assert A.kind is FactorizationKind.SINGLE and not A.is_reduced()


def test_parse_comments_and_blank_lines():
    A = parse("# header follows\n\n2 1\n1 0 : 1  # x\n\n0 1 : 1\n")
    assert A == boolean(2).reduced()


def test_proportional_normals_merge():
    A = parse("2 2\n1 1 : 1 0\n-2 -2 : 0 1\n")
    assert A.p == 1 and A.mults == ((1, 1),)


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("2\n1 0 : 1\n", "line 1"),
    ("0 1\n", "line 1"),
    ("2 0\n1 0 :\n", "line 1"),
    ("2 1\n", "no hyperplanes"),
    ("2 1\n1 0 1\n", "line 2"),
    ("2 1\n1 0 : 1\n0 0 : 1\n", "line 3: zero normal"),
    ("2 1\n1 0 5 : 1\n", "line 2: affine"),
    ("2 1\n1 : 1\n", "line 2"),
    ("2 1\n1 0.5 : 1\n", "line 2"),
    ("2 1\n1 0 : 1 1\n", "line 2"),
    ("2 1\n1 0 : -1\n", "line 2"),
    ("2 2\n1 0 : 0 0\n", "line 2"),
    ("2 1\n1 0 : x\n", "line 2"),
])
def test_parse_plain_errors(text, fragment):
    with pytest.raises(ArrangementError, match=fragment):
        parse(text, "plain")


@pytest.mark.parametrize("obj", [
    [],
    {"dim": 2, "factors": 1},
    {"dim": 2, "factors": 1, "hyperplanes": {}},
    {"dim": 2, "factors": 1, "hyperplanes": [{"normal": [1, 0]}]},
    {"dim": 2, "factors": 1, "hyperplanes": [{"normal": [1, 0], "mults": [1], "const": 1}]},
    {"dim": 2, "factors": 1, "hyperplanes": [{"normal": [0, 0], "mults": [1]}]},
    {"dim": 2, "factors": 1, "hyperplanes": [{"normal": [1.5, 0], "mults": [1]}]},
    {"dim": -1, "factors": 1, "hyperplanes": [{"normal": [1], "mults": [1]}]},
    {"dim": 1, "factors": 1, "hyperplanes": [{"normal": [1], "mults": [True]}]},
])
def test_parse_json_errors(obj):
    with pytest.raises(ArrangementError):
        parse(json.dumps(obj))


def test_kind_precedence():
    # one reduced factor counts as complete
    assert complete(1, [[1]], "x").kind is FactorizationKind.COMPLETE
    assert boolean(3).reduced().kind is FactorizationKind.SINGLE
    assert boolean(3).kind is FactorizationKind.COMPLETE


@given(arrangements(complete=False))
def test_roundtrip_plain_and_json(A):
    assert parse(A.to_plain()) == A
    assert parse(A.to_json()) == A


@given(arrangements())
def test_complete_factorization_shape(A):
    C = A.complete_factorization()
    assert C.is_complete() and C.factors == sum(A.total_mult(i) for i in range(A.p))
    assert [C.total_mult(i) for i in range(C.p)] == [A.total_mult(i) for i in range(A.p)]


def test_essentialize_example():
    A = complete(3, [[1, 1, 0], [1, -1, 0]], "two planes")
    B, k = essentialize(A)
    assert k == 2 and B.dim == 2 and B.is_essential()
    assert Lattice(B).rank_counts() == Lattice(A).rank_counts()


def test_localize_restrict_examples():
    A = complete(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "budur")
    L = Lattice(A)
    W = L.edge_for([0, 1])
    loc = localize(A, W)
    assert loc.p == 2 and loc.rank() == 2
    R = restrict(A, W)
    # on the line x = y = 0 both z and x+y+z cut the origin
    assert R.dim == 1 and R.p == 1 and R.mults == ((0, 0, 1, 1),)
    assert restrict(A, L.top).p == 4
    with pytest.raises(ArrangementError):
        restrict(A, L.bottom)
    assert restrict(boolean(2), Lattice(boolean(2)).edge_for([0])) is not None
    assert restrict(complete(2, [[1, 0]], "x"), Lattice(complete(2, [[1, 0]], "x")).edge_for([0])) is None


def test_foreign_edge_rejected():
    L = Lattice(boolean(2))
    with pytest.raises(ArrangementError):
        localize(boolean(3), L.edge_for([0]))


def test_decompose_examples():
    assert [B.p for B in decompose(boolean(3))] == [1, 1, 1]
    budur = complete(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "b")
    assert len(decompose(budur)) == 1 and is_irreducible(budur)
    A = product(complete(2, [[1, 0], [0, 1], [1, 1]], "t"), boolean(1))
    parts = decompose(A)
    assert sorted(B.p for B in parts) == [1, 3]
    with pytest.raises(ArrangementError):
        decompose(complete(2, [[1, 0]], "x"))


@given(arrangements(max_hyperplanes=8))
def test_decompose_matches_bipartition_oracle(A):
    assert connected_blocks(A.normals, A.dim) == brute_force_blocks(A.normals, A.dim)


@given(arrangements(max_hyperplanes=7))
def test_decompose_reassembles(A):
    B, k = essentialize(A)
    parts = decompose(B)
    assert sum(P.p for P in parts) == B.p
    assert sum(P.dim for P in parts) == k
    blocks = connected_blocks(B.normals, B.dim)
    # ranks add up: the blocks sit in independent subspaces
    assert sum(rank([B.normals[i] for i in b], B.dim) for b in blocks) == k
    assert all(is_irreducible(P) for P in parts)


@given(arrangements(max_hyperplanes=7))
def test_irreducible_iff_beta_nonzero(A):
    B, _ = essentialize(A)
    L = Lattice(B)
    beta = L.proj_complement_euler(L.bottom)
    assert is_irreducible(B) == (beta != 0)


@given(arrangements(max_dim=3, max_hyperplanes=6))
def test_localize_and_restrict_dimensions(A):
    L = Lattice(A)
    for W in L.edges:
        if W.rank == 0:
            continue
        assert localize(A, W).rank() == W.rank
        if L.dim(W) > 0:
            R = restrict(A, W)
            if R is not None:
                assert R.dim == L.dim(W)


@given(arrangements(max_dim=3, max_hyperplanes=6))
def test_linear_change_keeps_lattice(A):
    n = A.dim
    g = [[Fraction(int(i == j) + (1 if j == i + 1 else 0)) for j in range(n)] for i in range(n)]
    B = A.linear_change(g)
    assert Lattice(B).rank_counts() == Lattice(A).rank_counts()
    assert Lattice(B).char_poly() == Lattice(A).char_poly()
