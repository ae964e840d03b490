"""Intersection lattice of a central arrangement.

Edges are keyed by the RREF basis of the span of the normals of the
hyperplanes containing them.  ``V <= W`` means ``V`` contains ``W`` as a
subspace, i.e. ``J(V)`` is a subset of ``J(W)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arrangement import Arrangement, ArrangementError, essentialize, is_irreducible, localize
from .exactmath import (
    SparsePoly,
    format_rational,
    primitive_integer_vector,
    row_space_basis,
    univariate,
    univariate_divmod,
)


@dataclass(frozen=True)
class Edge:
    key: tuple[tuple[Fraction, ...], ...]
    rank: int
    J: frozenset[int]
    Jf: frozenset[int]

    def integer_key(self):
        return [list(primitive_integer_vector(row)) for row in self.key]

    def label(self):
        return "{" + ",".join(str(i) for i in sorted(self.J)) + "}"


def _reduce(key, pivots, v):
    """Remainder of ``v`` after eliminating the pivot columns of an RREF basis."""
    v = list(v)
    for row, p in zip(key, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


class Lattice:
    """All edges of ``A`` with Moebius values.  Immutable once built."""

    def __init__(self, A: Arrangement):
        self.arrangement = A
        n = A.dim
        top = Edge((), 0, frozenset(), frozenset())
        edges = [top]
        index = {(): 0}
        frontier = [top]
        while frontier:
            nxt = []
            for W in frontier:
                for i in range(A.p):
                    if i in W.J:
                        continue
                    key = row_space_basis(list(W.key) + [A.normals[i]], n)
                    if key in index:
                        continue
                    pivots = [next(c for c, x in enumerate(row) if x != 0) for row in key]
                    J = frozenset(
                        h for h in range(A.p) if not any(_reduce(key, pivots, A.normals[h]))
                    )
                    Jf = frozenset(j for j in range(A.factors) if any(A.mults[h][j] for h in J))
                    E = Edge(key, len(key), J, Jf)
                    index[key] = len(edges)
                    edges.append(E)
                    nxt.append(E)
            frontier = nxt
        self.edges = tuple(edges)
        self._index = index
        self._below = [
            tuple(v for v in range(len(edges)) if edges[v].J <= edges[w].J)
            for w in range(len(edges))
        ]
        mob = [0] * len(edges)
        for w in range(len(edges)):
            mob[w] = 1 if w == 0 else -sum(mob[v] for v in self._below[w] if v != w)
        self._mobius = tuple(mob)
        self._interval_cache = {}
        self._charpoly_cache = {}

    # lookup
    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def index(self, W: Edge) -> int:
        try:
            return self._index[W.key]
        except KeyError:
            raise ArrangementError("edge is not in this lattice") from None

    @property
    def top(self) -> Edge:
        """The ambient space (rank 0)."""
        return self.edges[0]

    @cached_property
    def bottom(self) -> Edge:
        """The minimal intersection (``{0}`` when essential)."""
        return max(self.edges, key=lambda E: E.rank)

    def hyperplane_edge(self, i) -> Edge:
        return next(E for E in self.edges if E.rank == 1 and i in E.J)

    def edge_for(self, indices) -> Edge:
        """Edge cut out by the given hyperplanes."""
        key = row_space_basis([self.arrangement.normals[i] for i in indices], self.arrangement.dim)
        return self.edges[self._index[key]]

    def rank_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.bottom.rank + 1)
        for E in self.edges:
            counts[E.rank] += 1
        return tuple(counts)

    def leq(self, V: Edge, W: Edge) -> bool:
        return V.J <= W.J

    def below(self, W: Edge):
        """Edges ``V <= W`` (subspaces containing ``W``), ``W`` included."""
        return [self.edges[v] for v in self._below[self.index(W)]]

    def above(self, W: Edge):
        """Edges ``U >= W`` (subspaces contained in ``W``), ``W`` included."""
        return [E for E in self.edges if W.J <= E.J]

    def dim(self, W: Edge) -> int:
        return self.arrangement.dim - W.rank

    # Moebius function
    def mobius(self, W: Edge) -> int:
        """``mu(ambient, W)``."""
        return self._mobius[self.index(W)]

    def interval_mobius(self, V: Edge, U: Edge) -> int:
        """``mu(V, U)``; zero unless ``V <= U``."""
        if not V.J <= U.J:
            return 0
        key = (self.index(V), self.index(U))
        if key not in self._interval_cache:
            if V == U:
                val = 1
            else:
                val = -sum(
                    self.interval_mobius(V, Z)
                    for Z in self.below(U)
                    if Z != U and V.J <= Z.J
                )
            self._interval_cache[key] = val
        return self._interval_cache[key]

    # characteristic polynomials
    def char_poly(self, W: Edge | None = None) -> SparsePoly:
        """Characteristic polynomial of the essentialized localization at ``W``.

        Without ``W`` this is the characteristic polynomial of the whole
        arrangement in its ambient space, ``sum mu(V) t^dim V``.
        """
        if W is None:
            coeffs = [0] * (self.arrangement.dim + 1)
            for E, mu in zip(self.edges, self._mobius):
                coeffs[self.dim(E)] += mu
            return univariate(coeffs)
        w = self.index(W)
        if w not in self._charpoly_cache:
            coeffs = [0] * (W.rank + 1)
            for v in self._below[w]:
                coeffs[W.rank - self.edges[v].rank] += self._mobius[v]
            self._charpoly_cache[w] = univariate(coeffs)
        return self._charpoly_cache[w]

    def restriction_char_poly(self, W: Edge, within: Edge | None = None) -> SparsePoly:
        """Characteristic polynomial of the restriction to ``W``.

        With ``within`` (an edge ``>= W``) the restriction is taken inside the
        essentialized localization at ``within``:
        ``sum_{W <= U <= within} mu(W, U) t^(dim U - dim within)``.
        """
        low = 0 if within is None else self.dim(within)
        coeffs = [0] * (self.dim(W) - low + 1)
        for U in self.above(W):
            if within is not None and not U.J <= within.J:
                continue
            coeffs[self.dim(U) - low] += self.interval_mobius(W, U)
        return univariate(coeffs)

    def proj_complement_euler(self, W: Edge) -> int:
        """Euler characteristic of the projective complement of the arrangement at ``W``.

        ``char_poly(W) = (t - 1) q(t)`` and the answer is ``q(1)``.
        """
        if W.rank < 1:
            raise ArrangementError("projective complement needs rank >= 1")
        return _q_at_one(self.char_poly(W))

    def stratum_euler(self, W: Edge, within: Edge | None = None) -> int:
        """Euler characteristic of ``W`` minus the smaller edges (affine stratum)."""
        return sum(self.restriction_char_poly(W, within).univariate_coeffs())

    def proj_stratum_euler(self, V: Edge, within: Edge) -> int:
        """Euler characteristic of ``P(V/within)`` minus smaller edges, for ``V < within``."""
        return _q_at_one(self.restriction_char_poly(V, within))

    # density
    def is_dense(self, W: Edge) -> bool:
        return W.rank >= 1 and self.proj_complement_euler(W) != 0

    @cached_property
    def dense_edges(self) -> tuple[Edge, ...]:
        return tuple(E for E in self.edges if self.is_dense(E))

    def is_dense_by_decomposition(self, W: Edge) -> bool:
        """Density through matroid connectivity of the essentialized localization."""
        if W.rank < 1:
            return False
        B, _ = essentialize(localize(self.arrangement, W))
        return is_irreducible(B)

    def to_json_obj(self):
        out = []
        for E in self.edges:
            out.append({
                "key": E.integer_key(),
                "rank": E.rank,
                "J": sorted(E.J),
                "Jf": sorted(E.Jf),
                "dense": self.is_dense(E),
                "mobius": self.mobius(E),
                "charpoly": [format_rational(c) for c in self.char_poly(E).univariate_coeffs()] if E.rank else ["1"],
            })
        return out


def _q_at_one(chi: SparsePoly) -> int:
    q, rem = univariate_divmod(chi.univariate_coeffs(), [-1, 1])
    if rem:
        raise ArithmeticError(f"(t - 1) does not divide {chi}")
    val = sum(q)
    assert val.denominator == 1
    return int(val)


def build_lattice(A: Arrangement) -> Lattice:
    return Lattice(A)


def char_poly(L: Lattice, W: Edge | None = None) -> SparsePoly:
    return L.char_poly(W)


def proj_complement_euler(L: Lattice, W: Edge) -> int:
    return L.proj_complement_euler(W)


def dense_edges(L: Lattice):
    return L.dense_edges


def lct(A: Arrangement, L: Lattice | None = None) -> Fraction:
    """``min rank(W) / |J(W)|`` over dense edges of a reduced arrangement."""
    if not A.is_reduced():
        raise ArrangementError("lct is defined here for reduced arrangements only")
    if L is None:
        L = Lattice(A)
    return min(Fraction(W.rank, len(W.J)) for W in L.dense_edges)
