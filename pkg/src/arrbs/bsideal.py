"""Lattice-determined Bernstein-Sato data of central arrangements.

Only set-level statements are produced: root sets, the linear factors of the
generator for free arrangements, lower-bound components of the zero locus for
complete factorizations, relative characteristic-cycle components, and their
diagonal specializations.  Root multiplicities are never reported.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arrangement import Arrangement, ArrangementError
from .exactmath import LinearForm, format_rational
from .lattice import Edge, Lattice

LinearFormInS = LinearForm


class NotFreeError(ArrangementError):
    """Raised when free-arrangement outputs are requested for a non-free arrangement."""


@dataclass(frozen=True)
class SymbolicProduct:
    """Multiset of linear forms, read as their product."""

    factors: tuple[LinearForm, ...]

    @classmethod
    def of(cls, forms: Iterable[LinearForm]):
        return cls(tuple(sorted(forms, key=LinearForm.sort_key)))

    def counts(self) -> Counter:
        return Counter(self.factors)

    def distinct(self) -> list[LinearForm]:
        return sorted(set(self.factors), key=LinearForm.sort_key)

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return "*".join(f"({F})" for F in self.factors)


@dataclass(frozen=True)
class CCComponent:
    edge: Edge
    shift: int
    multiplicity: int
    form: LinearForm = field(compare=False)


@dataclass(frozen=True)
class DiagonalSpecialization:
    roots: frozenset[Fraction]
    product: SymbolicProduct
    dropped: tuple[LinearForm, ...]
    # "equality" when the free/Cohen-Macaulay hypothesis is certified,
    # otherwise the one-variable root set is only contained in ``roots``
    semantics: str = "inclusion"


def _require_complete(L: Lattice):
    if not L.arrangement.is_complete():
        raise ArrangementError("a complete factorization is required (one linear factor per variable)")


def _require_reduced(L: Lattice):
    if not L.arrangement.is_reduced():
        raise ArrangementError("a reduced arrangement is required")


def rw_set(L: Lattice, W: Edge) -> frozenset[Fraction]:
    """``{-(rank W + j) / |J(W)| : 0 <= j <= 2(|J(W)| - rank W)}`` for a dense edge."""
    _require_reduced(L)
    if not L.is_dense(W):
        raise ArrangementError(f"edge {W.label()} is not dense")
    m = len(W.J)
    return frozenset(Fraction(-(W.rank + j), m) for j in range(2 * (m - W.rank) + 1))


def free_roots(L: Lattice) -> frozenset[Fraction]:
    """Union of ``rw_set`` over dense edges; the b-function root set when the arrangement is free."""
    _require_reduced(L)
    out = set()
    for W in L.dense_edges:
        out |= rw_set(L, W)
    return frozenset(out)


@dataclass(frozen=True)
class RootsReport:
    roots: frozenset[Fraction]
    status: str  # "free" | "assumed-free" | "conjectural-upper-bound"

    @property
    def certified(self):
        return self.status == "free"


def b_function_roots(L: Lattice, freeness=None, assume_free=False) -> RootsReport:
    """Gate :func:`free_roots` on a freeness verdict.

    ``Free`` gives the exact root set, ``NotFree`` refuses unless
    ``assume_free``, anything else is labelled a conjectural upper-bound set.
    """
    from .freeness import Free, NotFree

    roots = free_roots(L)
    if isinstance(freeness, Free):
        return RootsReport(roots, "free")
    if assume_free:
        return RootsReport(roots, "assumed-free")
    if isinstance(freeness, NotFree):
        raise NotFreeError("arrangement is not free; pass assume_free to compute the lattice set anyway")
    return RootsReport(roots, "conjectural-upper-bound")


def maisonobe_generator(L: Lattice) -> SymbolicProduct:
    """Linear factors of the generator of the Bernstein-Sato ideal of a free arrangement.

    Product over dense ``W`` and ``0 <= j <= 2(|J(W)| - rank W)`` of
    ``sum_{i in J(W)} s_i + rank W + j``.
    """
    _require_reduced(L)
    _require_complete(L)
    r = L.arrangement.factors
    forms = []
    for W in L.dense_edges:
        m = len(W.Jf)
        for j in range(2 * (m - W.rank) + 1):
            forms.append(LinearForm.from_sum(r, W.Jf, W.rank + j))
    return SymbolicProduct.of(forms)


def lower_bound_components(L: Lattice) -> list[LinearForm]:
    """Hyperplanes ``sum_{j in J(W,f)} s_j + rank W + k = 0`` in the zero locus.

    One family per dense edge, ``0 <= k < |J(W,f)|``; non-reduced complete
    factorizations are allowed.
    """
    _require_complete(L)
    r = L.arrangement.factors
    out = set()
    for W in L.dense_edges:
        for k in range(len(W.Jf)):
            out.add(LinearForm.from_sum(r, W.Jf, W.rank + k))
    return sorted(out, key=LinearForm.sort_key)


def cc_multiplicity(L: Lattice, W: Edge) -> int:
    return (-1) ** (W.rank - 1) * L.proj_complement_euler(W)


def cc_components(L: Lattice, shifts: Iterable[int]) -> list[CCComponent]:
    """Conormal components ``T*_W X x (sum_{J(W,f)} s_j + l = 0)`` with multiplicities."""
    _require_complete(L)
    r = L.arrangement.factors
    shifts = list(shifts)
    out = []
    for W in L.dense_edges:
        mult = cc_multiplicity(L, W)
        if mult <= 0:
            raise ArithmeticError(f"nonpositive multiplicity {mult} at dense edge {W.label()}")
        for l in shifts:
            out.append(CCComponent(W, l, mult, LinearForm.from_sum(r, W.Jf, l)))
    return out


def specialize_diagonal(forms, certified=False) -> DiagonalSpecialization:
    """Substitute ``s_j -> s`` in every form and collect the one-variable roots."""
    if isinstance(forms, SymbolicProduct):
        forms = forms.factors
    kept, dropped = [], []
    for F in forms:
        total = sum(F.coeffs)
        if total == 0:
            if F.const == 0:
                raise ValueError(f"form {F} specializes to zero")
            dropped.append(F)
            continue
        kept.append(LinearForm((total,), F.const))
    roots = frozenset(F.root() for F in kept)
    return DiagonalSpecialization(
        roots, SymbolicProduct.of(kept), tuple(dropped), "equality" if certified else "inclusion"
    )


def format_roots(roots) -> list[str]:
    return [format_rational(q) for q in sorted(roots, reverse=True)]
