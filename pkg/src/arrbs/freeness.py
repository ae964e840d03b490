"""Freeness of central arrangements by graded linear algebra.

Logarithmic derivations of degree ``e`` are the kernel of an exact linear
system: a derivation ``theta`` is logarithmic iff ``theta(alpha_H)`` vanishes
on ``H`` for every hyperplane.  Freeness is certified by Saito's criterion.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, ArrangementError, essentialize
from .exactmath import SparsePoly, det_poly, divides_linear, kernel_basis, rank, univariate_divmod
from .lattice import Lattice


def x_variables(n):
    return tuple(f"x{i + 1}" for i in range(n))


def monomials(n, e):
    """Exponent vectors of degree ``e`` in ``n`` variables, graded-lex descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), e):
        exp = [0] * n
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return sorted(set(out), reverse=True)


def defining_form(A: Arrangement, i) -> SparsePoly:
    return SparsePoly.linear(x_variables(A.dim), A.normals[i])


def apply(coeffs: Sequence[SparsePoly], normal) -> SparsePoly:
    """``theta(alpha)`` for the linear form with the given normal."""
    total = SparsePoly.zero(coeffs[0].variables)
    for a, c in zip(normal, coeffs):
        if a:
            total = total + c * a
    return total


def is_logarithmic(coeffs: Sequence[SparsePoly], A: Arrangement) -> bool:
    for i in range(A.p):
        ok, _ = divides_linear(apply(coeffs, A.normals[i]), defining_form(A, i))
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class Derivation:
    """``sum_i coeffs[i] d/dx_i`` with homogeneous coefficients of one degree."""

    degree: int
    coeffs: tuple[SparsePoly, ...]
    arrangement: Arrangement | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for c in self.coeffs:
            if not c.is_homogeneous(self.degree):
                raise ValueError(f"coefficient {c} is not homogeneous of degree {self.degree}")
        if self.arrangement is not None and not is_logarithmic(self.coeffs, self.arrangement):
            raise ValueError("derivation is not logarithmic along the arrangement")

    @classmethod
    def euler(cls, n):
        xs = x_variables(n)
        return cls(1, tuple(SparsePoly.var(xs, i) for i in range(n)))

    def times(self, mono) -> "Derivation":
        m = SparsePoly.monomial(self.coeffs[0].variables, mono)
        return Derivation(self.degree + sum(mono), tuple(c * m for c in self.coeffs))

    def vector(self, monos) -> list[Fraction]:
        """Coordinates in the basis ``(i, monomial)`` of the degree piece."""
        return [c.coeff(m) for c in self.coeffs for m in monos]

    def to_json(self):
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self):
        xs = self.coeffs[0].variables
        parts = [f"({c})*d/d{x}" for c, x in zip(self.coeffs, xs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def _from_vector(vec, n, monos, degree, A=None) -> Derivation:
    xs = x_variables(n)
    k = len(monos)
    coeffs = tuple(
        SparsePoly(xs, {m: vec[i * k + j] for j, m in enumerate(monos)}) for i in range(n)
    )
    return Derivation(degree, coeffs, A)


def logderiv_basis(A: Arrangement, e: int) -> list[Derivation]:
    """Basis of the degree-``e`` logarithmic derivations of a reduced central arrangement."""
    if e < 0:
        raise ValueError("degree must be nonnegative")
    n = A.dim
    xs = x_variables(n)
    monos = monomials(n, e)
    k = len(monos)
    rows = []
    for normal in A.normals:
        v = next(i for i, a in enumerate(normal) if a != 0)
        # x_v = -(sum_{j != v} a_j x_j) / a_v parametrizes H
        param = SparsePoly.linear(xs, [0 if j == v else -a / normal[v] for j, a in enumerate(normal)])
        images = [param if j == v else SparsePoly.var(xs, j) for j in range(n)]
        restricted = [SparsePoly.monomial(xs, m).substitute(images, xs) for m in monos]
        targets = sorted({t for poly in restricted for t in poly.as_dict()}, reverse=True)
        for t in targets:
            row = [Fraction(0)] * (n * k)
            for i, a in enumerate(normal):
                if a:
                    for j, poly in enumerate(restricted):
                        row[i * k + j] = a * poly.coeff(t)
            rows.append(row)
    basis = kernel_basis(rows, n * k) if rows else [
        tuple(Fraction(int(i == j)) for i in range(n * k)) for j in range(n * k)
    ]
    return [_from_vector(vec, n, monos, e, A) for vec in basis]


def terao_exponents(L: Lattice):
    """Roots of ``chi_A`` when it splits over nonnegative integers, else ``None``."""
    A = L.arrangement
    coeffs = L.char_poly().univariate_coeffs()
    exps = []
    while len(coeffs) > 1:
        for c in range(A.p + 1):
            q, rem = univariate_divmod(coeffs, [-c, 1])
            if not rem:
                exps.append(c)
                coeffs = q
                break
        else:
            return None
    exps.sort()
    assert sum(exps) == A.p, "exponent sum must equal the number of hyperplanes"
    return tuple(exps)


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Free:
    certificate: tuple[Derivation, ...]
    constant: Fraction
    exponents: tuple[int, ...]
    # the essentialized reduced arrangement the certificate refers to
    arrangement: Arrangement | None = field(default=None, compare=False, repr=False)
    verdict: str = "free"


@dataclass(frozen=True)
class NotFree:
    obstruction: str
    char_poly: SparsePoly
    verdict: str = "not-free"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    bound: int
    verdict: str = "inconclusive"


def saito_determinant(certificate: Sequence[Derivation]) -> SparsePoly:
    return det_poly([list(d.coeffs) for d in certificate])


def _saito_constant(A: Arrangement, certificate) -> Fraction | None:
    """``c`` with ``det = c * prod alpha_H``, or ``None`` when no such nonzero ``c``."""
    det = saito_determinant(certificate)
    if det.is_zero():
        return None
    for i in range(A.p):
        ok, det = divides_linear(det, defining_form(A, i))
        if not ok:
            return None
    if not det.is_constant():
        return None
    return det.constant_term()


def verify_certificate(A: Arrangement, cert) -> bool:
    """Saito criterion: n logarithmic derivations whose determinant is ``c * prod alpha_H``."""
    derivs = cert.certificate if isinstance(cert, Free) else tuple(cert)
    if len(derivs) != A.dim:
        return False
    if any(len(d.coeffs) != A.dim for d in derivs):
        return False
    if not all(is_logarithmic(d.coeffs, A) for d in derivs):
        return False
    return _saito_constant(A, derivs) is not None


def saito_search(A: Arrangement, max_degree: int | None = None):
    """Look for a Saito basis degree by degree.

    In each degree the logarithmic derivations are reduced modulo the module
    generated by derivations already selected; the leftover dimension is the
    number of minimal generators in that degree.  If that count disagrees
    with the Terao exponents the arrangement cannot be free.
    """
    if not A.is_reduced():
        raise ArrangementError("freeness is decided on the reduced arrangement; reduce first")
    A, _ = essentialize(A.reduced())
    L = Lattice(A)
    if max_degree is None:
        max_degree = A.p
    exps = terao_exponents(L)
    if exps is None:
        return NotFree(
            f"characteristic polynomial {L.char_poly()} does not split over nonnegative integers",
            L.char_poly(),
        )
    n = A.dim
    wanted = {d: exps.count(d) for d in set(exps)}
    selected: list[Derivation] = []
    top = max(exps)
    for d in range(0, top + 1):
        if d > max_degree:
            return Inconclusive(f"exponent {top} exceeds max degree {max_degree}", max_degree)
        monos = monomials(n, d)
        piece = logderiv_basis(A, d)
        lower = []
        for theta in selected:
            for m in monomials(n, d - theta.degree):
                lower.append(theta.times(m).vector(monos))
        base_rank = rank(lower, n * len(monos)) if lower else 0
        rows = list(lower)
        new = []
        cur = base_rank
        for theta in piece:
            rows.append(theta.vector(monos))
            r = rank(rows, n * len(monos))
            if r > cur:
                new.append(theta)
                cur = r
            else:
                rows.pop()
        if len(new) != wanted.get(d, 0):
            return NotFree(
                f"{len(new)} minimal logarithmic derivations in degree {d}, "
                f"but the Terao exponents {list(exps)} require {wanted.get(d, 0)}",
                L.char_poly(),
            )
        selected.extend(new)
    c = _saito_constant(A, selected)
    if c is None:
        return Inconclusive("selected derivations have degenerate Saito determinant", max_degree)
    return Free(tuple(selected), c, tuple(sorted(d.degree for d in selected)), A)


def decide(A: Arrangement, max_degree: int | None = None):
    """Freeness of the reduced support of ``A``."""
    return saito_search(A.reduced(), max_degree)
