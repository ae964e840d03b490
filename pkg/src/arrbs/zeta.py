"""Topological zeta functions of central arrangements.

The canonical log resolution blows up dense edges in increasing dimension.
Its strata over the origin of an irreducible essential arrangement of rank
``m`` are organized by the exceptional divisor ``E_0 = P^(m-1)`` (with
``a = total multiplicity``, discrepancy ``m - 1``): the stratum ``P(W)``
minus smaller edges contributes its Euler characteristic times the fiber
zeta function of the transverse arrangement at ``W``, i.e. the essentialized
localization.  Later centers are never inside earlier exceptional divisors,
so the divisor data of every exceptional divisor is read off its edge.
Reducible arrangements are products and their fiber zeta functions multiply.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangement import Arrangement, ArrangementError, connected_blocks, essentialize
from .bsideal import lower_bound_components, specialize_diagonal
from .exactmath import LinearForm, SparsePoly, divides_linear, format_rational, s_variables
from .lattice import Edge, Lattice


class RationalFunction:
    """``numerator / prod form**order`` with primitive integer linear forms in the denominator."""

    __slots__ = ("r", "numerator", "denominator")

    def __init__(self, r: int, numerator: SparsePoly, denominator: Iterable = ()):
        self.r = r
        if numerator.variables != s_variables(r):
            raise ValueError("numerator lives in the wrong ring")
        self.numerator = numerator
        den = Counter()
        if isinstance(denominator, dict):
            denominator = denominator.items()
        for F, k in denominator:
            if F.nvars != r:
                raise ValueError("denominator form has the wrong arity")
            if k < 0:
                raise ValueError("negative order")
            if k:
                den[F] += k
        self.denominator = den

    @classmethod
    def constant(cls, r, c):
        return cls(r, SparsePoly.constant(s_variables(r), c))

    @classmethod
    def inverse_form(cls, F: LinearForm, order=1):
        r = F.nvars
        if F.is_constant():
            return cls.constant(r, Fraction(1, F.const) ** order)
        return cls(r, SparsePoly.constant(s_variables(r), 1), {F: order})

    @classmethod
    def inverse_linear(cls, coeffs, const, order=1):
        """``1 / (coeffs . s + const)**order`` without losing the content of the form."""
        c, F = LinearForm.scaled(coeffs, const)
        return cls.inverse_form(F, order) * (1 / c) ** order

    @property
    def variables(self):
        return s_variables(self.r)

    def denominator_poly(self) -> SparsePoly:
        out = SparsePoly.constant(self.variables, 1)
        for F, k in self.denominator.items():
            out = out * F.as_poly(self.variables) ** k
        return out

    def _rescale(self, target: Counter) -> SparsePoly:
        num = self.numerator
        for F, k in target.items():
            extra = k - self.denominator.get(F, 0)
            if extra:
                num = num * F.as_poly(self.variables) ** extra
        return num

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(self.r, other)
        if other.r != self.r:
            raise ValueError("different number of variables")
        target = self.denominator | other.denominator
        return RationalFunction(self.r, self._rescale(target) + other._rescale(target), target)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.r, -self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return RationalFunction(self.r, self.numerator * Fraction(other), self.denominator)
        if other.r != self.r:
            raise ValueError("different number of variables")
        return RationalFunction(
            self.r, self.numerator * other.numerator, self.denominator + other.denominator
        )

    __rmul__ = __mul__

    def reduced(self) -> "RationalFunction":
        """Cancel every denominator form that divides the numerator."""
        num = self.numerator
        den = Counter(self.denominator)
        if num.is_zero():
            return RationalFunction(self.r, num)
        for F in sorted(den, key=LinearForm.sort_key):
            while den[F]:
                ok, q = divides_linear(num, F)
                if not ok:
                    break
                num = q
                den[F] -= 1
        return RationalFunction(self.r, num, +den)

    def is_reduced(self):
        return all(not divides_linear(self.numerator, F)[0] for F in self.denominator)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.constant(self.r, Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        if other.r != self.r:
            return False
        # reduced quotients over primitive forms are canonical
        a, b = self.reduced(), other.reduced()
        return a.denominator == b.denominator and a.numerator == b.numerator

    __hash__ = None

    def evaluate(self, point) -> Fraction:
        den = Fraction(1)
        for F, k in self.denominator.items():
            den *= F.evaluate(point) ** k
        if den == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.numerator.evaluate(point) / den

    def specialize(self, blocks: Sequence[int]) -> "RationalFunction":
        """Substitute ``s_j -> t_{blocks[j]}`` and reduce."""
        if len(blocks) != self.r:
            raise ValueError("need one block label per variable")
        r2 = max(blocks) + 1
        vars2 = s_variables(r2)
        images = [SparsePoly.var(vars2, b) for b in blocks]
        num = self.numerator.substitute(images, vars2) if self.r else self.numerator
        den = Counter()
        for F, k in self.denominator.items():
            coeffs = [0] * r2
            for j, c in enumerate(F.coeffs):
                coeffs[blocks[j]] += c
            if all(c == 0 for c in coeffs):
                if F.const == 0:
                    raise ZeroDivisionError(f"{F} specializes to zero")
                num = num / Fraction(F.const) ** k
                continue
            scale, G = LinearForm.scaled(coeffs, F.const)
            num = num / scale ** k
            den[G] += k
        return RationalFunction(r2, num, den).reduced()

    def embed(self, total: int, offset: int) -> "RationalFunction":
        """The same function in ``total`` variables, its own placed from ``offset`` on."""
        if offset < 0 or offset + self.r > total:
            raise ValueError("embedding does not fit")
        vs = s_variables(total)
        num = self.numerator.substitute([SparsePoly.var(vs, offset + j) for j in range(self.r)], vs)
        pad = lambda c: (0,) * offset + tuple(c) + (0,) * (total - offset - self.r)
        return RationalFunction(total, num, {LinearForm(pad(F.coeffs), F.const): k for F, k in self.denominator.items()})

    def poles(self) -> list[tuple[LinearForm, int]]:
        red = self.reduced()
        return sorted(red.denominator.items(), key=lambda t: LinearForm.sort_key(t[0]))

    def numerator_coefficients(self):
        """``[(exponent, coefficient)]`` in graded-lex order of the reduced form."""
        red = self.reduced()
        return [(list(e), format_rational(c)) for e, c in red.numerator.terms()]

    def to_json(self):
        red = self.reduced()
        return {
            "variables": list(self.variables),
            "numerator": [{"exp": list(e), "coeff": format_rational(c)} for e, c in red.numerator.terms()],
            "numerator_str": str(red.numerator),
            "denominator": [
                {**F.to_json(), "order": k, "form": str(F)}
                for F, k in sorted(red.denominator.items(), key=lambda t: LinearForm.sort_key(t[0]))
            ],
        }

    def __str__(self):
        red = self.reduced()
        den = "*".join(
            f"({F})" + (f"^{k}" if k > 1 else "")
            for F, k in sorted(red.denominator.items(), key=lambda t: LinearForm.sort_key(t[0]))
        )
        if not den:
            return str(red.numerator)
        num = str(red.numerator)
        if len(red.numerator.as_dict()) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"RationalFunction({self})"


RationalFunctionInS = RationalFunction


@dataclass(frozen=True)
class DivisorDatum:
    edge: Edge
    a: tuple[int, ...]
    k: int

    def form(self) -> LinearForm:
        """``a . s + k + 1``, the candidate pole attached to the divisor."""
        return LinearForm(self.a, self.k + 1)


def divisor_data(L: Lattice) -> list[DivisorDatum]:
    """Multiplicities and discrepancy of the exceptional divisor over each dense edge."""
    A = L.arrangement
    return [DivisorDatum(W, A.total_mult_vector(W.J), W.rank - 1) for W in L.dense_edges]


class _FiberSolver:
    """Fiber zeta functions of the transverse arrangements at edges of one lattice."""

    def __init__(self, L: Lattice):
        self.L = L
        self.A = L.arrangement
        self.memo: dict[Edge, RationalFunction] = {}

    def fiber(self, W: Edge) -> RationalFunction:
        if W.rank == 0:
            return RationalFunction.constant(self.A.factors, 1)
        if W not in self.memo:
            self.memo[W] = self._compute(W)
        return self.memo[W]

    def _compute(self, W: Edge) -> RationalFunction:
        A, L = self.A, self.L
        J = sorted(W.J)
        a = A.total_mult_vector(J)
        if W.rank == 1:
            return RationalFunction.inverse_linear(a, 1)
        blocks = connected_blocks([A.normals[i] for i in J], A.dim)
        if len(blocks) > 1:
            out = RationalFunction.constant(A.factors, 1)
            for b in blocks:
                V = L.edge_for([J[i] for i in b])
                assert V.rank < W.rank
                out = out * self.fiber(V)
            return out.reduced()
        bracket = RationalFunction.constant(A.factors, L.proj_complement_euler(W))
        for V in L.below(W):
            if V == W or V.rank == 0:
                continue
            chi = L.proj_stratum_euler(V, W)
            if chi:
                bracket = bracket + self.fiber(V) * chi
        return (bracket * RationalFunction.inverse_linear(a, W.rank)).reduced()


def zeta_fiber(A: Arrangement, L: Lattice | None = None) -> RationalFunction:
    """Contribution of the resolution strata over the origin of an essential arrangement."""
    if A.p == 0:
        raise ArrangementError("empty arrangement")
    if not A.is_essential():
        raise ArrangementError("zeta_fiber needs an essential arrangement (essentialize first)")
    if L is None:
        L = Lattice(A)
    return _FiberSolver(L).fiber(L.bottom)


def zeta_global(A: Arrangement, L: Lattice | None = None) -> RationalFunction:
    """Sum over edges of ``chi(W minus smaller edges)`` times the fiber zeta at ``W``."""
    if L is None:
        L = Lattice(A)
    solver = _FiberSolver(L)
    total = RationalFunction.constant(A.factors, 0)
    for W in L.edges:
        chi = L.stratum_euler(W)
        if chi:
            total = total + solver.fiber(W) * chi
    return total.reduced()


def zeta_global_collapsed(A: Arrangement) -> RationalFunction:
    """Second route for central inputs: only the minimal edge has nonzero Euler characteristic."""
    B, _ = essentialize(A)
    return zeta_fiber(B)


def pole_locus(Z: RationalFunction) -> list[tuple[LinearForm, int]]:
    return Z.poles()


def specialize_zeta(Z: RationalFunction, blocks: Sequence[int] | None = None) -> RationalFunction:
    """Merge variables; the default merges all of them (diagonal ``s_j -> s``)."""
    if blocks is None:
        blocks = [0] * Z.r
    return Z.specialize(blocks)


def candidate_poles(L: Lattice) -> list[LinearForm]:
    return sorted({d.form() for d in divisor_data(L)}, key=LinearForm.sort_key)


@dataclass
class PoleCheck:
    form: LinearForm
    order: int
    matched: bool


@dataclass
class SMCReport:
    poles: list[PoleCheck]
    components: list[LinearForm]
    cancelled_candidates: list[LinearForm]
    single_variable_poles: list[tuple[Fraction, bool]] = field(default_factory=list)
    zeta: RationalFunction | None = None

    @property
    def passed(self) -> bool:
        return all(p.matched for p in self.poles) and all(ok for _, ok in self.single_variable_poles)

    def violations(self):
        out = [str(p.form) for p in self.poles if not p.matched]
        out += [format_rational(q) for q, ok in self.single_variable_poles if not ok]
        return out

    def to_json(self):
        return {
            "passed": self.passed,
            "poles": [
                {**p.form.to_json(), "form": str(p.form), "order": p.order, "matched": p.matched}
                for p in self.poles
            ],
            "cancelled_candidates": [str(F) for F in self.cancelled_candidates],
            "single_variable_poles": [
                {"root": format_rational(q), "matched": ok} for q, ok in self.single_variable_poles
            ],
            "violations": self.violations(),
        }


def verify_smc(A: Arrangement, L: Lattice | None = None) -> SMCReport:
    """Check every pole of the zeta function against the lower-bound components.

    A failure cannot happen mathematically for complete factorizations; it
    signals an implementation bug.
    """
    if not A.is_complete():
        raise ArrangementError("verify_smc needs a complete factorization")
    if L is None:
        L = Lattice(A)
    Z = zeta_global(A, L)
    comps = lower_bound_components(L)
    compset = set(comps)
    poles = [PoleCheck(F, k, F in compset) for F, k in Z.poles()]
    pole_forms = {p.form for p in poles}
    cancelled = [F for F in candidate_poles(L) if F not in pole_forms]
    roots = specialize_diagonal(comps).roots
    single = [(F.root(), F.root() in roots) for F, _ in specialize_zeta(Z).poles()]
    return SMCReport(poles, comps, cancelled, single, Z)
