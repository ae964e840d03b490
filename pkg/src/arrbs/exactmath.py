"""Exact rational linear algebra and sparse multivariate polynomials.

Everything here works over ``fractions.Fraction``; there is no floating point
anywhere in the package.  Matrices are plain lists of rows.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (ints are accepted as-is).  Floats are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"malformed rational {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"malformed rational {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def primitive_integer_vector(vec: Sequence) -> tuple[int, ...]:
    """Clear denominators and divide by the content; sign is left untouched."""
    vec = [Fraction(v) for v in vec]
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def canonical_direction(vec: Sequence) -> tuple[Fraction, ...]:
    """Scale so the first nonzero coordinate is 1."""
    vec = [Fraction(v) for v in vec]
    for v in vec:
        if v != 0:
            return tuple(x / v for x in vec)
    raise ValueError("zero vector has no direction")


# ---------------------------------------------------------------------------
# linear algebra


def as_matrix(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(m: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)`` where ``R`` keeps the input's row count
    (zero rows at the bottom).  Pivoting picks the first nonzero entry in
    column order, so the result is reproducible.
    """
    a = as_matrix(m)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if a[i][c] != 0:
                break
        else:
            continue
        if i != r:
            a[r], a[i] = a[i], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        row = a[r]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], row)]
        pivots.append(c)
        r += 1
    return a, tuple(pivots), len(pivots)


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return rref(m, ncols)[2]


def row_space_basis(m: Sequence[Sequence], ncols: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    """Nonzero rows of the RREF: the canonical basis of the row space."""
    r, _, k = rref(m, ncols)
    return tuple(tuple(row) for row in r[:k])


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column.

    Vector for free column ``f`` has a 1 in position ``f``, zeros at the other
    free columns, and the forced values at pivot columns.
    """
    r, pivots, k = rref(m, ncols)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(tuple(v))
    return basis


def linsolve(m: Sequence[Sequence], b: Sequence, ncols: int | None = None):
    """Some solution of ``m x = b`` with free variables set to 0, or ``None``."""
    a = as_matrix(m)
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} rows but rhs of length {len(b)}")
    if ncols is None:
        ncols = len(a[0]) if a else 0
    for row in a:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    aug = [row + [Fraction(x)] for row, x in zip(a, b)]
    r, pivots, k = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = r[i][ncols]
    return tuple(x)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...]:
    return tuple(sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def in_row_space(basis_rref: Sequence[Sequence], v: Sequence) -> bool:
    """Membership test against a basis already in RREF."""
    if not basis_rref:
        return all(x == 0 for x in v)
    n = len(v)
    return rank(list(basis_rref) + [list(v)], n) == len(basis_rref)


# ---------------------------------------------------------------------------
# polynomials


def _grlex_key(exp):
    return (sum(exp), exp)


class SparsePoly:
    """Polynomial over Q in named variables, stored as ``{exponent tuple: coeff}``.

    Instances are treated as immutable.  Iteration order of ``terms()`` is
    graded lexicographic, highest first.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match {n} variables")
                c = Fraction(c)
                if c != 0:
                    clean[exp] = c
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def constant(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, i):
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[i] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def linear(cls, variables, coeffs, const=0):
        variables = tuple(variables)
        n = len(variables)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(variables, terms)

    @classmethod
    def monomial(cls, variables, exp, c=1):
        return cls(variables, {tuple(exp): c})

    # basic queries
    @property
    def nvars(self):
        return len(self.variables)

    def terms(self):
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def as_dict(self):
        return dict(self._terms)

    def coeff(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self):
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i):
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    # arithmetic
    def _check(self, other):
        if not isinstance(other, SparsePoly):
            return SparsePoly.constant(self.variables, other)
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = Fraction(other)
            return SparsePoly(self.variables, {e: v * c for e, v in self._terms.items()})
        other = self._check(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(c)
        return SparsePoly(self.variables, {e: v / c for e, v in self._terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.variables == other.variables and self._terms == other._terms
        try:
            c = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self == SparsePoly.constant(self.variables, c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # evaluation and substitution
    def evaluate(self, point: Sequence) -> Fraction:
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def substitute(self, images: Sequence["SparsePoly"], variables=None) -> "SparsePoly":
        """Replace variable ``i`` by ``images[i]`` (all in the same target ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if variables is None:
            variables = images[0].variables if images else ()
        powers = [dict() for _ in images]

        def power(i, k):
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        out = SparsePoly.zero(variables)
        acc = {}
        for e, c in self._terms.items():
            t = SparsePoly.constant(variables, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t._terms.items():
                acc[te] = acc.get(te, 0) + tc
        out = SparsePoly(variables, acc)
        return out

    def derivative(self, i):
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), 0) + c * e[i]
        return SparsePoly(self.variables, out)

    def univariate_coeffs(self) -> list[Fraction]:
        """Coefficients ``[c_0, c_1, ...]`` of a one-variable polynomial."""
        if self.nvars != 1:
            raise ValueError("not univariate")
        d = max(self.degree(), 0)
        return [self.coeff((k,)) for k in range(d + 1)]

    # display
    def __repr__(self):
        return f"SparsePoly({self.variables!r}, {str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def univariate(coeffs: Sequence, var="t") -> SparsePoly:
    """Build ``sum coeffs[k] * var**k``."""
    return SparsePoly((var,), {(k,): c for k, c in enumerate(coeffs)})


def univariate_divmod(p: Sequence, d: Sequence):
    """Long division of coefficient lists (low degree first)."""
    p = [Fraction(x) for x in p]
    d = [Fraction(x) for x in d]
    while d and d[-1] == 0:
        d.pop()
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    while p and p[-1] == 0:
        p.pop()
    q = [Fraction(0)] * max(len(p) - len(d) + 1, 1)
    while len(p) >= len(d) and p:
        shift = len(p) - len(d)
        f = p[-1] / d[-1]
        q[shift] = f
        for i, c in enumerate(d):
            p[i + shift] -= f * c
        p.pop()
        while p and p[-1] == 0:
            p.pop()
    return q, p


# ---------------------------------------------------------------------------
# integer linear forms in the Bernstein-Sato variables


@dataclass(frozen=True, order=False)
class LinearForm:
    """Integer form ``sum coeffs[j] * s_j + const``, stored primitive.

    The first nonzero entry of ``(*coeffs, const)`` is made positive.
    """

    coeffs: tuple[int, ...]
    const: int

    def __post_init__(self):
        entries = [Fraction(c) for c in self.coeffs] + [Fraction(self.const)]
        if all(e == 0 for e in entries):
            raise ValueError("zero linear form")
        ints = primitive_integer_vector(entries)
        if next(e for e in ints if e != 0) < 0:
            ints = tuple(-e for e in ints)
        object.__setattr__(self, "coeffs", tuple(ints[:-1]))
        object.__setattr__(self, "const", ints[-1])

    @classmethod
    def scaled(cls, coeffs, const) -> tuple[Fraction, "LinearForm"]:
        """``(c, F)`` with ``c * F`` equal to the given form and ``F`` primitive."""
        F = cls(tuple(coeffs), const)
        pairs = zip(list(coeffs) + [const], list(F.coeffs) + [F.const])
        a, b = next((Fraction(x), y) for x, y in pairs if y != 0)
        return a / b, F

    @classmethod
    def from_sum(cls, r, indices, const):
        """``sum_{j in indices} s_j + const`` in ``r`` variables."""
        coeffs = [0] * r
        for j in indices:
            coeffs[j] += 1
        return cls(tuple(coeffs), const)

    @property
    def nvars(self):
        return len(self.coeffs)

    def is_constant(self):
        return all(c == 0 for c in self.coeffs)

    def as_poly(self, variables) -> SparsePoly:
        return SparsePoly.linear(variables, self.coeffs, self.const)

    def evaluate(self, point) -> Fraction:
        return sum((c * Fraction(x) for c, x in zip(self.coeffs, point)), Fraction(self.const))

    def root(self) -> Fraction:
        """Zero of a one-variable form."""
        if self.nvars != 1 or self.coeffs[0] == 0:
            raise ValueError("root() needs a nonconstant one-variable form")
        return Fraction(-self.const, self.coeffs[0])

    def sort_key(self):
        return (sum(self.coeffs), tuple(-c for c in self.coeffs), self.const)

    def to_json(self):
        return {"coeffs": list(self.coeffs), "const": self.const}

    def render(self, variables=None) -> str:
        if variables is None:
            variables = ("s",) if self.nvars == 1 else tuple(f"s{j + 1}" for j in range(self.nvars))
        return str(self.as_poly(variables))

    def __str__(self):
        return self.render()


def s_variables(r: int) -> tuple[str, ...]:
    return ("s",) if r == 1 else tuple(f"s{j + 1}" for j in range(r))


def _linear_parts(L, nvars):
    if isinstance(L, LinearForm):
        return [Fraction(c) for c in L.coeffs], Fraction(L.const)
    if isinstance(L, SparsePoly):
        if L.degree() > 1:
            raise ValueError("not a linear polynomial")
        coeffs = []
        for i in range(nvars):
            e = [0] * nvars
            e[i] = 1
            coeffs.append(L.coeff(e))
        return coeffs, L.constant_term()
    raise TypeError(f"unsupported linear form {L!r}")


def divides_linear(p: SparsePoly, L):
    """Test whether the linear polynomial ``L`` divides ``p``.

    Synthetic division in the first variable ``s_v`` with a nonzero
    coefficient, highest power of ``s_v`` first.  The remainder is free of
    ``s_v``, so it vanishes iff ``L`` divides ``p``.
    Returns ``(True, quotient)`` or ``(False, None)``.
    """
    coeffs, const = _linear_parts(L, p.nvars)
    if len(coeffs) != p.nvars:
        raise ValueError("form and polynomial have different arity")
    try:
        v = next(i for i, c in enumerate(coeffs) if c != 0)
    except StopIteration:
        if const == 0:
            raise ValueError("zero linear form") from None
        return True, p / const
    cv = coeffs[v]
    n = p.nvars
    # the other monomials of L, as (exponent shift, coefficient)
    rest = [(tuple(int(k == j) for k in range(n)), c) for j, c in enumerate(coeffs) if c and j != v]
    if const:
        rest.append(((0,) * n, const))
    rem = p.as_dict()
    quot = {}
    top = max((e[v] for e in rem), default=0)
    for level in range(top, 0, -1):
        for e in [e for e in rem if e[v] == level]:
            c = rem.pop(e) / cv
            qe = e[:v] + (level - 1,) + e[v + 1:]
            quot[qe] = c
            for shift, lc in rest:
                te = tuple(a + b for a, b in zip(qe, shift))
                val = rem.get(te, 0) - c * lc
                if val:
                    rem[te] = val
                else:
                    rem.pop(te, None)
    if rem:
        return False, None
    return True, SparsePoly(p.variables, quot)


def det_poly(m: Sequence[Sequence[SparsePoly]]) -> SparsePoly:
    """Determinant of a small square matrix of polynomials (Laplace expansion)."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_poly(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return SparsePoly.zero(m[0][0].variables)
    return total
