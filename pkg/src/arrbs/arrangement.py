"""Central hyperplane arrangements with a factorization of their defining polynomial.

A hyperplane is a rational normal vector plus a vector of multiplicities, one
entry per factor ``f_j`` of ``f = f_1 ... f_r``.  The multiplicity matrix
(hyperplane x factor) covers complete, general and single factorizations.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath import (
    canonical_direction,
    format_rational,
    kernel_basis,
    linsolve,
    parse_rational,
    primitive_integer_vector,
    rank,
    rref,
)


class ArrangementError(ValueError):
    """Invalid arrangement data (carries line/field diagnostics in its message)."""


class FactorizationKind(enum.Enum):
    COMPLETE = "complete"
    GENERAL = "general"
    SINGLE = "single"


@dataclass(frozen=True)
class Arrangement:
    dim: int
    factors: int
    normals: tuple[tuple[Fraction, ...], ...]
    mults: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim <= 0:
            raise ArrangementError(f"dim must be positive, got {self.dim}")
        if self.factors <= 0:
            raise ArrangementError(f"factors must be positive, got {self.factors}")
        if len(self.normals) != len(self.mults):
            raise ArrangementError("normals and mults differ in length")
        for i, (nv, mv) in enumerate(zip(self.normals, self.mults)):
            if len(nv) != self.dim:
                raise ArrangementError(f"hyperplane {i}: normal has length {len(nv)}, expected {self.dim}")
            if len(mv) != self.factors:
                raise ArrangementError(f"hyperplane {i}: mults has length {len(mv)}, expected {self.factors}")
            if any(m < 0 for m in mv) or sum(mv) < 1:
                raise ArrangementError(f"hyperplane {i}: mults must be >= 0 and not all 0")
            if canonical_direction(nv) != tuple(nv):
                raise ArrangementError(f"hyperplane {i}: normal not in canonical form (use Arrangement.build)")
        if len(set(self.normals)) != len(self.normals):
            raise ArrangementError("duplicate hyperplanes (use Arrangement.build to merge)")

    @classmethod
    def build(cls, dim, factors, hyperplanes, name=""):
        """Validate ``[(normal, mults), ...]``, canonicalize normals and merge proportional ones."""
        if not isinstance(dim, int) or dim <= 0:
            raise ArrangementError(f"dim must be a positive integer, got {dim!r}")
        if not isinstance(factors, int) or factors <= 0:
            raise ArrangementError(f"factors must be a positive integer, got {factors!r}")
        order = []
        merged = {}
        for i, (normal, mults) in enumerate(hyperplanes):
            try:
                normal = [parse_rational(x) for x in normal]
            except ValueError as exc:
                raise ArrangementError(f"hyperplane {i}: {exc}") from None
            if len(normal) != dim:
                raise ArrangementError(f"hyperplane {i}: normal has {len(normal)} entries, expected {dim}")
            if all(x == 0 for x in normal):
                raise ArrangementError(f"hyperplane {i}: zero normal")
            mults = list(mults)
            if len(mults) != factors:
                raise ArrangementError(f"hyperplane {i}: {len(mults)} multiplicities, expected {factors}")
            if not all(isinstance(m, int) and not isinstance(m, bool) for m in mults):
                raise ArrangementError(f"hyperplane {i}: multiplicities must be integers")
            if any(m < 0 for m in mults) or sum(mults) < 1:
                raise ArrangementError(f"hyperplane {i}: multiplicities must be >= 0 and not all 0")
            key = canonical_direction(normal)
            if key in merged:
                merged[key] = [a + b for a, b in zip(merged[key], mults)]
            else:
                merged[key] = mults
                order.append(key)
        return cls(dim, factors, tuple(order), tuple(tuple(merged[k]) for k in order), name)

    # basic properties
    def __len__(self):
        return len(self.normals)

    @property
    def p(self):
        return len(self.normals)

    def total_mult(self, i):
        return sum(self.mults[i])

    def total_mult_vector(self, indices=None):
        """Per-factor multiplicity summed over the given hyperplanes."""
        if indices is None:
            indices = range(self.p)
        out = [0] * self.factors
        for i in indices:
            for j, m in enumerate(self.mults[i]):
                out[j] += m
        return tuple(out)

    @property
    def kind(self) -> FactorizationKind:
        cols_ok = all(
            sorted(self.mults[i][j] for i in range(self.p) if self.mults[i][j]) == [1]
            for j in range(self.factors)
        )
        if cols_ok:
            return FactorizationKind.COMPLETE
        if self.factors == 1:
            return FactorizationKind.SINGLE
        return FactorizationKind.GENERAL

    def is_complete(self):
        return self.kind is FactorizationKind.COMPLETE

    def is_reduced(self):
        return all(self.total_mult(i) == 1 for i in range(self.p))

    def rank(self):
        return rank(self.normals, self.dim)

    def is_essential(self):
        return self.rank() == self.dim

    def factor_owner(self, j):
        """Hyperplane index of factor ``j`` (complete factorizations only)."""
        for i in range(self.p):
            if self.mults[i][j]:
                return i
        raise ArrangementError(f"factor {j} owns no hyperplane")

    def integer_normal(self, i):
        return primitive_integer_vector(self.normals[i])

    # derived arrangements
    def reduced(self) -> "Arrangement":
        """Same hyperplanes, each counted once, single factor."""
        return Arrangement(self.dim, 1, self.normals, tuple((1,) for _ in self.normals), self.name)

    def complete_factorization(self) -> "Arrangement":
        """One factor per linear factor of ``f`` (repeated hyperplanes repeated)."""
        cols = []
        for i in range(self.p):
            cols.extend([i] * self.total_mult(i))
        r = len(cols)
        mults = [[0] * r for _ in range(self.p)]
        for j, i in enumerate(cols):
            mults[i][j] = 1
        return Arrangement(self.dim, r, self.normals, tuple(tuple(m) for m in mults), self.name)

    def merge_factors(self, blocks: Sequence[int]) -> "Arrangement":
        """Merge factor columns: old factor ``j`` goes to new factor ``blocks[j]``."""
        if len(blocks) != self.factors:
            raise ArrangementError("need one block label per factor")
        r = max(blocks) + 1
        mults = []
        for mv in self.mults:
            row = [0] * r
            for j, m in enumerate(mv):
                row[blocks[j]] += m
            mults.append(tuple(row))
        return Arrangement(self.dim, r, self.normals, tuple(mults), self.name)

    def subarrangement(self, indices: Sequence[int]) -> "Arrangement":
        indices = list(indices)
        if not indices:
            raise ArrangementError("empty subarrangement")
        return Arrangement(
            self.dim, self.factors,
            tuple(self.normals[i] for i in indices),
            tuple(self.mults[i] for i in indices),
            self.name,
        )

    def delete(self, i) -> "Arrangement":
        return self.subarrangement([k for k in range(self.p) if k != i])

    def linear_change(self, g: Sequence[Sequence]) -> "Arrangement":
        """Arrangement in new coordinates ``y`` with ``x = g y`` (g invertible)."""
        g = [[parse_rational(x) for x in row] for row in g]
        if rank(g, self.dim) != self.dim:
            raise ArrangementError("coordinate change must be invertible")
        hyps = []
        for nv, mv in zip(self.normals, self.mults):
            new = [sum(nv[k] * g[k][c] for k in range(self.dim)) for c in range(self.dim)]
            hyps.append((new, mv))
        return Arrangement.build(self.dim, self.factors, hyps, self.name)

    # serialization
    def to_json_obj(self):
        obj = {
            "dim": self.dim,
            "factors": self.factors,
            "hyperplanes": [
                {"normal": [str(x) for x in self.integer_normal(i)], "mults": list(self.mults[i])}
                for i in range(self.p)
            ],
        }
        if self.name:
            obj = {"name": self.name, **obj}
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    def to_plain(self) -> str:
        lines = [f"{self.dim} {self.factors}"]
        for i in range(self.p):
            lines.append(
                " ".join(str(x) for x in self.integer_normal(i))
                + " : "
                + " ".join(str(m) for m in self.mults[i])
            )
        return "\n".join(lines) + "\n"

    def polynomial_string(self, names=None) -> str:
        if names is None:
            names = ("x", "y", "z", "w") if self.dim <= 4 else tuple(f"x{i + 1}" for i in range(self.dim))
        parts = []
        for i in range(self.p):
            coeffs = self.integer_normal(i)
            terms = []
            for c, v in zip(coeffs, names):
                if c == 0:
                    continue
                mag = "" if abs(c) == 1 else str(abs(c))
                terms.append(("-" if c < 0 else "+", mag + v))
            s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, t in terms[1:]:
                s += sign + t
            s = f"({s})" if len(terms) > 1 else s
            m = self.total_mult(i)
            parts.append(s if m == 1 else f"{s}^{m}")
        return "*".join(parts)


# ---------------------------------------------------------------------------
# parsing


def parse(text: str, fmt: str | None = None, name: str = "") -> Arrangement:
    """Parse the plain or JSON format; ``fmt=None`` sniffs the first character."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "plain"
    if fmt == "json":
        return _parse_json(text, name)
    if fmt == "plain":
        return _parse_plain(text, name)
    raise ValueError(f"unknown format {fmt!r}")


def _parse_json(text, name):
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise ArrangementError("top-level JSON value must be an object")
    for key in ("dim", "factors", "hyperplanes"):
        if key not in obj:
            raise ArrangementError(f"missing field {key!r}")
    if not isinstance(obj["hyperplanes"], list):
        raise ArrangementError("'hyperplanes' must be a list")
    hyps = []
    for i, h in enumerate(obj["hyperplanes"]):
        if not isinstance(h, dict) or "normal" not in h or "mults" not in h:
            raise ArrangementError(f"hyperplanes[{i}]: needs 'normal' and 'mults'")
        for affine in ("const", "constant", "offset"):
            if affine in h and parse_rational(h[affine]) != 0:
                raise ArrangementError(f"hyperplanes[{i}]: affine constant present; only central arrangements")
        hyps.append((h["normal"], h["mults"]))
    return Arrangement.build(obj["dim"], obj["factors"], hyps, obj.get("name", name))


def _parse_plain(text, name):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ArrangementError("empty input")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ArrangementError(f"line {lineno}: header must be 'n r'")
    try:
        n, r = int(parts[0]), int(parts[1])
    except ValueError:
        raise ArrangementError(f"line {lineno}: header must be two integers") from None
    if n <= 0:
        raise ArrangementError(f"line {lineno}: n must be positive")
    if r <= 0:
        raise ArrangementError(f"line {lineno}: r must be positive")
    hyps = []
    for lineno, line in rows[1:]:
        if ":" not in line:
            raise ArrangementError(f"line {lineno}: expected 'a_1 ... a_n : m_1 ... m_r'")
        left, right = line.split(":", 1)
        coeffs = left.split()
        if len(coeffs) == n + 1:
            raise ArrangementError(f"line {lineno}: affine constant present; only central arrangements")
        if len(coeffs) != n:
            raise ArrangementError(f"line {lineno}: {len(coeffs)} coefficients, expected {n}")
        try:
            normal = [parse_rational(c) for c in coeffs]
        except ValueError as exc:
            raise ArrangementError(f"line {lineno}: {exc}") from None
        if all(c == 0 for c in normal):
            raise ArrangementError(f"line {lineno}: zero normal")
        try:
            mults = [int(m) for m in right.split()]
        except ValueError:
            raise ArrangementError(f"line {lineno}: multiplicities must be integers") from None
        if len(mults) != r:
            raise ArrangementError(f"line {lineno}: {len(mults)} multiplicities, expected {r}")
        if any(m < 0 for m in mults) or sum(mults) < 1:
            raise ArrangementError(f"line {lineno}: multiplicities must be >= 0 and not all 0")
        hyps.append((normal, mults))
    if not hyps:
        raise ArrangementError("no hyperplanes")
    return Arrangement.build(n, r, hyps, name)


def load(path) -> Arrangement:
    from pathlib import Path

    path = Path(path)
    text = path.read_text()
    fmt = "json" if path.suffix == ".json" else None
    return parse(text, fmt, name=path.stem)


# ---------------------------------------------------------------------------
# structural operations


def essentialize(A: Arrangement):
    """Rewrite ``A`` in coordinates on the span of its normals.

    Each normal is expressed in the RREF basis of the normal span, which
    amounts to reading off its pivot-column entries.  Returns ``(A_ess, rank)``.
    """
    basis, pivots, k = rref(A.normals, A.dim)
    if k == A.dim:
        return A, k
    hyps = [([nv[c] for c in pivots], mv) for nv, mv in zip(A.normals, A.mults)]
    return Arrangement.build(k, A.factors, hyps, A.name), k


def _check_edge(A: Arrangement, W):
    from .exactmath import in_row_space

    if not W.J:
        return
    if max(W.J) >= A.p or len(W.key[0]) != A.dim:
        raise ArrangementError("edge does not belong to this arrangement")
    closure = frozenset(i for i in range(A.p) if in_row_space(W.key, A.normals[i]))
    span = rank([A.normals[i] for i in W.J], A.dim)
    if closure != W.J or span != W.rank:
        raise ArrangementError("edge does not belong to this arrangement")


def localize(A: Arrangement, W) -> Arrangement:
    """Hyperplanes containing ``W`` (same ambient space, multiplicities kept)."""
    _check_edge(A, W)
    if not W.J:
        raise ArrangementError("localization at the ambient space is empty")
    return A.subarrangement(sorted(W.J))


def restrict(A: Arrangement, W) -> Arrangement | None:
    """Traces ``H cap W`` of hyperplanes not containing ``W``, in coordinates on ``W``.

    Returns ``None`` when every hyperplane contains ``W`` (empty restriction).
    """
    _check_edge(A, W)
    d = A.dim - W.rank
    if d == 0:
        raise ArrangementError("cannot restrict to the zero subspace")
    if W.rank == 0:
        basis = [tuple(Fraction(int(i == j)) for i in range(A.dim)) for j in range(A.dim)]
    else:
        basis = kernel_basis(W.key, A.dim)
    hyps = []
    for i in range(A.p):
        if i in W.J:
            continue
        trace = [sum(a * b for a, b in zip(A.normals[i], v)) for v in basis]
        hyps.append((trace, A.mults[i]))
    if not hyps:
        return None
    return Arrangement.build(d, A.factors, hyps, A.name)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def connected_blocks(normals: Sequence[Sequence], dim: int) -> list[list[int]]:
    """Components of the linear matroid on ``normals`` via fundamental circuits.

    A greedy basis is chosen; every other element is written in that basis and
    is joined with the basis elements in its support.
    """
    n = len(normals)
    uf = _UnionFind(n)
    basis = []
    for i in range(n):
        if rank([normals[b] for b in basis] + [normals[i]], dim) > len(basis):
            basis.append(i)
            continue
        # solve sum_b c_b normal_b = normal_i
        cols = [[normals[b][k] for b in basis] for k in range(dim)]
        c = linsolve(cols, normals[i], len(basis))
        for b, coef in zip(basis, c):
            if coef != 0:
                uf.union(i, b)
    blocks = {}
    for i in range(n):
        blocks.setdefault(uf.find(i), []).append(i)
    return sorted(blocks.values())


def decompose(A: Arrangement) -> list[Arrangement]:
    """Irreducible factors of an essential arrangement, each re-essentialized."""
    if not A.is_essential():
        raise ArrangementError("decompose needs an essential arrangement (essentialize first)")
    blocks = connected_blocks(A.normals, A.dim)
    return [essentialize(A.subarrangement(b))[0] for b in blocks]


def is_irreducible(A: Arrangement) -> bool:
    return len(connected_blocks(A.normals, A.dim)) == 1


def brute_force_blocks(normals: Sequence[Sequence], dim: int) -> list[list[int]]:
    """Finest separation into independent blocks by trying every bipartition.

    Exponential; kept as a cross-check for :func:`connected_blocks`.
    """

    def split(idx):
        if len(idx) <= 1:
            return [list(idx)]
        total = rank([normals[i] for i in idx], dim)
        first, rest = idx[0], idx[1:]
        for k in range(0, len(rest)):
            for combo in itertools.combinations(rest, k):
                e1 = [first, *combo]
                e2 = [i for i in rest if i not in combo]
                r1 = rank([normals[i] for i in e1], dim)
                r2 = rank([normals[i] for i in e2], dim)
                if r1 + r2 == total:
                    return split(e1) + split(e2)
        return [list(idx)]

    return sorted(sorted(b) for b in split(list(range(len(normals)))))


def product(A: Arrangement, B: Arrangement) -> Arrangement:
    """``A x B`` in the direct sum of the ambient spaces, factors concatenated."""
    hyps = []
    for nv, mv in zip(A.normals, A.mults):
        hyps.append((list(nv) + [0] * B.dim, list(mv) + [0] * B.factors))
    for nv, mv in zip(B.normals, B.mults):
        hyps.append(([0] * A.dim + list(nv), [0] * A.factors + list(mv)))
    return Arrangement.build(A.dim + B.dim, A.factors + B.factors, hyps)


def format_normal(A: Arrangement, i) -> list[str]:
    return [format_rational(x) for x in A.normals[i]]
