"""Acceptance criteria, one timed check each.

Every check records a single PASS/FAIL line with its measured runtime and
bound; pytest prints them in a terminal summary section, and running this
file directly prints them to stdout.
"""
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402

from arrbs.arrangement import essentialize, product, restrict  # noqa: E402
from arrbs.bsideal import (  # noqa: E402
    cc_multiplicity,
    free_roots,
    lower_bound_components,
    maisonobe_generator,
    specialize_diagonal,
)
from arrbs.corpus import boolean, builtin_corpus, complete, generic_lines  # noqa: E402
from arrbs.exactmath import LinearForm, univariate  # noqa: E402
from arrbs.freeness import Free, NotFree, saito_search, terao_exponents, verify_certificate  # noqa: E402
from arrbs.lattice import Lattice  # noqa: E402
from arrbs.zeta import (  # noqa: E402
    RationalFunction,
    specialize_zeta,
    verify_smc,
    zeta_fiber,
    zeta_global,
    zeta_global_collapsed,
)

BUDUR = complete(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "budur")
F = Fraction


class Criterion:
    """Time a block, record one line, re-raise on failure.

    With ``per_case`` the bound applies to the slowest case timed by :meth:`case`.
    """

    def __init__(self, number, title, bound, per_case=False):
        self.number, self.title, self.bound = number, title, bound
        self.per_case = per_case
        self.case_times = []

    def case(self):
        return _CaseTimer(self.case_times)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if self.per_case:
            elapsed = max(self.case_times, default=0.0)
        slow = elapsed >= self.bound
        ok = exc_type is None and not slow
        detail = ""
        if exc_type is not None:
            detail = f"  [{exc_type.__name__}: {exc}]"
        elif slow:
            detail = "  [runtime bound exceeded]"
        ACCEPTANCE_LINES.append(
            f"criterion {self.number} {'PASS' if ok else 'FAIL'}  {self.title}  "
            f"({'max per case ' if self.per_case else ''}{elapsed:.3f}s < {self.bound:g}s){detail}"
        )
        if exc_type is None and slow:
            raise AssertionError(f"criterion {self.number} took {elapsed:.3f}s, bound {self.bound}s")
        return False


class _CaseTimer:
    def __init__(self, sink):
        self.sink = sink

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        self.sink.append(time.perf_counter() - self.start)
        return False


def random_arrangements(count, seed=2026, max_dim=4, max_p=8):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_dim)
        p = rng.randint(1, max_p)
        normals = []
        for _ in range(p):
            v = [rng.randint(-2, 2) for _ in range(n)]
            if any(v):
                normals.append(v)
        if normals:
            out.append(complete(n, normals, f"random-{len(out)}"))
    return out


def test_criterion_1_budur_generator():
    with Criterion(1, "Budur example: 8 lower-bound forms equal the generator factors", 1.0):
        forms = set(lower_bound_components(Lattice(BUDUR)))
        expected = {LinearForm(tuple(int(i == j) for j in range(4)), 1) for i in range(4)}
        expected |= {LinearForm((1, 1, 1, 1), 3 + k) for k in range(4)}
        assert len(forms) == 8 and forms == expected


def test_criterion_2_budur_not_free():
    with Criterion(2, "Budur example declared NotFree by the Terao obstruction", 1.0):
        res = saito_search(BUDUR.reduced())
        assert isinstance(res, NotFree)
        chi = univariate([-1, 1]) * univariate([3, -3, 1])
        assert res.char_poly == chi
        assert terao_exponents(Lattice(BUDUR)) is None


def test_criterion_3_free_roots():
    cases = [(f"boolean{n}", boolean(n), {F(-1)}) for n in range(1, 5)]
    cases += [
        (f"{d} generic lines", generic_lines(d), {F(-1)} | {F(-k, d) for k in range(2, 2 * d - 1)})
        for d in range(3, 7)
    ]
    with Criterion(3, "free roots: Boolean n=1..4, generic lines d=3..6, generator consistency", 1.0, per_case=True) as c:
        for label, A, literature in cases:
            with c.case():
                L = Lattice(A)
                roots = free_roots(L)
                assert roots == literature, label
                assert specialize_diagonal(maisonobe_generator(L)).roots == roots, label


def test_criterion_4_zeta_closed_forms():
    with Criterion(4, "zeta closed forms (generic lines d=3..6, Budur example)", 5.0):
        for d in range(3, 7):
            Zs = specialize_zeta(zeta_global(generic_lines(d)))
            expected = RationalFunction(1, univariate([2, 2 - d], "s"))
            expected = expected * RationalFunction.inverse_linear((d,), 2) * RationalFunction.inverse_linear((1,), 1)
            assert Zs == expected
            assert Zs.is_reduced()
        Zs = specialize_zeta(zeta_global(BUDUR))
        expected = RationalFunction(1, univariate([3, -2, 1], "s"))
        expected = expected * RationalFunction.inverse_linear((4,), 3) * RationalFunction.inverse_linear((1,), 1, 2)
        assert Zs == expected
        assert Zs.denominator == expected.reduced().denominator


def test_criterion_5_smc_corpus():
    with Criterion(5, "verify_smc passes on the whole corpus, (x,x,y) included", 10.0):
        corpus = builtin_corpus()
        assert "x2y" in corpus and not corpus["x2y"].is_reduced()
        bad = [name for name, A in corpus.items() if not verify_smc(A.complete_factorization()).passed]
        assert not bad, bad


def _deletion_restriction(arrs):
    power = lambda n: univariate([0] * n + [1])
    checked = 0
    for A in arrs:
        L = Lattice(A)
        for i in range(A.p):
            D = power(A.dim) if A.p == 1 else Lattice(A.delete(i)).char_poly()
            R = restrict(A, L.hyperplane_edge(i)) if A.dim > 1 else None
            RC = power(A.dim - 1) if R is None else Lattice(R).char_poly()
            assert L.char_poly() == D - RC, f"deletion-restriction fails for {A.name}, H{i}"
        checked += 1
    return checked


def test_criterion_6_property_suites():
    with Criterion(6, "property suites (deletion-restriction, density, positivity, strata, zeta, Saito)", 60.0):
        arrs = random_arrangements(60)
        assert _deletion_restriction(arrs) >= 50

        corpus = list(builtin_corpus().values())
        for A in corpus + arrs:
            L = Lattice(A)
            assert sum(L.stratum_euler(W) for W in L.edges) == 1
            for W in L.edges:
                if W.rank == 0:
                    continue
                dense = L.is_dense(W)
                assert dense == L.is_dense_by_decomposition(W)
                if dense:
                    assert cc_multiplicity(L, W) > 0
                else:
                    assert L.proj_complement_euler(W) == 0

        small = [A for A in corpus + arrs[:20] if A.factors <= 5]
        for A, B in zip(small[:8], small[1:9]):
            EA, _ = essentialize(A)
            EB, _ = essentialize(B)
            r = EA.factors + EB.factors
            assert zeta_fiber(product(EA, EB)) == zeta_fiber(EA).embed(r, 0) * zeta_fiber(EB).embed(r, EA.factors)
        for A in corpus + arrs[:30]:
            assert zeta_global(A) == zeta_global_collapsed(A)

        for A in corpus + arrs:
            res = saito_search(A.reduced())
            if isinstance(res, Free):
                assert verify_certificate(res.arrangement, res)
                assert sorted(d.degree for d in res.certificate) == list(terao_exponents(Lattice(res.arrangement)))


if __name__ == "__main__":
    status = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                status = 1
    print("\n".join(ACCEPTANCE_LINES))
    sys.exit(status)
