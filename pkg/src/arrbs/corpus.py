"""Built-in arrangements used by the CLI, the experiment scripts and the tests."""
from __future__ import annotations

import itertools

from .arrangement import Arrangement, essentialize


def complete(dim, normals, name) -> Arrangement:
    """One factor per listed normal (repeats allowed, giving non-reduced ``f``)."""
    r = len(normals)
    hyps = [(nv, [int(j == i) for j in range(r)]) for i, nv in enumerate(normals)]
    return Arrangement.build(dim, r, hyps, name)


def boolean(n) -> Arrangement:
    return complete(n, [[int(i == j) for j in range(n)] for i in range(n)], f"boolean{n}")


def generic_lines(d) -> Arrangement:
    """``d`` pairwise independent lines through the origin of C^2."""
    normals = [[1, k] for k in range(d - 1)] + [[0, 1]]
    return complete(2, normals, f"generic-2-{d}")


def braid(n) -> Arrangement:
    """Essentialized braid arrangement ``x_i - x_j`` in C^n (rank ``n - 1``)."""
    normals = []
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        normals.append(v)
    A = complete(n, normals, f"braid-{n}")
    B, _ = essentialize(A)
    return Arrangement(B.dim, B.factors, B.normals, B.mults, f"braid-{n}")


def builtin_corpus() -> dict[str, Arrangement]:
    out = {}
    for n in range(1, 5):
        out[f"boolean{n}"] = boolean(n)
    for d in range(2, 7):
        out[f"generic-2-{d}"] = generic_lines(d)
    out["xy(x+y)"] = complete(2, [[1, 0], [0, 1], [1, 1]], "xy(x+y)")
    out["braid-4"] = braid(4)
    out["budur-example"] = complete(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "budur-example")
    out["x2y"] = complete(2, [[1, 0], [1, 0], [0, 1]], "x2y")
    out["supersolvable-3"] = complete(
        3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1]], "supersolvable-3"
    )
    return out


def get(name) -> Arrangement:
    corpus = builtin_corpus()
    if name not in corpus:
        raise KeyError(f"unknown corpus arrangement {name!r}; known: {', '.join(corpus)}")
    return corpus[name]
