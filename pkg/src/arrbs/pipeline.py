"""Full analysis of one arrangement: lattice, density, freeness, BS data, zeta, SMC check."""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import bsideal, freeness, zeta
from .arrangement import Arrangement
from .exactmath import format_rational
from .lattice import Lattice

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    max_degree: int | None = None
    assume_free: bool = False
    strict: bool = False
    shifts: tuple[int, int] = (1, 1)
    timings: bool = False


def freeness_json(res) -> dict:
    out = {"verdict": res.verdict}
    if isinstance(res, freeness.Free):
        out["exponents"] = list(res.exponents)
        out["saito_constant"] = format_rational(res.constant)
        out["certificate"] = [d.to_json() for d in res.certificate]
    elif isinstance(res, freeness.NotFree):
        out["obstruction"] = res.obstruction
        out["char_poly"] = str(res.char_poly)
    else:
        out["reason"] = res.reason
        out["bound"] = res.bound
    return out


def edge_json(L: Lattice, W) -> dict:
    return {"J": sorted(W.J), "Jf": sorted(W.Jf), "rank": W.rank, "key": W.integer_key()}


def complete_version(A: Arrangement) -> tuple[Arrangement, bool]:
    """``A`` itself if its factorization is complete, else the completed factorization."""
    if A.is_complete():
        return A, False
    return A.complete_factorization(), True


def run_report(A: Arrangement, config: PipelineConfig = PipelineConfig()) -> dict:
    times = {}
    clock = time.perf_counter

    t0 = clock()
    L = Lattice(A)
    times["lattice"] = clock() - t0

    t0 = clock()
    dense = []
    for W in L.dense_edges:
        q1 = L.proj_complement_euler(W)
        dense.append({**edge_json(L, W), "proj_complement_euler": q1,
                      "cc_multiplicity": bsideal.cc_multiplicity(L, W)})
    times["dense"] = clock() - t0

    t0 = clock()
    free = freeness.decide(A, config.max_degree)
    times["freeness"] = clock() - t0

    t0 = clock()
    Ac, completed = complete_version(A)
    Lc = Lattice(Ac) if completed else L
    bs: dict = {"factorization_completed": completed}
    red = A.reduced()
    Lr = Lattice(red)
    try:
        rep = bsideal.b_function_roots(Lr, free, config.assume_free)
        bs["roots"] = {"status": rep.status, "values": bsideal.format_roots(rep.roots)}
    except bsideal.NotFreeError as exc:
        bs["roots"] = {"status": "refused", "reason": str(exc)}
    if A.is_reduced() and (isinstance(free, freeness.Free) or config.assume_free):
        gen = bsideal.maisonobe_generator(Lc)
        bs["generator"] = [str(F) for F in gen.factors]
        bs["generator_specialized_roots"] = bsideal.format_roots(
            bsideal.specialize_diagonal(gen, isinstance(free, freeness.Free)).roots
        )
    lower = bsideal.lower_bound_components(Lc)
    bs["lower_bound"] = {"count": len(lower), "forms": [F.to_json() | {"form": str(F)} for F in lower]}
    bs["lower_bound_specialized_roots"] = bsideal.format_roots(bsideal.specialize_diagonal(lower).roots)
    lo, hi = config.shifts
    bs["cc_components"] = [
        {"J": sorted(c.edge.J), "rank": c.edge.rank, "shift": c.shift,
         "multiplicity": c.multiplicity, "form": str(c.form)}
        for c in bsideal.cc_components(Lc, range(lo, hi + 1))
    ]
    times["bs"] = clock() - t0

    t0 = clock()
    Z = zeta.zeta_global(A, L)
    Zs = zeta.specialize_zeta(Z)
    zeta_out = {
        "multivariable": Z.to_json(),
        "display": str(Z),
        "single_variable": Zs.to_json(),
        "poles": [{"form": str(F), "order": k} for F, k in Z.poles()],
        "single_variable_poles": [
            {"root": format_rational(F.root()), "order": k} for F, k in Zs.poles()
        ],
    }
    times["zeta"] = clock() - t0

    t0 = clock()
    smc = zeta.verify_smc(Ac, Lc)
    times["smc"] = clock() - t0

    report = {
        "schema_version": SCHEMA_VERSION,
        "arrangement": A.to_json_obj(),
        "polynomial": A.polynomial_string(),
        "kind": A.kind.value,
        "reduced": A.is_reduced(),
        "lattice": {
            "rank_counts": list(L.rank_counts()),
            "char_poly": str(L.char_poly()),
            "edges": len(L),
        },
        "dense_edges": dense,
        "freeness": freeness_json(free),
        "bs": bs,
        "zeta": zeta_out,
        "smc": smc.to_json(),
    }
    if A.is_reduced():
        from .lattice import lct

        report["lct"] = format_rational(lct(A, L))
    if config.timings:
        report["timings"] = {k: round(v, 6) for k, v in times.items()}
    return report
