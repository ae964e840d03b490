"""``arr``: command-line front end.

Exit codes: 0 ok, 1 usage or unreadable input, 2 validation, 3 inconclusive
freeness under ``--strict``, 4 strong-monodromy violation (an internal bug).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bsideal, corpus, freeness, zeta
from .arrangement import ArrangementError, load
from .exactmath import format_rational
from .lattice import Lattice
from .pipeline import SCHEMA_VERSION, PipelineConfig, complete_version, freeness_json, run_report

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_INCONCLUSIVE, EXIT_SMC = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _shifts(text):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shifts must look like a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty shift range")
    return lo, hi


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true", help="exit 3 on inconclusive freeness")
    common.add_argument("--assume-free", action="store_true", help="use free-arrangement formulas without a certificate")
    common.add_argument("--max-degree", type=int, default=None, metavar="K", help="degree bound for the Saito search")
    common.add_argument("--single-variable", action="store_true", help="specialize s_j -> s")
    common.add_argument("--shifts", type=_shifts, default=(1, 1), metavar="a..b", help="shift range for cc")
    common.add_argument("--timings", action="store_true", help="include timings in report output")

    p = _Parser(prog="arr", description="Lattice invariants controlling Bernstein-Sato ideals of arrangements.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("lattice", "intersection lattice"),
        ("dense", "dense edges"),
        ("charpoly", "characteristic polynomial"),
        ("freeness", "decide freeness (Saito certificate)"),
        ("bs-roots", "b-function roots of a free arrangement"),
        ("bs-ideal", "generator of the Bernstein-Sato ideal of a free arrangement"),
        ("bs-lower", "lower-bound components of the zero locus"),
        ("cc", "relative characteristic cycle components"),
        ("zeta", "topological zeta function"),
        ("verify-smc", "check poles against the zero-locus components"),
        ("report", "full pipeline"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="arrangement file (.json or plain) or corpus:NAME")
    sp = sub.add_parser("corpus", parents=[common], help="list, export or verify the built-in corpus")
    sp.add_argument("--write", metavar="DIR", help="write every corpus arrangement to DIR")
    sp.add_argument("--verify", action="store_true", help="run verify-smc on every corpus arrangement")
    return p


def read_arrangement(spec):
    if spec.startswith("corpus:"):
        try:
            return corpus.get(spec[len("corpus:"):])
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    try:
        return load(spec)
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {spec}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse {spec}: {exc}") from None


def emit(args, obj, text, out):
    if args.json:
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _freeness_status(A, args):
    res = freeness.decide(A, args.max_degree)
    code = EXIT_INCONCLUSIVE if args.strict and isinstance(res, freeness.Inconclusive) else EXIT_OK
    return res, code


def cmd_lattice(A, args, out, err):
    L = Lattice(A)
    edges = L.to_json_obj()
    lines = [f"{len(L)} edges, rank counts {list(L.rank_counts())}"]
    for e in edges:
        lines.append(
            f"rank {e['rank']}  J={e['J']}  mu={e['mobius']}  dense={'yes' if e['dense'] else 'no'}  key={e['key']}"
        )
    emit(args, {"rank_counts": list(L.rank_counts()), "edges": edges}, "\n".join(lines), out)
    return EXIT_OK


def cmd_dense(A, args, out, err):
    L = Lattice(A)
    rows = []
    lines = []
    for W in L.dense_edges:
        q1 = L.proj_complement_euler(W)
        rows.append({"J": sorted(W.J), "rank": W.rank, "proj_complement_euler": q1,
                     "cc_multiplicity": bsideal.cc_multiplicity(L, W), "key": W.integer_key()})
        lines.append(f"J={sorted(W.J)}  rank {W.rank}  chi={q1}")
    emit(args, {"dense_edges": rows}, "\n".join(lines), out)
    return EXIT_OK


def cmd_charpoly(A, args, out, err):
    L = Lattice(A)
    chi = L.char_poly()
    coeffs = [format_rational(c) for c in chi.univariate_coeffs()]
    obj = {"char_poly": str(chi), "coefficients": coeffs}
    if L.bottom.rank:
        obj["beta"] = L.proj_complement_euler(L.bottom)
    emit(args, obj, str(chi), out)
    return EXIT_OK


def cmd_freeness(A, args, out, err):
    res, code = _freeness_status(A, args)
    if isinstance(res, freeness.Free):
        text = f"free, exponents {list(res.exponents)}\n" + "\n".join(str(d) for d in res.certificate)
    elif isinstance(res, freeness.NotFree):
        text = f"not free: {res.obstruction}"
    else:
        text = f"inconclusive: {res.reason}"
    emit(args, {"freeness": freeness_json(res)}, text, out)
    return code


def cmd_bs_roots(A, args, out, err):
    if not A.is_reduced():
        raise ArrangementError("bs-roots needs a reduced arrangement")
    res, code = _freeness_status(A, args)
    rep = bsideal.b_function_roots(Lattice(A), res, args.assume_free)
    if not rep.certified:
        err.write(f"note: {rep.status} set (freeness: {res.verdict})\n")
    values = bsideal.format_roots(rep.roots)
    emit(args, {"roots": values, "status": rep.status}, " ".join(values), out)
    return code


def cmd_bs_ideal(A, args, out, err):
    if not A.is_reduced():
        raise ArrangementError("bs-ideal needs a reduced arrangement")
    res, code = _freeness_status(A, args)
    if not isinstance(res, freeness.Free) and not args.assume_free:
        raise bsideal.NotFreeError(f"freeness not certified ({res.verdict}); pass --assume-free to override")
    Ac, completed = complete_version(A)
    if completed:
        err.write("note: using the complete factorization of f\n")
    gen = bsideal.maisonobe_generator(Lattice(Ac))
    forms = [str(F) for F in gen.factors]
    emit(args, {"generator": [F.to_json() for F in gen.factors], "factors": forms},
         "\n".join(forms), out)
    return code


def cmd_bs_lower(A, args, out, err):
    Ac, completed = complete_version(A)
    if completed:
        err.write("note: using the complete factorization of f\n")
    forms = bsideal.lower_bound_components(Lattice(Ac))
    spec = bsideal.specialize_diagonal(forms)
    obj = {"components": [F.to_json() for F in forms], "count": len(forms),
           "specialized_roots": bsideal.format_roots(spec.roots)}
    if args.single_variable:
        text = " ".join(bsideal.format_roots(spec.roots))
    else:
        text = "\n".join(str(F) for F in forms)
    emit(args, obj, text, out)
    return EXIT_OK


def cmd_cc(A, args, out, err):
    Ac, completed = complete_version(A)
    if completed:
        err.write("note: using the complete factorization of f\n")
    lo, hi = args.shifts
    comps = bsideal.cc_components(Lattice(Ac), range(lo, hi + 1))
    rows = [{"J": sorted(c.edge.J), "rank": c.edge.rank, "shift": c.shift,
             "multiplicity": c.multiplicity, "form": c.form.to_json()} for c in comps]
    text = "\n".join(f"T*_W X x ({c.form} = 0)  J={sorted(c.edge.J)}  multiplicity {c.multiplicity}" for c in comps)
    emit(args, {"components": rows}, text, out)
    return EXIT_OK


def cmd_zeta(A, args, out, err):
    Z = zeta.zeta_global(A)
    if args.single_variable:
        Z = zeta.specialize_zeta(Z)
    obj = Z.to_json()
    obj["poles"] = [{**F.to_json(), "form": str(F), "order": k} for F, k in Z.poles()]
    text = f"Z = {Z}\npoles: " + ", ".join(
        f"{F} = 0" + (f" (order {k})" if k > 1 else "") for F, k in Z.poles()
    )
    emit(args, {"zeta": obj}, text, out)
    return EXIT_OK


def cmd_verify_smc(A, args, out, err):
    Ac, completed = complete_version(A)
    if completed:
        err.write("note: using the complete factorization of f\n")
    rep = zeta.verify_smc(Ac)
    lines = [f"{'ok  ' if p.matched else 'FAIL'} pole {p.form} = 0 (order {p.order})" for p in rep.poles]
    lines += [f"{'ok  ' if ok else 'FAIL'} single-variable pole {format_rational(q)}"
              for q, ok in rep.single_variable_poles]
    lines.append("pass" if rep.passed else "VIOLATION (implementation bug)")
    emit(args, {"smc": rep.to_json()}, "\n".join(lines), out)
    return EXIT_OK if rep.passed else EXIT_SMC


def cmd_report(A, args, out, err):
    cfg = PipelineConfig(args.max_degree, args.assume_free, args.strict, args.shifts, args.timings)
    rep = run_report(A, cfg)
    if args.json:
        out.write(json.dumps(rep, indent=2) + "\n")
    else:
        bs = rep["bs"]
        lines = [
            f"arrangement {rep['polynomial']}  (n={A.dim}, r={A.factors}, {rep['kind']})",
            f"lattice: rank counts {rep['lattice']['rank_counts']}, chi = {rep['lattice']['char_poly']}",
            f"dense edges: {len(rep['dense_edges'])}",
            f"freeness: {rep['freeness']['verdict']}",
            f"b-function roots ({bs['roots']['status']}): "
            + (" ".join(bs["roots"]["values"]) if "values" in bs["roots"] else "not free; use --assume-free"),
            f"lower-bound components: {bs['lower_bound']['count']}",
            f"zeta: {rep['zeta']['display']}",
            f"smc: {'pass' if rep['smc']['passed'] else 'VIOLATION'}",
        ]
        out.write("\n".join(lines) + "\n")
    if not rep["smc"]["passed"]:
        return EXIT_SMC
    if args.strict and rep["freeness"]["verdict"] == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_corpus(args, out, err):
    arrs = corpus.builtin_corpus()
    code = EXIT_OK
    if args.write:
        d = Path(args.write)
        d.mkdir(parents=True, exist_ok=True)
        for name, A in arrs.items():
            (d / f"{name}.json").write_text(A.to_json() + "\n")
    rows = []
    for name, A in arrs.items():
        row = {"name": name, "polynomial": A.polynomial_string(), "dim": A.dim, "factors": A.factors}
        if args.verify:
            rep = zeta.verify_smc(complete_version(A)[0])
            row["smc"] = rep.passed
            if not rep.passed:
                code = EXIT_SMC
        rows.append(row)
    text = "\n".join(
        f"{r['name']:<18} {r['polynomial']}" + (f"  smc {'pass' if r['smc'] else 'FAIL'}" if "smc" in r else "")
        for r in rows
    )
    emit(args, {"corpus": rows}, text, out)
    return code


COMMANDS = {
    "lattice": cmd_lattice,
    "dense": cmd_dense,
    "charpoly": cmd_charpoly,
    "freeness": cmd_freeness,
    "bs-roots": cmd_bs_roots,
    "bs-ideal": cmd_bs_ideal,
    "bs-lower": cmd_bs_lower,
    "cc": cmd_cc,
    "zeta": cmd_zeta,
    "verify-smc": cmd_verify_smc,
    "report": cmd_report,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "corpus":
            return cmd_corpus(args, out, err)
        A = read_arrangement(args.file)
        return COMMANDS[args.command](A, args, out, err)
    except UsageError as exc:
        err.write(f"arr: {exc}\n")
        return EXIT_USAGE
    except ArrangementError as exc:
        err.write(f"arr: {exc}\n")
        return EXIT_VALIDATION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
