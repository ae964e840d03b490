"""Run the full pipeline over the built-in corpus and write one JSON report per arrangement.

    python scripts/run_corpus.py --out runs/corpus [--assume-free] [--max-degree K]
"""
import argparse
import json
import time
from pathlib import Path

from arrbs.corpus import builtin_corpus
from arrbs.pipeline import PipelineConfig, run_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("runs/corpus"))
    ap.add_argument("--assume-free", action="store_true")
    ap.add_argument("--max-degree", type=int, default=None)
    ap.add_argument("--only", nargs="*", help="restrict to these corpus names")
    args = ap.parse_args()

    cfg = PipelineConfig(max_degree=args.max_degree, assume_free=args.assume_free, timings=True)
    args.out.mkdir(parents=True, exist_ok=True)
    header = f"{'name':<18} {'edges':>5} {'dense':>5} {'freeness':<13} {'lower':>5} {'smc':<4} {'secs':>6}"
    print(header)
    print("-" * len(header))
    for name, A in builtin_corpus().items():
        if args.only and name not in args.only:
            continue
        t0 = time.perf_counter()
        rep = run_report(A, cfg)
        secs = time.perf_counter() - t0
        (args.out / f"{name}.json").write_text(json.dumps(rep, indent=2) + "\n")
        print(
            f"{name:<18} {rep['lattice']['edges']:>5} {len(rep['dense_edges']):>5} "
            f"{rep['freeness']['verdict']:<13} {rep['bs']['lower_bound']['count']:>5} "
            f"{'pass' if rep['smc']['passed'] else 'FAIL':<4} {secs:>6.2f}"
        )


if __name__ == "__main__":
    main()
