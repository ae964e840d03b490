"""Stress the pole check on random arrangements with small integer normals.

    python scripts/random_smc.py --count 200 --seed 7 --dim 4 --hyperplanes 8
"""
import argparse
import random
import sys
import time
from collections import Counter

from arrbs.corpus import complete
from arrbs.freeness import decide
from arrbs.lattice import Lattice
from arrbs.zeta import verify_smc


def sample(rng, dim, max_p, coeff):
    n = rng.randint(1, dim)
    normals = []
    while not normals:
        for _ in range(rng.randint(1, max_p)):
            v = [rng.randint(-coeff, coeff) for _ in range(n)]
            if any(v):
                normals.append(v)
    return complete(n, normals, "random")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--hyperplanes", type=int, default=8)
    ap.add_argument("--coeff", type=int, default=2)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    verdicts = Counter()
    cancelled = 0
    failures = 0
    t0 = time.perf_counter()
    for i in range(args.count):
        A = sample(rng, args.dim, args.hyperplanes, args.coeff)
        L = Lattice(A)
        rep = verify_smc(A, L)
        verdicts[decide(A).verdict] += 1
        cancelled += len(rep.cancelled_candidates)
        if not rep.passed:
            failures += 1
            print(f"#{i} VIOLATION {A.to_plain()!r}: {rep.violations()}")
    secs = time.perf_counter() - t0
    print(f"{args.count} arrangements in {secs:.1f}s, seed {args.seed}")
    print(f"freeness: {dict(verdicts)}")
    print(f"candidate poles cancelled: {cancelled}")
    print(f"violations: {failures}")
    sys.exit(4 if failures else 0)


if __name__ == "__main__":
    main()
