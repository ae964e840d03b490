"""Single-variable zeta functions and root sets for families of arrangements.

For each member prints the reduced one-variable zeta function, its poles,
the lattice root set of the free formula and the diagonal lower bound, and
flags any pole missing from the lower bound.

    python scripts/zeta_table.py --lines 8 --boolean 5
"""
import argparse

from arrbs.bsideal import free_roots, format_roots, lower_bound_components, specialize_diagonal
from arrbs.corpus import boolean, builtin_corpus, generic_lines
from arrbs.exactmath import format_rational
from arrbs.lattice import Lattice
from arrbs.zeta import specialize_zeta, zeta_global


def row(name, A):
    L = Lattice(A)
    Zs = specialize_zeta(zeta_global(A, L))
    poles = [F.root() for F, _ in Zs.poles()]
    lower = specialize_diagonal(lower_bound_components(Lattice(A.complete_factorization()))).roots
    missing = [q for q in poles if q not in lower]
    print(f"{name}")
    print(f"  Z(s)      = {Zs}")
    print(f"  poles     : {' '.join(format_rational(q) for q in sorted(poles, reverse=True))}")
    print(f"  R (free)  : {' '.join(format_roots(free_roots(Lattice(A.reduced()))))}")
    print(f"  lower     : {' '.join(format_roots(lower))}")
    if missing:
        print(f"  MISSING   : {' '.join(format_rational(q) for q in missing)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lines", type=int, default=6, help="generic lines d = 2..LINES")
    ap.add_argument("--boolean", type=int, default=4, help="Boolean n = 1..BOOLEAN")
    ap.add_argument("--corpus", action="store_true", help="also tabulate the built-in corpus")
    args = ap.parse_args()

    for d in range(2, args.lines + 1):
        row(f"{d} generic lines", generic_lines(d))
    for n in range(1, args.boolean + 1):
        row(f"boolean{n}", boolean(n))
    if args.corpus:
        for name, A in builtin_corpus().items():
            row(name, A)


if __name__ == "__main__":
    main()
