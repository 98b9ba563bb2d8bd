"""Time the automorphism search on larger stable Kneser graphs than the test sweep.

Usage:
    python scripts/aut_sweep.py [--s 3] [--k 2..4] [--n-offset 1..10] [--max-vertices 5000]
"""

import argparse
import time

from stable_kneser.autgroup import automorphisms, certify_dihedral, induced_dihedral
from stable_kneser.cli import parse_range
from stable_kneser.generators import build_stable_kneser, count_formula
from stable_kneser.verify import sweep_triples


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--s", default="3")
    parser.add_argument("--k", default="2..4")
    parser.add_argument("--n-offset", default="1..10")
    parser.add_argument("--max-vertices", type=int, default=5000)
    args = parser.parse_args()
    for p in sweep_triples(parse_range(args.s), parse_range(args.k),
                           n_offsets=parse_range(args.n_offset)):
        if p.degenerate or count_formula(p) > args.max_vertices:
            continue
        start = time.perf_counter()
        g = build_stable_kneser(p)
        aut = automorphisms(g, max_vertices=args.max_vertices)
        ok = certify_dihedral(aut, induced_dihedral(p, g))
        print(f"{p}  |V|={g.num_vertices:<5} |Aut|={aut.order:<4} dihedral={ok}  "
              f"{time.perf_counter() - start:.2f}s", flush=True)


if __name__ == "__main__":
    main()
