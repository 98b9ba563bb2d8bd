"""Invariant table for stable Kneser graphs over a parameter sweep.

Usage:
    python scripts/sweep_table.py [--s 2..4] [--k 2..3] [--n-offset 0..6] [--color-budget N]

Columns: |V|, |Aut|, alpha, chi* (as a fraction), exact chi (or an interval when
the coloring budget runs out), the bounds ceil(n/k)..n-(k-1)s, and the number of
vertex orbits.
"""

import argparse
import time
from fractions import Fraction

from stable_kneser.autgroup import automorphisms, orbits
from stable_kneser.cli import parse_range
from stable_kneser.coloring import ChromaticBudgetError, chromatic_bounds, chromatic_number
from stable_kneser.generators import Params, build_stable_kneser
from stable_kneser.independence import max_independent_set
from stable_kneser.verify import DEFAULT_COLOR_BUDGET, sweep_triples


def row(p: Params, color_budget: int) -> str:
    g = build_stable_kneser(p)
    aut = automorphisms(g)
    alpha = max_independent_set(g)[0]
    try:
        chi = str(chromatic_number(g, color_budget))
    except ChromaticBudgetError as exc:
        chi = f"[{exc.lower},{exc.upper}]"
    lo, hi = chromatic_bounds(p)
    return (f"{p.n:>3} {p.k:>2} {p.s:>2} {g.num_vertices:>5} {aut.order:>6} {alpha:>5} "
            f"{str(Fraction(g.num_vertices, alpha)):>6} {chi:>7} {lo:>3}..{hi:<3} {len(orbits(aut)):>3}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--s", default="2..4")
    parser.add_argument("--k", default="2..3")
    parser.add_argument("--n-offset", default="0..6")
    parser.add_argument("--color-budget", type=int, default=DEFAULT_COLOR_BUDGET)
    args = parser.parse_args()
    triples = sweep_triples(parse_range(args.s), parse_range(args.k),
                            n_offsets=parse_range(args.n_offset))
    print("  n  k  s   |V|  |Aut| alpha   chi*     chi  bounds  orbits")
    start = time.perf_counter()
    for p in triples:
        print(row(p, args.color_budget), flush=True)
    print(f"# {len(triples)} triples in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
