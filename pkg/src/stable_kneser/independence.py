"""Exact independence number, enumeration of maximum independent sets, stars."""

from __future__ import annotations

from dataclasses import dataclass

from .autgroup import TheoremViolation, default_node_budget, star_masks
from .generators import Params
from .graph import Graph, ResourceLimitError, iter_bits


@dataclass(frozen=True)
class StarFamily:
    """``stars[i]`` is the bitset of vertices whose subset contains residue ``i``."""

    n: int
    stars: tuple[int, ...]

    def sizes(self) -> list[int]:
        return [m.bit_count() for m in self.stars]

    def distinct(self) -> bool:
        return len(set(self.stars)) == self.n


def build_stars(p: Params, kg: Graph) -> StarFamily:
    fam = StarFamily(p.n, tuple(star_masks(kg, p.n)))
    for i, mask in enumerate(fam.stars):
        if not kg.is_independent(mask):
            raise TheoremViolation(f"star {i + 1} contains an edge", witness=i + 1)
    return fam


def clique_cover_bound(g: Graph, pool: int) -> int:
    """Number of cliques in a greedy cover of ``pool``; bounds any independent subset."""
    rows = g.rows
    cover = 0
    while pool:
        low = pool & -pool
        pool ^= low
        cand = pool & rows[low.bit_length() - 1]
        while cand:
            u = cand & -cand
            pool ^= u
            cand &= rows[u.bit_length() - 1]
        cover += 1
    return cover


class _Search:
    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitError(
                f"independent set search exceeded {self.budget} nodes", self.budget, self.nodes)

    def split(self, pool: int) -> tuple[int, int | None]:
        """(isolated vertices of pool, highest-degree vertex or None)."""
        rows = self.g.rows
        isolated, best, best_deg = 0, None, 0
        for v in iter_bits(pool):
            d = (rows[v] & pool).bit_count()
            if d == 0:
                isolated |= 1 << v
            elif d > best_deg:
                best, best_deg = v, d
        return isolated, best


def max_independent_set(g: Graph, budget: int | None = None) -> tuple[int, int]:
    """Exact independence number and a witness bitset.

    Branches on the highest-degree vertex of the residual graph (take it or
    drop it), pruning with a greedy clique cover bound.
    """
    search = _Search(g, default_node_budget() if budget is None else budget)
    rows = g.rows
    best = [0, 0]

    def go(chosen: int, size: int, pool: int):
        search.tick()
        isolated, v = search.split(pool)
        chosen |= isolated
        size += isolated.bit_count()
        pool &= ~isolated
        if size > best[0]:
            best[:] = [size, chosen]
        if v is None or size + clique_cover_bound(g, pool) <= best[0]:
            return
        go(chosen | 1 << v, size + 1, pool & ~rows[v] & ~(1 << v))
        go(chosen, size, pool & ~(1 << v))

    go(0, 0, (1 << g.num_vertices) - 1)
    return best[0], best[1]


def all_maximum_independent_sets(g: Graph, alpha: int, budget: int | None = None) -> list[int]:
    """Every independent set of size exactly ``alpha`` (which must be the independence number).

    Same branching as :func:`max_independent_set`; a branch survives while the
    clique cover bound can still reach ``alpha``. Sorted by bitset value.
    """
    search = _Search(g, default_node_budget() if budget is None else budget)
    rows = g.rows
    found: list[int] = []

    def go(chosen: int, size: int, pool: int):
        search.tick()
        isolated, v = search.split(pool)
        # a set of size alpha missing an isolated vertex could be extended
        chosen |= isolated
        size += isolated.bit_count()
        pool &= ~isolated
        if size > alpha:
            raise ValueError(f"alpha={alpha} is below the independence number")
        if v is None:
            if size == alpha:
                found.append(chosen)
            return
        if size + clique_cover_bound(g, pool) < alpha:
            return
        go(chosen | 1 << v, size + 1, pool & ~rows[v] & ~(1 << v))
        go(chosen, size, pool & ~(1 << v))

    go(0, 0, (1 << g.num_vertices) - 1)
    return sorted(found)
