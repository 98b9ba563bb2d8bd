"""Exact chromatic number and the star-weighting fractional coloring certificate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .autgroup import default_node_budget
from .generators import Params
from .graph import Graph, ResourceLimitError, iter_bits
from .independence import StarFamily


class CertificateError(ValueError):
    pass


class ChromaticBudgetError(ResourceLimitError):
    """Search budget ran out; ``lower``/``upper`` bracket the chromatic number."""

    def __init__(self, message, limit, explored, lower, upper):
        super().__init__(message, limit, explored)
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class FractionalCertificate:
    num_vertices: int
    alpha: int
    lower: Fraction
    upper: Fraction
    weights: tuple[Fraction, ...]

    @property
    def tight(self) -> bool:
        return self.lower == self.upper


def fractional_chromatic(p: Params, kg: Graph, stars: StarFamily, alpha: int) -> FractionalCertificate:
    """Bracket chi* between |V|/alpha and the weight of the 1/k star covering.

    Raises CertificateError if some vertex gets total weight below 1.
    """
    weights = tuple(Fraction(1, p.k) for _ in range(p.n))
    for v, covered in enumerate(star_coverage(kg, stars, weights)):
        if covered < 1:
            raise CertificateError(f"vertex {v} covered with weight {covered} < 1")
    lower = Fraction(kg.num_vertices, alpha)
    upper = sum(weights, Fraction(0))
    return FractionalCertificate(kg.num_vertices, alpha, lower, upper, weights)


def star_coverage(kg: Graph, stars: StarFamily, weights) -> list[Fraction]:
    """Total weight on each vertex under a weighting of the stars."""
    return [sum((w for w, mask in zip(weights, stars.stars) if mask >> v & 1), Fraction(0))
            for v in range(kg.num_vertices)]


def greedy_clique(g: Graph) -> int:
    """Largest clique found by greedy extension from every vertex (a lower bound)."""
    best = 1 if g.num_vertices else 0
    for v in range(g.num_vertices):
        size, cand = 1, g.rows[v]
        while cand:
            u = max(iter_bits(cand), key=lambda x: (g.rows[x] & cand).bit_count())
            size += 1
            cand &= g.rows[u]
        best = max(best, size)
    return best


def dsatur_greedy(g: Graph) -> list[int]:
    m = g.num_vertices
    colors = [-1] * m
    sat = [0] * m
    for _ in range(m):
        v = max((u for u in range(m) if colors[u] < 0),
                key=lambda u: (sat[u].bit_count(), g.degree(u), -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in iter_bits(g.rows[v]):
            sat[u] |= 1 << c
    return colors


class _Colorer:
    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0

    def colorable(self, q: int) -> list[int] | None:
        """A proper q-coloring or None, by DSATUR-ordered backtracking."""
        g, m = self.g, self.g.num_vertices
        rows = g.rows
        colors = [-1] * m
        # per vertex, per color: number of colored neighbors using that color
        counts = [[0] * q for _ in range(m)]
        sat = [0] * m
        uncolored = set(range(m))

        def pick():
            best, key = -1, None
            for u in uncolored:
                k = (sat[u], (rows[u]).bit_count())
                if key is None or k > key:
                    best, key = u, k
            return best

        def assign(v, c, delta):
            for u in iter_bits(rows[v]):
                before = counts[u][c]
                counts[u][c] += delta
                if before == 0 and delta > 0:
                    sat[u] += 1
                elif before == 1 and delta < 0:
                    sat[u] -= 1

        def go(used: int) -> bool:
            if not uncolored:
                return True
            self.nodes += 1
            if self.nodes > self.budget:
                raise ResourceLimitError("coloring search exhausted budget", self.budget, self.nodes)
            v = pick()
            if sat[v] >= q:
                return False
            uncolored.discard(v)
            # colors beyond the first unused one are symmetric
            for c in range(min(q, used + 1)):
                if counts[v][c]:
                    continue
                colors[v] = c
                assign(v, c, 1)
                if go(max(used, c + 1)):
                    return True
                assign(v, c, -1)
            colors[v] = -1
            uncolored.add(v)
            return False

        return list(colors) if go(0) else None


def chromatic_number(g: Graph, budget: int | None = None) -> int:
    """Exact chromatic number by iterative deepening on the number of colors.

    Starts at a greedy clique bound; DSATUR supplies the initial upper bound.
    """
    if g.num_vertices == 0:
        return 0
    budget = default_node_budget() if budget is None else budget
    lower = greedy_clique(g)
    upper = max(dsatur_greedy(g)) + 1
    colorer = _Colorer(g, budget)
    q = lower
    while q < upper:
        try:
            found = colorer.colorable(q)
        except ResourceLimitError:
            raise ChromaticBudgetError(
                f"chromatic search exceeded {budget} nodes; chi in [{q}, {upper}]",
                budget, colorer.nodes, q, upper) from None
        if found is not None:
            return q
        q += 1
    return upper


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[i] != colors[j] for i, j in g.edges())


def chromatic_bounds(p: Params) -> tuple[int, int]:
    """(ceil(n/k), n - (k-1)s)."""
    return -(-p.n // p.k), p.n - (p.k - 1) * p.s


def verify_chromatic_bounds(p: Params, chi: int) -> bool:
    lo, hi = chromatic_bounds(p)
    return lo <= chi <= hi
