"""Stable subsets of the n-cycle and the graph families built from them.

Ground-set elements are residues ``0..n-1``.  The conventional 1-based label
of residue ``r`` is ``r + 1`` (see :func:`to_label`), so lexicographic order
agrees in both conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .graph import Graph


class ParameterError(ValueError):
    """Parameters outside the range an operation is defined on."""


@dataclass(frozen=True, order=True)
class Params:
    n: int
    k: int
    s: int

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")
        if self.s < 2:
            raise ParameterError(f"s must be >= 2, got {self.s}")
        if self.n < self.s * self.k:
            raise ParameterError(f"need n >= s*k, got n={self.n}, s*k={self.s * self.k}")

    @property
    def r(self) -> int:
        """Slack ``n - s*k``."""
        return self.n - self.s * self.k

    @property
    def degenerate(self) -> bool:
        return self.r == 0

    def require_nondegenerate(self):
        if self.r < 1:
            raise ParameterError(f"{self} requires n >= s*k + 1")

    def require_theorem_range(self):
        """n >= sk+1, s >= 3, k >= 2: where the auxiliary-graph structure results apply."""
        self.require_nondegenerate()
        if self.s < 3:
            raise ParameterError(f"{self} requires s >= 3")
        if self.k < 2:
            raise ParameterError(f"{self} requires k >= 2")

    def __str__(self):
        return f"(n={self.n}, k={self.k}, s={self.s})"


def to_label(residue: int) -> int:
    return residue + 1


def from_label(label: int, n: int) -> int:
    return (label - 1) % n


def circular_distance(i: int, j: int, n: int) -> int:
    d = (i - j) % n
    return min(d, n - d)


@dataclass(frozen=True, order=True)
class StableSet:
    elements: tuple[int, ...]
    n: int

    @property
    def gaps(self) -> tuple[int, ...]:
        return gap_vector(self)

    @property
    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m

    def labels(self) -> tuple[int, ...]:
        return tuple(to_label(e) for e in self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.labels())) + "}"


def gap_vector(stable: StableSet) -> tuple[int, ...]:
    """Circular gaps between consecutive elements; the last one wraps around."""
    e, n = stable.elements, stable.n
    if len(e) == 1:
        return (n,)
    return tuple(e[i + 1] - e[i] for i in range(len(e) - 1)) + (e[0] + n - e[-1],)


def is_stable(elements, n: int, s: int) -> bool:
    return all(circular_distance(a, b, n) >= s for a, b in combinations(elements, 2))


def enumerate_stable_sets(p: Params) -> list[StableSet]:
    """All s-stable k-subsets of the n-cycle, lexicographically sorted.

    Places elements left to right with gaps >= s, checking the closing gap
    back to the first element; output-linear.
    """
    n, k, s = p.n, p.k, p.s
    out: list[StableSet] = []
    chosen: list[int] = []

    def place(prev: int, remaining: int, first: int):
        if remaining == 0:
            out.append(StableSet(tuple(chosen), n))
            return
        # every later element needs s more room, plus the closing gap
        last_allowed = first + n - s - (remaining - 1) * s
        for x in range(prev + s, min(last_allowed, n - 1) + 1):
            chosen.append(x)
            place(x, remaining - 1, first)
            chosen.pop()

    for first in range(n):
        if k == 1:
            out.append(StableSet((first,), n))
            continue
        chosen.append(first)
        place(first, k - 1, first)
        chosen.pop()
    return out


def count_formula(p: Params) -> int:
    """Closed-form number of s-stable k-subsets: (n/k) * C(n-(s-1)k-1, k-1)."""
    numerator = p.n * comb(p.n - (p.s - 1) * p.k - 1, p.k - 1)
    if numerator % p.k:
        raise ArithmeticError(f"count formula not integral for {p}: {numerator}/{p.k}")
    return numerator // p.k


def star_size_formula(p: Params) -> int:
    """Number of stable sets through a fixed element: C(n-(s-1)k-1, k-1)."""
    return comb(p.n - (p.s - 1) * p.k - 1, p.k - 1)


def build_stable_kneser(p: Params) -> Graph:
    """Disjointness graph on the stable sets; labels are the element tuples."""
    sets = enumerate_stable_sets(p)
    masks = [st.mask for st in sets]
    m = len(sets)
    rows = [0] * m
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            if not mi & masks[j]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(m, tuple(rows), tuple(st.elements for st in sets))


def build_g_definitional(p: Params) -> Graph:
    """Residues i, j adjacent iff no stable set contains both."""
    p.require_nondegenerate()
    n = p.n
    together = [0] * n
    for st in enumerate_stable_sets(p):
        m = st.mask
        for e in st.elements:
            together[e] |= m
    full = (1 << n) - 1
    rows = tuple(full & ~together[i] & ~(1 << i) for i in range(n))
    return Graph(n, rows, tuple(range(n)))


def forbidden_bands(p: Params) -> frozenset[int]:
    """Union of the differences {ds, ..., ds+r} for d = 1..k-1."""
    return frozenset(d * p.s + t for d in range(1, p.k) for t in range(p.r + 1))


def circulant(n: int, connection: set[int] | frozenset[int]) -> Graph:
    """Circulant graph: i ~ j iff (j - i) mod n is in ``connection`` (must be symmetric)."""
    if any((n - x) % n not in connection for x in connection):
        raise ParameterError("connection set must be closed under x -> n - x")
    if 0 in connection:
        raise ParameterError("connection set must not contain 0")
    rows = [0] * n
    for i in range(n):
        for x in connection:
            rows[i] |= 1 << ((i + x) % n)
    return Graph(n, tuple(rows), tuple(range(n)))


def cycle_power(n: int, d: int) -> Graph:
    """C_n^d: residues adjacent iff circular distance <= d."""
    if n < 3:
        raise ParameterError(f"cycle needs n >= 3, got {n}")
    if not 1 <= d or d >= n // 2:
        raise ParameterError(f"need 1 <= d < floor(n/2) (else complete), got n={n}, d={d}")
    return circulant(n, {x for x in range(1, n) if min(x, n - x) <= d})


def build_g_closed_form(p: Params) -> Graph:
    """Auxiliary graph from its closed-form description.

    For n >= s(k+1)-1 it is the (s-1)-th power of the n-cycle; below that,
    differences falling in a forbidden band are non-edges.
    """
    p.require_theorem_range()
    n, k, s = p.n, p.k, p.s
    if n >= s * (k + 1) - 1:
        return cycle_power(n, s - 1)
    bands = forbidden_bands(p)
    # plain |j-i| and circular difference agree only because the bands are symmetric
    if {n - x for x in bands} != bands:
        raise AssertionError(f"forbidden bands not symmetric under x -> n-x for {p}")
    return circulant(n, {x for x in range(1, n) if x not in bands})

