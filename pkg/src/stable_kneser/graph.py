"""Immutable graphs with bitset rows, permutations, and small permutation groups.

Adjacency rows are Python ints used as bitsets: bit ``j`` of ``rows[i]`` is set
iff ``i`` and ``j`` are adjacent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 1_000_000


class GraphError(ValueError):
    """Invalid graph construction or a graph/permutation size mismatch."""


class ResourceLimitError(RuntimeError):
    """A bounded search ran out of budget.

    ``limit`` is the configured bound and ``explored`` how far the search got.
    """

    def __init__(self, message: str, limit: int, explored: int):
        super().__init__(message)
        self.limit = limit
        self.explored = explored


def iter_bits(mask: int) -> Iterator[int]:
    """Yield indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True, eq=False)
class Graph:
    num_vertices: int
    rows: tuple[int, ...]
    labels: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        if len(self.rows) != self.num_vertices:
            raise GraphError("need one adjacency row per vertex")
        full = (1 << self.num_vertices) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {i} has bits beyond vertex {self.num_vertices - 1}")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
            for j in iter_bits(row):
                if not self.rows[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
        if self.labels is not None:
            if len(self.labels) != self.num_vertices:
                raise GraphError("labels must have one entry per vertex")
            if len(set(self.labels)) != self.num_vertices:
                raise GraphError("labels must be distinct")

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[Hashable] | None = None) -> Graph:
        rows = [0] * num_vertices
        for i, j in edges:
            if not (0 <= i < num_vertices and 0 <= j < num_vertices):
                raise GraphError(f"edge ({i}, {j}) out of range for {num_vertices} vertices")
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(num_vertices, tuple(rows), None if labels is None else tuple(labels))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.rows == other.rows

    def __hash__(self):
        return hash((self.num_vertices, self.rows))

    def __repr__(self):
        return f"Graph(num_vertices={self.num_vertices}, num_edges={self.num_edges})"

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(iter_bits(self.rows[i]))

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    @cached_property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(i, j)`` with ``i < j`` in ascending order."""
        return [(i, j) for i, row in enumerate(self.rows) for j in iter_bits(row >> (i + 1) << (i + 1))]

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (int32), built lazily for refinement."""
        a = np.zeros((self.num_vertices, self.num_vertices), dtype=np.int32)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        a.flags.writeable = False
        return a

    def is_complete(self) -> bool:
        full = (1 << self.num_vertices) - 1
        return all(row == full ^ (1 << i) for i, row in enumerate(self.rows))

    def is_independent(self, mask: int) -> bool:
        return all(not (self.rows[v] & mask) for v in iter_bits(mask))

    def complement(self) -> Graph:
        full = (1 << self.num_vertices) - 1
        return Graph(self.num_vertices, tuple(full ^ row ^ (1 << i) for i, row in enumerate(self.rows)),
                     self.labels)


def graph_new(num_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(num_vertices, edges)


def complete_graph(m: int) -> Graph:
    return Graph.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def cycle_graph(m: int) -> Graph:
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def path_graph(m: int) -> Graph:
    return Graph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection on ``0..degree-1``; ``mapping[i]`` is the image of ``i``.

    Composition follows function notation: ``(p * q)(i) == p(q(i))``.
    """

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise GraphError(f"not a permutation: {self.mapping}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise GraphError("cannot compose permutations of different degree")
        m = self.mapping
        return Permutation(tuple(m[j] for j in other.mapping))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def order(self) -> int:
        result, seen = 1, set()
        for start in range(self.degree):
            if start in seen:
                continue
            length, i = 0, start
            while i not in seen:
                seen.add(i)
                i = self.mapping[i]
                length += 1
            result = math.lcm(result, length)
        return result

    def __repr__(self):
        return f"Permutation({list(self.mapping)})"


def is_automorphism(g: Graph, p: Permutation) -> bool:
    if p.degree != g.num_vertices:
        raise GraphError(f"permutation degree {p.degree} != graph order {g.num_vertices}")
    m = p.mapping
    for i, row in enumerate(g.rows):
        image = 0
        for j in iter_bits(row):
            image |= 1 << m[j]
        if image != g.rows[m[i]]:
            return False
    return True


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    elements: frozenset[Permutation]
    generators: tuple[Permutation, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)


def group_closure(degree: int, generators: Sequence[Permutation],
                  max_order: int = DEFAULT_MAX_ORDER) -> PermutationGroup:
    """Enumerate the group generated by ``generators`` element by element.

    Raises ResourceLimitError once more than ``max_order`` elements are found.
    """
    for gen in generators:
        if gen.degree != degree:
            raise GraphError(f"generator of degree {gen.degree}, expected {degree}")
    identity = Permutation.identity(degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for h in frontier:
            for gen in generators:
                x = gen * h
                if x not in elements:
                    elements.add(x)
                    if len(elements) > max_order:
                        raise ResourceLimitError(
                            f"group order exceeds max_order={max_order}", max_order, len(elements))
                    new.append(x)
        frontier = new
    return PermutationGroup(degree, frozenset(elements), tuple(generators))


def groups_equal(a: PermutationGroup, b: PermutationGroup) -> bool:
    if a.degree != b.degree:
        raise GraphError(f"groups act on {a.degree} and {b.degree} points")
    return a.elements == b.elements


def group_from_elements(degree: int, elements: Iterable[Permutation]) -> PermutationGroup:
    """Wrap an explicit element set (e.g. a search result) as a group."""
    elems = frozenset(elements)
    for p in elems:
        if p.degree != degree:
            raise GraphError(f"element of degree {p.degree}, expected {degree}")
    return PermutationGroup(degree, elems, tuple(sorted(elems)))
