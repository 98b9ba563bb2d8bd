"""Automorphism groups by individualization-refinement, and the dihedral action.

The search fixes one path of individualizations down to a discrete partition
and then explores every compatible path on the other side; each compatible
leaf yields a candidate vertex map that is kept iff it preserves adjacency.
No automorphism is ever pruned, so the result is the full group.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .generators import Params, ParameterError
from .graph import (Graph, GraphError, Permutation, PermutationGroup, ResourceLimitError,
                    group_from_elements, is_automorphism, iter_bits)

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_MAX_VERTICES = 5000


def default_node_budget() -> int:
    return int(os.environ.get("SKL_NODE_BUDGET", DEFAULT_NODE_BUDGET))


class TheoremViolation(AssertionError):
    """A computed object contradicts a statement that should hold; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _rank_rows(sig: np.ndarray) -> tuple[np.ndarray, bytes]:
    uniq, inverse = np.unique(sig, axis=0, return_inverse=True)
    sizes = np.bincount(inverse.reshape(-1), minlength=len(uniq))
    return inverse.reshape(-1).astype(np.int64), uniq.tobytes() + sizes.tobytes()


def refine(adj: np.ndarray, colors: np.ndarray) -> tuple[np.ndarray, tuple[bytes, ...]]:
    """Color refinement to the coarsest equitable partition below ``colors``.

    Colors are ranks of (old color, neighbor-color counts) signatures, so the
    result is isomorphism-invariant. The trace records every round's
    signature table and is compared between search branches.
    """
    m = len(colors)
    colors, first = _rank_rows(colors.reshape(m, 1))
    trace = [first]
    num = int(colors.max()) + 1 if m else 0
    while num < m:
        onehot = np.zeros((m, num), dtype=np.float64)
        onehot[np.arange(m), colors] = 1.0
        counts = (adj @ onehot).astype(np.int64)
        sig = np.hstack([colors.reshape(m, 1), counts])
        colors, t = _rank_rows(sig)
        trace.append(t)
        new_num = int(colors.max()) + 1
        if new_num == num:
            break
        num = new_num
    return colors, tuple(trace)


def _individualize(adj: np.ndarray, colors: np.ndarray, v: int):
    c = colors * 2
    c[v] += 1
    return refine(adj, c)


def _target_cell(colors: np.ndarray) -> int | None:
    """First smallest non-singleton cell, by color index; None if discrete."""
    sizes = np.bincount(colors)
    candidates = np.nonzero(sizes > 1)[0]
    if len(candidates) == 0:
        return None
    return int(candidates[np.argmin(sizes[candidates])])


def automorphisms(g: Graph, budget: int | None = None,
                  max_vertices: int = DEFAULT_MAX_VERTICES) -> PermutationGroup:
    """Full automorphism group of ``g`` as an explicit element set."""
    if g.num_vertices > max_vertices:
        raise ResourceLimitError(
            f"{g.num_vertices} vertices exceeds ceiling {max_vertices}", max_vertices, g.num_vertices)
    budget = default_node_budget() if budget is None else budget
    m = g.num_vertices
    if m == 0:
        return group_from_elements(0, [Permutation(())])
    adj = g.matrix.astype(np.float64)
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceLimitError(f"automorphism search exceeded {budget} nodes", budget, nodes)

    root, root_trace = refine(adj, np.zeros(m, dtype=np.int64))
    # left path: (coloring, trace, target cell) per level
    path = []
    colors, trace = root, root_trace
    while True:
        tick()
        target = _target_cell(colors)
        path.append((colors, trace, target))
        if target is None:
            break
        v = int(np.nonzero(colors == target)[0][0])
        colors, trace = _individualize(adj, colors, v)
    left_leaf = path[-1][0]

    found: set[Permutation] = set()

    def explore(level: int, colors: np.ndarray):
        target = path[level][2]
        if target is None:
            inv = np.empty(m, dtype=np.int64)
            inv[colors] = np.arange(m)
            p = Permutation(tuple(int(x) for x in inv[left_leaf]))
            if is_automorphism(g, p):
                found.add(p)
            return
        expected = path[level + 1][1]
        for w in np.nonzero(colors == target)[0]:
            tick()
            child, child_trace = _individualize(adj, colors, int(w))
            if child_trace == expected:
                explore(level + 1, child)

    explore(0, root)
    return group_from_elements(m, found)


def ground_rotation(n: int, t: int = 1) -> Permutation:
    return Permutation(tuple((i + t) % n for i in range(n)))


def ground_reflection(n: int, t: int = 0) -> Permutation:
    """i -> t - i (mod n)."""
    return Permutation(tuple((t - i) % n for i in range(n)))


def ground_dihedral(n: int) -> list[Permutation]:
    """The 2n dihedral maps: rotations i+t, then reflections t-i, t = 0..n-1."""
    return [ground_rotation(n, t) for t in range(n)] + [ground_reflection(n, t) for t in range(n)]


def ground_dihedral_group(n: int) -> PermutationGroup:
    return group_from_elements(n, ground_dihedral(n))


def _label_sets(g: Graph) -> list[tuple[int, ...]]:
    if g.labels is None:
        raise GraphError("graph has no ground-set labels")
    return [tuple(sorted(lab)) if isinstance(lab, tuple) else (lab,) for lab in g.labels]


def induce(g: Graph, ground: Permutation) -> Permutation:
    """Vertex permutation induced by applying ``ground`` elementwise to the labels."""
    labels = _label_sets(g)
    index = {lab: v for v, lab in enumerate(labels)}
    try:
        return Permutation(tuple(index[tuple(sorted(ground(x) for x in lab))] for lab in labels))
    except KeyError as exc:
        raise TheoremViolation(f"ground map does not preserve the vertex set: {exc}",
                               witness=ground.mapping) from None


@dataclass(frozen=True)
class DihedralCert:
    n: int
    rotation: Permutation
    reflection: Permutation
    induced_elements: tuple[Permutation, ...]

    @property
    def faithful(self) -> bool:
        return len(set(self.induced_elements)) == 2 * self.n

    @property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.induced_elements)


def induced_dihedral(p: Params, g: Graph) -> DihedralCert:
    """The D_2n action on ``g`` induced from rotations and reflections of the ground set.

    Every induced map is checked to be an automorphism; for n >= sk+1 the
    action is also checked to be faithful with the dihedral relations.
    """
    n = p.n
    induced = tuple(induce(g, f) for f in ground_dihedral(n))
    for f, q in zip(ground_dihedral(n), induced):
        if not is_automorphism(g, q):
            raise TheoremViolation(f"induced map of {f} is not an automorphism", witness=q.mapping)
    rot, ref = induced[1 % n], induced[n]
    cert = DihedralCert(n, rot, ref, induced)
    if not p.degenerate:
        if not cert.faithful:
            raise TheoremViolation("dihedral action is not faithful")
        if rot.order() != n or not (ref * ref).is_identity() or ref * rot * ref != rot.inverse():
            raise TheoremViolation("induced rotation/reflection violate dihedral relations")
    return cert


def certify_dihedral(aut: PermutationGroup, cert: DihedralCert) -> bool:
    """True iff ``aut`` is exactly the faithful induced dihedral group."""
    if aut.degree != cert.rotation.degree:
        raise GraphError("group and certificate act on different vertex sets")
    return cert.faithful and aut.elements == cert.element_set


@dataclass(frozen=True)
class StarMap:
    source: Permutation
    image: Permutation


def star_masks(g: Graph, n: int) -> list[int]:
    masks = [0] * n
    for v, lab in enumerate(_label_sets(g)):
        for x in lab:
            masks[x] |= 1 << v
    return masks


def star_map(p: Params, alpha: Permutation, kg: Graph, stars: list[int] | None = None) -> StarMap:
    """Ground permutation j = phi(alpha)(i) with alpha(star_i) = star_j."""
    p.require_nondegenerate()
    if p.s < 3:
        raise ParameterError(f"star map needs s >= 3, got {p}")
    if alpha.degree != kg.num_vertices:
        raise GraphError("automorphism degree does not match the graph")
    stars = star_masks(kg, p.n) if stars is None else stars
    which = {mask: i for i, mask in enumerate(stars)}
    if len(which) != p.n:
        raise TheoremViolation("stars are not pairwise distinct")
    image = []
    for i, mask in enumerate(stars):
        moved = 0
        for v in iter_bits(mask):
            moved |= 1 << alpha(v)
        if moved not in which:
            raise TheoremViolation(f"image of star {i + 1} is not a star",
                                   witness={"alpha": alpha.mapping, "star": i + 1})
        image.append(which[moved])
    return StarMap(alpha, Permutation(tuple(image)))


def orbits(aut: PermutationGroup) -> list[list[int]]:
    """Vertex orbits, each sorted, ordered by smallest member."""
    parent = list(range(aut.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for q in aut.elements:
        for v, w in enumerate(q.mapping):
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(aut.degree):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def consecutive_criterion(q: Permutation, n: int) -> bool:
    """True iff q sends every pair (i, i+1) to a pair at difference +-1 mod n."""
    if q.degree != n:
        raise GraphError(f"expected a permutation of {n} residues")
    return all((q((i + 1) % n) - q(i)) % n in (1, n - 1) for i in range(n))
