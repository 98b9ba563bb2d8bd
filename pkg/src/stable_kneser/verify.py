"""Per-triple theorem checks and their line-delimited report records.

Every registered check appears exactly once per triple with status ``pass``,
``fail`` or ``skipped``; failures always carry a witness. Records are plain
dicts serialized with sorted keys so reruns are byte-identical.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable

from . import __version__
from .autgroup import (DEFAULT_MAX_VERTICES, TheoremViolation, automorphisms, consecutive_criterion,
                       default_node_budget, ground_dihedral_group, induced_dihedral, orbits, star_map)
from .coloring import (ChromaticBudgetError, CertificateError, chromatic_bounds, chromatic_number,
                       fractional_chromatic)
from .generators import (Params, build_g_closed_form, build_g_definitional, build_stable_kneser,
                         count_formula, cycle_power, star_size_formula, to_label)
from .graph import Graph, Permutation, ResourceLimitError, iter_bits
from .independence import all_maximum_independent_sets, build_stars, max_independent_set

SUITES = ("aut", "g-structure", "independence", "coloring", "transitivity", "degenerate")
DEFAULT_COLOR_BUDGET = 200_000
FULL_TABLE_OFFSET = 3
SAMPLED_PAIRS = 100


@dataclass(frozen=True)
class Budgets:
    node_budget: int = field(default_factory=default_node_budget)
    color_budget: int = DEFAULT_COLOR_BUDGET
    max_vertices: int = DEFAULT_MAX_VERTICES


class Skip(Exception):
    """Raised by a check whose hypotheses are not met for this triple."""


class Fail(Exception):
    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class Instance:
    """Lazily computed objects for one parameter triple, shared by its checks."""

    def __init__(self, p: Params, budgets: Budgets):
        self.p = p
        self.budgets = budgets

    @cached_property
    def kg(self) -> Graph:
        return build_stable_kneser(self.p)

    @cached_property
    def aut_kg(self):
        return automorphisms(self.kg, self.budgets.node_budget, self.budgets.max_vertices)

    @cached_property
    def g(self) -> Graph:
        return build_g_definitional(self.p)

    @cached_property
    def aut_g(self):
        return automorphisms(self.g, self.budgets.node_budget, self.budgets.max_vertices)

    @cached_property
    def stars(self):
        return build_stars(self.p, self.kg)

    @cached_property
    def alpha(self) -> int:
        return max_independent_set(self.kg, self.budgets.node_budget)[0]


def _set_label(elements) -> str:
    return "{" + ",".join(str(to_label(e)) for e in elements) + "}"


def _perm_witness(q: Permutation) -> list[int]:
    return list(q.mapping)


def _require(cond: bool, reason: str):
    if not cond:
        raise Skip(reason)


def _s3(inst: Instance):
    _require(inst.p.s >= 3, "hypothesis s >= 3 not met")
    _require(inst.p.k >= 2, "hypothesis k >= 2 not met")


def check_dihedral(inst: Instance) -> dict:
    cert = induced_dihedral(inst.p, inst.kg)
    aut = inst.aut_kg
    extra = sorted(aut.elements - cert.element_set)
    missing = sorted(cert.element_set - aut.elements)
    if extra or missing or not cert.faithful:
        raise Fail("Aut(KG) differs from the induced dihedral group",
                   {"extra": [_perm_witness(q) for q in extra[:3]],
                    "missing": [_perm_witness(q) for q in missing[:3]],
                    "order": aut.order})
    return {"order": aut.order, "expected": 2 * inst.p.n}


def check_g_dihedral(inst: Instance) -> dict:
    _s3(inst)
    aut = inst.aut_g
    dihedral = ground_dihedral_group(inst.p.n)
    if aut.elements != dihedral.elements:
        extra = sorted(aut.elements - dihedral.elements)
        raise Fail("Aut(G) is not the ground dihedral group",
                   {"order": aut.order, "extra": [_perm_witness(q) for q in extra[:3]]})
    return {"order": aut.order}


def check_consecutive(inst: Instance) -> dict:
    _s3(inst)
    for q in sorted(inst.aut_g.elements):
        if not consecutive_criterion(q, inst.p.n):
            raise Fail("automorphism of G breaks consecutiveness", _perm_witness(q))
    return {"checked": inst.aut_g.order}


def check_star_map(inst: Instance) -> dict:
    _s3(inst)
    p, kg = inst.p, inst.kg
    elements = sorted(inst.aut_kg.elements)
    stars = list(inst.stars.stars)
    phi = {a: star_map(p, a, kg, stars).image for a in elements}
    images = set(phi.values())
    if len(images) != len(elements):
        raise Fail("star map is not injective", {"order": len(elements), "images": len(images)})
    if images != inst.aut_g.elements:
        odd = sorted(images ^ inst.aut_g.elements)[:3]
        raise Fail("star map image is not Aut(G)", [_perm_witness(q) for q in odd])
    if p.n <= p.s * p.k + FULL_TABLE_OFFSET:
        pairs = list(product(range(len(elements)), repeat=2))
    else:
        m = len(elements)
        # fixed affine stride through the multiplication table
        pairs = [((7 * t + 1) % m, (13 * t + 5) % m) for t in range(SAMPLED_PAIRS)]
    for i, j in pairs:
        a, b = elements[i], elements[j]
        if phi[a * b] != phi[a] * phi[b]:
            raise Fail("star map does not preserve composition",
                       {"alpha": _perm_witness(a), "beta": _perm_witness(b)})
    identity = Permutation.identity(kg.num_vertices)
    if not phi[identity].is_identity():
        raise Fail("star map sends identity to a non-identity", _perm_witness(phi[identity]))
    return {"order": len(elements), "pairs_checked": len(pairs)}


def _row_diff(a: Graph, b: Graph):
    for i, (x, y) in enumerate(zip(a.rows, b.rows)):
        if x != y:
            j = (x ^ y).bit_length() - 1
            return {"pair": [to_label(i), to_label(j)], "left_edge": a.has_edge(i, j)}
    return None


def check_closed_form(inst: Instance) -> dict:
    _s3(inst)
    diff = _row_diff(inst.g, build_g_closed_form(inst.p))
    if diff:
        raise Fail("closed form disagrees with definition", diff)
    p = inst.p
    return {"case": 1 if p.n >= p.s * (p.k + 1) - 1 else 2, "degree": inst.g.degree(0)}


def check_cycle_power(inst: Instance) -> dict:
    _s3(inst)
    p = inst.p
    _require(p.n >= p.s * (p.k + 1) - 1, "n below s(k+1)-1; band case")
    diff = _row_diff(inst.g, cycle_power(p.n, p.s - 1))
    if diff:
        raise Fail("G is not the cycle power", diff)
    return {"power": p.s - 1}


def check_count(inst: Instance) -> dict:
    expected = count_formula(inst.p)
    got = inst.kg.num_vertices
    if got != expected:
        raise Fail("vertex count differs from formula", {"count": got, "formula": expected})
    return {"vertices": got}


def check_alpha(inst: Instance) -> dict:
    expected = star_size_formula(inst.p)
    if inst.alpha != expected:
        size, witness = max_independent_set(inst.kg, inst.budgets.node_budget)
        raise Fail("independence number differs from formula",
                   {"alpha": size, "formula": expected,
                    "set": [_set_label(inst.kg.labels[v]) for v in iter_bits(witness)]})
    return {"alpha": inst.alpha}


def check_stars(inst: Instance) -> dict:
    _s3(inst)
    found = all_maximum_independent_sets(inst.kg, inst.alpha, inst.budgets.node_budget)
    stars = set(inst.stars.stars)
    odd = [m for m in found if m not in stars]
    if odd or len(found) != len(stars):
        raise Fail("maximum independent sets are not exactly the stars",
                   {"count": len(found),
                    "non_star": [[_set_label(inst.kg.labels[v]) for v in iter_bits(m)] for m in odd[:2]]})
    return {"maximum_sets": len(found)}


def check_stars_distinct(inst: Instance) -> dict:
    fam = inst.stars
    if not fam.distinct():
        seen = {}
        for i, m in enumerate(fam.stars):
            if m in seen:
                raise Fail("two stars coincide", [seen[m] + 1, i + 1])
            seen[m] = i
    total = sum(fam.sizes())
    if total != inst.p.k * inst.kg.num_vertices:
        raise Fail("star sizes do not double count the vertices", {"sum": total})
    return {"star_sizes": sorted(set(fam.sizes()))}


def check_orbits(inst: Instance) -> dict:
    p = inst.p
    orbs = orbits(inst.aut_kg)
    transitive = len(orbs) == 1
    if transitive != (p.n == p.s * p.k + 1):
        raise Fail("vertex transitivity does not match n == sk+1",
                   {"orbits": len(orbs), "representatives": [_set_label(inst.kg.labels[o[0]]) for o in orbs]})
    return {"orbits": len(orbs)}


def check_fractional(inst: Instance) -> dict:
    try:
        cert = fractional_chromatic(inst.p, inst.kg, inst.stars, inst.alpha)
    except CertificateError as exc:
        raise Fail(str(exc), str(exc)) from None
    expected = type(cert.upper)(inst.p.n, inst.p.k)
    if not cert.tight or cert.upper != expected:
        raise Fail("fractional certificates do not meet",
                   {"lower": str(cert.lower), "upper": str(cert.upper)})
    return {"chi_star": str(cert.upper)}


def check_chromatic(inst: Instance) -> dict:
    p = inst.p
    try:
        chi = chromatic_number(inst.kg, inst.budgets.color_budget)
    except ChromaticBudgetError as exc:
        raise Skip(f"budget exceeded; chi in [{exc.lower}, {exc.upper}]") from None
    lo, hi = chromatic_bounds(p)
    if not lo <= chi <= hi:
        raise Fail("chromatic number outside bounds", {"chi": chi, "bounds": [lo, hi]})
    if p.n == p.s * p.k + 1 and chi != p.s + 1:
        raise Fail("chromatic number at n = sk+1 is not s+1", {"chi": chi})
    if chi < math.ceil(inst.kg.num_vertices / inst.alpha):
        raise Fail("chi below |V|/alpha", {"chi": chi})
    return {"chi": chi, "bounds": [lo, hi]}


def check_degenerate_complete(inst: Instance) -> dict:
    kg = inst.kg
    if kg.num_vertices != inst.p.s or not kg.is_complete():
        raise Fail("KG(sk,k) is not complete on s vertices",
                   {"vertices": kg.num_vertices, "edges": kg.num_edges})
    return {"vertices": kg.num_vertices}


def check_degenerate_aut(inst: Instance) -> dict:
    order = inst.aut_kg.order
    if order != math.factorial(inst.p.s):
        raise Fail("|Aut| differs from s!", {"order": order})
    return {"order": order}


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    run: Callable[[Instance], dict]
    degenerate: bool = False


CHECKS: tuple[Check, ...] = (
    Check("aut.dihedral", "aut", check_dihedral),
    Check("aut.g_dihedral", "aut", check_g_dihedral),
    Check("aut.consecutive", "aut", check_consecutive),
    Check("aut.star_map", "aut", check_star_map),
    Check("g.closed_form", "g-structure", check_closed_form),
    Check("g.cycle_power", "g-structure", check_cycle_power),
    Check("independence.count", "independence", check_count),
    Check("independence.alpha", "independence", check_alpha),
    Check("independence.stars", "independence", check_stars),
    Check("independence.stars_distinct", "independence", check_stars_distinct),
    Check("transitivity.orbits", "transitivity", check_orbits),
    Check("coloring.fractional", "coloring", check_fractional),
    Check("coloring.chromatic", "coloring", check_chromatic),
    Check("degenerate.complete", "degenerate", check_degenerate_complete, degenerate=True),
    Check("degenerate.aut_order", "degenerate", check_degenerate_aut, degenerate=True),
)
CHECK_IDS = tuple(c.id for c in CHECKS)


def select_checks(suites) -> list[Check]:
    suites = set(suites)
    if "all" in suites:
        suites = set(SUITES)
    unknown = suites - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    return [c for c in CHECKS if c.suite in suites]


def params_record(p: Params) -> dict:
    return {"n": p.n, "k": p.k, "s": p.s}


def run_triple(p: Params, checks: list[Check], budgets: Budgets = Budgets(),
               timings: bool = False) -> list[dict]:
    """Records for one triple: one per check, then a summary record."""
    inst = Instance(p, budgets)
    records = []
    too_big = count_formula(p) > budgets.max_vertices
    for check in checks:
        rec = {"type": "check", "params": params_record(p), "check": check.id,
               "witness": None, "detail": None, "reason": None}
        start = time.perf_counter()
        try:
            if too_big:
                raise Skip(f"more than {budgets.max_vertices} vertices")
            if check.degenerate != p.degenerate:
                raise Skip("applies only when n = sk" if check.degenerate else "requires n >= sk+1")
            rec["detail"] = check.run(inst)
            rec["status"] = "pass"
        except Skip as exc:
            rec["status"], rec["reason"] = "skipped", str(exc)
        except Fail as exc:
            rec["status"], rec["reason"], rec["witness"] = "fail", str(exc), exc.witness
        except TheoremViolation as exc:
            rec["status"], rec["reason"] = "fail", str(exc)
            rec["witness"] = exc.witness if exc.witness is not None else str(exc)
        except ResourceLimitError as exc:
            rec["status"], rec["reason"] = "skipped", f"budget: {exc}"
        if timings:
            rec["elapsed"] = round(time.perf_counter() - start, 6)
        records.append(rec)
    counts = {st: sum(r["status"] == st for r in records) for st in ("pass", "fail", "skipped")}
    records.append({"type": "summary", "params": params_record(p), "version": __version__,
                    "seedless": True, "passed": counts["pass"], "failed": counts["fail"],
                    "skipped": counts["skipped"]})
    return records


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def sweep_triples(s_values, k_values, n_values=None, n_offsets=None) -> list[Params]:
    """Triples ordered by (s, k, n); pairs with n < sk are dropped."""
    if (n_values is None) == (n_offsets is None):
        raise ValueError("give exactly one of n values or n offsets")
    out = []
    for s in s_values:
        for k in k_values:
            ns = n_values if n_values is not None else [s * k + d for d in n_offsets]
            for n in ns:
                if s >= 2 and k >= 1 and n >= s * k:
                    out.append(Params(n, k, s))
    return sorted(set(out), key=lambda p: (p.s, p.k, p.n))
