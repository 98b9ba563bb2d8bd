from fractions import Fraction

import pytest
from hypothesis import given, settings

from stable_kneser.coloring import (CertificateError, ChromaticBudgetError, _Colorer, chromatic_bounds,
                                    chromatic_number, dsatur_greedy, fractional_chromatic,
                                    is_proper_coloring, verify_chromatic_bounds)
from stable_kneser.generators import Params, build_stable_kneser, count_formula, star_size_formula
from stable_kneser.graph import complete_graph, cycle_graph
from stable_kneser.independence import StarFamily, build_stars, max_independent_set

from oracles import chromatic_brute
from strategies import graphs


def certificate(n, k, s):
    p = Params(n, k, s)
    g = build_stable_kneser(p)
    return fractional_chromatic(p, g, build_stars(p, g), max_independent_set(g)[0])


def test_fractional_7_2_3():
    cert = certificate(7, 2, 3)
    assert cert.lower == cert.upper == Fraction(7, 2)


def test_fractional_10_2_3():
    # |V| = 25 and alpha = C(5, 1) = 5, so both sides are 5
    cert = certificate(10, 2, 3)
    assert cert.num_vertices == 25 and cert.alpha == 5
    assert cert.lower == cert.upper == Fraction(5)


@pytest.mark.parametrize("k,s", [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)])
def test_fractional_tight_at_sk_plus_1(k, s):
    n = s * k + 1
    assert Fraction(count_formula(Params(n, k, s)), star_size_formula(Params(n, k, s))) == Fraction(n, k)
    assert certificate(n, k, s).tight


def test_certificate_rejects_uncovered_vertex():
    p = Params(7, 2, 3)
    g = build_stable_kneser(p)
    fam = build_stars(p, g)
    broken = StarFamily(7, (0,) + fam.stars[1:])
    with pytest.raises(CertificateError):
        fractional_chromatic(p, g, broken, 2)


@pytest.mark.parametrize("n,k,s,chi", [(7, 2, 3, 4), (5, 2, 2, 3), (9, 2, 4, 5), (7, 3, 2, 3)])
def test_chromatic_sk_plus_1(n, k, s, chi):
    assert chromatic_number(build_stable_kneser(Params(n, k, s))) == chi == s + 1


def test_chromatic_complete():
    assert chromatic_number(complete_graph(5)) == 5


def test_chromatic_8_2_3_within_bounds():
    # inclusion-exclusion oracle on the 12-vertex graph gives 5
    chi = chromatic_number(build_stable_kneser(Params(8, 2, 3)))
    assert chi == 5 and verify_chromatic_bounds(Params(8, 2, 3), chi)
    assert chromatic_bounds(Params(8, 2, 3)) == (4, 5)


def test_verify_bounds_examples():
    assert verify_chromatic_bounds(Params(7, 2, 3), 4)
    assert verify_chromatic_bounds(Params(9, 2, 4), 5)
    assert not verify_chromatic_bounds(Params(7, 2, 3), 3)
    assert not verify_chromatic_bounds(Params(7, 2, 3), 5)


def test_budget_reports_interval():
    with pytest.raises(ChromaticBudgetError) as info:
        chromatic_number(build_stable_kneser(Params(14, 3, 3)), budget=50)
    assert info.value.lower <= info.value.upper


def test_colorer_returns_proper_colorings():
    g = build_stable_kneser(Params(10, 2, 3))
    colors = _Colorer(g, 10**6).colorable(7)
    assert colors is not None and is_proper_coloring(g, colors) and max(colors) < 7
    assert is_proper_coloring(g, dsatur_greedy(g))


@pytest.mark.parametrize("m", range(3, 10))
def test_cycles(m):
    assert chromatic_number(cycle_graph(m)) == (2 if m % 2 == 0 else 3)


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=12))
def test_chromatic_matches_brute_force(g):
    assert chromatic_number(g) == chromatic_brute(g)
