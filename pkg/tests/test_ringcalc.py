"""Facet decomposition, the face-polynomial recursion, and its closed forms."""

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from nestohedra.algebra import Poly2, homogeneous_degree
from nestohedra.buildingset import (
    Graph,
    bipartite_graph,
    building_set_from_graph,
    canonical_key,
    complete_graph,
    connected_graphs_upto_iso,
    dimension,
    empty_graph,
    join_graphs,
    parse_graph_spec,
    path_graph,
    star_graph,
)
from nestohedra.ringcalc import (
    FPolyCache,
    PolyExpr,
    boundary,
    boundary_expr,
    boundary_graph,
    fpoly,
    fpoly_expr,
    fpoly_graph,
    integrate_t,
    product_factors,
)

A = Poly2.alpha()
T = Poly2.t()


def _bs(g: Graph):
    return building_set_from_graph(g)


def _key(g: Graph) -> bytes:
    return canonical_key(_bs(g))


def _term(graphs: list[Graph], c: int = 1) -> PolyExpr:
    """Product of the graphs' building sets; single nodes drop out."""
    factors = tuple(sorted(_key(g) for g in graphs if g.n > 1))
    return PolyExpr({factors: Fraction(c)})


# ---------------------------------------------------------------------------
# boundary


def test_boundary_of_an_edge_is_two_points() -> None:
    assert boundary(_bs(complete_graph(2))) == _term([], 2)


def test_boundary_of_a_triangle_is_six_segments() -> None:
    assert boundary(_bs(complete_graph(3))) == _term([complete_graph(2)], 6)


def test_boundary_mass_counts_facets() -> None:
    b = _bs(bipartite_graph(2, 2))
    assert boundary(b).total_mass() == len(b.sets) - 1 == 12


def test_boundary_rejects_disconnected_building_sets() -> None:
    with pytest.raises(ValueError):
        boundary(_bs(empty_graph(2)))


def test_boundary_expr_satisfies_leibniz() -> None:
    segment = _term([complete_graph(2)])
    assert boundary_expr(segment * segment) == _term([complete_graph(2)], 4)
    assert boundary_expr(PolyExpr.point()).is_zero()


def test_boundary_graph_agrees_with_boundary_of_building_set() -> None:
    for g in connected_graphs_upto_iso(5):
        assert boundary_graph(g) == boundary(_bs(g))


# ---------------------------------------------------------------------------
# integration


def test_integrate_t_recovers_the_hexagon() -> None:
    assert integrate_t(6 * (A + 2 * T), 2) == A**2 + 6 * A * T + 6 * T**2


def test_integrate_t_point_case() -> None:
    assert integrate_t(Poly2.zero(), 0) == Poly2.one()


def test_integrate_t_rejects_bad_input() -> None:
    with pytest.raises(ValueError):
        integrate_t(Poly2.zero(), 1)
    with pytest.raises(ValueError):
        integrate_t(A + T, 3)
    with pytest.raises(ValueError):
        integrate_t(Poly2.one(), -1)


# ---------------------------------------------------------------------------
# the face-polynomial recursion


def test_fpoly_frozen_values() -> None:
    assert fpoly(_bs(complete_graph(2))) == A + 2 * T
    assert fpoly(_bs(path_graph(3))) == A**2 + 5 * A * T + 5 * T**2
    assert fpoly(_bs(complete_graph(3))) == A**2 + 6 * A * T + 6 * T**2
    assert (
        fpoly(_bs(bipartite_graph(2, 2)))
        == A**3 + 12 * A**2 * T + 30 * A * T**2 + 20 * T**3
    )
    assert (
        fpoly(_bs(complete_graph(4)))
        == A**3 + 14 * A**2 * T + 36 * A * T**2 + 24 * T**3
    )


def test_fpoly_of_a_point_and_of_disconnected_graphs() -> None:
    assert fpoly(_bs(complete_graph(1))) == Poly2.one()
    assert fpoly(_bs(empty_graph(3))) == Poly2.one()
    two_edges = parse_graph_spec("edges:4:0-1,2-3")
    assert fpoly(_bs(two_edges)) == (A + 2 * T) ** 2


def test_fpoly_graph_convenience() -> None:
    assert fpoly_graph(complete_graph(3)) == A**2 + 6 * A * T + 6 * T**2


def test_fpoly_degree_is_the_dimension() -> None:
    cache = FPolyCache()
    for g in connected_graphs_upto_iso(5):
        b = _bs(g)
        assert homogeneous_degree(fpoly(b, cache)) == dimension(b) == g.n - 1


def test_fpoly_solves_the_boundary_equation() -> None:
    cache = FPolyCache()
    for g in connected_graphs_upto_iso(5):
        b = _bs(g)
        lhs = fpoly(b, cache).deriv_t()
        rhs = fpoly_expr(boundary(b), cache)
        assert lhs == rhs


def test_iso_memo_gives_identical_results() -> None:
    plain = FPolyCache()
    iso = FPolyCache(iso=True)
    for g in connected_graphs_upto_iso(5):
        b = _bs(g)
        assert fpoly(b, plain) == fpoly(b, iso)
    # Isomorphic relabelings share one entry under the iso cache.
    assert len(iso) <= len(plain)


# ---------------------------------------------------------------------------
# closed-form boundary formulas


@pytest.mark.parametrize("n", range(1, 7))
def test_boundary_of_complete_graphs_binomial_formula(n: int) -> None:
    nodes = n + 1
    expected = PolyExpr.zero()
    for s in range(1, nodes):
        expected = expected + _term(
            [complete_graph(s), complete_graph(nodes - s)], comb(nodes, s)
        )
    assert boundary(_bs(complete_graph(nodes))) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_boundary_of_star_graphs_formula(n: int) -> None:
    expected = _term([star_graph(n - 1)], n)
    for i in range(n):
        expected = expected + _term(
            [star_graph(i), complete_graph(n - i)], comb(n, i)
        )
    assert boundary(_bs(star_graph(n))) == expected


@pytest.mark.parametrize(
    "s,t", [(s, t) for s in range(2, 6) for t in range(2, 6) if s + t <= 7]
)
def test_boundary_of_complete_bipartite_graphs_formula(s: int, t: int) -> None:
    expected = _term([join_graphs(empty_graph(s - 1), complete_graph(t))], s)
    expected = expected + _term(
        [join_graphs(complete_graph(s), empty_graph(t - 1))], t
    )
    for a in range(1, s + 1):
        for b in range(1, t + 1):
            if (a, b) == (s, t):
                continue
            expected = expected + _term(
                [bipartite_graph(a, b), complete_graph(s + t - a - b)],
                comb(s, a) * comb(t, b),
            )
    assert boundary(_bs(bipartite_graph(s, t))) == expected


# ---------------------------------------------------------------------------
# expression plumbing


def test_product_factors_drop_points() -> None:
    assert product_factors(_bs(empty_graph(2))) == ()
    two_edges = parse_graph_spec("edges:5:0-1,2-3")
    factors = product_factors(_bs(two_edges))
    assert factors == (_key(complete_graph(2)), _key(complete_graph(2)))


def test_polyexpr_arithmetic() -> None:
    segment = _term([complete_graph(2)])
    combined = 2 * segment + segment * Fraction(1, 2)
    assert combined.coeff((_key(complete_graph(2)),)) == Fraction(5, 2)
    assert (combined - combined).is_zero()
    assert (segment * PolyExpr.point()) == segment
