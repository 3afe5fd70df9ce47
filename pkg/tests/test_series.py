"""Truncated two-variable series, family generating functions, identities."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from nestohedra.algebra import Poly2, homogeneous_degree
from nestohedra.buildingset import building_set_from_graph
from nestohedra.ringcalc import fpoly
from nestohedra.series import (
    DEFAULT_ORDER,
    FAMILIES,
    NotInFamilyError,
    Series2,
    coeff_normalized,
    deriv_t,
    deriv_x,
    eta_linear,
    exp_series,
    family_f,
    family_h,
    first_mismatch,
    identity_suite,
    inv_series,
    pe_f_xplusy,
    phi_h,
    restrict_y0,
    subst_h_series,
    swap_xy,
    truncate,
)

A = Poly2.alpha()
T = Poly2.t()


# ---------------------------------------------------------------------------
# series arithmetic


def test_monomial_and_coeff() -> None:
    s = Series2.monomial(4, 1, 2, A)
    assert s.coeff(1, 2) == A
    assert s.coeff(0, 0).is_zero()


def test_multiplication_truncates() -> None:
    x = Series2.monomial(2, 1, 0)
    cube_truncated = x * x * x
    assert cube_truncated.is_zero()


def test_mixed_orders_raise() -> None:
    with pytest.raises(ValueError):
        Series2.one(3) + Series2.one(4)
    lowered = truncate(Series2.one(4), 3) + Series2.one(3)
    assert lowered.coeff(0, 0) == Poly2.constant(2)
    with pytest.raises(ValueError):
        truncate(Series2.one(3), 5)


def test_eta_linear_frozen_coefficients() -> None:
    eta = eta_linear(1, 0, 3)
    assert eta.coeff(1, 0) == Poly2.one()
    assert eta.coeff(2, 0) == A * Fraction(1, 2)
    assert eta.coeff(3, 0) == A**2 * Fraction(1, 6)
    # eta(x + y) weights x^a y^b by alpha^(a+b-1) binom(a+b, a) / (a+b)!.
    eta_xy = eta_linear(1, 1, 2)
    assert eta_xy.coeff(1, 1) == A


def test_exp_series_frozen_coefficients() -> None:
    grow = exp_series(Series2.monomial(3, 1, 0, A + T))
    assert grow.coeff(0, 0) == Poly2.one()
    assert grow.coeff(2, 0) == (A + T) ** 2 * Fraction(1, 2)
    with pytest.raises(ValueError):
        exp_series(Series2.one(3))


def test_inv_series_frozen_coefficients() -> None:
    order = 3
    denom = Series2.one(order) - eta_linear(1, 0, order) * T
    inv = inv_series(denom)
    assert inv.coeff(0, 0) == Poly2.one()
    assert inv.coeff(1, 0) == T
    assert inv.coeff(2, 0) == A * T * Fraction(1, 2) + T**2
    assert (inv * denom) == Series2.one(order)
    with pytest.raises(ValueError):
        inv_series(Series2.monomial(3, 1, 0))


def test_subst_h_series_matches_coefficientwise_substitution() -> None:
    s = Series2.monomial(2, 1, 0, A**2) + Series2.monomial(2, 0, 1, T)
    h = subst_h_series(s)
    assert h.coeff(1, 0) == (A - T) ** 2
    assert h.coeff(0, 1) == T


def test_first_mismatch_reports_the_smallest_slot() -> None:
    a = Series2.monomial(3, 2, 1, A)
    b = Series2.monomial(3, 2, 1, T)
    k, l, diff = first_mismatch(a, b)
    assert (k, l) == (2, 1)
    assert diff == A - T
    assert first_mismatch(a, a) is None


# ---------------------------------------------------------------------------
# families


def test_pe_series_coefficients_are_permutohedra() -> None:
    pe = family_f("pe", 4)
    assert pe.coeff(1, 0) == Poly2.one()
    assert 2 * pe.coeff(2, 0) == A + 2 * T
    assert 6 * pe.coeff(3, 0) == A**2 + 6 * A * T + 6 * T**2


def test_pe_h_coefficient_is_the_hexagon_h_polynomial() -> None:
    pe_h = family_h("pe", 4)
    assert 6 * pe_h.coeff(3, 0) == A**2 + 4 * A * T + T**2


def test_coeff_normalized_matches_the_recursion() -> None:
    for fam_id, k, l in [
        ("pe", 3, 0),
        ("st", 2, 0),
        ("starmarked", 2, 1),
        ("nabla-because", 2, 1),
        ("because-because", 2, 2),
    ]:
        spec = FAMILIES[fam_id]
        expected = fpoly(building_set_from_graph(spec.graph_at(k, l)))
        assert coeff_normalized(fam_id, k, l, order=5) == expected


def test_coeff_normalized_rejects_bad_indices() -> None:
    with pytest.raises(NotInFamilyError):
        coeff_normalized("pe", 0, 0, order=4)
    with pytest.raises(NotInFamilyError):
        coeff_normalized("st", 1, 1, order=4)
    with pytest.raises(NotInFamilyError):
        coeff_normalized("because-because", 3, 0, order=4)
    with pytest.raises(ValueError):
        coeff_normalized("pe", 6, 0, series=family_f("pe", 4))
    with pytest.raises(NotInFamilyError):
        coeff_normalized("no-such-family", 1, 0, order=4)


def test_family_coefficients_are_homogeneous_of_family_dimension() -> None:
    order = 6
    for fam_id, spec in FAMILIES.items():
        series = family_f(fam_id, order)
        for k, l in spec.indices(order):
            p = series.coeff(k, l) * (factorial(k) * factorial(l))
            assert homogeneous_degree(p) == spec.dim(k, l), (fam_id, k, l)


def test_because_because_series_is_symmetric_in_x_and_y() -> None:
    bb = family_f("because-because", 6)
    assert swap_xy(bb) == bb
    nb = family_f("nabla-because", 6)
    assert swap_xy(nb) != nb


def test_pe_f_xplusy_collapses_to_pe_on_y_0() -> None:
    order = 6
    two_var = restrict_y0(pe_f_xplusy(order))
    pe = family_f("pe", order)
    assert two_var == pe


def test_phi_h_slices() -> None:
    order = 6
    phi = phi_h(order)
    assert phi.coeff(0, 0) == Poly2.one()
    assert phi.coeff(0, 1).is_zero()
    pe_h = family_h("pe", order)
    assert restrict_y0(phi) == Series2.one(order) + pe_h * (A + T)


# ---------------------------------------------------------------------------
# the identity suite


@pytest.mark.parametrize("order", [2, 3, 4, 6, 8, 10])
def test_identity_suite_passes(order: int) -> None:
    report = identity_suite(order)
    assert report.all_passed, report.first_failure


def test_identity_suite_rejects_tiny_orders() -> None:
    with pytest.raises(ValueError):
        identity_suite(1)


def test_corrupted_series_fails_with_a_located_index() -> None:
    report = identity_suite(6, corrupt="pe")
    failure = report.first_failure
    assert failure is not None
    assert failure.name == "I1"
    k, l, diff = failure.mismatch
    assert (k, l) == (2, 0)
    assert not diff.is_zero()


def test_corrupting_an_unknown_family_raises() -> None:
    with pytest.raises(NotInFamilyError):
        identity_suite(4, corrupt="starmarked")


def test_identity_report_serialization() -> None:
    report = identity_suite(3)
    obj = report.to_json_obj()
    assert obj["order"] == 3
    assert obj["passed"] is True
    assert [r["identity"] for r in obj["results"]] == [
        "I1",
        "I2",
        "I3",
        "I4",
        "I5",
        "I6",
        "I7",
        "I8",
    ]


# ---------------------------------------------------------------------------
# derivatives at the series level


def test_deriv_x_of_pe_equals_boundary_identity_shape() -> None:
    # d/dt Pe_f = Pe_f^2 is identity I1; spot-check it directly at order 5.
    order = 5
    pe = family_f("pe", order)
    lhs = deriv_t(pe)
    rhs = pe * pe
    assert first_mismatch(lhs, rhs) is None


def test_deriv_x_loses_one_order() -> None:
    s = family_f("pe", 4)
    assert deriv_x(s).order == 3


def test_default_order_is_used_when_unspecified() -> None:
    assert family_f("pe").order == DEFAULT_ORDER
