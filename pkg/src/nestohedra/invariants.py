"""Face vectors, h-polynomials, gamma vectors, and nonnegativity scans.

For a simple polytope the h-polynomial is symmetric (Dehn-Sommerville), so
it has a gamma vector; a polytope or series coefficient "passes" when every
gamma entry is nonnegative.  ``gal_check_poly`` decides that for one
polynomial, ``gal_check_series`` sweeps a family's h-series and aggregates
violations of symmetry, homogeneity, the family grading, and gamma
nonnegativity per index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from .algebra import (
    GammaVector,
    InhomogeneousError,
    Poly2,
    format_rational,
    gamma_from_h,
    h_from_f,
    homogeneous_degree,
    is_symmetric,
)
from .buildingset import BuildingSet
from .ringcalc import FPolyCache, fpoly
from .series import FamilySpec, Series2, _family

__all__ = [
    "fvector",
    "hpoly",
    "gamma",
    "dehn_sommerville",
    "euler_relation_holds",
    "GalPolyResult",
    "gal_check_poly",
    "ScanViolation",
    "SeriesScanReport",
    "gal_check_series",
]


def fvector(b: BuildingSet, cache: FPolyCache | None = None) -> list[int]:
    """Face counts by dimension; the last entry (the polytope itself) is 1."""
    p = fpoly(b, cache)
    n = homogeneous_degree(p)
    out = []
    for i in range(n + 1):
        c = p.coeff(i, n - i)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer face count {c} at dimension {i}")
        out.append(int(c))
    return out


def hpoly(b: BuildingSet, cache: FPolyCache | None = None) -> Poly2:
    return h_from_f(fpoly(b, cache))


def gamma(b: BuildingSet, cache: FPolyCache | None = None) -> GammaVector:
    return gamma_from_h(hpoly(b, cache))


def dehn_sommerville(b: BuildingSet, cache: FPolyCache | None = None) -> bool:
    """Symmetry of the h-polynomial."""
    return is_symmetric(hpoly(b, cache))


def euler_relation_holds(face_counts: list[int]) -> bool:
    """Alternating codimension sum: sum_i (-1)^(n-i) f_i = (-1)^n."""
    n = len(face_counts) - 1
    total = sum((-1) ** (n - i) * f for i, f in enumerate(face_counts))
    return total == (-1) ** n


@dataclass(frozen=True)
class GalPolyResult:
    passed: bool
    gammas: GammaVector
    first_negative: Optional[tuple[int, Fraction]]


def gal_check_poly(p: Poly2, n: int) -> GalPolyResult:
    """Gamma-nonnegativity of a symmetric homogeneous degree-n polynomial.

    Asymmetric or wrong-degree input is a caller error and raises; a
    negative gamma entry is a finding and is reported in the result.
    """
    degree = homogeneous_degree(p)
    if degree != n:
        raise ValueError(f"expected degree {n}, got {degree}")
    if not is_symmetric(p):
        raise ValueError(f"not symmetric in alpha and t: {p}")
    gv = gamma_from_h(p)
    for i, g in enumerate(gv.gammas):
        if g < 0:
            return GalPolyResult(passed=False, gammas=gv, first_negative=(i, g))
    return GalPolyResult(passed=True, gammas=gv, first_negative=None)


@dataclass(frozen=True)
class ScanViolation:
    index: tuple[int, int]
    condition: str
    witness: str

    def to_json_obj(self) -> dict[str, object]:
        return {
            "k": self.index[0],
            "l": self.index[1],
            "condition": self.condition,
            "witness": self.witness,
        }


@dataclass
class SeriesScanReport:
    family: str
    order: int
    checked: int
    violations: list[ScanViolation]
    gammas: dict[tuple[int, int], GammaVector] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict[str, object]:
        return {
            "family": self.family,
            "order": self.order,
            "checked": self.checked,
            "violations": [v.to_json_obj() for v in self.violations],
        }


def gal_check_series(
    series_h: Series2,
    fam: "FamilySpec | str",
    max_order: int | None = None,
) -> SeriesScanReport:
    """Sweep a family's h-series and collect per-index violations.

    At each family index (k, l) with k + l <= max_order the normalized
    coefficient k! l! [x^k y^l] is checked for: being nonzero, symmetry,
    homogeneity of the family dimension, the uniform grading degree
    2*(k+l) - 2*(i+j) = 2*offset, and gamma nonnegativity.
    """
    spec = _family(fam)
    bound = series_h.order if max_order is None else max_order
    if bound > series_h.order:
        raise ValueError(f"max order {bound} beyond truncation {series_h.order}")
    report = SeriesScanReport(family=spec.id, order=bound, checked=0, violations=[])
    for k, l in spec.indices(bound):
        report.checked += 1
        p = series_h.coeff(k, l) * (factorial(k) * factorial(l))
        if p.is_zero():
            report.violations.append(
                ScanViolation((k, l), "nonzero", "coefficient is zero")
            )
            continue
        ok = True
        if not is_symmetric(p):
            report.violations.append(ScanViolation((k, l), "symmetry", str(p)))
            ok = False
        try:
            degree = homogeneous_degree(p)
        except InhomogeneousError as exc:
            report.violations.append(ScanViolation((k, l), "homogeneity", str(exc)))
            ok = False
        else:
            if degree != spec.dim(k, l):
                report.violations.append(
                    ScanViolation(
                        (k, l),
                        "homogeneity",
                        f"degree {degree}, expected {spec.dim(k, l)}",
                    )
                )
                ok = False
        off_grading = [
            (i, j)
            for (i, j), _ in p.terms()
            if 2 * (k + l) - 2 * (i + j) != 2 * spec.offset
        ]
        if off_grading:
            report.violations.append(
                ScanViolation(
                    (k, l),
                    "grading",
                    f"terms {off_grading} break the 2q = {2 * spec.offset} grading",
                )
            )
            ok = False
        if not ok:
            continue
        gv = gamma_from_h(p)
        report.gammas[(k, l)] = gv
        for i, g in enumerate(gv.gammas):
            if g < 0:
                report.violations.append(
                    ScanViolation(
                        (k, l),
                        "gamma-nonnegativity",
                        f"gamma_{i} = {format_rational(g)}",
                    )
                )
                break
    return report
