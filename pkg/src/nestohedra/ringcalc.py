"""The facet recursion: boundaries of nestohedra and their face polynomials.

The boundary of the nestohedron of a connected building set B decomposes,
facet by facet, as the sum over proper members S of the product of the
nestohedra of restriction(B, S) and removal(B, S).  ``PolyExpr`` records
such sums exactly: a term is a multiset of canonical keys of connected
building sets (the product of the corresponding polytopes), point factors
are dropped since a point is the multiplicative identity, and the empty
product therefore denotes the point itself.

Integrating the boundary's face polynomial in t and pinning the t-free
coefficient to alpha^n recovers the face polynomial of the polytope, which
is what ``fpoly`` computes, memoized across the whole recursion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .algebra import Poly2, format_rational, homogeneous_degree
from .buildingset import (
    BuildingSet,
    Graph,
    adjacency_masks,
    building_set_from_graph,
    building_set_from_key,
    building_set_lists,
    canonical_key,
    components,
    connected_submask,
    contraction,
    induced_subgraph,
    is_connected_graph,
    removal,
    restriction,
)

__all__ = [
    "PolyExpr",
    "product_factors",
    "boundary",
    "boundary_expr",
    "boundary_graph",
    "integrate_t",
    "FPolyCache",
    "fpoly",
    "fpoly_expr",
    "fpoly_graph",
]

Product = tuple[bytes, ...]


class PolyExpr:
    """Formal rational combination of products of connected building sets."""

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Mapping[Product, Fraction | int] | Iterable[tuple[Product, Fraction | int]] = (),
    ):
        acc: dict[Product, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for product, c in items:
            product = tuple(sorted(product))
            c = Fraction(c)
            if product in acc:
                acc[product] += c
            else:
                acc[product] = c
        self._terms = {p: c for p, c in acc.items() if c}

    @classmethod
    def zero(cls) -> "PolyExpr":
        return cls()

    @classmethod
    def point(cls) -> "PolyExpr":
        return cls({(): 1})

    @classmethod
    def of(cls, b: BuildingSet, coefficient: Fraction | int = 1) -> "PolyExpr":
        """The expression with one term: the product decomposition of b."""
        return cls({product_factors(b): coefficient})

    def terms(self) -> list[tuple[Product, Fraction]]:
        return sorted(self._terms.items())

    def coeff(self, product: Product) -> Fraction:
        return self._terms.get(tuple(sorted(product)), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyExpr):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "PolyExpr") -> "PolyExpr":
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return PolyExpr(out)

    def __sub__(self, other: "PolyExpr") -> "PolyExpr":
        return self + (other * -1)

    def __mul__(self, other: "PolyExpr | Fraction | int") -> "PolyExpr":
        if isinstance(other, (int, Fraction)):
            return PolyExpr({p: c * other for p, c in self._terms.items()})
        if not isinstance(other, PolyExpr):
            return NotImplemented
        out: dict[Product, Fraction] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                key = tuple(sorted(p1 + p2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return PolyExpr(out)

    def __rmul__(self, other: Fraction | int) -> "PolyExpr":
        return self.__mul__(other)

    def total_mass(self) -> Fraction:
        """Sum of all coefficients; counts facets when terms came from a boundary."""
        return sum(self._terms.values(), Fraction(0))

    def iso_normalized(self) -> "PolyExpr":
        """Re-key every factor up to isomorphism and re-aggregate.

        Useful for comparing expressions built from differently labeled but
        isomorphic building sets.
        """
        out: dict[Product, Fraction] = {}
        for product, c in self._terms.items():
            key = tuple(
                sorted(
                    canonical_key(building_set_from_key(f), iso=True)
                    for f in product
                )
            )
            out[key] = out.get(key, Fraction(0)) + c
        return PolyExpr(out)

    def to_json_obj(self) -> list[dict[str, object]]:
        rows = []
        for product, c in self._terms.items():
            factors = [building_set_lists(building_set_from_key(f)) for f in product]
            rows.append({"coefficient": format_rational(c), "factors": factors})
        rows.sort(key=lambda r: (r["factors"], r["coefficient"]))
        return rows

    def __repr__(self) -> str:
        return f"PolyExpr({len(self._terms)} terms, mass {self.total_mass()})"


def product_factors(b: BuildingSet) -> Product:
    """Sorted canonical keys of b's components, point components dropped."""
    return tuple(
        sorted(
            canonical_key(c) for c in components(b) if len(c.ground) > 1
        )
    )


def boundary(b: BuildingSet) -> PolyExpr:
    """Facet decomposition of the nestohedron of a connected building set.

    One term per proper member S: restriction(b, S) times removal(b, S).
    The point (one-element ground) has no facets and maps to zero.
    """
    if not b.is_connected():
        raise ValueError("boundary needs a connected building set; use boundary_expr")
    full = b.full_mask
    acc: dict[Product, Fraction] = {}
    for s in b.sets:
        if s == full:
            continue
        product = tuple(
            sorted(product_factors(restriction(b, s)) + product_factors(removal(b, s)))
        )
        acc[product] = acc.get(product, Fraction(0)) + 1
    return PolyExpr(acc)


def boundary_expr(e: PolyExpr) -> PolyExpr:
    """Extend the boundary to sums of products by linearity and Leibniz."""
    out = PolyExpr.zero()
    for product, c in e.terms():
        for idx, factor in enumerate(product):
            rest = product[:idx] + product[idx + 1 :]
            d = boundary(building_set_from_key(factor))
            out = out + d * PolyExpr({rest: c})
    return out


def boundary_graph(g: Graph) -> PolyExpr:
    """Facet decomposition computed directly from a connected graph.

    Sums over proper node subsets inducing a connected subgraph; each term
    is the induced subgraph's building set times the building set of the
    contraction through that subset.  Agrees term by term with
    ``boundary(building_set_from_graph(g))``.
    """
    if not is_connected_graph(g):
        raise ValueError("boundary_graph needs a connected graph")
    adj = adjacency_masks(g)
    full = (1 << g.n) - 1
    acc: dict[Product, Fraction] = {}
    for mask in range(1, full):
        if not connected_submask(adj, mask):
            continue
        inside = building_set_from_graph(induced_subgraph(g, mask))
        outside = building_set_from_graph(contraction(g, mask))
        product = tuple(sorted(product_factors(inside) + product_factors(outside)))
        acc[product] = acc.get(product, Fraction(0)) + 1
    return PolyExpr(acc)


def integrate_t(g: Poly2, n: int) -> Poly2:
    """Solve dF/dt = g for the degree-n face polynomial with F|_{t=0} = alpha^n.

    g must be homogeneous of degree n-1, or zero when n = 0 (the point).
    """
    if n < 0:
        raise ValueError("negative dimension")
    if g.is_zero():
        if n == 0:
            return Poly2.one()
        raise ValueError(f"zero boundary polynomial for dimension {n}")
    degree = homogeneous_degree(g)
    if degree != n - 1:
        raise ValueError(f"boundary polynomial has degree {degree}, expected {n - 1}")
    out = {(i, j + 1): c / (j + 1) for (i, j), c in g.terms()}
    out[(n, 0)] = Fraction(1)
    return Poly2(out)


class FPolyCache:
    """Memo table for the face-polynomial recursion.

    Keys are canonical building-set keys; with ``iso=True`` lookups are made
    under isomorphism-reduced keys instead, which can merge relabeled
    repeats at the cost of computing the reduced key.  Inserts are
    idempotent (the recursion is deterministic), so concurrent use from
    threads is safe.
    """

    def __init__(self, iso: bool = False):
        self.iso = iso
        self._by_mode: dict[bytes, Poly2] = {}
        self._by_label: dict[bytes, Poly2] = {}

    def peek_label(self, label_key: bytes) -> Optional[Poly2]:
        return self._by_label.get(label_key)

    def lookup(self, b: BuildingSet) -> Optional[Poly2]:
        return self._by_mode.get(canonical_key(b, iso=self.iso))

    def store(self, b: BuildingSet, value: Poly2) -> None:
        self._by_mode[canonical_key(b, iso=self.iso)] = value
        self._by_label[canonical_key(b)] = value

    def __len__(self) -> int:
        return len(self._by_mode)


_DEFAULT_CACHE = FPolyCache()


def fpoly(b: BuildingSet, cache: FPolyCache | None = None) -> Poly2:
    """Face polynomial of the nestohedron of a building set.

    Disconnected building sets give the product over components.  Connected
    ones recurse through the facet decomposition: integrate the boundary's
    face polynomial in t and pin the t-free part to alpha^dim.
    """
    cache = cache if cache is not None else _DEFAULT_CACHE
    out = Poly2.one()
    for comp in components(b):
        out = out * _fpoly_connected(comp, cache)
    return out


def _fpoly_connected(b: BuildingSet, cache: FPolyCache) -> Poly2:
    if len(b.ground) == 1:
        return Poly2.one()
    cached = cache.lookup(b)
    if cached is not None:
        return cached
    g = fpoly_expr(boundary(b), cache)
    value = integrate_t(g, len(b.ground) - 1)
    cache.store(b, value)
    return value


def fpoly_expr(e: PolyExpr, cache: FPolyCache | None = None) -> Poly2:
    """Face polynomial of a formal sum of products of building sets."""
    cache = cache if cache is not None else _DEFAULT_CACHE
    out = Poly2.zero()
    for product, c in e.terms():
        term = Poly2.constant(c)
        for factor in product:
            known = cache.peek_label(factor)
            if known is None:
                known = fpoly(building_set_from_key(factor), cache)
            term = term * known
        out = out + term
    return out


def fpoly_graph(g: Graph, cache: FPolyCache | None = None) -> Poly2:
    return fpoly(building_set_from_graph(g), cache)
