"""Exact sparse polynomials in the face-counting variables alpha and t.

The face polynomial of a simple n-dimensional polytope is homogeneous of
degree n: the coefficient of alpha^i t^(n-i) counts the i-dimensional faces,
so a segment is alpha + 2t and a hexagon is alpha^2 + 6 alpha t + 6 t^2.
Polynomials are stored sparsely as a map from exponent pairs (i, j) to
nonzero rational coefficients; the zero polynomial is the empty map.

Two changes of basis matter downstream.  Substituting alpha -> alpha - t
turns a face polynomial into the corresponding h-polynomial, which is
symmetric in alpha and t for every simple polytope.  A symmetric homogeneous
polynomial of degree n can in turn be rewritten over the basis
(alpha t)^i (alpha + t)^(n-2i); the coefficients of that rewrite form the
gamma vector, the object whose nonnegativity is checked elsewhere.

All coefficients are ``fractions.Fraction``; arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Rational",
    "Poly2",
    "GammaVector",
    "InhomogeneousError",
    "h_from_f",
    "homogeneous_degree",
    "is_symmetric",
    "gamma_from_h",
    "h_from_gamma",
    "format_rational",
    "parse_rational",
]

Rational = Fraction
Exponents = tuple[int, int]
CoeffLike = Union[Fraction, int]


class InhomogeneousError(ValueError):
    """Raised when a polynomial required to be homogeneous mixes degrees."""

    def __init__(self, terms: Iterable[tuple[int, int, Fraction]]):
        self.terms = sorted(terms)
        degrees = sorted({i + j for i, j, _ in self.terms})
        offending = ", ".join(
            f"{format_rational(c)}*a^{i}*t^{j}" for i, j, c in self.terms
        )
        super().__init__(f"mixed total degrees {degrees}: {offending}")


class Poly2:
    """Sparse bivariate polynomial in alpha and t with Fraction coefficients.

    Instances are treated as immutable; every operation returns a new
    polynomial with zero coefficients pruned.
    """

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Mapping[Exponents, CoeffLike] | Iterable[tuple[Exponents, CoeffLike]] = (),
    ):
        acc: dict[Exponents, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent pair {(i, j)}")
            c = Fraction(c)
            if (i, j) in acc:
                acc[(i, j)] += c
            else:
                acc[(i, j)] = c
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def constant(cls, c: CoeffLike) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def one(cls) -> "Poly2":
        return cls({(0, 0): 1})

    @classmethod
    def alpha(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c: CoeffLike = 1) -> "Poly2":
        return cls({(i, j): c})

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms sorted by exponent pair, for deterministic iteration."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.terms())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly2.constant(other)._terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Poly2 | CoeffLike") -> "Poly2":
        other = _as_poly(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Poly2(out)

    def __radd__(self, other: CoeffLike) -> "Poly2":
        return self.__add__(other)

    def __sub__(self, other: "Poly2 | CoeffLike") -> "Poly2":
        return self.__add__(-_as_poly(other))

    def __rsub__(self, other: CoeffLike) -> "Poly2":
        return _as_poly(other).__sub__(self)

    def __neg__(self) -> "Poly2":
        return Poly2({k: -c for k, c in self._terms.items()})

    def __mul__(self, other: "Poly2 | CoeffLike") -> "Poly2":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Poly2({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, Poly2):
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Poly2(out)

    def __rmul__(self, other: CoeffLike) -> "Poly2":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "Poly2":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly2.one()
        for _ in range(exponent):
            out = out * self
        return out

    def deriv_t(self) -> "Poly2":
        """Formal d/dt."""
        return Poly2({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def __repr__(self) -> str:
        return f"Poly2({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            factors = []
            if c != 1 or (i, j) == (0, 0):
                factors.append(format_rational(c))
            if i:
                factors.append("a" if i == 1 else f"a^{i}")
            if j:
                factors.append("t" if j == 1 else f"t^{j}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_records(self) -> list[dict[str, object]]:
        """Serialize as sorted ``{"i", "j", "c"}`` records with rational strings."""
        return [
            {"i": i, "j": j, "c": format_rational(c)}
            for (i, j), c in self.terms()
        ]

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, object]]) -> "Poly2":
        return cls(
            {(int(r["i"]), int(r["j"])): parse_rational(str(r["c"])) for r in records}
        )


def _as_poly(value: "Poly2 | CoeffLike") -> Poly2:
    if isinstance(value, Poly2):
        return value
    return Poly2.constant(value)


def format_rational(c: CoeffLike) -> str:
    """Render exactly, as ``p`` for integers and ``p/q`` in lowest terms otherwise."""
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def homogeneous_degree(p: Poly2) -> int:
    """Total degree of a homogeneous polynomial.

    Raises ``ValueError`` on the zero polynomial (its degree is undefined)
    and ``InhomogeneousError``, carrying the offending terms, when the input
    mixes total degrees.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no homogeneous degree")
    degrees = {i + j for (i, j), _ in p.terms()}
    if len(degrees) > 1:
        raise InhomogeneousError((i, j, c) for (i, j), c in p.terms())
    return degrees.pop()


def is_symmetric(p: Poly2) -> bool:
    """True when p(alpha, t) == p(t, alpha).  The zero polynomial qualifies."""
    return all(c == p.coeff(j, i) for (i, j), c in p.terms())


def h_from_f(p: Poly2) -> Poly2:
    """Substitute alpha -> alpha - t, the face-to-h change of variables."""
    out: dict[Exponents, Fraction] = {}
    for (i, j), c in p.terms():
        for k in range(i + 1):
            key = (k, i - k + j)
            term = c * comb(i, k) * (-1) ** (i - k)
            out[key] = out.get(key, Fraction(0)) + term
    return Poly2(out)


@dataclass(frozen=True)
class GammaVector:
    """Coefficients of h over the basis (alpha t)^i (alpha + t)^(n-2i)."""

    n: int
    gammas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        expected = self.n // 2 + 1
        if self.n < 0:
            raise ValueError("negative degree")
        if len(self.gammas) != expected:
            raise ValueError(
                f"degree {self.n} needs {expected} gamma entries, got {len(self.gammas)}"
            )
        object.__setattr__(self, "gammas", tuple(Fraction(g) for g in self.gammas))

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.gammas)

    def as_strings(self) -> list[str]:
        return [format_rational(g) for g in self.gammas]


def _gamma_basis(i: int, n: int) -> Poly2:
    """(alpha t)^i (alpha + t)^(n - 2i), expanded."""
    return Poly2(
        {(i + k, n - i - k): comb(n - 2 * i, k) for k in range(n - 2 * i + 1)}
    )


def gamma_from_h(p: Poly2) -> GammaVector:
    """Extract the gamma vector of a symmetric homogeneous polynomial.

    Peels basis elements off one by one: gamma_i is the coefficient of
    alpha^(n-i) t^i left in the residual, which is then cleared.  A nonzero
    residual after the last step would mean the symmetric basis failed, so
    it is reported as an internal error rather than a bad input.
    """
    n = homogeneous_degree(p)
    if not is_symmetric(p):
        raise ValueError(f"not symmetric in alpha and t: {p}")
    residual = p
    gammas = []
    for i in range(n // 2 + 1):
        g = residual.coeff(n - i, i)
        gammas.append(g)
        if g:
            residual = residual - _gamma_basis(i, n) * g
    if residual:
        raise ArithmeticError(f"gamma extraction left a residual: {residual}")
    return GammaVector(n, tuple(gammas))


def h_from_gamma(gv: GammaVector) -> Poly2:
    """Inverse of gamma_from_h: expand the gamma vector back to a polynomial."""
    out = Poly2.zero()
    for i, g in enumerate(gv.gammas):
        if g:
            out = out + _gamma_basis(i, gv.n) * g
    return out
