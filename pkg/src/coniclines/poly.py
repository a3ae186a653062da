"""Homogeneous polynomials in x, y, z over the rationals, and projective points.

The monomial order is fixed once for the whole package: graded
lexicographic with x > y > z.  Every coefficient vector, evaluation row
and report uses it, so exact outputs are reproducible byte for byte.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .linalg import QVector, QVectorBasis, as_fractions, primitive

VARIABLES = ("x", "y", "z")


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples (a, b, c), a+b+c = degree, in graded-lex order x > y > z."""
    if degree < 0:
        raise ValueError("negative degree")
    return tuple(
        (a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    )


@lru_cache(maxsize=None)
def _monomial_index(degree: int) -> dict[tuple[int, int, int], int]:
    return {m: i for i, m in enumerate(monomials(degree))}


def monomial_count(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


class ProjPoint:
    """A point of the rational projective plane in canonical form.

    Coordinates are stored as coprime integers with the first nonzero one
    positive, so proportional triples compare and hash equal.
    """

    __slots__ = ("coords",)

    def __init__(self, x, y, z):
        fr = (Fraction(x), Fraction(y), Fraction(z))
        if not any(fr):
            raise ValueError("projective point needs a nonzero coordinate")
        den = math.lcm(*(c.denominator for c in fr))
        ints = [int(c * den) for c in fr]
        g = math.gcd(*ints)
        sign = next(1 if v > 0 else -1 for v in ints if v != 0)
        object.__setattr__(self, "coords", tuple(v * sign // g for v in ints))

    @property
    def x(self) -> int:
        return self.coords[0]

    @property
    def y(self) -> int:
        return self.coords[1]

    @property
    def z(self) -> int:
        return self.coords[2]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f"[{self.coords[0]} : {self.coords[1]} : {self.coords[2]}]"


class HomPoly:
    """Homogeneous polynomial of fixed degree, dense coefficient vector."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable):
        coeffs = as_fractions(coeffs)
        if len(coeffs) != monomial_count(degree):
            raise ValueError(
                f"degree {degree} needs {monomial_count(degree)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HomPoly is immutable")

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree, [0] * monomial_count(degree))

    @classmethod
    def unit(cls) -> "HomPoly":
        return cls(0, [1])

    @classmethod
    def from_terms(cls, degree: int, terms: Mapping[tuple[int, int, int], object]) -> "HomPoly":
        index = _monomial_index(degree)
        coeffs = [Fraction(0)] * monomial_count(degree)
        for expo, coeff in terms.items():
            if expo not in index:
                raise ValueError(f"exponent {expo} is not of degree {degree}")
            coeffs[index[expo]] += Fraction(coeff)
        return cls(degree, coeffs)

    @classmethod
    def variable(cls, name: str) -> "HomPoly":
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}")
        expo = tuple(int(v == name) for v in VARIABLES)
        return cls.from_terms(1, {expo: 1})

    def terms(self):
        for expo, coeff in zip(monomials(self.degree), self.coeffs):
            if coeff:
                yield expo, coeff

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficient(self, expo: tuple[int, int, int]) -> Fraction:
        return self.coeffs[_monomial_index(self.degree)[expo]]

    def coefficient_vector(self) -> QVector:
        return self.coeffs

    def evaluate(self, p: ProjPoint) -> Fraction:
        """Value at the canonical representative of p.

        Only the zero / nonzero verdict is representative independent;
        callers compare against 0.
        """
        return self.evaluate_triple(p.coords)

    def evaluate_triple(self, coords) -> Fraction:
        """Value at a raw coordinate triple, without projective normalization."""
        px, py, pz = (Fraction(c) for c in coords)
        total = Fraction(0)
        for (a, b, c), coeff in self.terms():
            total += coeff * (px**a) * (py**b) * (pz**c)
        return total

    def vanishes_at(self, p: ProjPoint) -> bool:
        return self.evaluate(p) == 0

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")
        return HomPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in difference")
        return HomPoly(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, factor) -> "HomPoly":
        factor = Fraction(factor)
        return HomPoly(self.degree, [factor * c for c in self.coeffs])

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        deg = self.degree + other.degree
        index = _monomial_index(deg)
        coeffs = [Fraction(0)] * monomial_count(deg)
        for (a1, b1, c1), k1 in self.terms():
            for (a2, b2, c2), k2 in other.terms():
                coeffs[index[(a1 + a2, b1 + b2, c1 + c2)]] += k1 * k2
        return HomPoly(deg, coeffs)

    def mul_monomial(self, expo: tuple[int, int, int]) -> "HomPoly":
        a, b, c = expo
        deg = self.degree + a + b + c
        index = _monomial_index(deg)
        coeffs = [Fraction(0)] * monomial_count(deg)
        for (a1, b1, c1), k in self.terms():
            coeffs[index[(a1 + a, b1 + b, c1 + c)]] = k
        return HomPoly(deg, coeffs)

    def primitive(self) -> "HomPoly":
        """Coefficients scaled to coprime integers, first nonzero positive."""
        return HomPoly(self.degree, primitive(self.coeffs))

    def leading(self) -> tuple[tuple[int, int, int], Fraction]:
        for expo, coeff in self.terms():
            return expo, coeff
        raise ValueError("zero polynomial has no leading term")

    def try_divide(self, divisor: "HomPoly") -> "HomPoly | None":
        """Exact quotient self / divisor, or None when divisor does not divide self.

        Long division by a single divisor in the fixed monomial order; for
        one divisor the remainder vanishes exactly on multiples, so the
        first non-divisible leading term is already conclusive.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            if divisor.degree > self.degree:
                return None
            return HomPoly.zero(self.degree - divisor.degree)
        if divisor.degree > self.degree:
            return None
        qdeg = self.degree - divisor.degree
        (da, db, dc), dcoeff = divisor.leading()
        quotient = HomPoly.zero(qdeg)
        remainder = self
        while not remainder.is_zero():
            (ra, rb, rc), rcoeff = remainder.leading()
            ea, eb, ec = ra - da, rb - db, rc - dc
            if ea < 0 or eb < 0 or ec < 0:
                return None
            term = HomPoly.from_terms(qdeg, {(ea, eb, ec): rcoeff / dcoeff})
            quotient = quotient + term
            remainder = remainder - term * divisor
        return quotient

    def divisible_by(self, divisor: "HomPoly") -> bool:
        return self.try_divide(divisor) is not None

    def substitute(self, images: tuple["HomPoly", "HomPoly", "HomPoly"]) -> "HomPoly":
        """Linear change of variables: substitute degree-1 forms for x, y, z."""
        if any(g.degree != 1 for g in images):
            raise ValueError("substitution images must be degree-1 forms")
        result = HomPoly.zero(self.degree)
        powers: dict[tuple[int, int], HomPoly] = {}

        def power(i: int, n: int) -> HomPoly:
            if n == 0:
                return HomPoly.unit()
            key = (i, n)
            if key not in powers:
                powers[key] = power(i, n - 1) * images[i]
            return powers[key]

        for (a, b, c), coeff in self.terms():
            term = power(0, a) * power(1, b) * power(2, c)
            result = result + term.scale(coeff)
        return result

    def __eq__(self, other):
        return (
            isinstance(other, HomPoly)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"HomPoly({self.degree}, {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for expo, coeff in self.terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(VARIABLES, expo) if e
            )
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)


def evaluate(f: HomPoly, p: ProjPoint) -> Fraction:
    return f.evaluate(p)


def multiply(f: HomPoly, g: HomPoly) -> HomPoly:
    return f * g


def monomial_row(n: int, p: ProjPoint) -> QVector:
    """Row of all degree-n monomials evaluated at the canonical representative."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    px, py, pz = p.coords
    return tuple(
        Fraction((px**a) * (py**b) * (pz**c)) for a, b, c in monomials(n)
    )


def multiplication_image(f: HomPoly, n: int) -> QVectorBasis:
    """Degree-n coefficient vectors of f * (every form of degree n - deg f).

    Multiplication by a nonzero form is injective, so the images of the
    degree-(n - deg f) monomials are a basis; its dimension is the full
    binomial count for that degree.
    """
    if f.is_zero():
        raise ValueError("zero form has no multiplication image")
    if f.degree > n:
        raise ValueError(f"degree overflow: deg f = {f.degree} > n = {n}")
    vectors = tuple(
        primitive(f.mul_monomial(expo).coefficient_vector())
        for expo in monomials(n - f.degree)
    )
    return QVectorBasis(monomial_count(n), vectors)


def poly_from_vector(n: int, vec: Iterable) -> HomPoly:
    return HomPoly(n, vec)
