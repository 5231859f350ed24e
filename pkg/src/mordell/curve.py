"""Weierstrass curves over Q with integral coefficients, their standard
invariants, and the exact chord-and-tangent group law.

All point coordinates are `fractions.Fraction`; nothing here ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Union

Rational = Union[int, Fraction]

__all__ = [
    "Curve",
    "CurveInvariants",
    "INFINITY",
    "Point",
    "mordell_curve",
]


@dataclass(frozen=True)
class Point:
    """A rational point: affine (x, y) or the point at infinity (x is None)."""

    x: Optional[Fraction]
    y: Optional[Fraction]

    @staticmethod
    def affine(x: Rational, y: Rational) -> "Point":
        return Point(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({self.x}, {self.y})"


INFINITY = Point(None, None)


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    discriminant: int
    h_e: float


@dataclass(frozen=True)
class Curve:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with integer a_i."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"singular curve {self}")

    @cached_property
    def _b(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @cached_property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self._b
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def h_e(self) -> float:
        """log |discriminant|, the curve-size normalizer."""
        return math.log(abs(self.discriminant))

    def invariants(self) -> CurveInvariants:
        b2, b4, b6, b8 = self._b
        return CurveInvariants(b2, b4, b6, b8, self.discriminant, self.h_e)

    def contains(self, point: Point) -> bool:
        """Exact test of the curve equation."""
        if point.is_infinity:
            return True
        x, y = point.x, point.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def negate(self, point: Point) -> Point:
        if point.is_infinity:
            return INFINITY
        return Point(point.x, -point.y - self.a1 * point.x - self.a3)

    def _line(self, p: Point, q: Point) -> Optional[tuple[Fraction, Fraction]]:
        """Slope and intercept of the chord (or tangent if p == q); None if vertical."""
        x1, y1, x2, y2 = p.x, p.y, q.x, q.y
        if p == q:
            den = 2 * y1 + self.a1 * x1 + self.a3
            if den == 0:
                return None
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / den
        else:
            if x1 == x2:
                return None
            lam = (y2 - y1) / (x2 - x1)
        return lam, y1 - lam * x1

    def chord_third_intersection(self, p: Point, q: Point) -> Point:
        """Third point where the line through p and q meets the curve,
        before any reflection.  Vertical lines meet the curve at infinity."""
        if p.is_infinity or q.is_infinity:
            raise ValueError("chord construction needs two affine points")
        line = self._line(p, q)
        if line is None:
            return INFINITY
        lam, nu = line
        x3 = lam * lam + self.a1 * lam - self.a2 - p.x - q.x
        return Point(x3, lam * x3 + nu)

    def add(self, p: Point, q: Point) -> Point:
        """Group law: reflect the third chord intersection; infinity is the identity."""
        if p.is_infinity:
            return q
        if q.is_infinity:
            return p
        if p.x == q.x and q == self.negate(p):
            return INFINITY
        return self.negate(self.chord_third_intersection(p, q))

    def scalar_mul(self, m: int, point: Point) -> Point:
        """m * point by double-and-add over the cached doubling ladder."""
        if m == 0 or point.is_infinity:
            return INFINITY
        if m < 0:
            return self.negate(self.scalar_mul(-m, point))
        result = INFINITY
        ladder = point
        while m:
            if m & 1:
                result = self.add(result, ladder)
            m >>= 1
            if m:
                ladder = self.add(ladder, ladder)
        return result

    def linear_comb(self, m: int, p: Point, n: int, q: Point) -> Point:
        return self.add(self.scalar_mul(m, p), self.scalar_mul(n, q))

    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __str__(self) -> str:
        return "[%d,%d,%d,%d,%d]" % self.coefficients()


def mordell_curve(d: int) -> Curve:
    """The curve y^2 = x^3 + d; its discriminant is -432*d^2."""
    if d == 0:
        raise ValueError("y^2 = x^3 requires d != 0 to be non-singular")
    return Curve(0, 0, 0, 0, d)
