"""The arithmetic anatomy of a rational point on an integral Weierstrass model.

Every affine rational point writes uniquely as (A/B^2, C/B^3) in lowest terms
with B >= 1.  B is the interesting part: its distinct prime divisors define the
point's *length* (0 = integral point), and the logarithmic distance measures
how close two points sit (close points have LARGE distance; a point is close
to infinity when |x| is large).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from mordell.arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    LengthVerdict,
    _strip_small_primes,
    distinct_prime_count,
    is_perfect_power,
    is_probable_prime,
)
from mordell.curve import Point, Rational

__all__ = [
    "Shape",
    "canonical_shape",
    "length_of_denominator_root",
    "log_abs",
    "log_distance",
    "naive_height",
    "point_length",
]


@dataclass(frozen=True)
class Shape:
    """(a, b, c) with x = a/b^2 and y = c/b^3, all in lowest terms, b >= 1."""

    a: int
    b: int
    c: int

    @property
    def x(self) -> Fraction:
        return Fraction(self.a, self.b * self.b)

    @property
    def y(self) -> Fraction:
        return Fraction(self.c, self.b**3)

    def point(self) -> Point:
        return Point(self.x, self.y)


def canonical_shape(point: Point) -> Shape:
    """Decompose an affine point into its (a, b, c) shape.

    On an integral model the x-denominator is a perfect square and the
    y-denominator the matching cube; anything else signals a non-integral
    model and raises ValueError.
    """
    if point.is_infinity:
        raise ValueError("the point at infinity has no affine shape")
    x, y = Fraction(point.x), Fraction(point.y)
    b = math.isqrt(x.denominator)
    if b * b != x.denominator:
        raise ValueError(
            f"x-denominator {x.denominator} is not a perfect square "
            "(point not on an integral model?)"
        )
    if y.denominator != b**3:
        raise ValueError(
            f"y-denominator {y.denominator} does not match {b}^3 "
            "(point not on an integral model?)"
        )
    return Shape(x.numerator, b, y.numerator)


def length_of_denominator_root(
    b: int,
    budget: FactorBudget = DEFAULT_BUDGET,
    k: Optional[int] = None,
) -> LengthVerdict:
    """Distinct-prime count of a denominator root B >= 1.

    When `k` is given, effort stops as soon as the verdict relative to k is
    decided: stripping small primes halts once k+1 distinct primes are known,
    and a composite remainder that is not a prime power already certifies two
    more primes, which usually settles small k without any rho work.
    """
    if b < 1:
        raise ValueError("denominator root must be >= 1")
    if b == 1:
        return LengthVerdict("exact", 0)
    if k is None:
        return distinct_prime_count(b, budget)
    found: dict[int, int] = {}
    rem = _strip_small_primes(b, budget.trial_bound, found, stop_after_distinct=k + 1)
    known = len(found)
    if rem == 1:
        return LengthVerdict("exact", known)
    if known > k:
        return LengthVerdict("at_least", known + 1, unresolved_cofactor=rem)
    if is_probable_prime(rem, budget.mr_rounds):
        return LengthVerdict("exact", known + 1)
    entry = is_perfect_power(rem)
    if entry is not None and is_probable_prime(entry.base, budget.mr_rounds):
        return LengthVerdict("exact", known + 1)
    # composite, not a prime power: at least two distinct primes hide in rem
    if known + 2 > k:
        return LengthVerdict("at_least", known + 2, unresolved_cofactor=rem)
    return distinct_prime_count(b, budget)


def point_length(
    point: Point,
    budget: FactorBudget = DEFAULT_BUDGET,
    k: Optional[int] = None,
) -> LengthVerdict:
    """Number of distinct primes dividing the point's denominator root B.

    Integral points give exact 0.
    """
    return length_of_denominator_root(canonical_shape(point).b, budget, k)


def naive_height(q: Union[Rational, Point]) -> int:
    """H(a/b) = max(|a|, |b|) for a rational in lowest terms.

    A Point argument means the height of its x-coordinate.
    """
    if isinstance(q, Point):
        if q.is_infinity:
            raise ValueError("the point at infinity has no naive height")
        q = q.x
    q = Fraction(q)
    return max(abs(q.numerator), q.denominator)


def log_abs(q: Union[int, Fraction]) -> float:
    """Natural log of |q|, safe for rationals far beyond float range."""
    q = Fraction(q)
    if q == 0:
        return float("-inf")
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def log_distance(reference: Point, point: Point) -> float:
    """Logarithmic distance from `reference` to the affine `point`.

    -log|x(ref) - x(P)| for a finite reference, log|x(P)| for the point at
    infinity.  Large values mean *close* points; equal x-coordinates give
    +inf (infinite proximity), never an exception.
    """
    if point.is_infinity:
        raise ValueError("logarithmic distance is measured to an affine point")
    if reference.is_infinity:
        return log_abs(point.x)
    gap = reference.x - point.x
    if gap == 0:
        return float("inf")
    return -log_abs(gap)
