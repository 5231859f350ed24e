"""Searches over curves: integral points, Hall ratios, small rational points,
generator discovery, the (m, n) lattice survey of bounded-length points, and
the hypothesis checker for y^2 = x^3 - N*x generator pairs.

All searches are deterministic: identical inputs (including budgets and thread
counts) produce identical reports, because every intermediate value is exact
and aggregation is a fold in enumeration order.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mordell.arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    LengthVerdict,
    _prime_blocks,
    iroot,
    is_probable_prime,
    isqrt,
)
from mordell.curve import INFINITY, Curve, Point
from mordell.points import (
    canonical_shape,
    length_of_denominator_root,
    log_abs,
    log_distance,
)

__all__ = [
    "Coverage",
    "GMCheckReport",
    "HallRecord",
    "IntegralSolution",
    "SearchReport",
    "SearchRow",
    "find_generators",
    "find_small_relation",
    "gm_hypotheses_check",
    "hall_ratio",
    "hall_scan",
    "integral_points_mordell",
    "lattice_length_search",
    "small_rational_point_search",
]

_SQUARES_MOD_64 = frozenset((i * i) & 63 for i in range(64))


@dataclass(frozen=True)
class IntegralSolution:
    """An integral point (x, y) on y^2 = x^3 + d, recorded with y >= 0."""

    x: int
    y: int


def integral_points_mordell(d: int, x_bound: int) -> list[IntegralSolution]:
    """All integral solutions of y^2 = x^3 + d with |x| <= x_bound, ascending in x."""
    if d == 0:
        raise ValueError("d must be non-zero")
    if x_bound < 1:
        raise ValueError("x_bound must be >= 1")
    if d > 0:
        x_min = -_icbrt_floor(d)
    else:
        t = _icbrt_floor(-d)
        x_min = t if t**3 == -d else t + 1
    solutions = []
    for x in range(max(x_min, -x_bound), x_bound + 1):
        t = x**3 + d
        if t < 0 or (t & 63) not in _SQUARES_MOD_64:
            continue
        y = isqrt(t)
        if y * y == t:
            solutions.append(IntegralSolution(x, y))
    return solutions


def _icbrt_floor(n: int) -> int:
    return iroot(n, 3)


@dataclass(frozen=True)
class HallRecord:
    """One integral solution of y^2 = x^3 + d scored on the Hall scale."""

    d: int
    x: int
    y: int
    log_x: float
    ratio: float  # log x / (2 log |d|)


def hall_ratio(d: int, x: int) -> HallRecord:
    """Score the solution with the given x; raises if x^3 + d is not a square."""
    if x < 2:
        raise ValueError("hall ratio needs x >= 2")
    if abs(d) < 2:
        raise ValueError("hall ratio needs |d| >= 2")
    t = x**3 + d
    y = isqrt(t) if t >= 0 else -1
    if y < 0 or y * y != t:
        raise ValueError(f"x^3 + d is not a perfect square for (d, x) = ({d}, {x})")
    log_x = math.log(x)
    return HallRecord(d, x, y, log_x, log_x / (2 * math.log(abs(d))))


def hall_scan(d: int, x_bound: int) -> list[HallRecord]:
    """Hall records for every integral solution with 2 <= x <= x_bound."""
    if abs(d) < 2:
        raise ValueError("hall scan needs |d| >= 2")
    return [
        hall_ratio(d, sol.x)
        for sol in integral_points_mordell(d, x_bound)
        if sol.x >= 2
    ]


def small_rational_point_search(
    curve: Curve, b_max: int, a_max: int
) -> list[Point]:
    """All affine points with denominator root <= b_max and |x numerator| <= a_max.

    One representative per {P, -P} pair (the y-root with the larger numerator).
    Everything is verified exactly before being returned.
    """
    if b_max < 1 or a_max < 0:
        raise ValueError("need b_max >= 1 and a_max >= 0")
    a1, a2, a3, a4, a6 = curve.coefficients()
    found = []
    for b in range(1, b_max + 1):
        b2, b3 = b * b, b**3
        for a in range(-a_max, a_max + 1):
            if math.gcd(a, b) != 1:
                continue
            # y = c/b^3 solves c^2 + u*c - v = 0 over the integers
            u = a1 * a * b + a3 * b3
            v = a**3 + a2 * a * a * b2 + a4 * a * b2 * b2 + a6 * b3 * b3
            disc = u * u + 4 * v
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc or (s - u) % 2 != 0:
                continue
            c = (s - u) // 2
            point = Point(Fraction(a, b2), Fraction(c, b3))
            assert curve.contains(point)
            found.append(point)
    return found


def _multiples_by_x(
    curve: Curve, point: Point, bound: int
) -> tuple[dict[Fraction, int], Optional[int]]:
    """x-coordinates of a*point for a = 1..bound; second value is the torsion
    order if a multiple hits infinity first."""
    xs: dict[Fraction, int] = {}
    r = INFINITY
    for a in range(1, bound + 1):
        r = curve.add(r, point)
        if r.is_infinity:
            return xs, a
        xs.setdefault(r.x, a)
    return xs, None


def find_small_relation(
    curve: Curve, p: Point, q: Point, bound: int
) -> Optional[tuple[int, int]]:
    """A pair (a, b) with a*P = ±b*Q for 1 <= a, b <= bound, if one exists.

    (a, 0) means P has torsion order a; (0, b) likewise for Q.  None means no
    relation was detected, which is evidence of (not proof of) independence.
    """
    xs_p, torsion_p = _multiples_by_x(curve, p, bound)
    if torsion_p is not None:
        return (torsion_p, 0)
    xs_q, torsion_q = _multiples_by_x(curve, q, bound)
    if torsion_q is not None:
        return (0, torsion_q)
    for x, a in xs_p.items():
        if x in xs_q:
            return (a, xs_q[x])
    return None


def estimate_height(curve: Curve, point: Point, k: int = 12) -> float:
    """Empirical canonical-height proxy: log H(x(k*P)) / (2*k*k).

    Good to a few percent for non-torsion points, which is plenty for height
    ordering and basis reduction.  The point must not have order <= k.
    """
    big = curve.scalar_mul(k, point)
    if big.is_infinity:
        raise ValueError("torsion point has height 0")
    shape = canonical_shape(big)
    return log_abs(Fraction(max(abs(shape.a), shape.b**2))) / (2 * k * k)


def find_generators(
    curve: Curve,
    b_max: int = 3,
    a_max: int = 400,
    relation_bound: int = 10,
) -> tuple[Point, Point]:
    """Heuristic pair of independent non-torsion points of small height.

    Candidates come from `small_rational_point_search`, ordered by estimated
    canonical height so that a point is always preferred to its multiples
    (naive-height order would happily pick 2*G and then reject G as
    dependent).  Torsion is screened by walking multiples (Mazur's bound caps
    rational torsion order at 12).  The pair generates *a* finite-index
    subgroup; reports always echo the basis so a survey is attributable to it.
    """
    candidates = [
        pt
        for pt in small_rational_point_search(curve, b_max, a_max)
        if _multiples_by_x(curve, pt, 12)[1] is None
    ]
    if not candidates:
        raise ValueError("no non-torsion point found in the search box")

    def key(pt: Point) -> tuple:
        # near-equal heights (torsion translates of one point) tie-break
        # toward the representative with the smaller denominator
        shape = canonical_shape(pt)
        return (
            int(estimate_height(curve, pt) * 50 + 0.5),
            shape.b,
            abs(shape.a),
            pt.x,
            pt.y,
        )

    candidates.sort(key=key)
    first = candidates[0]
    for cand in candidates[1:]:
        if find_small_relation(curve, first, cand, relation_bound) is None:
            return first, cand
    raise ValueError("no independent second generator found in the search box")


@dataclass(frozen=True)
class SearchRow:
    """One lattice point m*P + n*Q of the survey grid."""

    m: int
    n: int
    point: Point
    b_digits: int
    length: LengthVerdict
    h: float
    collision: bool = False  # same x as the reference point
    strict_excluded: bool = False  # B is a proper prime power under --strict-prime


@dataclass(frozen=True)
class Coverage:
    range_n: int
    budget: FactorBudget
    unresolved_count: int


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a lattice survey of length-bounded points.

    h_bar is the maximal logarithmic distance from the reference over rows
    whose length is confirmed <= k; ratio normalizes it by h_E = log|disc|.
    Rows follow grid enumeration order (m, then n, ascending).
    """

    curve: Curve
    generator_p: Point
    generator_q: Point
    reference: Point
    k: int
    rows: tuple[SearchRow, ...]
    h_bar: Optional[float]
    h_bar_at: Optional[tuple[int, int]]
    h_e: float
    ratio: Optional[float]
    coverage: Coverage

    def confirmed_rows(self) -> list[SearchRow]:
        return [
            row
            for row in self.rows
            if row.length.is_exact
            and row.length.count <= self.k
            and not row.collision
            and not row.strict_excluded
        ]

    def to_csv(self) -> str:
        lines = ["m,n,B_digits,length,h"]
        for row in self.rows:
            lines.append(
                f"{row.m},{row.n},{row.b_digits},{row.length},{row.h!r}"
            )
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "curve": str(self.curve),
            "generators": [str(self.generator_p), str(self.generator_q)],
            "reference": str(self.reference),
            "k": self.k,
            "range": self.coverage.range_n,
            "rows": len(self.rows),
            "confirmed": len(self.confirmed_rows()),
            "unresolved": self.coverage.unresolved_count,
            "h_bar": self.h_bar,
            "h_bar_at": list(self.h_bar_at) if self.h_bar_at else None,
            "h_E": self.h_e,
            "ratio": self.ratio,
            "budget": {
                "trial_bound": self.coverage.budget.trial_bound,
                "rho_iterations": self.coverage.budget.rho_iterations,
                "mr_rounds": self.coverage.budget.mr_rounds,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def _evaluate_row(
    curve: Curve,
    m: int,
    n: int,
    point: Point,
    k: int,
    reference: Point,
    budget: FactorBudget,
    strict_prime: bool,
) -> SearchRow:
    shape = canonical_shape(point)
    verdict = length_of_denominator_root(shape.b, budget, k)
    strict_excluded = (
        strict_prime
        and verdict.is_exact
        and verdict.count == 1
        and not is_probable_prime(shape.b, budget.mr_rounds)
    )
    collision = not reference.is_infinity and point.x == reference.x
    h = log_distance(reference, point)
    return SearchRow(
        m, n, point, len(str(shape.b)), verdict, h, collision, strict_excluded
    )


def _grid_row(
    curve: Curve,
    start: Point,
    q: Point,
    m: int,
    range_n: int,
    k: int,
    reference: Point,
    budget: FactorBudget,
    strict_prime: bool,
) -> list[SearchRow]:
    """Evaluated rows for one m, walking n by repeated addition of Q."""
    out = []
    r = start
    for n in range(-range_n, range_n + 1):
        if not (m == 0 and n == 0) and not r.is_infinity:
            out.append(
                _evaluate_row(curve, m, n, r, k, reference, budget, strict_prime)
            )
        r = curve.add(r, q)
    return out


def _row_task(args) -> list[SearchRow]:
    curve, p, q, m, range_n, k, reference, budget, strict_prime = args
    start = curve.linear_comb(m, p, -range_n, q)
    return _grid_row(curve, start, q, m, range_n, k, reference, budget, strict_prime)


def lattice_length_search(
    curve: Curve,
    p: Point,
    q: Point,
    range_n: int,
    k: int,
    reference: Point = INFINITY,
    budget: FactorBudget = DEFAULT_BUDGET,
    threads: int = 1,
    strict_prime: bool = False,
) -> SearchReport:
    """Survey m*P + n*Q over |m|, |n| <= range_n for points of length <= k.

    Each affine, non-duplicate grid point gets a shape, a length verdict under
    the budget, and a logarithmic distance h from the reference; h_bar is the
    maximum h over confirmed length <= k rows (first hit in enumeration order
    wins ties).  Rows whose membership below k cannot be decided within budget
    are excluded from h_bar and counted in coverage.unresolved_count.  With
    strict_prime, a length-1 row only confirms when B itself is prime, not a
    proper prime power.
    """
    if range_n < 1:
        raise ValueError("range_n must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if not curve.contains(p) or not curve.contains(q):
        raise ValueError("generators must lie on the curve")
    if abs(curve.discriminant) == 1:
        raise ValueError("|discriminant| = 1: cannot normalize by h_E = 0")
    relation = find_small_relation(curve, p, q, 8)
    if relation is not None:
        raise ValueError(f"generators fail the independence screen: relation {relation}")

    _prime_blocks(budget.trial_bound)  # warm the sieve before any fork

    ms = list(range(-range_n, range_n + 1))
    if threads > 1:
        tasks = [
            (curve, p, q, m, range_n, k, reference, budget, strict_prime) for m in ms
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            per_row = list(pool.map(_row_task, tasks, chunksize=4))
    else:
        per_row = []
        row_start = curve.linear_comb(-range_n, p, -range_n, q)
        for m in ms:
            per_row.append(
                _grid_row(
                    curve, row_start, q, m, range_n, k, reference, budget, strict_prime
                )
            )
            row_start = curve.add(row_start, p)

    rows: list[SearchRow] = []
    seen: set[tuple[Fraction, Fraction]] = set()
    h_bar: Optional[float] = None
    h_bar_at: Optional[tuple[int, int]] = None
    unresolved = 0
    for chunk in per_row:
        for row in chunk:
            key = (row.point.x, row.point.y)
            if key in seen:
                continue
            seen.add(key)
            rows.append(row)
            if row.collision:
                continue
            if row.length.is_exact and row.length.count <= k:
                if not row.strict_excluded and (h_bar is None or row.h > h_bar):
                    h_bar = row.h
                    h_bar_at = (row.m, row.n)
            elif not row.length.is_exact and row.length.count <= k:
                unresolved += 1

    ratio = None if h_bar is None else h_bar / curve.h_e
    return SearchReport(
        curve=curve,
        generator_p=p,
        generator_q=q,
        reference=reference,
        k=k,
        rows=tuple(rows),
        h_bar=h_bar,
        h_bar_at=h_bar_at,
        h_e=curve.h_e,
        ratio=ratio,
        coverage=Coverage(range_n, budget, unresolved),
    )


@dataclass(frozen=True)
class GMCheckReport:
    """Outcomes of the generator-pair hypotheses on y^2 = x^3 - N*x."""

    n: int
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __str__(self) -> str:
        lines = [f"y^2 = x^3 - {self.n}x"]
        for name, ok, detail in self.checks:
            mark = "PASS" if ok else "FAIL"
            lines.append(f"  {mark}  {name}" + (f": {detail}" if detail else ""))
        return "\n".join(lines)


def gm_hypotheses_check(
    n: int, q1: Point, q2: Point, relation_bound: int = 12
) -> GMCheckReport:
    """Check that (Q1, Q2) satisfies the hypotheses: both on y^2 = x^3 - N*x,
    x(Q1) < 0, x(Q2) a rational square, and no small multiple relation."""
    if n <= 0:
        raise ValueError("N must be positive")
    curve = Curve(0, 0, 0, -n, 0)
    checks: list[tuple[str, bool, str]] = []

    on1 = curve.contains(q1)
    on2 = curve.contains(q2)
    checks.append(("q1_on_curve", on1, "" if on1 else f"{q1} not on {curve}"))
    checks.append(("q2_on_curve", on2, "" if on2 else f"{q2} not on {curve}"))
    if not (on1 and on2):
        return GMCheckReport(n, tuple(checks))

    neg = q1.x < 0
    checks.append(("x_q1_negative", neg, f"x(Q1) = {q1.x}"))

    shape2 = canonical_shape(q2)
    root = isqrt(shape2.a) if shape2.a >= 0 else -1
    is_square = root >= 0 and root * root == shape2.a
    if is_square:
        detail = f"x(Q2) = {root}^2" if shape2.b == 1 else f"x(Q2) = ({root}/{shape2.b})^2"
    else:
        detail = f"x(Q2) = {q2.x} is not a rational square"
    checks.append(("x_q2_square", is_square, detail))

    relation = find_small_relation(curve, q1, q2, relation_bound)
    checks.append(
        (
            "independent",
            relation is None,
            "no relation a*Q1 = ±b*Q2 with 1 <= a, b <= %d" % relation_bound
            if relation is None
            else f"relation detected at (a, b) = {relation}",
        )
    )
    return GMCheckReport(n, tuple(checks))
