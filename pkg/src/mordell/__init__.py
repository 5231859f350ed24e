"""Exact arithmetic on Mordell-type elliptic curves over the rationals.

Subpackages by concern:
  arith   -- big-integer number theory (roots, primality, factoring, radicals)
  curve   -- Weierstrass curves, invariants, and the chord-and-tangent group law
  points  -- the (A, B^2, B^3) anatomy of a rational point, lengths, distances
  search  -- integral-point searches, Hall ratios, lattice length surveys
  cli     -- command-line surface over all of the above
"""

from mordell.arith import FactorBudget, Factorization, LengthVerdict
from mordell.curve import INFINITY, Curve, Point, mordell_curve
from mordell.points import Shape, canonical_shape, log_distance, naive_height, point_length
from mordell.search import (
    HallRecord,
    IntegralSolution,
    SearchReport,
    hall_ratio,
    hall_scan,
    integral_points_mordell,
    lattice_length_search,
)

__version__ = "0.1.0"
