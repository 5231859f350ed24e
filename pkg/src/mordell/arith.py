"""Exact big-integer number theory: roots, perfect powers, primality,
factorization, radicals, and ABC quality.

Everything here is pure and deterministic: probabilistic routines (Miller-Rabin
witnesses, Pollard rho parameters) derive their randomness from the input, so
repeated runs and parallel callers always agree.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Optional

__all__ = [
    "FactorBudget",
    "Factorization",
    "LengthVerdict",
    "PowerEntry",
    "UnresolvedFactorization",
    "abc_quality",
    "distinct_prime_count",
    "factor",
    "icbrt",
    "iroot",
    "is_perfect_power",
    "is_probable_prime",
    "isqrt",
    "min_successive_gap",
    "perfect_powers",
    "power_gap_pairs",
    "radical",
    "sixth_power_free",
]

# Deterministic Miller-Rabin: the first 12 primes decide primality for
# everything below this threshold (Sorenson & Webster).
_DETERMINISTIC_LIMIT = 3317044064679887385961981
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)
_SMALL_PRIME_PRODUCT = reduce(lambda a, b: a * b, _SMALL_PRIMES)


class UnresolvedFactorization(ArithmeticError):
    """A factoring budget ran out with a composite cofactor left standing."""


@dataclass(frozen=True)
class FactorBudget:
    """Effort limits for `factor` and everything built on it.

    trial_bound: largest prime tried by trial division.
    rho_iterations: total Pollard-rho iterations across all splitting work.
    mr_rounds: Miller-Rabin rounds for inputs above the deterministic range.
    """

    trial_bound: int = 10**6
    rho_iterations: int = 10**7
    mr_rounds: int = 40


DEFAULT_BUDGET = FactorBudget()

UNIT = "unit"
PROBABLE_PRIME = "probable_prime"
COMPOSITE_UNRESOLVED = "composite_unresolved"


@dataclass(frozen=True)
class Factorization:
    """Outcome of `factor`: sign * prod(p**e) * cofactor == the input, exactly.

    `factors` lists (prime, exponent) with strictly increasing primes, every
    prime vetted by the primality test.  `cofactor_status` says what the
    unfactored remainder is: 1 (`unit`), a probable prime the budget did not
    allow us to certify by splitting (`probable_prime`), or a composite that
    refused to split (`composite_unresolved`).
    """

    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int
    cofactor_status: str

    def reconstruct(self) -> int:
        value = self.cofactor
        for p, e in self.factors:
            value *= p**e
        return self.sign * value

    @property
    def is_complete(self) -> bool:
        return self.cofactor_status != COMPOSITE_UNRESOLVED

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"{self.cofactor}({self.cofactor_status})")
        if not parts:
            parts = ["1"]
        body = " * ".join(parts)
        return f"-{body}" if self.sign < 0 else body


@dataclass(frozen=True)
class PowerEntry:
    """A perfect power `value = base ** exponent` with maximal exponent."""

    value: int
    base: int
    exponent: int


@dataclass(frozen=True)
class LengthVerdict:
    """Count of distinct primes: exact, or a lower bound when factoring gave up.

    For an `at_least` verdict, `unresolved_cofactor` is the part of the input
    whose prime content was not resolved.  It is composite whenever the bound
    was pushed as far as the budget allows; a bound-targeted query (see
    `length_of_denominator_root`) may stop earlier, once the verdict against
    the target is already decided.
    """

    kind: str  # "exact" | "at_least"
    count: int
    unresolved_cofactor: Optional[int] = None

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self) -> str:
        return str(self.count) if self.is_exact else f">={self.count}"


def isqrt(n: int) -> int:
    """Floor square root; rejects negative input."""
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(n)


def iroot(n: int, k: int) -> int:
    """Floor k-th root of n >= 0 by Newton iteration on integers."""
    if n < 0:
        raise ValueError("iroot of negative integer")
    if k < 1:
        raise ValueError("root index must be >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # 2**ceil(bits/k) >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def icbrt(n: int) -> int:
    """Cube root rounded toward zero-symmetric floor: icbrt(-n) == -icbrt(n)."""
    if n < 0:
        return -iroot(-n, 3)
    return iroot(n, 3)


def is_perfect_power(n: int) -> Optional[PowerEntry]:
    """Canonical perfect-power form of n >= 1, or None.

    The returned exponent is maximal, so the base is never itself a perfect
    power.  By convention 1 is the power (1, 2).
    """
    if n < 1:
        raise ValueError("perfect-power test needs n >= 1")
    if n == 1:
        return PowerEntry(1, 1, 2)
    base, exponent = n, 1
    p = 2
    while p <= base.bit_length():
        r = iroot(base, p)
        if r**p == base:
            base, exponent = r, exponent * p
        else:
            p = _next_prime_small(p)
    if exponent >= 2:
        return PowerEntry(n, base, exponent)
    return None


def _next_prime_small(p: int) -> int:
    q = p + 1 + (p & 1)
    while any(q % d == 0 for d in range(2, math.isqrt(q) + 1)):
        q += 2
    return q


def perfect_powers(limit: int) -> list[PowerEntry]:
    """All distinct perfect powers <= limit, ascending, in canonical form."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    values = {1}
    e = 2
    while (1 << e) <= limit:
        b = 2
        while b**e <= limit:
            values.add(b**e)
            b += 1
        e += 1
    entries = []
    for v in sorted(values):
        entry = is_perfect_power(v)
        assert entry is not None
        entries.append(entry)
    return entries


def power_gap_pairs(limit: int, gap: int) -> list[tuple[int, int]]:
    """Pairs of perfect powers <= limit differing by exactly `gap`."""
    if gap < 0:
        raise ValueError("gap must be >= 0")
    if gap == 0:
        return []  # values are distinct
    values = [entry.value for entry in perfect_powers(limit)]
    present = set(values)
    return [(v, v + gap) for v in values if v + gap in present]


def min_successive_gap(limit: int, from_index: int = 0) -> int:
    """Minimum of a[n] - a[n-1] over the perfect-power sequence, n > from_index."""
    values = [entry.value for entry in perfect_powers(limit)]
    if len(values) < from_index + 2:
        raise ValueError("insufficient perfect-power terms below limit")
    return min(values[i] - values[i - 1] for i in range(from_index + 1, len(values)))


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin primality test.

    Deterministic (the 12-prime base set) below ~3.3e24; above that, `rounds`
    pseudo-random bases seeded from n itself, so the answer is reproducible.
    False positives occur with probability at most 4**-rounds.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_LIMIT:
        bases = _DETERMINISTIC_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(rounds)]
    return not any(_mr_witness(a, d, s, n) for a in bases)


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True if a proves n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


@lru_cache(maxsize=4)
def _sieve_primes(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray(b"\x01") * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i in range(2, bound + 1) if sieve[i])


_GCD_BLOCK = 1024


@lru_cache(maxsize=4)
def _prime_blocks(bound: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Primes <= bound grouped in blocks with precomputed products, for
    gcd-batched trial division."""
    primes = _sieve_primes(bound)
    blocks = []
    for i in range(0, len(primes), _GCD_BLOCK):
        chunk = primes[i : i + _GCD_BLOCK]
        blocks.append((chunk, reduce(lambda a, b: a * b, chunk)))
    return tuple(blocks)


def _strip_small_primes(
    n: int,
    bound: int,
    out: dict[int, int],
    stop_after_distinct: Optional[int] = None,
) -> int:
    """Divide out every prime <= bound from n, recording exponents in `out`.

    With `stop_after_distinct`, stripping may stop early once that many
    distinct primes are known and a remainder > 1 is left; the remainder is
    then only guaranteed to be free of the primes in the blocks processed.
    """
    if bound < 2 or n == 1:
        return n
    for chunk, product in _prime_blocks(bound):
        g = math.gcd(n, product)
        if g > 1:
            for p in chunk:
                if g % p == 0:
                    e = 0
                    while n % p == 0:
                        n //= p
                        e += 1
                    out[p] = out.get(p, 0) + e
                    g //= p
                    if g == 1:
                        break
        if n == 1:
            break
        if stop_after_distinct is not None and len(out) >= stop_after_distinct:
            break
    return n


def _rho_brent(n: int, budget: int) -> tuple[Optional[int], int]:
    """Brent-cycle Pollard rho. Returns (nontrivial factor or None, iterations used).

    The polynomial constant walks deterministically from a seed derived from n,
    so identical calls always take the identical path.
    """
    if n % 2 == 0:
        return 2, 0
    used = 0
    rng = random.Random(n)
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            advance = min(r, budget - used)
            for _ in range(advance):
                y = (y * y + c) % n
            used += advance
            if advance < r:
                break
            k = 0
            while k < r and g == 1 and used < budget:
                ys = y
                count = min(m, r - k, budget - used)
                for _ in range(count):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                used += count
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(x - ys, n)
        if 1 < g < n:
            return g, used
    return None, used


def factor(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> Factorization:
    """Factor n within a budget: gcd-batched trial division, then Pollard rho.

    Always returns; completeness is reported through `cofactor_status`.
    A leftover cofactor is tested for probable primality and perfect-power
    shape before being declared composite.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    m = _strip_small_primes(m, budget.trial_bound, found)

    leftovers: list[tuple[int, int]] = []
    rho_left = budget.rho_iterations
    queue: list[tuple[int, int]] = [(m, 1)] if m > 1 else []
    while queue:
        c, mult = queue.pop()
        if rho_left <= 0:
            leftovers.append((c, mult))
            continue
        if is_probable_prime(c, budget.mr_rounds):
            found[c] = found.get(c, 0) + mult
            continue
        entry = is_perfect_power(c)
        if entry is not None:
            queue.append((entry.base, mult * entry.exponent))
            continue
        d, used = _rho_brent(c, rho_left)
        rho_left -= used
        if d is None:
            leftovers.append((c, mult))
        else:
            queue.append((d, mult))
            queue.append((c // d, mult))

    cofactor = 1
    for c, mult in leftovers:
        cofactor *= c**mult
    # rho splits can leave a prime shared between the list and the remainder
    for p in list(found):
        while cofactor % p == 0:
            cofactor //= p
            found[p] += 1

    if cofactor == 1:
        status = UNIT
    elif is_probable_prime(cofactor, budget.mr_rounds):
        status = PROBABLE_PRIME
    else:
        status = COMPOSITE_UNRESOLVED
        entry = is_perfect_power(cofactor)
        if entry is not None and is_probable_prime(entry.base, budget.mr_rounds):
            found[entry.base] = found.get(entry.base, 0) + entry.exponent
            cofactor = 1
            status = UNIT

    return Factorization(sign, tuple(sorted(found.items())), cofactor, status)


def radical(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> int:
    """Product of the distinct primes dividing |n|."""
    if n == 0:
        raise ValueError("radical of 0 is undefined")
    f = factor(n, budget)
    if f.cofactor_status == COMPOSITE_UNRESOLVED:
        raise UnresolvedFactorization(
            f"cannot compute radical: unresolved cofactor {f.cofactor}"
        )
    r = 1
    for p, _ in f.factors:
        r *= p
    if f.cofactor_status == PROBABLE_PRIME:
        r *= f.cofactor
    return r


def abc_quality(a: int, b: int, c: int, budget: FactorBudget = DEFAULT_BUDGET) -> float:
    """log max(|a|,|b|,|c|) / log rad(abc) for a zero-sum coprime triple."""
    if a == 0 or b == 0 or c == 0:
        raise ValueError("abc triple must be non-zero")
    if a + b + c != 0:
        raise ValueError("abc triple must sum to zero")
    if math.gcd(a, b) != 1 or math.gcd(b, c) != 1 or math.gcd(a, c) != 1:
        raise ValueError("abc triple must be pairwise coprime")
    r = radical(a * b * c, budget)
    return math.log(max(abs(a), abs(b), abs(c))) / math.log(r)


def sixth_power_free(d: int, budget: FactorBudget = DEFAULT_BUDGET) -> bool:
    """True iff no prime p has p**6 dividing d."""
    if d == 0:
        raise ValueError("sixth-power-free test needs d != 0")
    f = factor(d, budget)
    if any(e >= 6 for _, e in f.factors):
        return False
    if f.cofactor_status == COMPOSITE_UNRESOLVED:
        entry = is_perfect_power(f.cofactor)
        if entry is not None and entry.exponent >= 6:
            return False
        # every prime of the cofactor exceeds the trial bound
        if f.cofactor >= (budget.trial_bound + 1) ** 6:
            raise UnresolvedFactorization(
                f"cannot decide sixth-power-freeness of cofactor {f.cofactor}"
            )
    return True


def distinct_prime_count(
    n: int, budget: FactorBudget = DEFAULT_BUDGET
) -> LengthVerdict:
    """How many distinct primes divide n >= 1.

    Exact when factoring completed (a probable-prime cofactor counts as one
    more prime).  Otherwise a lower bound: the unresolved cofactor is coprime
    to every listed prime, composite, and not a perfect power of a prime, so
    it hides at least two more distinct primes.
    """
    if n < 1:
        raise ValueError("distinct_prime_count needs n >= 1")
    f = factor(n, budget)
    listed = len(f.factors)
    if f.cofactor_status == UNIT:
        return LengthVerdict("exact", listed)
    if f.cofactor_status == PROBABLE_PRIME:
        return LengthVerdict("exact", listed + 1)
    return LengthVerdict("at_least", listed + 2, unresolved_cofactor=f.cofactor)
