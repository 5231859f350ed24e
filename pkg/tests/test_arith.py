import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from mordell.arith import (
    COMPOSITE_UNRESOLVED,
    PROBABLE_PRIME,
    UNIT,
    FactorBudget,
    UnresolvedFactorization,
    abc_quality,
    distinct_prime_count,
    factor,
    icbrt,
    iroot,
    is_perfect_power,
    is_probable_prime,
    isqrt,
    min_successive_gap,
    perfect_powers,
    power_gap_pairs,
    radical,
    sixth_power_free,
)


# ---------------------------------------------------------------- roots

def test_isqrt_examples():
    assert isqrt(0) == 0
    assert isqrt(26) == 5
    # the large solution of y^2 = x^3 + 24 is exact
    n = 8158**3 + 24
    r = isqrt(n)
    assert r == 736844 and r * r == n


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


def test_icbrt_examples():
    assert icbrt(27) == 3
    assert icbrt(-27) == -3
    assert icbrt(5**2 + 2) == 3 and 3**3 == 5**2 + 2


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**40))
def test_isqrt_bracket(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=-(10**30), max_value=10**30))
def test_icbrt_bracket_and_symmetry(n):
    r = icbrt(n)
    assert icbrt(-n) == -r
    if n >= 0:
        assert r**3 <= n < (r + 1) ** 3


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**24), st.integers(min_value=1, max_value=12))
def test_iroot_bracket(n, k):
    r = iroot(n, k)
    assert r**k <= n
    assert (r + 1) ** k > n


# ---------------------------------------------------------------- perfect powers

def test_is_perfect_power_examples():
    assert is_perfect_power(8) == is_perfect_power(8)
    entry = is_perfect_power(8)
    assert (entry.base, entry.exponent) == (2, 3)
    assert is_perfect_power(7) is None
    entry = is_perfect_power(64)
    assert (entry.base, entry.exponent) == (2, 6)
    one = is_perfect_power(1)
    assert (one.base, one.exponent) == (1, 2)
    with pytest.raises(ValueError):
        is_perfect_power(0)


def test_is_perfect_power_grid():
    for b in range(2, 51):
        for e in range(2, 11):
            entry = is_perfect_power(b**e)
            assert entry is not None
            assert entry.base**entry.exponent == b**e
            # canonical: the base itself is not a power
            assert is_perfect_power(entry.base) is None or entry.base == 1


def test_perfect_powers_sequence():
    values = [e.value for e in perfect_powers(36)]
    assert values == [1, 4, 8, 9, 16, 25, 27, 32, 36]
    entries = perfect_powers(125)
    assert len(entries) == 15 and entries[-1].value == 125
    assert [e.value for e in perfect_powers(3)] == [1]


def test_perfect_powers_oracle_equivalence():
    limit = 10**5
    brute = {1}
    for b in range(2, math.isqrt(limit) + 1):
        v = b * b
        while v <= limit:
            brute.add(v)
            v *= b
    assert [e.value for e in perfect_powers(limit)] == sorted(brute)


def test_power_gap_pairs():
    assert power_gap_pairs(10**6, 1) == [(8, 9)]
    assert power_gap_pairs(100, 0) == []
    assert power_gap_pairs(30, 2) == [(25, 27)]


def test_min_successive_gap():
    assert min_successive_gap(10**4, 0) == 1
    assert min_successive_gap(36, 3) == 2
    assert min_successive_gap(4, 0) == 3
    with pytest.raises(ValueError):
        min_successive_gap(3, 5)


# ---------------------------------------------------------------- primality

def test_is_probable_prime_examples():
    assert not is_probable_prime(1)
    assert is_probable_prime(14476032998358419473538526891666573479317742071)
    assert is_probable_prime(259476976750177)


def test_primality_matches_sieve_exhaustively():
    limit = 10**6
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    for n in range(limit + 1):
        assert is_probable_prime(n) == bool(sieve[n]), n


# ---------------------------------------------------------------- factoring

def test_factor_examples():
    assert factor(720).factors == ((2, 4), (3, 2), (5, 1))
    assert factor(720).cofactor_status == UNIT
    f = factor(3275)
    assert f.factors == ((5, 2), (131, 1)) and f.cofactor_status == UNIT


def test_factor_budget_exhaustion():
    p = 618970019642690137449562111  # 2^89 - 1
    q = 162259276829213363391578010288127  # 2^107 - 1
    f = factor(p * q, FactorBudget(trial_bound=10**3, rho_iterations=50, mr_rounds=10))
    assert f.factors == ()
    assert f.cofactor == p * q
    assert f.cofactor_status == COMPOSITE_UNRESOLVED


def test_factor_probable_prime_cofactor():
    p = 14476032998358419473538526891666573479317742071
    f = factor(p, FactorBudget(trial_bound=10**4, rho_iterations=0, mr_rounds=10))
    assert f.factors == () and f.cofactor == p
    assert f.cofactor_status == PROBABLE_PRIME
    # with rho allowed the same prime is simply listed
    g = factor(p)
    assert g.factors == ((p, 1),) and g.cofactor_status == UNIT


def test_factor_reconstruction_randomized():
    rng = random.Random(20240811)
    small_primes = [2, 3, 5, 7, 11, 13, 10**6 + 3, 2**31 - 1]
    for _ in range(60):
        n = 1
        for _ in range(rng.randrange(1, 8)):
            n *= rng.choice(small_primes) ** rng.randrange(1, 4)
        if rng.random() < 0.5:
            n = -n
        f = factor(n)
        assert f.reconstruct() == n
        assert all(is_probable_prime(p) for p, _ in f.factors)
        assert list(f.factors) == sorted(f.factors)
    # a few unstructured 40-60 digit inputs; completeness not required
    for _ in range(5):
        n = rng.randrange(10**39, 10**60)
        f = factor(n, FactorBudget(rho_iterations=10**4))
        assert f.reconstruct() == n


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor(0)


# ---------------------------------------------------------------- radical / abc

def test_radical_examples():
    assert radical(720) == 30
    assert radical(97200) == 30  # 432 * 15^2
    for p in (2, 131, 259476976750177):
        assert radical(p) == p


def test_radical_properties():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(2, 10**12)
        r = radical(n)
        assert n % r == 0
        assert radical(r) == r
        f = factor(r)
        assert all(e == 1 for _, e in f.factors)


def test_radical_unresolved_raises():
    p = 618970019642690137449562111
    q = 162259276829213363391578010288127
    with pytest.raises(UnresolvedFactorization):
        radical(p * q, FactorBudget(trial_bound=10**3, rho_iterations=10, mr_rounds=10))


def test_abc_quality_examples():
    assert abc_quality(1, 8, -9) == pytest.approx(math.log(9) / math.log(6), abs=1e-12)
    assert abc_quality(1, 2, -3) == pytest.approx(math.log(3) / math.log(6), abs=1e-12)
    assert abc_quality(2, 3, -5) == pytest.approx(math.log(5) / math.log(30), abs=1e-12)


def test_abc_quality_invariances():
    base = abc_quality(5, 27, -32)
    for triple in [(27, 5, -32), (-32, 27, 5), (5, -32, 27)]:
        assert abc_quality(*triple) == pytest.approx(base, abs=1e-12)
    assert abc_quality(-5, -27, 32) == pytest.approx(base, abs=1e-12)


def test_abc_quality_rejects_bad_triples():
    with pytest.raises(ValueError):
        abc_quality(1, 1, -2 + 1)  # sum != 0
    with pytest.raises(ValueError):
        abc_quality(2, 4, -6)  # not coprime
    with pytest.raises(ValueError):
        abc_quality(0, 1, -1)


# ---------------------------------------------------------------- misc

def test_sixth_power_free():
    assert sixth_power_free(15)
    assert not sixth_power_free(64)
    assert sixth_power_free(1090)
    assert not sixth_power_free(3**6 * 5)
    with pytest.raises(ValueError):
        sixth_power_free(0)


def test_distinct_prime_count():
    assert distinct_prime_count(1).count == 0
    v = distinct_prime_count(9)
    assert v.is_exact and v.count == 1
    v = distinct_prime_count(53**2 * 367)
    assert v.is_exact and v.count == 2
    with pytest.raises(ValueError):
        distinct_prime_count(0)


def test_distinct_prime_count_lower_bound():
    p = 618970019642690137449562111
    q = 162259276829213363391578010288127
    v = distinct_prime_count(9 * p * q, FactorBudget(trial_bound=10**3, rho_iterations=10, mr_rounds=10))
    assert not v.is_exact
    assert v.count == 3  # one listed prime + at least two hiding in the cofactor
    assert v.unresolved_cofactor == p * q
