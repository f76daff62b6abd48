"""Modular Fibonacci, factorization, Pisano periods, and chains."""

import random
from math import gcd, lcm

import pytest

from fibtower import (
    CapExceeded,
    FactorBudgetExceeded,
    FactoredNatural,
    FibTowerError,
    PisanoChain,
    build_chain,
    factorize,
    fib,
    fib_mod,
    fib_pair_mod,
    is_prime,
    pisano_period,
    pisano_period_brute,
    pisano_prime,
)
from fibtower.modfib import ChainLevel

FIBS = [0, 1]
while len(FIBS) <= 10_000:
    FIBS.append(FIBS[-1] + FIBS[-2])


def pi_of(m: int) -> int:
    return pisano_period(factorize(m)).value


# ------------------------------ fib_mod ------------------------------


def test_fib_mod_examples():
    assert fib_mod(91, 4) == 1  # index is 1 mod 6
    for m in (1, 2, 7, 97, 10**9):
        assert fib_mod(0, m) == 0
    assert 4_807_526_976 == FIBS[48] == 64 * 75_117_609
    assert fib_mod(48, 64) == 0


def test_fib_mod_total_cases():
    assert fib_mod(123456, 1) == 0
    with pytest.raises(ValueError):
        fib_mod(5, 0)
    with pytest.raises(ValueError):
        fib_mod(-1, 5)


def test_fib_mod_agrees_with_exact_small_exhaustive():
    for m in range(1, 61):
        for i in range(0, 301):
            assert fib_mod(i, m) == FIBS[i] % m, (i, m)


def test_fib_mod_agrees_with_exact_sampled():
    rng = random.Random(0xF1B)
    for _ in range(2000):
        i = rng.randrange(0, 10_001)
        m = rng.randrange(1, 10_001)
        assert fib_mod(i, m) == FIBS[i] % m, (i, m)
        a, b = fib_pair_mod(i, m)
        assert (a, b) == (FIBS[i] % m, FIBS[i + 1] % m)


# ----------------------------- primality -----------------------------


def test_is_prime():
    assert [p for p in range(2, 50) if is_prime(p)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    ]
    assert not is_prime(1)
    assert not is_prime(561)  # Carmichael
    assert not is_prime(29341)
    assert is_prime(2_147_483_647)
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))


# ---------------------------- factorization ----------------------------


def test_factorize_examples():
    assert FIBS[30] == 832_040
    assert factorize(832_040).factors == ((2, 3), (5, 1), (11, 1), (31, 1), (61, 1))
    assert factorize(1).factors == ()
    assert factorize(144).factors == ((2, 4), (3, 2))


def test_factorize_roundtrip_random():
    rng = random.Random(99)
    primes = [2, 3, 5, 7, 11, 13, 10007, 65537, 2_147_483_647]
    for _ in range(50):
        value = 1
        for _ in range(rng.randrange(1, 6)):
            value *= rng.choice(primes) ** rng.randrange(1, 4)
        fac = factorize(value)
        assert fac.value == value
        rebuilt = 1
        for p, e in fac.factors:
            rebuilt *= p**e
        assert rebuilt == value


def test_factorize_deterministic_and_seed_independent():
    n = (2**61 - 1) * 2_147_483_647 * 97
    assert factorize(n) == factorize(n)
    assert factorize(n, seed=1) == factorize(n, seed=2)


def test_factor_budget_exceeded():
    p = 2**62 - 57  # prime
    q = 2**62 - 87  # prime
    assert is_prime(p) and is_prime(q)
    with pytest.raises(FactorBudgetExceeded):
        factorize(p * q, budget=50)


def test_factored_natural_validation():
    with pytest.raises(ValueError):
        FactoredNatural(12, ((2, 1), (3, 1)))  # product is 6
    with pytest.raises(ValueError):
        FactoredNatural(8, ((8, 1),))  # not prime
    with pytest.raises(ValueError):
        FactoredNatural(36, ((3, 2), (2, 2)))  # unsorted
    with pytest.raises(ValueError):
        FactoredNatural(4, ((2, 2), (3, 0)))  # zero exponent
    one = FactoredNatural.one()
    assert one.value == 1 and one.factors == ()
    f = factorize(75025)
    assert f.factors == ((5, 2), (3001, 1))
    assert f.power(3).value == 75025**3
    assert str(f) == "5^2 * 3001"
    assert f.lcm(factorize(50)).value == 2 * 75025


# ------------------------------- Pisano -------------------------------


def test_pisano_examples():
    assert pi_of(4) == 6
    assert pi_of(1) == 1
    assert pi_of(16) == 24
    assert pi_of(10) == 60
    assert pisano_prime(2) == 3
    assert pisano_prime(5) == 20
    assert pi_of(25) == 100
    assert pi_of(27) == 72


def test_pisano_brute_examples():
    assert pisano_period_brute(2) == 3
    assert pisano_period_brute(10) == 60
    assert pisano_period_brute(1) == 1
    with pytest.raises(CapExceeded):
        pisano_period_brute(10, cap=59)
    assert pisano_period_brute(10, cap=60) == 60


def test_factored_equals_brute_small():
    for m in range(1, 3001):
        assert pi_of(m) == pisano_period_brute(m), m


def test_period_property_defines_reduction():
    # F_i mod m depends on i only through i mod period(m)
    rng = random.Random(0x5EED)
    for m in list(range(1, 65)) + [rng.randrange(65, 1001) for _ in range(40)]:
        period = pi_of(m)
        seq = [f % m for f in FIBS[: min(10_001, 2 * period + 2)]]
        for _ in range(25):
            i = rng.randrange(0, 10_001)
            assert fib_mod(i, m) == seq[i % period], (i, m)
        assert fib_mod(period, m) == 0
        assert fib_mod(period + 1, m) == 1 % m


def test_pisano_lcm_on_coprime_parts():
    periods = {m: pi_of(m) for m in range(1, 301)}
    for a in range(1, 301):
        for b in range(a + 1, 301):
            if gcd(a, b) == 1:
                assert pi_of(a * b) == lcm(periods[a], periods[b]), (a, b)


# ------------------------------- chains -------------------------------


def test_chain_examples():
    chain = build_chain(3, factorize(16))
    assert chain.summary() == ((24, 24), (24, 24), (16, 24))
    single = build_chain(1, factorize(97))
    assert single.summary() == ((97, pi_of(97)),)
    two = build_chain(2, factorize(9))
    assert two.summary() == ((24, 24), (9, 24))


def test_chain_verify_rejects_corruption():
    good = build_chain(2, factorize(9))
    bad = PisanoChain(
        (ChainLevel(factorize(24), factorize(48)), good.levels[1])
    )
    with pytest.raises(FibTowerError):
        bad.verify()  # 48 is a period mod 24 but not minimal
    with pytest.raises(FibTowerError):
        PisanoChain(
            (ChainLevel(factorize(23), factorize(24)), good.levels[1])
        ).verify()  # 24 is not a period mod 23


def test_chain_depth_validation():
    with pytest.raises(ValueError):
        build_chain(0, factorize(9))
