"""Fibonacci arithmetic modulo arbitrary numbers and Pisano period machinery.

The period of the Fibonacci sequence mod M is the least t >= 1 with
F_t == 0 and F_{t+1} == 1 (mod M); the indices satisfying that pair
condition are exactly the multiples of the period, which is what makes
the divisor-descent searches below sound.

Periods are computed on factored moduli: the period of M is the lcm of
the periods of its prime-power parts, the period of p^e divides
p^(e-1) * period(p), and period(p) divides p - 1 or 2(p + 1) according
to p mod 5. Every candidate from those bounds is minimized by explicit
divisor descent; nothing relies on the (open) question of whether the
p^(e-1) scaling is always exact.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import CapExceeded, FactorBudgetExceeded, FibTowerError

DEFAULT_FACTOR_BUDGET = 2_000_000
# Seed for the rho cycle parameters; fixed so runs are reproducible, and
# recorded in sweep reports.
DEFAULT_FACTOR_SEED = 2_971_215_073

_TRIAL_LIMIT = 100_000
_small_primes: list[int] = []
_small_primes_lock = threading.Lock()


def _trial_primes() -> list[int]:
    global _small_primes
    if not _small_primes:
        with _small_primes_lock:
            if not _small_primes:
                sieve = bytearray([1]) * (_TRIAL_LIMIT + 1)
                sieve[0] = sieve[1] = 0
                for p in range(2, isqrt(_TRIAL_LIMIT) + 1):
                    if sieve[p]:
                        sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
                _small_primes = [i for i, v in enumerate(sieve) if v]
    return _small_primes


# ------------------------------ primality ------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Below this value the 12 bases above are a proven deterministic test.
_MR_PROVEN_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic below ~3.3e24, 32 fixed extra rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases: tuple[int, ...] = _MR_BASES
    if n >= _MR_PROVEN_LIMIT:
        rng = random.Random(f"mr:{n}")
        bases = bases + tuple(rng.randrange(2, n - 1) for _ in range(32))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------- factorization ----------------------------


def _brent_rho(n: int, seed: int, budget: int) -> tuple[int, int]:
    """One nontrivial factor of odd composite n via Brent's cycle method.

    Returns (factor, iterations_used). Raises FactorBudgetExceeded when the
    budget runs out. Deterministic for a fixed seed.
    """
    used = 0
    for attempt in range(64):
        rng = random.Random(f"rho:{seed}:{n}:{attempt}")
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            used += r
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            used += min(r, k)
            r *= 2
            if used > budget:
                raise FactorBudgetExceeded(
                    f"rho budget {budget} exhausted on cofactor {n}"
                )
        if g == n:
            # backtrack one step at a time to split the batched gcd
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                used += 1
                if used > budget:
                    raise FactorBudgetExceeded(
                        f"rho budget {budget} exhausted on cofactor {n}"
                    )
        if g != n:
            return g, used
    raise FactorBudgetExceeded(f"rho failed to split {n} after 64 restarts")


@dataclass(frozen=True)
class FactoredNatural:
    """A positive integer together with its complete prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("value must be positive")
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p**e
            prev = p
        if prod != self.value:
            raise ValueError("factors do not multiply to value")

    @classmethod
    def one(cls) -> "FactoredNatural":
        return cls(1, ())

    @classmethod
    def from_factor_map(cls, factors: dict[int, int]) -> "FactoredNatural":
        items = tuple(sorted((p, e) for p, e in factors.items() if e))
        value = 1
        for p, e in items:
            value *= p**e
        return cls(value, items)

    def factor_map(self) -> dict[int, int]:
        return dict(self.factors)

    def power(self, e: int) -> "FactoredNatural":
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if e == 0:
            return FactoredNatural.one()
        return FactoredNatural(self.value**e, tuple((p, f * e) for p, f in self.factors))

    def lcm(self, other: "FactoredNatural") -> "FactoredNatural":
        merged = self.factor_map()
        for p, e in other.factors:
            if merged.get(p, 0) < e:
                merged[p] = e
        return FactoredNatural.from_factor_map(merged)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorize(
    x: int,
    budget: int = DEFAULT_FACTOR_BUDGET,
    *,
    seed: int = DEFAULT_FACTOR_SEED,
) -> FactoredNatural:
    """Complete factorization: trial division, then Brent rho on what remains.

    Deterministic for a fixed seed. Raises FactorBudgetExceeded when a
    composite cofactor resists the budgeted rho effort, which signals that
    the requested parameters are beyond desk scale.
    """
    if x < 1:
        raise ValueError("x must be positive")
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > x:
            break
        while x % p == 0:
            found[p] = found.get(p, 0) + 1
            x //= p
    remaining = budget
    stack = [x] if x > 1 else []
    while stack:
        v = stack.pop()
        if is_prime(v):
            found[v] = found.get(v, 0) + 1
            continue
        d, used = _brent_rho(v, seed, remaining)
        remaining -= used
        stack.append(d)
        stack.append(v // d)
    return FactoredNatural.from_factor_map(found)


def ensure_factored(
    m: int | FactoredNatural,
    budget: int = DEFAULT_FACTOR_BUDGET,
    *,
    seed: int = DEFAULT_FACTOR_SEED,
) -> FactoredNatural:
    if isinstance(m, FactoredNatural):
        return m
    return factorize(m, budget, seed=seed)


# ------------------------- modular Fibonacci -------------------------


def fib_pair_mod(i: int, m: int) -> tuple[int, int]:
    """(F_i mod m, F_{i+1} mod m) by fast doubling with reduced intermediates."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if i < 0:
        raise ValueError("index must be nonnegative")
    if m == 1:
        return 0, 0
    a, b = 0, 1
    for bit in bin(i)[2:] if i else "":
        c = a * ((2 * b - a) % m) % m
        d = (a * a + b * b) % m
        if bit == "1":
            a, b = d, (c + d) % m
        else:
            a, b = c, d
    return a, b


def fib_mod(i: int, m: int) -> int:
    """F_i mod m; total in i >= 0 and m >= 1 (fib_mod(i, 1) == 0)."""
    return fib_pair_mod(i, m)[0]


def _is_period(t: int, m: int) -> bool:
    return fib_pair_mod(t, m) == (0, 1 % m)


# --------------------------- Pisano periods ---------------------------

_prime_period_cache: dict[int, int] = {}
_prime_power_cache: dict[tuple[int, int], FactoredNatural] = {}
_period_cache_lock = threading.Lock()


def _descend_to_minimal(candidate: dict[int, int], m: int) -> dict[int, int]:
    """Minimal t with the period property, given a factored valid candidate.

    Valid indices are exactly the multiples of the true period, so stripping
    prime factors while the property survives converges to it regardless of
    the order primes are tried.
    """
    cur = 1
    for p, e in candidate.items():
        cur *= p**e
    if not _is_period(cur, m):
        raise FibTowerError(f"period candidate {cur} invalid for modulus {m}")
    fac = dict(candidate)
    for p in sorted(fac):
        while fac[p] and _is_period(cur // p, m):
            cur //= p
            fac[p] -= 1
    return {p: e for p, e in fac.items() if e}


def pisano_prime(
    p: int,
    budget: int = DEFAULT_FACTOR_BUDGET,
    *,
    seed: int = DEFAULT_FACTOR_SEED,
) -> int:
    """Period of the Fibonacci sequence mod a prime p.

    Search bound: p - 1 when p == +-1 (mod 5), 2(p + 1) when p == +-2,
    with 2 and 5 fixed separately; the minimal valid divisor of the bound
    is found by descent.
    """
    if p == 2:
        return 3
    if p == 5:
        return 20
    with _period_cache_lock:
        hit = _prime_period_cache.get(p)
    if hit is not None:
        return hit
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    bound = p - 1 if p % 5 in (1, 4) else 2 * (p + 1)
    minimal = _descend_to_minimal(factorize(bound, budget, seed=seed).factor_map(), p)
    result = 1
    for q, e in minimal.items():
        result *= q**e
    with _period_cache_lock:
        _prime_period_cache[p] = result
    return result


def _pisano_prime_power(
    p: int,
    e: int,
    budget: int = DEFAULT_FACTOR_BUDGET,
    *,
    seed: int = DEFAULT_FACTOR_SEED,
) -> FactoredNatural:
    """Period mod p^e, factored. Candidate p^(e-1)*period(p), then descent."""
    key = (p, e)
    with _period_cache_lock:
        hit = _prime_power_cache.get(key)
    if hit is not None:
        return hit
    base_period = pisano_prime(p, budget, seed=seed)
    candidate = factorize(base_period, budget, seed=seed).factor_map()
    if e > 1:
        candidate[p] = candidate.get(p, 0) + (e - 1)
    minimal = _descend_to_minimal(candidate, p**e)
    result = FactoredNatural.from_factor_map(minimal)
    with _period_cache_lock:
        _prime_power_cache[key] = result
    return result


def pisano_period(
    m: FactoredNatural,
    budget: int = DEFAULT_FACTOR_BUDGET,
    *,
    seed: int = DEFAULT_FACTOR_SEED,
) -> FactoredNatural:
    """Pisano period of a factored modulus, returned factored.

    Combines prime-power periods by lcm; each prime-power period is
    independently verified minimal, so the result never leans on the
    open p^2 scaling conjecture.
    """
    out = FactoredNatural.one()
    for p, e in m.factors:
        out = out.lcm(_pisano_prime_power(p, e, budget, seed=seed))
    return out


def pisano_period_brute(m: int, cap: int | None = None) -> int:
    """Period mod m by direct pair iteration; independent of the factored path.

    cap defaults to 6*m, the universal upper bound (attained at m = 2*5^k).
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if cap is None:
        cap = 6 * m
    target_b = 1 % m
    a, b = 1 % m, 1 % m  # (F_1, F_2)
    t = 1
    while t <= cap:
        if a == 0 and b == target_b:
            return t
        a, b = b, (a + b) % m
        t += 1
    raise CapExceeded(f"no period of modulus {m} within cap {cap}")


# ----------------------------- period chains -----------------------------


@dataclass(frozen=True)
class ChainLevel:
    modulus: FactoredNatural
    period: FactoredNatural


@dataclass(frozen=True)
class PisanoChain:
    """Descending modulus list: each level's modulus is the next level's period.

    levels[0] is the tower base, levels[-1] the target modulus. Evaluating
    a Fibonacci index tower mod the target only ever needs indices reduced
    mod the level below, which is what this chain encodes.
    """

    levels: tuple[ChainLevel, ...]

    def verify(self) -> None:
        """Re-check the period property, minimality, and level linkage."""
        for i, level in enumerate(self.levels):
            m = level.modulus.value
            t = level.period.value
            if not _is_period(t, m):
                raise FibTowerError(f"level {i + 1}: {t} is not a period mod {m}")
            for q, _ in level.period.factors:
                if _is_period(t // q, m):
                    raise FibTowerError(
                        f"level {i + 1}: period {t} mod {m} not minimal ({t // q} works)"
                    )
            if i + 1 < len(self.levels):
                if m != self.levels[i + 1].period.value:
                    raise FibTowerError(
                        f"level {i + 1} modulus {m} != level {i + 2} period"
                    )

    def summary(self) -> tuple[tuple[int, int], ...]:
        return tuple((lvl.modulus.value, lvl.period.value) for lvl in self.levels)


def build_chain(
    k: int,
    target: FactoredNatural,
    budget: int = DEFAULT_FACTOR_BUDGET,
    *,
    seed: int = DEFAULT_FACTOR_SEED,
) -> PisanoChain:
    """Chain of k levels ending at target, built target-first."""
    if k < 1:
        raise ValueError("chain depth must be at least 1")
    levels: list[ChainLevel] = []
    cur = target
    for _ in range(k):
        levels.append(ChainLevel(cur, pisano_period(cur, budget, seed=seed)))
        cur = levels[-1].period
    chain = PisanoChain(tuple(reversed(levels)))
    chain.verify()
    return chain
