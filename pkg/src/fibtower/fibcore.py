"""Exact Fibonacci arithmetic and classical identity checkers.

Everything here works on plain Python integers and serves as ground truth
for the modular machinery. Convention: F_0 = 0, F_1 = F_2 = 1 (the zero
term is the backward extension forced by the recurrence; residue formulas
need F_{n-3} down to n = 3).
"""

from __future__ import annotations

from math import comb, gcd

from .errors import BudgetExceeded

# Exact evaluation is refused above this index by default; callers that
# need larger indices must go through the modular engine.
DEFAULT_MAX_FIB_INDEX = 50_000_000


def _fib_pair(i: int) -> tuple[int, int]:
    """(F_i, F_{i+1}) by fast doubling, no budget check."""
    a, b = 0, 1
    for bit in bin(i)[2:] if i else "":
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def _check_budget(i: int, max_index: int | None) -> None:
    limit = DEFAULT_MAX_FIB_INDEX if max_index is None else max_index
    if i > limit:
        raise BudgetExceeded(f"fib index {i} exceeds exact-index budget {limit}")


def fib(i: int, *, max_index: int | None = None) -> int:
    """Exact F_i. Raises BudgetExceeded when i is over the exact-index budget."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    _check_budget(i, max_index)
    return _fib_pair(i)[0]


def fib_iterative(i: int, *, max_index: int | None = None) -> int:
    """F_i by the plain recurrence; independent cross-check for fib()."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    _check_budget(i, max_index)
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def fib_exceeds(i: int, bound: int) -> bool:
    """True iff F_i > bound, without materializing huge values.

    Uses F_i >= 2^((i-2)//2) (valid for i >= 2) to shortcut astronomically
    large indices; small indices are compared exactly.
    """
    if bound < 0:
        return True
    if i >= 2 and (i - 2) // 2 >= bound.bit_length():
        return True
    return _fib_pair(i)[0] > bound


def valuation(base: int, x: int) -> int:
    """Largest e with base^e dividing x (base-adic valuation)."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if x < 1:
        raise ValueError("x must be positive")
    e = 0
    while x % base == 0:
        x //= base
        e += 1
    return e


# --------------------------- identity checkers ---------------------------


def gcd_identity_check(a: int, b: int, *, max_index: int | None = None) -> bool:
    """gcd(F_a, F_b) == F_{gcd(a,b)}."""
    if a < 1 or b < 1:
        raise ValueError("indices must be positive")
    return gcd(fib(a, max_index=max_index), fib(b, max_index=max_index)) == fib(
        gcd(a, b), max_index=max_index
    )


def fib_multiple_expansion(n: int, r: int, *, max_index: int | None = None) -> int:
    """The binomial sum that expands F_{n*r} in powers of F_n.

    Returns sum_{j=1}^{r} C(r,j) * F_n^j * F_{n-1}^{r-j} * F_j exactly;
    callers compare it against fib(n*r).
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive")
    _check_budget(n * r, max_index)
    fn = fib(n)
    fn1 = fib(n - 1)  # 0 when n == 1; the j = r term then carries 0^0 = 1
    total = 0
    fj_prev, fj = 0, 1  # (F_0, F_1)
    fn_pow = fn
    for j in range(1, r + 1):
        total += comb(r, j) * fn_pow * fn1 ** (r - j) * fj
        fn_pow *= fn
        fj_prev, fj = fj, fj_prev + fj
    return total


def cassini(n: int, *, max_index: int | None = None) -> int:
    """F_{n+1}*F_{n-1} - F_n^2, which must equal (-1)^n."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_budget(n + 1, max_index)
    a, b = _fib_pair(n - 1)  # (F_{n-1}, F_n)
    return (a + b) * a - b * b


def square_congruence_check(n: int, *, max_index: int | None = None) -> bool:
    """F_{n-1}^2 == F_{n+1}^2 == (-1)^n, all modulo F_n."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_budget(n + 1, max_index)
    a, b = _fib_pair(n - 1)
    fn = b
    if fn == 1:
        return True
    sign = 1 % fn if n % 2 == 0 else fn - 1
    return a * a % fn == sign and (a + b) * (a + b) % fn == sign


def addition_formula_check(a: int, b: int, *, max_index: int | None = None) -> bool:
    """F_{a+b} == F_{a+1}*F_b + F_a*F_{b-1}."""
    if a < 1 or b < 1:
        raise ValueError("indices must be positive")
    _check_budget(a + b, max_index)
    fa, fa1 = _fib_pair(a)
    fbm1, fb = _fib_pair(b - 1)
    return fib(a + b) == fa1 * fb + fa * fbm1


def index_divisibility_check(a: int, b: int, *, max_index: int | None = None) -> bool:
    """For a >= 3: F_a | F_b holds exactly when a | b."""
    if a < 3:
        raise ValueError("a must be at least 3")
    if b < 1:
        raise ValueError("b must be positive")
    return (fib(b, max_index=max_index) % fib(a, max_index=max_index) == 0) == (b % a == 0)
