"""Exact arithmetic over factored integers.

Everything downstream reads n through a :class:`FactoredInteger`; divisors
are exponent vectors against that parent so membership tests never touch
big-integer division.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, prod

# Exponent vector (e_1, ..., e_r) with 0 <= e_i <= n_i.
Divisor = tuple[int, ...]


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class LimitError(RuntimeError):
    """A resource limit (expansion size, oracle size, ...) was exceeded."""


# --- primality and factoring ------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_BOUND = 10_000


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic below 3.3e24; a strong probable-prime test above that.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _prime_factors(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _prime_factors(d, out, rng)
    _prime_factors(n // d, out, rng)


def _factor_dict(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in range(2, _TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        _prime_factors(n, out, random.Random(n))
    return out


# --- the factored integer ---------------------------------------------------

@dataclass(frozen=True)
class FactoredInteger:
    """n = p_1^{n_1} ... p_r^{n_r} with p_1 < ... < p_r."""

    primes: tuple[int, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.primes) != len(self.exps) or not self.primes:
            raise DomainError("need at least one (prime, exponent) pair")
        if any(e < 1 for e in self.exps):
            raise DomainError("exponents must be positive")
        if any(p >= q for p, q in zip(self.primes, self.primes[1:])):
            raise DomainError("primes must be strictly increasing")
        if not all(is_prime(p) for p in self.primes):
            raise DomainError(f"non-prime base in {self.primes}")

    @classmethod
    def from_pairs(cls, pairs) -> FactoredInteger:
        pairs = sorted(pairs)
        return cls(tuple(p for p, _ in pairs), tuple(e for _, e in pairs))

    @property
    def factors(self) -> list[tuple[int, int]]:
        return list(zip(self.primes, self.exps))

    @property
    def r(self) -> int:
        return len(self.primes)

    @cached_property
    def value(self) -> int:
        return prod(p**e for p, e in zip(self.primes, self.exps))

    @cached_property
    def rad(self) -> int:
        return prod(self.primes)

    @property
    def cofactor(self) -> int:
        return self.value // self.rad

    @property
    def is_prime_power(self) -> bool:
        return self.r == 1

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for e in self.exps)

    def p(self, a: int) -> int:
        """The a-th smallest prime (1-based)."""
        self.check_index(a)
        return self.primes[a - 1]

    def exponent(self, a: int) -> int:
        """The exponent of the a-th smallest prime (1-based)."""
        self.check_index(a)
        return self.exps[a - 1]

    def check_index(self, a: int) -> None:
        if not 1 <= a <= self.r:
            raise DomainError(f"prime index {a} outside [1, {self.r}]")

    def divisor_value(self, d: Divisor) -> int:
        return prod(p**e for p, e in zip(self.primes, d))

    def divisor_of(self, m: int) -> Divisor:
        """Exponent vector of a positive divisor m of n."""
        if m < 1 or self.value % m:
            raise DomainError(f"{m} does not divide {self.value}")
        vec = []
        for p in self.primes:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            vec.append(e)
        return tuple(vec)

    @property
    def top(self) -> Divisor:
        return self.exps

    def __str__(self) -> str:
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factor(n: int) -> FactoredInteger:
    """Canonical factorization of n >= 2."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"cannot factor {n!r}: need an integer >= 2")
    return FactoredInteger.from_pairs(_factor_dict(n).items())


_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_n(text: str) -> FactoredInteger:
    """Parse ``"4290"`` or a factored literal such as ``"2^3*3*5^2"``.

    Bases of a literal need not be prime (``"15015*11"`` is accepted); prime
    bases are only primality-tested, so huge n never reaches the factorer.
    """
    terms = str(text).strip().split("*")
    acc: dict[int, int] = {}
    for term in terms:
        m = _TERM.match(term)
        if not m:
            raise DomainError(f"cannot parse {text!r}")
        base, exp = int(m.group(1)), int(m.group(2) or 1)
        if base < 1 or exp < 1:
            raise DomainError(f"cannot parse {text!r}")
        if base == 1:
            continue
        parts = {base: 1} if is_prime(base) else _factor_dict(base)
        for p, e in parts.items():
            acc[p] = acc.get(p, 0) + e * exp
    if not acc:
        raise DomainError(f"{text!r} is less than 2")
    return FactoredInteger.from_pairs(acc.items())


# --- totients and divisors --------------------------------------------------

def totient_of_divisor(f: FactoredInteger, d: Divisor) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in zip(f.primes, d) if e)


def totient(f: FactoredInteger) -> int:
    return totient_of_divisor(f, f.exps)


def phi_squarefree(primes) -> int:
    """phi of a product of distinct primes."""
    return prod(p - 1 for p in primes)


def radical(f: FactoredInteger) -> tuple[int, int]:
    """(rad(n), n / rad(n))."""
    return f.rad, f.cofactor


def divisors(f: FactoredInteger) -> list[Divisor]:
    """All divisors, lexicographic on exponent vectors."""
    return list(product(*(range(e + 1) for e in f.exps)))


def divides(d: Divisor, e: Divisor) -> bool:
    return all(x <= y for x, y in zip(d, e))


def as_int(x: Fraction) -> int:
    """Assert an exact rational is integral."""
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return x.numerator


def _rad_without(f: FactoredInteger, *idx: int) -> tuple[int, int]:
    """(m, phi(m)) for m = rad(n) / prod of the indexed primes."""
    keep = [p for i, p in enumerate(f.primes, 1) if i not in idx]
    return prod(keep), phi_squarefree(keep)


def partial_totient_sum(f: FactoredInteger, a: int, k: int, s: int) -> int:
    """sum_{l=k}^{s} phi(n / p_a^l) by the closed form."""
    f.check_index(a)
    na, pa = f.exponent(a), f.p(a)
    if not 0 <= k <= s <= na:
        raise DomainError(f"need 0 <= k <= s <= {na}, got k={k}, s={s}")
    _, phi_m = _rad_without(f, a)
    val = Fraction(f.cofactor) / Fraction(pa) ** (k - 1) * phi_m
    if s < na:
        val *= 1 - Fraction(1, pa ** (s - k + 1))
    return as_int(val)


def double_totient_sum(f: FactoredInteger, a: int, b: int, s: int, t: int) -> int:
    """sum_{k=1}^{s} sum_{l=1}^{t} phi(n / (p_a^k p_b^l)) by the closed form."""
    f.check_index(a)
    f.check_index(b)
    if a == b:
        raise DomainError("a and b must differ")
    na, nb = f.exponent(a), f.exponent(b)
    if not (1 <= s <= na and 1 <= t <= nb):
        raise DomainError(f"levels (s, t)=({s}, {t}) outside [1,{na}]x[1,{nb}]")
    _, phi_ab = _rad_without(f, a, b)
    val = Fraction(f.cofactor * phi_ab)
    if s < na:
        val *= 1 - Fraction(1, f.p(a) ** s)
    if t < nb:
        val *= 1 - Fraction(1, f.p(b) ** t)
    return as_int(val)

