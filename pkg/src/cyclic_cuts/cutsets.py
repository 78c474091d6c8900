"""The two families of candidate cut-sets, stored as unions of order classes.

A :class:`DivisorSet` holds the divisors d whose whole class E_d (elements of
order exactly d) is removed.  Its cardinality is the sum of phi(d) over the
members, so sizes are available at any n; explicit residues only come out of
:func:`expand`, behind a size limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd

from .arith import (
    Divisor,
    DomainError,
    FactoredInteger,
    LimitError,
    totient_of_divisor,
)

DEFAULT_EXPAND_LIMIT = 100_000


@dataclass(frozen=True)
class CutSetDescriptor:
    """Z(a, s) or X(a, b, s, t); indices are 1-based into the sorted primes.

    Build through :meth:`Z` / :meth:`X` so that X(a, b, s, t) and
    X(b, a, t, s) compare equal.
    """

    kind: str
    a: int
    s: int
    b: int | None = None
    t: int | None = None

    @classmethod
    def Z(cls, a: int, s: int) -> CutSetDescriptor:
        return cls("Z", a, s)

    @classmethod
    def X(cls, a: int, b: int, s: int, t: int) -> CutSetDescriptor:
        if a == b:
            raise DomainError("X needs two distinct prime indices")
        if a > b:
            a, b, s, t = b, a, t, s
        return cls("X", a, s, b, t)

    @classmethod
    def parse(cls, text: str) -> CutSetDescriptor:
        """Parse ``"Z:a:s"`` or ``"X:a:b:s:t"``."""
        m = re.fullmatch(r"\s*([ZzXx])((?::\d+)+)\s*", text)
        if not m:
            raise DomainError(f"bad descriptor {text!r}")
        nums = [int(x) for x in m.group(2)[1:].split(":")]
        kind = m.group(1).upper()
        if kind == "Z" and len(nums) == 2:
            return cls.Z(*nums)
        if kind == "X" and len(nums) == 4:
            return cls.X(*nums)
        raise DomainError(f"bad descriptor {text!r}")

    def validate(self, f: FactoredInteger) -> None:
        if self.kind == "Z":
            if f.r < 2:
                raise DomainError("Z cut-sets need at least two prime factors")
            f.check_index(self.a)
            if not 1 <= self.s <= f.exponent(self.a):
                raise DomainError(f"level s={self.s} outside [1, {f.exponent(self.a)}]")
        else:
            if f.r < 3:
                raise DomainError("X cut-sets need at least three prime factors")
            f.check_index(self.a)
            f.check_index(self.b)
            if not 1 <= self.s <= f.exponent(self.a):
                raise DomainError(f"level s={self.s} outside [1, {f.exponent(self.a)}]")
            if not 1 <= self.t <= f.exponent(self.b):
                raise DomainError(f"level t={self.t} outside [1, {f.exponent(self.b)}]")

    @property
    def sort_key(self) -> tuple:
        if self.kind == "Z":
            return (0, self.a, self.s)
        return (1, self.a, self.b, self.s, self.t)

    def __lt__(self, other: CutSetDescriptor) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.kind == "Z":
            return f"Z:{self.a}:{self.s}"
        return f"X:{self.a}:{self.b}:{self.s}:{self.t}"


@dataclass(frozen=True)
class DivisorSet:
    parent: FactoredInteger
    members: frozenset[Divisor]

    @cached_property
    def cardinality(self) -> int:
        return sum(totient_of_divisor(self.parent, d) for d in self.members)

    def __contains__(self, d: Divisor) -> bool:
        return d in self.members

    def values(self) -> list[int]:
        return sorted(self.parent.divisor_value(d) for d in self.members)

    def covers_everything(self) -> bool:
        return self.cardinality == self.parent.value


def element_order(x: int, f: FactoredInteger) -> Divisor:
    """Order of the residue x in the additive group Z/n, as a divisor."""
    n = f.value
    if not 0 <= x < n:
        raise DomainError(f"{x} is not a residue mod {n}")
    return f.divisor_of(n // gcd(n, x))


def _lowered(top: Divisor, drops: dict[int, int]) -> Divisor:
    """Exponent vector of n / prod p_i^{drops[i]} (0-based i)."""
    return tuple(e - drops.get(i, 0) for i, e in enumerate(top))


def _subgroup_classes(bound: Divisor) -> set[Divisor]:
    """All e with e | bound, i.e. the classes making up the subgroup S_bound."""
    return set(product(*(range(e + 1) for e in bound)))


def build_Z(f: FactoredInteger, a: int, s: int) -> DivisorSet:
    """E_n, E_{n/p_a}, ..., E_{n/p_a^{s-1}} together with every subgroup
    S_{n/(p_i p_a^s)}, i != a."""
    CutSetDescriptor.Z(a, s).validate(f)
    ia = a - 1
    top = f.top
    members = {_lowered(top, {ia: l}) for l in range(s)}
    for i in range(f.r):
        if i != ia:
            members |= _subgroup_classes(_lowered(top, {ia: s, i: 1}))
    return DivisorSet(f, frozenset(members))


def build_X(f: FactoredInteger, a: int, b: int, s: int, t: int) -> DivisorSet:
    """H (classes n/(p_a^i p_b^j) below the corner (s, t)) together with K
    (non-generators of S_{n/(p_a^s p_b^t)})."""
    CutSetDescriptor.X(a, b, s, t).validate(f)
    ia, ib = a - 1, b - 1
    top = f.top
    members: set[Divisor] = set()
    for i in range(s + 1):
        for j in range(t + 1):
            if (i, j) != (s, t):
                members.add(_lowered(top, {ia: i, ib: j}))
    corner = _lowered(top, {ia: s, ib: t})
    members |= _subgroup_classes(corner) - {corner}
    return DivisorSet(f, frozenset(members))


def build(f: FactoredInteger, desc: CutSetDescriptor) -> DivisorSet:
    if desc.kind == "Z":
        return build_Z(f, desc.a, desc.s)
    return build_X(f, desc.a, desc.b, desc.s, desc.t)


def all_descriptors(f: FactoredInteger) -> list[CutSetDescriptor]:
    """Every valid Z (r >= 2) and canonical X (r >= 3) descriptor for n."""
    out: list[CutSetDescriptor] = []
    if f.r >= 2:
        for a in range(1, f.r + 1):
            out.extend(CutSetDescriptor.Z(a, s) for s in range(1, f.exponent(a) + 1))
    if f.r >= 3:
        for a in range(1, f.r + 1):
            for b in range(a + 1, f.r + 1):
                for s in range(1, f.exponent(a) + 1):
                    for t in range(1, f.exponent(b) + 1):
                        out.append(CutSetDescriptor.X(a, b, s, t))
    return out


def expand(dset: DivisorSet, limit: int = DEFAULT_EXPAND_LIMIT) -> set[int]:
    """The residues x in [0, n) whose order lies in ``dset``."""
    f = dset.parent
    n = f.value
    if n > limit:
        raise LimitError(f"n={n} exceeds the expansion limit {limit}")
    if not dset.members:
        return set()
    wanted = {f.divisor_value(d) for d in dset.members}
    return {x for x in range(n) if n // gcd(n, x) in wanted}


def maximal_classes_inside(dset: DivisorSet) -> list[int]:
    """Indices i (1-based) with E_{n/p_i} contained in the set."""
    f = dset.parent
    out = []
    for i in range(f.r):
        d = list(f.top)
        d[i] -= 1
        if tuple(d) in dset.members:
            out.append(i + 1)
    return out

