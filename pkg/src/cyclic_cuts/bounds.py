"""Closed-form sizes of the candidate cut-sets and the predicates built on them.

Every size has the shape ``phi(n) + (n / rad(n)) * inner`` where ``inner`` is
an exact rational; :class:`BoundValue` keeps the three parts so the worked
intermediates can be printed and compared verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import DomainError, FactoredInteger, as_int, phi_squarefree, totient
from .cutsets import CutSetDescriptor


@dataclass(frozen=True)
class BoundValue:
    descriptor: CutSetDescriptor
    value: int
    phi_n: int
    cofactor: int
    inner: Fraction

    def __post_init__(self):
        if self.phi_n + self.cofactor * self.inner != self.value:
            raise ArithmeticError("inconsistent decomposition")


def _rad_parts(f: FactoredInteger, *drop: int) -> tuple[int, int]:
    """(m, phi(m)) where m is rad(n) with the 1-based indexed primes removed."""
    keep = [p for i, p in enumerate(f.primes, 1) if i not in drop]
    m = 1
    for p in keep:
        m *= p
    return m, phi_squarefree(keep)


def _finish(f: FactoredInteger, desc: CutSetDescriptor, inner: Fraction) -> BoundValue:
    phi_n, cof = totient(f), f.cofactor
    value = as_int(phi_n + cof * inner)
    if not 0 <= value < f.value:
        raise ArithmeticError(f"bound {value} is not a proper subset size")
    return BoundValue(desc, value, phi_n, cof, inner)


def beta(f: FactoredInteger, a: int, s: int) -> BoundValue:
    """Size of Z(a, s)."""
    desc = CutSetDescriptor.Z(a, s)
    desc.validate(f)
    pa = f.p(a)
    m, phi_m = _rad_parts(f, a)
    q = pa ** (s - 1)
    inner = Fraction(m + phi_m * (q - 2), q)
    return _finish(f, desc, inner)


def theta(f: FactoredInteger, a: int, b: int, s: int, t: int) -> BoundValue:
    """Size of X(a, b, s, t), by the four-way split on whether s and t are full."""
    desc = CutSetDescriptor.X(a, b, s, t)
    desc.validate(f)
    pa, pb = f.p(a), f.p(b)
    na, nb = f.exponent(a), f.exponent(b)
    R = f.rad
    _, phi_ab = _rad_parts(f, a, b)
    _, phi_a = _rad_parts(f, a)
    _, phi_b = _rad_parts(f, b)
    phi_R = phi_squarefree(f.primes)
    one = Fraction(1)

    if s == na and t == nb:
        v = (phi_ab * (one - Fraction(2, pa ** (na - 1) * pb ** (nb - 1)))
             + phi_a + phi_b + Fraction(R, pa**na * pb**nb))
    elif s == na:
        v = (phi_ab * (one - Fraction(1, pb**t))
             + phi_a * (one - Fraction(2, pa ** (na - 1) * pb**t))
             + phi_b * (one - Fraction(1, pb**t))
             + Fraction(R, pa**na * pb**t))
    elif t == nb:
        v = (phi_ab * (one - Fraction(1, pa**s))
             + phi_a * (one - Fraction(1, pa**s))
             + phi_b * (one - Fraction(2, pa**s * pb ** (nb - 1)))
             + Fraction(R, pa**s * pb**nb))
    else:
        v = (phi_ab * (one - Fraction(1, pa**s)) * (one - Fraction(1, pb**t))
             + phi_a * (one - Fraction(1, pa**s))
             + phi_b * (one - Fraction(1, pb**t))
             - Fraction(2 * phi_R, pa**s * pb**t)
             + Fraction(R, pa**s * pb**t))
    return _finish(f, desc, v)


def bound(f: FactoredInteger, desc: CutSetDescriptor) -> BoundValue:
    if desc.kind == "Z":
        return beta(f, desc.a, desc.s)
    return theta(f, desc.a, desc.b, desc.s, desc.t)


def two_phi_deficient(f: FactoredInteger, exclude=()) -> bool:
    """Whether 2 phi(m) < m for m = rad(n) stripped of the excluded primes."""
    exclude = set(exclude)
    for i in exclude:
        f.check_index(i)
    if len(exclude) >= f.r:
        raise DomainError("exclude must be a proper subset of the prime indices")
    m, phi_m = _rad_parts(f, *exclude)
    return 2 * phi_m < m


def omega_set(f: FactoredInteger) -> set[int]:
    """Indices j < r with n_j >= 3, p_r - p_j <= r - 4 and 2 phi(rad/p_j) < rad/p_j.

    Only meaningful for r >= 4 and n_r >= 2.
    """
    r = f.r
    if r < 4 or f.exponent(r) < 2:
        raise DomainError("omega_set needs r >= 4 and n_r >= 2")
    pr = f.p(r)
    return {
        j for j in range(1, r)
        if f.exponent(j) >= 3 and pr - f.p(j) <= r - 4 and two_phi_deficient(f, {j})
    }


def alpha(f: FactoredInteger, a: int, b: int) -> Fraction:
    """Sign discriminant for how theta(a, b, n_a, t) moves with t."""
    if f.r < 3:
        raise DomainError("alpha needs r >= 3")
    f.check_index(a)
    f.check_index(b)
    if a == b:
        raise DomainError("a and b must differ")
    m, phi_m = _rad_parts(f, a, b)
    pa_top = f.p(a) ** f.exponent(a)
    return (2 + Fraction(pa_top - 2, f.p(b))) * phi_m - m


def squarefree_tiebreak(f: FactoredInteger) -> bool:
    """For squarefree n with r >= 4: does X(r-1, r, 1, 1) reach the minimum?"""
    r = f.r
    if r < 4 or not f.is_squarefree:
        raise DomainError("squarefree_tiebreak needs squarefree n with r >= 4")
    m, phi_m = _rad_parts(f, r - 1, r)
    lhs = (2 + Fraction(f.p(r) - 2, f.p(r - 1) - 1)) * phi_m
    return lhs <= m
