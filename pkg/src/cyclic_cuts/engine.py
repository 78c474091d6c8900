"""Exact vertex connectivity of P(C_n) by rule dispatch.

Rules are tried in a fixed order, each only when its hypotheses hold
exactly.  Anything they leave open falls through to a minimum over the full
candidate table, which is always correct because every minimum cut-set for
r >= 4 is one of the candidates listed there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import DomainError, FactoredInteger, LimitError
from .bounds import (
    BoundValue,
    beta,
    bound,
    omega_set,
    two_phi_deficient,
)
from .cutsets import CutSetDescriptor, all_descriptors, build
from .graph import (
    DEFAULT_ORACLE_LIMIT,
    ExplicitGraph,
    is_cutset,
    oracle_vertex_connectivity,
)

Z = CutSetDescriptor.Z
X = CutSetDescriptor.X


class Rule(str, enum.Enum):
    PRIME_POWER = "PrimePower"
    R2 = "R2"
    R3_SMALL_PRIME_3 = "R3_SmallPrime3"
    R3_PRIME_2 = "R3_Prime2"
    LARGE_PHI = "LargePhi"
    SQUAREFREE_R4 = "SquarefreeR4"
    NR_GE_2 = "NrGe2"
    R4_NR1 = "R4_Nr1"
    R5_NR1_P3 = "R5_Nr1_P3"
    CANDIDATE_ENUM = "CandidateEnum"


@dataclass(frozen=True)
class Uniqueness:
    """``Unique``, ``ExactFamily(k)`` or ``CandidatesOnly``."""

    kind: str
    count: int | None = None

    @classmethod
    def family(cls, k: int) -> Uniqueness:
        return cls("Unique", 1) if k == 1 else cls("ExactFamily", k)

    def __str__(self) -> str:
        return f"ExactFamily({self.count})" if self.kind == "ExactFamily" else self.kind


CANDIDATES_ONLY = Uniqueness("CandidatesOnly")


class ConsistencyError(AssertionError):
    """A dispatched rule disagrees with the candidate table."""


@dataclass
class KappaResult:
    n: FactoredInteger
    kappa: int
    rule: Rule
    minimizers: list[CutSetDescriptor]
    uniqueness: Uniqueness | None
    candidates: list[BoundValue] = field(default_factory=list)


def candidates(f: FactoredInteger) -> list[BoundValue]:
    """The candidate table.

    For r >= 4: Z(r, 1), every Z(a, n_a) with n_a >= 2 and every X tuple.
    For r in {2, 3}: every Z and X descriptor (all are genuine cut-sets).
    """
    if f.r < 2:
        raise DomainError("a prime power has no cut-sets")
    if f.r <= 3:
        descs = all_descriptors(f)
    else:
        r = f.r
        descs = [Z(r, 1)]
        descs += [Z(a, f.exponent(a)) for a in range(1, r + 1) if f.exponent(a) >= 2]
        descs += [d for d in all_descriptors(f) if d.kind == "X"]
        descs = sorted(set(descs))
    return [bound(f, d) for d in descs]


def _pick(f: FactoredInteger, descs) -> tuple[int, list[CutSetDescriptor]]:
    """Minimum size among ``descs`` and every descriptor attaining it."""
    sized = [(bound(f, d).value, d) for d in set(descs)]
    k = min(v for v, _ in sized)
    return k, sorted(d for v, d in sized if v == k)


def _dispatch(f: FactoredInteger) -> tuple[int, Rule, list[CutSetDescriptor], Uniqueness | None]:
    r = f.r
    n = f.value
    if r == 1:
        return n - 1, Rule.PRIME_POWER, [], None

    p1 = f.p(1)
    if r == 2:
        if p1 >= 3:
            return beta(f, 2, 1).value, Rule.R2, [Z(2, 1)], Uniqueness.family(1)
        fam = [Z(2, s) for s in range(1, f.exponent(2) + 1)]
        return beta(f, 2, 1).value, Rule.R2, fam, Uniqueness.family(len(fam))

    if r == 3:
        if p1 >= 3:
            return beta(f, 3, 1).value, Rule.R3_SMALL_PRIME_3, [Z(3, 1)], Uniqueness.family(1)
        n3 = f.exponent(3)
        return beta(f, 3, n3).value, Rule.R3_PRIME_2, [Z(3, n3)], Uniqueness.family(1)

    # r >= 4; 2 phi(p_1...p_{r-1}) never equals p_1...p_{r-1} here
    if not two_phi_deficient(f, {r}):
        return beta(f, r, 1).value, Rule.LARGE_PHI, [Z(r, 1)], Uniqueness.family(1)

    if f.is_squarefree:
        k, mins = _pick(f, [Z(r, 1), X(r - 1, r, 1, 1)])
        return k, Rule.SQUAREFREE_R4, mins, Uniqueness.family(len(mins))

    nr = f.exponent(r)
    if nr >= 2:
        omega = omega_set(f)
        if nr >= 3 or not omega:
            return beta(f, r, nr).value, Rule.NR_GE_2, [Z(r, nr)], Uniqueness.family(1)
        b = max(omega)
        k, mins = _pick(f, [Z(r, nr), Z(b, f.exponent(b))])
        return k, Rule.NR_GE_2, mins, Uniqueness.family(len(mins))

    if r == 4 or (r == 5 and p1 == 3):
        assert p1 in (2, 3), "hypotheses force p_1 in {2, 3}"
        m = r - 1
        pair = [Z(r, 1)]
        if f.exponent(m) >= 2:
            pair.append(Z(m, f.exponent(m)))
        k, mins = _pick(f, pair)
        rule = Rule.R4_NR1 if r == 4 else Rule.R5_NR1_P3
        return k, rule, mins, Uniqueness.family(len(mins))

    table = candidates(f)
    k = min(b.value for b in table)
    mins = sorted(b.descriptor for b in table if b.value == k)
    return k, Rule.CANDIDATE_ENUM, mins, CANDIDATES_ONLY


def kappa(f: FactoredInteger, check: bool = False) -> KappaResult:
    """Vertex connectivity of P(C_n) with the rule used and the minimizers.

    With ``check=True`` the dispatched answer is compared against the full
    candidate table and a :class:`ConsistencyError` raised on disagreement.
    """
    k, rule, mins, uniq = _dispatch(f)
    table = candidates(f) if f.r >= 2 else []
    if check and table:
        lo = min(b.value for b in table)
        if lo != k:
            raise ConsistencyError(f"{f}: rule {rule.value} gives {k}, table minimum is {lo}")
        for d in mins:
            size = bound(f, d).value
            if size != k:
                raise ConsistencyError(f"{f}: minimizer {d} has size {size}")
    return KappaResult(f, k, rule, mins, uniq, table)


def minimum_cutset_family(f: FactoredInteger) -> tuple[list[CutSetDescriptor], Uniqueness]:
    if f.is_prime_power:
        raise DomainError(f"P(C_{f.value}) is complete and has no cut-set")
    res = kappa(f)
    return res.minimizers, res.uniqueness


@dataclass
class MinimizerCheck:
    descriptor: CutSetDescriptor
    size: int
    disconnects: bool

    @property
    def ok(self) -> bool:
        return self.disconnects


@dataclass
class OracleReport:
    n: int
    engine_kappa: int
    oracle_kappa: int
    minimizers: list[MinimizerCheck]

    @property
    def ok(self) -> bool:
        return (self.engine_kappa == self.oracle_kappa
                and all(m.ok and m.size == self.engine_kappa for m in self.minimizers))


def verify_against_oracle(f: FactoredInteger, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> OracleReport:
    if f.value > oracle_limit:
        raise LimitError(f"n={f.value} exceeds the oracle limit {oracle_limit}")
    res = kappa(f)
    g = ExplicitGraph(f.value)
    ok = oracle_vertex_connectivity(g, limit=oracle_limit)
    checks = []
    for d in res.minimizers:
        ds = build(f, d)
        checks.append(MinimizerCheck(d, ds.cardinality, is_cutset(f, ds)))
    return OracleReport(f.value, res.kappa, ok, checks)

