"""The power graph of C_n in two forms.

* :class:`OrderClassGraph` -- one vertex per divisor d (weight phi(d)), edges
  by divisibility.  Cheap at any n; used for cut-set checks.
* :class:`ExplicitGraph` -- the n residues with the literal "one is a
  multiple of the other" adjacency.  Feeds the max-flow connectivity oracle,
  which never consults order classes or any closed form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd

from .arith import (
    Divisor,
    DomainError,
    FactoredInteger,
    LimitError,
    divides,
    divisors,
    totient_of_divisor,
)
from .cutsets import DivisorSet

DEFAULT_ORACLE_LIMIT = 600


# --- quotient by order classes ----------------------------------------------

@dataclass(frozen=True)
class OrderClassGraph:
    parent: FactoredInteger
    vertices: tuple[Divisor, ...]
    weight: dict[Divisor, int] = field(hash=False, compare=False)

    def adjacent(self, d: Divisor, e: Divisor) -> bool:
        return d != e and (divides(d, e) or divides(e, d))

    def value(self, d: Divisor) -> int:
        return self.parent.divisor_value(d)


def build_quotient(f: FactoredInteger) -> OrderClassGraph:
    verts = tuple(divisors(f))
    return OrderClassGraph(f, verts, {d: totient_of_divisor(f, d) for d in verts})


def surviving_components(f: FactoredInteger, dset: DivisorSet) -> list[list[int]]:
    """Connected components (as sorted divisor values) after removing ``dset``."""
    if dset.covers_everything():
        raise DomainError("the set removes every vertex")
    q = build_quotient(f)
    alive = [d for d in q.vertices if d not in dset.members]
    seen: set[Divisor] = set()
    comps = []
    for start in alive:
        if start in seen:
            continue
        seen.add(start)
        comp, todo = [start], [start]
        while todo:
            u = todo.pop()
            for v in alive:
                if v not in seen and q.adjacent(u, v):
                    seen.add(v)
                    comp.append(v)
                    todo.append(v)
        comps.append(sorted(f.divisor_value(d) for d in comp))
    return sorted(comps)


def is_cutset(f: FactoredInteger, dset: DivisorSet) -> bool:
    return len(surviving_components(f, dset)) > 1


# --- explicit graph ---------------------------------------------------------

class ExplicitGraph:
    """P(C_n) on residues 0..n-1.

    x and y are adjacent when y lies in the cyclic subgroup generated by x or
    vice versa; in Z/n that subgroup is the multiples of gcd(x, n).  Only the
    per-vertex gcd is stored, neighbourhoods are generated on demand.
    """

    def __init__(self, n: int):
        if n < 1:
            raise DomainError("n must be positive")
        self.n = n
        self.gen = [gcd(x, n) for x in range(n)]

    def adjacent(self, x: int, y: int) -> bool:
        return x != y and (y % self.gen[x] == 0 or x % self.gen[y] == 0)

    def neighbors(self, x: int) -> list[int]:
        return [y for y in range(self.n) if self.adjacent(x, y)]

    def edges(self):
        for x in range(self.n):
            for y in range(x + 1, self.n):
                if self.adjacent(x, y):
                    yield x, y

    @property
    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    def is_complete(self) -> bool:
        return all(self.adjacent(x, y) for x, y in combinations(range(self.n), 2))

    def components_without(self, removed) -> list[list[int]]:
        removed = set(removed)
        alive = [x for x in range(self.n) if x not in removed]
        seen: set[int] = set()
        comps = []
        for start in alive:
            if start in seen:
                continue
            seen.add(start)
            comp, todo = [start], [start]
            while todo:
                u = todo.pop()
                for v in alive:
                    if v not in seen and self.adjacent(u, v):
                        seen.add(v)
                        comp.append(v)
                        todo.append(v)
            comps.append(sorted(comp))
        return sorted(comps)

    def diameter(self) -> int:
        best = 0
        for s in range(self.n):
            dist = {s: 0}
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for v in self.neighbors(u):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        dq.append(v)
            if len(dist) < self.n:
                raise ValueError("graph is disconnected")
            best = max(best, max(dist.values()))
        return best


def build_explicit(f: FactoredInteger | int) -> ExplicitGraph:
    n = f.value if isinstance(f, FactoredInteger) else f
    return ExplicitGraph(n)


def export_edge_list(g: ExplicitGraph) -> str:
    """One ``"u v"`` line per edge, 0-based residues, u < v."""
    return "".join(f"{u} {v}\n" for u, v in g.edges())


# --- max-flow oracle --------------------------------------------------------

class _SplitNetwork:
    """Vertex-split digraph with unit capacities: x_in = 2x, x_out = 2x + 1."""

    def __init__(self, g: ExplicitGraph, adj: list[list[int]]):
        self.size = 2 * g.n
        self.head: list[list[int]] = [[] for _ in range(self.size)]
        self.to: list[int] = []
        self.cap0: list[int] = []
        for x in range(g.n):
            self._arc(2 * x, 2 * x + 1)
            for y in adj[x]:
                self._arc(2 * x + 1, 2 * y)

    def _arc(self, u: int, v: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap0.append(1)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap0.append(0)

    def max_flow(self, s: int, t: int, cutoff: int) -> int:
        """Dinic from s_out to t_in; stops once the flow reaches ``cutoff``."""
        src, sink = 2 * s + 1, 2 * t
        cap = self.cap0[:]
        to, head = self.to, self.head
        deg = [len(h) for h in head]
        flow = 0
        while flow < cutoff:
            level = [-1] * self.size
            level[src] = 0
            frontier = [src]
            while frontier and level[sink] < 0:
                nxt = []
                for u in frontier:
                    lu = level[u] + 1
                    for e in head[u]:
                        v = to[e]
                        if cap[e] and level[v] < 0:
                            level[v] = lu
                            nxt.append(v)
                frontier = nxt
            if level[sink] < 0:
                break
            it = [0] * self.size
            while flow < cutoff:
                # one unit augmenting path through the level graph
                path: list[int] = []
                u = src
                while u != sink:
                    arcs, k, want = head[u], it[u], level[u] + 1
                    d = deg[u]
                    while k < d:
                        e = arcs[k]
                        if cap[e] and level[to[e]] == want:
                            break
                        k += 1
                    it[u] = k
                    if k == d:
                        if not path:
                            break
                        level[u] = -1
                        e = path.pop()
                        u = to[e ^ 1]
                        it[u] += 1
                        continue
                    path.append(e)
                    u = to[e]
                if u != sink:
                    break
                for e in path:
                    cap[e] -= 1
                    cap[e ^ 1] += 1
                flow += 1
        return flow


def _twin_representatives(g: ExplicitGraph, adj: list[list[int]]) -> list[int]:
    """One vertex per class of true twins (equal closed neighbourhoods).

    Swapping true twins is an automorphism, so local connectivity between
    two vertices only depends on their twin classes.
    """
    seen: dict[int, int] = {}
    for x in range(g.n):
        mask = 1 << x
        for y in adj[x]:
            mask |= 1 << y
        seen.setdefault(mask, x)
    return sorted(seen.values())


def oracle_vertex_connectivity(g: ExplicitGraph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Exact vertex connectivity by Menger's theorem.

    Minimum over non-adjacent pairs (one per pair of twin classes) of the
    maximum number of internally disjoint paths; n - 1 for complete graphs.
    """
    if g.n > limit:
        raise LimitError(f"n={g.n} exceeds the oracle limit {limit}")
    if g.n == 1:
        return 0
    adj = [g.neighbors(x) for x in range(g.n)]
    reps = _twin_representatives(g, adj)
    pairs = [(u, v) for u, v in combinations(reps, 2) if not g.adjacent(u, v)]
    if not pairs:
        return g.n - 1
    net = _SplitNetwork(g, adj)
    best = g.n - 1
    for u, v in pairs:
        best = min(best, net.max_flow(u, v, best))
    return best


# --- brute-force minimum cut-set search -------------------------------------

def min_cutsets_brute(q: OrderClassGraph, kappa: int, max_classes: int = 16) -> list[frozenset[int]]:
    """Every union of order classes of total weight ``kappa`` that disconnects.

    Returned as frozensets of divisor values.  Only class unions are searched,
    which suffices for minimum cut-sets: true twins are never split by one.
    """
    f = q.parent
    verts = list(q.vertices)
    if len(verts) > max_classes:
        raise LimitError(f"{len(verts)} classes exceed the limit {max_classes}")
    # classes adjacent to everything must be removed
    forced = [d for d in verts if all(q.adjacent(d, e) for e in verts if e != d)]
    free = [d for d in verts if d not in forced]
    base = sum(q.weight[d] for d in forced)
    found: list[frozenset[int]] = []

    def disconnects(chosen: set[Divisor]) -> bool:
        alive = [d for d in free if d not in chosen]
        if len(alive) < 2:
            return False
        seen = {alive[0]}
        todo = [alive[0]]
        while todo:
            u = todo.pop()
            for v in alive:
                if v not in seen and q.adjacent(u, v):
                    seen.add(v)
                    todo.append(v)
        return len(seen) < len(alive)

    def walk(i: int, chosen: list[Divisor], w: int):
        if w == kappa:
            if disconnects(set(chosen)):
                found.append(frozenset(f.divisor_value(d) for d in forced + chosen))
            return
        if i == len(free):
            return
        d = free[i]
        if w + q.weight[d] <= kappa:
            chosen.append(d)
            walk(i + 1, chosen, w + q.weight[d])
            chosen.pop()
        walk(i + 1, chosen, w)

    if base <= kappa:
        walk(0, [], base)
    return sorted(found, key=sorted)


def min_cutsets_unrestricted(g: ExplicitGraph, kappa: int, max_subsets: int = 2_000_000) -> list[frozenset[int]]:
    """Every vertex subset of size ``kappa`` whose removal disconnects.

    Unrestricted element-level search for tiny n; universal vertices are
    forced in, everything else is enumerated.
    """
    universal = [x for x in range(g.n) if len(g.neighbors(x)) == g.n - 1]
    rest = [x for x in range(g.n) if x not in universal]
    k = kappa - len(universal)
    if k < 0:
        return []

    if comb(len(rest), k) > max_subsets:
        raise LimitError("too many subsets for the unrestricted search")
    out = []
    for extra in combinations(rest, k):
        removed = set(universal) | set(extra)
        if len(g.components_without(removed)) > 1:
            out.append(frozenset(removed))
    return out
