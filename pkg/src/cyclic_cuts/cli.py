"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field

from .arith import DomainError, FactoredInteger, LimitError, is_prime, parse_n
from .bounds import BoundValue, bound
from .cutsets import (
    DEFAULT_EXPAND_LIMIT,
    CutSetDescriptor,
    all_descriptors,
    build,
    expand,
)
from .engine import ConsistencyError, KappaResult, kappa
from .graph import (
    DEFAULT_ORACLE_LIMIT,
    ExplicitGraph,
    is_cutset,
    oracle_vertex_connectivity,
    surviving_components,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
DEFAULT_SEED = 20240917


def _fraction_str(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def bound_record(b: BoundValue) -> dict:
    return {
        "descriptor": str(b.descriptor),
        "size": str(b.value),
        "phi_n": str(b.phi_n),
        "cofactor": str(b.cofactor),
        "inner": _fraction_str(b.inner),
    }


@dataclass
class OutputRecord:
    """What ``kappa --json`` prints; every integer is a decimal string."""

    n: str
    factorization: list[list[str]]
    kappa: str
    rule: str
    minimizers: list[str]
    uniqueness: str | None
    candidates: list[dict] = field(default_factory=list)
    timing: float = 0.0

    @classmethod
    def from_result(cls, res: KappaResult, seconds: float) -> OutputRecord:
        f = res.n
        return cls(
            n=str(f.value),
            factorization=[[str(p), str(e)] for p, e in f.factors],
            kappa=str(res.kappa),
            rule=res.rule.value,
            minimizers=[str(d) for d in res.minimizers],
            uniqueness=None if res.uniqueness is None else str(res.uniqueness),
            candidates=[bound_record(b) for b in res.candidates],
            timing=seconds,
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        return cls(**json.loads(text))


def _n_list(targets: str) -> list[FactoredInteger]:
    """``"2..300"``, ``"30,210,4290"`` or a single n (factored literals allowed)."""
    out = []
    for part in targets.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (int(x) for x in part.split(".."))
            if lo < 2 or hi < lo:
                raise DomainError(f"bad range {part!r}")
            out.extend(parse_n(str(m)) for m in range(lo, hi + 1))
        else:
            out.append(parse_n(part))
    return out


# --- kappa ------------------------------------------------------------------

def cmd_kappa(args) -> int:
    f = parse_n(args.n)
    t0 = time.perf_counter()
    res = kappa(f, check=args.check)
    rec = OutputRecord.from_result(res, time.perf_counter() - t0)
    if args.json:
        print(rec.to_json())
        return EXIT_OK
    print(f"n = {f.value} = {f}")
    print(f"kappa = {res.kappa}")
    print(f"rule = {res.rule.value}")
    if res.minimizers:
        print("minimizers = " + ", ".join(rec.minimizers))
        print(f"uniqueness = {rec.uniqueness}")
    else:
        print("complete graph: no cut-set")
    return EXIT_OK


# --- cutset -----------------------------------------------------------------

def cmd_cutset(args) -> int:
    f = parse_n(args.n)
    desc = CutSetDescriptor.parse(args.descriptor)
    desc.validate(f)
    ds = build(f, desc)
    rec = {
        "n": str(f.value),
        "descriptor": str(desc),
        "size": str(ds.cardinality),
        "classes": [str(v) for v in ds.values()],
    }
    if args.list_elements:
        rec["elements"] = [str(x) for x in sorted(expand(ds, args.limit))]
    if args.check:
        comps = surviving_components(f, ds)
        rec["disconnects"] = len(comps) > 1
        rec["components"] = [[str(v) for v in c] for c in comps]
    if args.json:
        print(json.dumps(rec, indent=2))
        return EXIT_OK
    print(f"n = {f.value} = {f}")
    print(f"cut-set {desc}  size {ds.cardinality}")
    print("classes: " + " ".join(rec["classes"]))
    if args.list_elements:
        print("elements: " + " ".join(rec["elements"]))
    if args.check:
        print(f"disconnects: {'yes' if rec['disconnects'] else 'no'}")
        print("components: " + " | ".join("{" + ",".join(c) + "}" for c in rec["components"]))
    return EXIT_OK


# --- bounds -----------------------------------------------------------------

def cmd_bounds(args) -> int:
    f = parse_n(args.n)
    if f.r < 2:
        raise DomainError(f"{f.value} is a prime power: no cut-sets")
    if args.all:
        table = [bound(f, d) for d in all_descriptors(f)]
    else:
        table = kappa(f).candidates
    rows = [bound_record(b) for b in table]
    if args.json:
        print(json.dumps({"n": str(f.value), "bounds": rows}, indent=2))
        return EXIT_OK
    print(f"n = {f.value} = {f}   phi(n) = {table[0].phi_n}   n/rad(n) = {table[0].cofactor}")
    width = max(len(r["descriptor"]) for r in rows)
    for r in rows:
        print(f"  {r['descriptor']:<{width}}  {r['size']:>12}   inner = {r['inner']}")
    return EXIT_OK


# --- verify -----------------------------------------------------------------

def verify_one(f: FactoredInteger, oracle_limit: int) -> dict:
    """Formula, cut-set and (small n) oracle checks for one n."""
    out = {"n": str(f.value), "formulas": "ok", "cutsets": "ok", "engine": "ok", "oracle": "skipped"}
    try:
        res = kappa(f, check=True)
    except ConsistencyError as exc:
        out["engine"] = f"FAIL: {exc}"
        res = kappa(f)
    for d in all_descriptors(f):
        ds = build(f, d)
        if ds.cardinality != bound(f, d).value:
            out["formulas"] = f"FAIL at {d}"
        if not is_cutset(f, ds):
            out["cutsets"] = f"FAIL at {d}"
    if f.value <= oracle_limit:
        ok = oracle_vertex_connectivity(ExplicitGraph(f.value), limit=oracle_limit)
        out["oracle"] = "ok" if ok == res.kappa else f"FAIL: oracle {ok} vs engine {res.kappa}"
    out["kappa"] = str(res.kappa)
    out["passed"] = all(not str(v).startswith("FAIL") for v in out.values())
    return out


def cmd_verify(args) -> int:
    ns = _n_list(args.targets)
    reports = [verify_one(f, args.oracle_limit) for f in ns]
    failed = [r for r in reports if not r["passed"]]
    if args.json:
        print(json.dumps({"reports": reports, "failures": len(failed)}, indent=2))
    else:
        for r in reports:
            status = "PASS" if r["passed"] else "FAIL"
            print(f"{status} n={r['n']} kappa={r['kappa']} formulas={r['formulas']} "
                  f"cutsets={r['cutsets']} engine={r['engine']} oracle={r['oracle']}")
        print(f"{len(reports) - len(failed)}/{len(reports)} passed")
    return EXIT_FAIL if failed else EXIT_OK


# --- sweep ------------------------------------------------------------------

_SWEEP_PRIMES = [p for p in range(2, 200) if is_prime(p)]


def random_factored(rng: random.Random, min_r: int = 4, max_r: int = 7, max_exp: int = 5) -> FactoredInteger:
    """A random n, skewed towards small primes so every dispatch rule is reached."""
    r = rng.randint(min_r, max_r)
    pool = _SWEEP_PRIMES[: rng.randint(r, len(_SWEEP_PRIMES))]
    primes = sorted(rng.sample(pool, r))
    return FactoredInteger(tuple(primes), tuple(rng.randint(1, max_exp) for _ in primes))


def cmd_sweep(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        ns = [random_factored(rng, args.min_r) for _ in range(args.random)]
    elif args.targets:
        ns = _n_list(args.targets)
    else:
        raise DomainError("sweep needs a range or --random")
    rows = []
    for f in ns:
        res = kappa(f, check=args.check)
        rows.append({
            "n": str(f.value),
            "factored": str(f),
            "kappa": str(res.kappa),
            "rule": res.rule.value,
            "minimizers": " ".join(str(d) for d in res.minimizers),
            "uniqueness": "" if res.uniqueness is None else str(res.uniqueness),
        })
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]) if rows else ["n"])
        w.writeheader()
        w.writerows(rows)
    return EXIT_OK


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclic-cuts", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("kappa", help="vertex connectivity of P(C_n)")
    p.add_argument("n")
    p.add_argument("--json", action="store_true")
    p.add_argument("--check", action="store_true", help="cross-check against the candidate table")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("cutset", help="build one candidate cut-set")
    p.add_argument("n")
    p.add_argument("descriptor", help='"Z:a:s" or "X:a:b:s:t"')
    p.add_argument("--list-elements", action="store_true")
    p.add_argument("--check", action="store_true", help="certify disconnection")
    p.add_argument("--limit", type=int, default=DEFAULT_EXPAND_LIMIT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cutset)

    p = sub.add_parser("bounds", help="candidate sizes with their decompositions")
    p.add_argument("n")
    p.add_argument("--all", action="store_true", help="every descriptor, not only candidates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="cross-validate formulas, cut-sets and the oracle")
    p.add_argument("targets", help='"2..300", "30,210" or a single n')
    p.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="kappa table over a range or random sample")
    p.add_argument("targets", nargs="?")
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--min-r", type=int, default=4)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
