"""Command-line front end: every command prints (or writes) one JSON report.

Exit codes: 0 all checks passed, 1 a check failed, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import ffalg
from .category import ClusterCategory, ObjectError
from .ccmap import gr_euler, x_of
from .ffalg import BudgetExceeded
from .filtration import (exceptional_objects_in_cones, fan_check, find_epsilon,
                         graded_leading, toric_leading_check)
from .grassmannian import count_submodules
from .hall import (CONVENTIONS, compare_multiplication, r_positivity_report, expand_in_basis,
                   hall_multiply, hall_polynomial, verify_multiplication)
from .laurent import LaurentPoly
from .mutation import DEFAULT_BFS_BUDGET, exchange_graph, initial_seed
from .qpoly import DEFAULT_PRIMES
from .quiver import QuiverError, build_quiver, standard_quiver

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    type: str = "A2"
    arrows: str | None = None
    orientation: str = "linear"
    primes: list[int] = field(default_factory=lambda: list(DEFAULT_PRIMES))
    seed: int = 0
    budget: int = ffalg.DEFAULT_SUBSPACE_BUDGET
    bfs_budget: int = DEFAULT_BFS_BUDGET
    out: str | None = None

    def validate(self):
        if len(set(self.primes)) != len(self.primes) or not all(ffalg.is_prime(p) for p in self.primes):
            raise ConfigError("primes must be distinct primes")
        if self.budget <= 0 or self.bfs_budget <= 0:
            raise ConfigError("budgets must be positive")
        if self.orientation not in ("linear", "alternating"):
            raise ConfigError(f"unknown orientation {self.orientation!r}")

    def quiver(self):
        if self.arrows is not None:
            return build_quiver(self.type, self.arrows)
        return standard_quiver(self.type, self.orientation)


def load_config(path: str) -> dict:
    text = Path(path).read_bytes()
    if path.endswith(".toml"):
        return tomllib.loads(text.decode())
    return json.loads(text)


def make_config(args) -> RunConfig:
    values = load_config(args.config) if args.config else {}
    unknown = set(values) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    for key in ("type", "arrows", "orientation", "seed", "budget", "bfs_budget", "out"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if args.primes is not None:
        values["primes"] = [int(p) for p in args.primes.split(",")]
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def context_hash(cfg: RunConfig, q) -> str:
    blob = json.dumps({"quiver": q.to_json(), "primes": cfg.primes}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _laurent(p: LaurentPoly) -> dict:
    return {"terms": p.to_json(), "text": str(p)}


# -- commands: each returns (report, ok) -------------------------------------------------

def cmd_roots(cat, args):
    roots = [list(r) for r in cat.engine.roots]
    return {"count": len(roots), "roots": roots}, True


def cmd_indecomposables(cat, args):
    rows = [{"object": cat.name(z), "lambda": list(cat.lambda_vector(z)),
             "x": str(x_of(cat, z))} for z in cat.indecomposables]
    return {"count": len(rows), "indecomposables": rows}, True


def cmd_cluster_var(cat, args):
    obj = cat.parse(args.object)
    x = x_of(cat, obj)
    return {"object": cat.name(obj), "x": _laurent(x), "denominator": list(x.denominator()),
            "lambda": list(cat.lambda_vector(obj))}, True


def cmd_mutate_bfs(cat, args):
    g = exchange_graph(initial_seed(cat.quiver, "principal" if args.principal else "none"),
                       args.cfg.bfs_budget)
    if args.format == "dot":
        return g.to_dot(), True
    report = {"clusters": len(g.seeds), "variables": len(g.variables)}
    if args.graph:
        report["graph"] = g.to_json()
    return report, True


def _pairs(cat, text):
    if text == "all":
        ind = cat.indecomposables
        return [(a, b) for a in ind for b in ind if cat.ext1_dim_cc(a, b)]
    pairs = []
    for item in text.split(";"):
        try:
            n, m = item.split("/")
        except ValueError:
            raise ObjectError(f"pair {item!r} is not of the form N/M") from None
        pairs.append((cat.parse(n), cat.parse(m)))
    return pairs


def cmd_verify_mult(cat, args):
    rows = [verify_multiplication(cat, n, m) for n, m in _pairs(cat, args.pairs)]
    failures = [r for r in rows if not r["ok"]]
    return {"pairs": len(rows), "results": rows, "failures": failures}, not failures


def cmd_verify_denominators(cat, args):
    rows, failures = [], []
    for r in cat.engine.roots:
        obj = cat.parse("root:[" + ",".join(map(str, r)) + "]")
        den = x_of(cat, obj).denominator()
        rows.append({"module": list(r), "denominator": list(den)})
        if den != r:
            failures.append(rows[-1])
    return {"modules": len(rows), "results": rows, "failures": failures}, not failures


def cmd_verify_positivity(cat, args):
    failures, checked = [], 0
    for z in cat.indecomposables:
        x = x_of(cat, z)
        if not x.nonnegative():
            failures.append({"object": cat.name(z), "reason": "negative coefficient"})
        if z.sp:
            continue
        d = z.only_root()
        for e in _box(d):
            checked += 1
            chi = gr_euler(cat, d, e)
            nonempty = count_submodules(cat.engine.indecomposable(d, 2), e) > 0
            if chi < 0 or (nonempty and chi <= 0):
                failures.append({"object": cat.name(z), "e": list(e), "chi": chi})
    return {"objects": len(cat.indecomposables), "grassmannians": checked,
            "failures": failures}, not failures


def _box(d):
    from itertools import product
    return product(*(range(x + 1) for x in d))


def cmd_tilting(cat, args):
    objs = cat.tilting_objects()
    ok = all(t.summand_count() == cat.n for t in objs)
    return {"count": len(objs), "tilting": [cat.name(t) for t in objs]}, ok


def cmd_fan_check(cat, args):
    rep = fan_check(cat, args.samples, args.cfg.seed)
    return rep, rep["ok"]


def cmd_basis(cat, args):
    found = exceptional_objects_in_cones(cat, args.box)
    lams = list(found.values())
    injective = len(set(lams)) == len(lams)
    eps = find_epsilon(cat.quiver)
    lead_ok = True
    if eps is not None:
        for obj, lam in found.items():
            lt = graded_leading(x_of(cat, obj), eps)
            lead_ok &= lt.point == lam and lt.coefficient == 1 and not lt.tied
    rows = sorted(([list(l), cat.name(o)] for o, l in found.items()))
    return {"box": args.box, "exceptional": len(found), "lambda_injective": injective,
            "epsilon": eps.to_json() if eps else None, "leading_terms_ok": lead_ok,
            "objects": rows}, injective and lead_ok


def cmd_expand(cat, args):
    prod = LaurentPoly.one(cat.n)
    factors = [cat.parse(f) for f in args.product.split(";")]
    for f in factors:
        prod = prod * x_of(cat, f)
    exp = expand_in_basis(cat, prod)
    ok = exp.contract(cat) == prod and exp.is_integral()
    return {"factors": [cat.name(f) for f in factors], "expansion": exp.to_json(cat),
            "steps": exp.steps}, ok


def cmd_hall_poly(cat, args):
    M, N, X = (cat.parse(s) for s in (args.M, args.N, args.X))
    if not (M.is_module() and N.is_module() and X.is_module()):
        raise ObjectError("Hall polynomials take modules")
    P = hall_polynomial(cat, M.module, N.module, X.module)
    return {"M": cat.name(M), "N": cat.name(N), "X": cat.name(X), "poly": str(P),
            "coeffs": P.to_json()}, True


def cmd_hall_mult(cat, args):
    m, n = cat.parse(args.M), cat.parse(args.N)
    convs = CONVENTIONS if args.convention == "both" else (args.convention,)
    report = compare_multiplication(cat, m, n)
    out = {"m": report["m"], "n": report["n"], "expansion": report["expansion"]}
    for c in convs:
        out[c] = {"r": {cat.name(k): str(v) for k, v in hall_multiply(cat, m, n, c).items()},
                  **report[c]}
    return out, True


def cmd_toric_check(cat, args):
    rep = toric_leading_check(cat.quiver)
    return rep, rep["ok"]


def cmd_conjecture(cat, args):
    return r_positivity_report(cat, args.bound), True


def _common(p):
    p.add_argument("--config", help="TOML or JSON run configuration")
    p.add_argument("--type", help="Dynkin type, e.g. A3, D4, E6")
    p.add_argument("--arrows", help='explicit orientation, e.g. "1->2,3->2"')
    p.add_argument("--orientation", choices=["linear", "alternating"])
    p.add_argument("--primes", help="comma-separated primes for interpolation")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="subspace enumeration cap")
    p.add_argument("--bfs-budget", dest="bfs_budget", type=int, help="seed count cap")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=["json", "dot"], default="json")


COMMANDS = {
    "roots": cmd_roots,
    "indecomposables": cmd_indecomposables,
    "cluster-var": cmd_cluster_var,
    "mutate-bfs": cmd_mutate_bfs,
    "verify-mult": cmd_verify_mult,
    "verify-denominators": cmd_verify_denominators,
    "verify-positivity": cmd_verify_positivity,
    "tilting": cmd_tilting,
    "fan-check": cmd_fan_check,
    "basis": cmd_basis,
    "expand": cmd_expand,
    "hall-poly": cmd_hall_poly,
    "hall-mult": cmd_hall_mult,
    "toric-check": cmd_toric_check,
    "conjecture-6.4": cmd_conjecture,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clustercat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    ps = {name: sub.add_parser(name) for name in COMMANDS}
    for p in ps.values():
        _common(p)
    ps["cluster-var"].add_argument("object")
    ps["mutate-bfs"].add_argument("--principal", action="store_true",
                                  help="use principal coefficients")
    ps["mutate-bfs"].add_argument("--graph", action="store_true",
                                  help="include the node-link graph")
    ps["verify-mult"].add_argument("--pairs", default="all",
                                   help='"all" or "N/M;N2/M2"')
    ps["fan-check"].add_argument("--samples", type=int, default=200)
    ps["basis"].add_argument("--box", type=int, default=2)
    ps["expand"].add_argument("product", help='factors separated by ";", e.g. "S1;S2"')
    for name in ("M", "N", "X"):
        ps["hall-poly"].add_argument(name)
    ps["hall-mult"].add_argument("M")
    ps["hall-mult"].add_argument("N")
    ps["hall-mult"].add_argument("--convention", choices=list(CONVENTIONS) + ["both"],
                                 default="both")
    ps["conjecture-6.4"].add_argument("--bound", type=int, default=2)
    return parser


def run(argv=None, stdout=sys.stdout) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        cfg = make_config(args)
        q = cfg.quiver()
        args.cfg = cfg
        cat = ClusterCategory(q, cfg.primes, cfg.budget)
        report, ok = COMMANDS[args.command](cat, args)
    except (ObjectError, QuiverError, ConfigError, OSError, ValueError) as exc:
        print(json.dumps({"error": str(exc), "kind": "parse"}), file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(json.dumps({"error": str(exc), "kind": "budget"}), file=sys.stderr)
        return EXIT_BUDGET
    except ArithmeticError as exc:
        # interpolation, Laurent division or expansion did not check out
        print(json.dumps({"error": str(exc), "kind": "assertion"}), file=sys.stderr)
        return EXIT_FAIL
    if isinstance(report, str):
        text = report
    else:
        report = {"command": args.command, "config": asdict(cfg),
                  "context_hash": context_hash(cfg, q), "quiver": q.to_json(),
                  "ok": ok, **report}
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
