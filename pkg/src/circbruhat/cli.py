"""Command-line front end.

    circbruhat enumerate -k 2 -n 3 --format json
    circbruhat hasse -k 2 -n 4 --lambda 2,4
    circbruhat verify main-theorem -k 2 -n 5
    circbruhat verify --all --max-n 5 --jobs 8
    circbruhat cardinalities --max-n 6
    circbruhat chain-sum -k 2 -n 4
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

from . import chains, egf, young
from .cbposet import CBPoset, build, enumerate_cb, fiber_subposet

log = logging.getLogger("circbruhat")

DEFAULT_MAX_N = 7
DEFAULT_VERIFY_MAX_N = 5

CHECKS = (
    "main-theorem",
    "independence",
    "count",
    "induct",
    "anti-isomorphism",
    "corollary",
    "bs",
    "grassmannian",
    "brute-force",
    "stembridge",
    "egf",
)


@dataclass
class RunConfig:
    command: str
    k: int | None = None
    n: int | None = None
    subset: frozenset[int] | None = None
    check: str | None = None
    run_all: bool = False
    fmt: str = "text"
    output: str | None = None
    max_n: int = DEFAULT_MAX_N
    max_stembridge_n: int = chains.DEFAULT_STEMBRIDGE_CAP
    jobs: int = 1
    timings: bool = False


class UsageError(Exception):
    pass


def _parse_subset(text: str) -> frozenset[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if len(set(values)) != len(values):
        raise argparse.ArgumentTypeError(f"repeated entries in {text!r}")
    return frozenset(values)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circbruhat", description="Chains in the circular Bruhat order CB(k, n)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices, fmt_default, max_n_default=DEFAULT_MAX_N):
        p.add_argument("-k", type=int)
        p.add_argument("-n", type=int)
        p.add_argument("--format", dest="fmt", choices=fmt_choices, default=fmt_default)
        p.add_argument("-o", "--output", help="write here instead of standard output")
        p.add_argument("--max-n", type=int, default=max_n_default, help="largest n allowed (default %(default)s)")
        p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes for poset construction")

    p = sub.add_parser("enumerate", help="list the elements of CB(k, n)")
    common(p, ("json", "text"), "text")

    p = sub.add_parser("hasse", help="Hasse diagram of CB(k, n) or one of its fibers")
    common(p, ("dot", "json", "text"), "dot")
    p.add_argument("--lambda", dest="subset", type=_parse_subset, help="restrict to CB(k,n)_lambda, e.g. 2,4")

    p = sub.add_parser("chain-sum", help="weighted sum of the maximal chains of CB(k, n)")
    common(p, ("json", "text"), "text")

    p = sub.add_parser("cardinalities", help="|CB(k, n)| from the generating function")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="run verification checks")
    common(p, ("json", "text"), "text", max_n_default=DEFAULT_VERIFY_MAX_N)
    p.add_argument("check", nargs="?", choices=CHECKS)
    p.add_argument("--all", dest="run_all", action="store_true", help="run the whole battery for n <= --max-n")
    p.add_argument("--lambda", dest="subset", type=_parse_subset)
    p.add_argument("--max-stembridge-n", type=int, default=chains.DEFAULT_STEMBRIDGE_CAP)
    p.add_argument("--timings", action="store_true", help="add runtime_ms to each report entry")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        k=getattr(args, "k", None),
        n=getattr(args, "n", None),
        subset=getattr(args, "subset", None),
        check=getattr(args, "check", None),
        run_all=getattr(args, "run_all", False),
        fmt=args.fmt,
        output=args.output,
        max_n=args.max_n,
        max_stembridge_n=getattr(args, "max_stembridge_n", chains.DEFAULT_STEMBRIDGE_CAP),
        jobs=getattr(args, "jobs", 1),
        timings=getattr(args, "timings", False),
    )


def _require_kn(cfg: RunConfig) -> tuple[int, int]:
    k, n = cfg.k, cfg.n
    if k is None or n is None:
        raise UsageError("both -k and -n are required")
    if n < 1 or not 0 <= k <= n:
        raise UsageError(f"need n >= 1 and 0 <= k <= n, got k={k}, n={n}")
    if n > cfg.max_n:
        raise UsageError(f"n={n} exceeds --max-n {cfg.max_n}")
    return k, n


def _require_subset(cfg: RunConfig, k: int, n: int) -> frozenset[int] | None:
    lam = cfg.subset
    if lam is not None and (len(lam) != k or not lam <= set(range(1, n + 1))):
        raise UsageError(f"--lambda must be a {k}-subset of [{n}], got {sorted(lam)}")
    return lam


def cmd_enumerate(cfg: RunConfig) -> tuple[str, int]:
    k, n = _require_kn(cfg)
    elements = enumerate_cb(k, n)
    top = k * (n - k)
    records = [
        {"window": list(f.window), "rank": top - f.length(), "decorated": f.to_decorated().to_json()}
        for f in elements
    ]
    if cfg.fmt == "json":
        return json.dumps({"k": k, "n": n, "elements": records}, indent=2) + "\n", 0
    lines = [
        f"{r['window']}\trank={r['rank']}\tperm={r['decorated']['perm']}\twhite={r['decorated']['white']}"
        for r in records
    ]
    return "\n".join(lines) + "\n", 0


def cmd_hasse(cfg: RunConfig) -> tuple[str, int]:
    k, n = _require_kn(cfg)
    lam = _require_subset(cfg, k, n)
    p = build(k, n, jobs=cfg.jobs)
    if lam is not None:
        p = fiber_subposet(p, lam)
    if cfg.fmt == "dot":
        return p.to_dot(), 0
    if cfg.fmt == "json":
        return json.dumps(p.to_json(), indent=2) + "\n", 0
    data = p.to_json()
    lines = [f"{x}\t{e['window']}\trank={e['rank']}" for x, e in enumerate(data["elements"])]
    lines += [f"{c['upper']} > {c['lower']}\tt_{c['i']}{c['j']}\t{c['weight']}" for c in data["covers"]]
    return "\n".join(lines) + "\n", 0


def cmd_chain_sum(cfg: RunConfig) -> tuple[str, int]:
    k, n = _require_kn(cfg)
    total = chains.weighted_chain_sum(build(k, n, jobs=cfg.jobs))
    if cfg.fmt == "json":
        return json.dumps({"k": k, "n": n, "terms": total.to_json()}, indent=2) + "\n", 0
    return total.render() + "\n", 0


def cmd_cardinalities(cfg: RunConfig) -> tuple[str, int]:
    if cfg.max_n < 0 or cfg.max_n > egf.DEFAULT_CAP:
        raise UsageError(f"--max-n must lie in [0, {egf.DEFAULT_CAP}]")
    table = egf.cb_cardinalities(cfg.max_n)
    if cfg.fmt == "json":
        return "\n".join(json.dumps({"n": n, "counts": row}) for n, row in enumerate(table)) + "\n", 0
    width = max(len(str(v)) for row in table for v in row)
    lines = [f"n={n}: " + " ".join(str(v).rjust(width) for v in row) for n, row in enumerate(table)]
    return "\n".join(lines) + "\n", 0


# -- verification ------------------------------------------------------------

class _Posets:
    """Builds each CB(k, n) once per run."""

    def __init__(self, jobs: int):
        self.jobs = jobs
        self._cache: dict[tuple[int, int], CBPoset] = {}

    def __call__(self, k: int, n: int) -> CBPoset:
        if (k, n) not in self._cache:
            self._cache[(k, n)] = build(k, n, jobs=self.jobs)
        return self._cache[(k, n)]


def _per_element(name: str, p: CBPoset, test: Callable) -> chains.CheckResult:
    checked = 0
    for x, f in enumerate(p.elements):
        outcome = test(p, x)
        if outcome is None:
            continue
        checked += 1
        if not outcome:
            return chains.CheckResult(name, {"k": p.k, "n": p.n}, False, str(f))
    return chains.CheckResult(name, {"k": p.k, "n": p.n}, True, details={"elements_checked": checked})


def _brute_force(p: CBPoset) -> chains.CheckResult:
    params = {"k": p.k, "n": p.n}
    if p.max_rank > 4:
        raise UsageError("brute-force chain listing is limited to k(n-k) <= 4")
    ok = chains.brute_force_chain_sum(p) == chains.weighted_chain_sum(p)
    return chains.CheckResult("brute_force", params, ok, None if ok else "explicit chain sum differs from DP")


def _egf_check(n_max: int) -> chains.CheckResult:
    table = egf.cb_cardinalities(n_max)
    for n in range(1, n_max + 1):
        direct = [len(enumerate_cb(k, n)) for k in range(n + 1)]
        if table[n] != direct:
            return chains.CheckResult("egf", {"max_n": n_max}, False, f"n={n}: series {table[n]} vs enumeration {direct}")
        if sum(direct) != egf.decorated_permutation_count(n):
            return chains.CheckResult("egf", {"max_n": n_max}, False, f"n={n}: row sum {sum(direct)}")
    return chains.CheckResult("egf", {"max_n": n_max}, True, details={"rows": [row for row in table]})


def _kn_check(check: str, k: int, n: int, posets: _Posets, lam: frozenset[int] | None = None) -> list[chains.CheckResult]:
    if check == "main-theorem":
        return [chains.verify_main_theorem(k, n, posets(k, n))]
    if check == "independence":
        return [chains.verify_delta_independence(posets(k, n))]
    if check == "count":
        return [chains.verify_top_chain_count(posets(k, n))]
    if check == "induct":
        return [_per_element("induct_identity", posets(k, n), chains.verify_induct_identity)]
    if check == "corollary":
        return [_per_element("corollary_chains", posets(k, n), chains.verify_corollary_chains)]
    if check == "bs":
        return [chains.verify_bs_consequence(posets(k, n))]
    if check == "grassmannian":
        ok = young.verify_grassmannian_anti_isomorphism(k, n)
        return [chains.CheckResult("grassmannian_anti_isomorphism", {"k": k, "n": n}, ok)]
    if check == "brute-force":
        return [_brute_force(posets(k, n))]
    if check == "anti-isomorphism":
        subsets = [lam] if lam is not None else [frozenset(c) for c in combinations(range(1, n + 1), k)]
        return [chains.verify_anti_isomorphism(k, n, s, posets(k, n)) for s in subsets]
    raise UsageError(f"unknown check {check}")


def _battery(cfg: RunConfig, posets: _Posets) -> Iterator[Callable[[], list[chains.CheckResult]]]:
    kn_checks = ("main-theorem", "independence", "count", "induct", "corollary", "bs", "anti-isomorphism", "grassmannian")
    for n in range(1, cfg.max_n + 1):
        for k in range(n + 1):
            for check in kn_checks:
                yield lambda check=check, k=k, n=n: _kn_check(check, k, n, posets)
            if k * (n - k) <= 4:
                yield lambda k=k, n=n: _kn_check("brute-force", k, n, posets)
    for n in range(1, min(cfg.max_n, cfg.max_stembridge_n) + 1):
        yield lambda n=n: [chains.verify_stembridge(n, cap=cfg.max_stembridge_n)]
    yield lambda: [_egf_check(min(cfg.max_n, egf.DEFAULT_CAP))]


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    posets = _Posets(cfg.jobs)
    if cfg.run_all:
        if cfg.max_n < 1:
            raise UsageError("--max-n must be at least 1")
        tasks = list(_battery(cfg, posets))
    elif cfg.check is None:
        raise UsageError("name a check or pass --all")
    elif cfg.check == "stembridge":
        if cfg.n is None:
            raise UsageError("-n is required")
        if not 1 <= cfg.n <= cfg.max_stembridge_n:
            raise UsageError(f"-n must lie in [1, {cfg.max_stembridge_n}] (see --max-stembridge-n)")
        tasks = [lambda: [chains.verify_stembridge(cfg.n, cap=cfg.max_stembridge_n)]]
    elif cfg.check == "egf":
        n_max = cfg.n if cfg.n is not None else min(cfg.max_n, egf.DEFAULT_CAP)
        if not 0 <= n_max <= min(cfg.max_n, egf.DEFAULT_CAP):
            raise UsageError(f"-n must lie in [0, {min(cfg.max_n, egf.DEFAULT_CAP)}]")
        tasks = [lambda: [_egf_check(n_max)]]
    else:
        k, n = _require_kn(cfg)
        lam = _require_subset(cfg, k, n)
        if cfg.check == "brute-force" and k * (n - k) > 4:
            raise UsageError("brute-force chain listing is limited to k(n-k) <= 4")
        tasks = [lambda: _kn_check(cfg.check, k, n, posets, lam)]

    entries = []
    for task in tasks:
        start = time.perf_counter()
        results = task()
        elapsed = (time.perf_counter() - start) * 1000
        for res in results:
            entry = res.to_json()
            if cfg.timings:
                entry["runtime_ms"] = round(elapsed / len(results), 3)
            entries.append(entry)
            log.info("%s %s", "PASS" if res.passed else "FAIL", entry)

    all_pass = all(e["pass"] for e in entries)
    if cfg.fmt == "json":
        text = json.dumps({"pass": all_pass, "checks": entries}, indent=2) + "\n"
    else:
        lines = []
        for e in entries:
            params = " ".join(
                f"{key}={','.join(map(str, v)) if isinstance(v, list) else v}"
                for key, v in e.items()
                if key in ("k", "n", "lambda", "max_n")
            )
            line = f"{'PASS' if e['pass'] else 'FAIL'}  {e['check']:<30} {params}"
            if "runtime_ms" in e:
                line += f"  ({e['runtime_ms']} ms)"
            if "counterexample" in e:
                line += f"\n      counterexample: {e['counterexample']}"
            lines.append(line)
        lines.append(f"{sum(e['pass'] for e in entries)}/{len(entries)} checks passed")
        text = "\n".join(lines) + "\n"
    return text, 0 if all_pass else 1


COMMANDS = {
    "enumerate": cmd_enumerate,
    "hasse": cmd_hasse,
    "chain-sum": cmd_chain_sum,
    "cardinalities": cmd_cardinalities,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = _config(args)
    if getattr(args, "jobs", 1) < 1:
        print("circbruhat: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        text, status = COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"circbruhat: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
