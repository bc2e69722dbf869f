"""Command-line front end.

Every command except ``compile`` writes one JSON report object to stdout
and a short human-readable summary to stderr.

Exit codes: 0 ok / nothing found, 10 witness found, 1 bad input,
2 budget exceeded, 3 unsupported backend.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import BudgetExceeded, KaplanskyError, Unsupported
from .field import is_prime, make_field, parse_field_spec
from .group import FiniteGroup, parse_group_spec, parse_support
from .groupring import (GroupRingMatrix, dykema_juschenko_crosscheck, parse_matrix,
                        probe_stable_finiteness, search_idempotents, search_units,
                        search_zero_divisors, verify_witness)
from .lca import (GeneralCA, LinearCA, check_equivariance, check_injective_implies_surjective,
                  global_matrix, is_injective, is_surjective, lca_from_matrix, parse_rule)
from . import linalg
from .sentence import (SentenceStats, build_property, emit_smtlib, evaluate, parse_sentence,
                       pretty_print)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_UNSUPPORTED = 3
EXIT_WITNESS = 10

BUDGET_ENV = "KAPLANSKY_BUDGET"
DEFAULT_BUDGET = 1 << 22

SCAN_FOOTNOTE = "Truth values over the listed finite fields only; transfer to other fields is not tested."


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _read(source: str) -> str:
    return sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")


def _emit(report: dict, summary: str) -> None:
    json.dump(report, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _base_report(args: argparse.Namespace, params: dict) -> dict:
    return {
        "tool": "kaplansky",
        "version": __version__,
        "command": args.command,
        "argv": list(args._argv),
        "parameters": params,
    }


# commands

def cmd_probe(args) -> int:
    group = parse_group_spec(args.group)
    fld = parse_field_spec(args.field)
    support = parse_support(group, args.support)
    report = _base_report(args, {"group": group.name, "group_spec": args.group, "field": fld.name, "d": args.d,
                                 "support": support.labels(), "budget": args.budget, "jobs": args.jobs})
    start = time.perf_counter()
    verdict = probe_stable_finiteness(group, fld, args.d, support, args.budget, args.jobs)
    report["result"] = verdict.to_dict()
    report["timing_s"] = round(time.perf_counter() - start, 6)
    report["budget_used"] = verdict.search_space
    _emit(report, f"probe {group.name} over {fld.name}, d={args.d}: {verdict.outcome} "
                  f"({verdict.examined} candidates, {verdict.right_invertible} right-invertible)")
    return EXIT_WITNESS if verdict.found else EXIT_OK


def _build_sentence(group: FiniteGroup, prop: str, support_text: str):
    support = parse_support(group, support_text)
    if prop.startswith("stable:"):
        return build_property(group, "stable", support, int(prop.split(":", 1)[1]))
    if prop == "stable":
        return build_property(group, "stable", support, 1)
    return build_property(group, prop, support)


def cmd_compile(args) -> int:
    group = parse_group_spec(args.group)
    sentence = _build_sentence(group, args.property, args.support)
    backend = args.backend
    if backend == "text":
        out = pretty_print(sentence) + "\n"
    elif backend == "stats":
        out = SentenceStats.of(sentence).to_text()
    elif backend.startswith("smtlib"):
        spec = backend.split(":", 1)[1] if ":" in backend else ""
        if spec.startswith("GF("):
            fld = parse_field_spec(spec)
            if fld.k != 1:
                raise Unsupported(f"SMT-LIB backend does not support {fld.name}; use the native evaluator")
            p = fld.p
        else:
            try:
                p = int(spec)
            except ValueError:
                raise Unsupported(f"bad smtlib backend {backend!r}; use smtlib:<prime>") from None
        out = emit_smtlib(sentence, p)
    else:
        raise Unsupported(f"unknown backend {backend!r}")
    sys.stdout.write(out)
    return EXIT_OK


def _int_range(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def cmd_scan_fields(args) -> int:
    if args.sentence:
        sentence = parse_sentence(_read(args.sentence))
        source = {"sentence_file": args.sentence}
    else:
        if not args.group or not args.property:
            raise KaplanskyError("scan-fields needs --sentence or both --group and --property")
        group = parse_group_spec(args.group)
        sentence = _build_sentence(group, args.property, args.support)
        source = {"group": group.name, "property": args.property, "support": args.support}
    primes = [p for p in _int_range(args.primes) if is_prime(p)]
    degrees = _int_range(args.degrees)
    rows = []
    for p in primes:
        for k in degrees:
            row = {"p": p, "k": k, "field": f"GF({p})" if k == 1 else f"GF({p}^{k})"}
            start = time.perf_counter()
            try:
                fld = make_field(p, k, budget=max(args.budget, 2))
                row["truth"] = evaluate(sentence, fld, args.budget, args.jobs)
                row["status"] = "ok"
            except BudgetExceeded as exc:
                row["truth"] = None
                row["status"] = "skipped"
                row["required_budget"] = exc.required
            row["elapsed_s"] = round(time.perf_counter() - start, 6)
            rows.append(row)
    report = _base_report(args, {**source, "primes": primes, "degrees": degrees, "budget": args.budget})
    report["result"] = {"rows": rows, "footnote": SCAN_FOOTNOTE}
    lines = [f"{r['field']:>10}  {r['status'] if r['truth'] is None else r['truth']}" for r in rows]
    _emit(report, "\n".join(lines + [SCAN_FOOTNOTE]))
    return EXIT_OK


def cmd_lca(args) -> int:
    group = parse_group_spec(args.group)
    params: dict = {"group": group.name}
    tau: LinearCA | GeneralCA
    if args.matrix:
        if not args.field:
            raise KaplanskyError("--matrix needs --field")
        fld = parse_field_spec(args.field)
        m = parse_matrix(_read(args.matrix), group, fld)
        tau = lca_from_matrix(m)
        params.update(field=fld.name, d=m.d, matrix=m.to_quadruples())
    elif args.rule:
        tau = parse_rule(_read(args.rule), group)
        params.update(alphabet=list(tau.alphabet), memory=tau.memory.labels())
    else:
        raise KaplanskyError("lca needs --matrix or --rule")
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    result: dict = {"kind": "linear" if isinstance(tau, LinearCA) else "general"}
    start = time.perf_counter()
    for check in checks:
        if check == "injective":
            result["injective"] = is_injective(tau, args.budget)
        elif check == "surjective":
            result["surjective"] = is_surjective(tau, args.budget)
        elif check == "equivariance":
            result["equivariant"] = check_equivariance(tau, args.samples)
        elif check == "consistency":
            result["consistency"] = check_injective_implies_surjective(tau, args.budget).status
        else:
            raise KaplanskyError(f"unknown check {check!r}")
    if isinstance(tau, LinearCA):
        result["global_rank"] = linalg.rank(tau.field, global_matrix(tau))
        result["global_size"] = tau.d * group.order
    report = _base_report(args, params)
    report["result"] = result
    report["timing_s"] = round(time.perf_counter() - start, 6)
    summary = ", ".join(f"{k}={v}" for k, v in result.items())
    _emit(report, f"lca over {group.name}: {summary}")
    return EXIT_OK


def cmd_search(args) -> int:
    group = parse_group_spec(args.group)
    fld = parse_field_spec(args.field)
    support = parse_support(group, args.support)
    start = time.perf_counter()
    if args.kind == "units":
        found = search_units(group, fld, support, args.budget)
        items = [{"element": w.element.to_pairs(), "inverse": w.inverse.to_pairs(), "trivial": w.trivial}
                 for w in found]
        nontrivial = sum(not w.trivial for w in found)
    elif args.kind == "zero-divisors":
        found = search_zero_divisors(group, fld, support, args.budget)
        items = [{"left": w.left.to_pairs(), "right": w.right.to_pairs()} for w in found]
        nontrivial = len(found)
    else:
        found = search_idempotents(group, fld, support, args.budget)
        items = [{"element": w.element.to_pairs(), "trivial": w.trivial} for w in found]
        nontrivial = sum(not w.trivial for w in found)
    report = _base_report(args, {"group": group.name, "field": fld.name, "kind": args.kind,
                                 "support": support.labels(), "budget": args.budget})
    report["result"] = {"count": len(items), "nontrivial": nontrivial, "witnesses": items}
    report["timing_s"] = round(time.perf_counter() - start, 6)
    _emit(report, f"{args.kind} in {fld.name}[{group.name}]: {len(items)} found, {nontrivial} non-trivial")
    return EXIT_WITNESS if nontrivial else EXIT_OK


def cmd_crosscheck(args) -> int:
    group = parse_group_spec(args.group)
    other = parse_group_spec(args.other)
    fld = parse_field_spec(args.field)
    rep = dykema_juschenko_crosscheck(group, other, fld, args.budget, args.jobs)
    report = _base_report(args, {"group": group.name, "other": other.name, "field": fld.name,
                                 "budget": args.budget})
    report["result"] = rep.to_dict()
    _emit(report, f"crosscheck {group.name} x {other.name} over {fld.name}: "
                  f"direct={rep.direct.outcome}, consistent={rep.consistent}")
    found = rep.direct.found or any(v.found for v in rep.stable.values())
    return EXIT_WITNESS if found else EXIT_OK


def reverify_probe_report(report: dict) -> bool:
    """Re-check a probe report's witness (if any) by direct multiplication."""
    result = report["result"]
    if "witness" not in result:
        return result["outcome"] == "none-in-scope"
    params = report["parameters"]
    group = parse_group_spec(params["group_spec"])
    fld = parse_field_spec(params["field"])
    w = result["witness"]
    a = GroupRingMatrix.from_quadruples(group, fld, w["d"], w["A"])
    b = GroupRingMatrix.from_quadruples(group, fld, w["d"], w["B"])
    return verify_witness(a, b)


# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kaplansky", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field=True, support=True, jobs=True):
        p.add_argument("--group", required=True, help="group spec, e.g. cyclic:3")
        if field:
            p.add_argument("--field", required=True, help="GF(p) or GF(p^k)")
        if support:
            p.add_argument("--support", default="all", help="'all' or comma-separated labels")
        p.add_argument("--budget", type=int, default=default_budget())
        if jobs:
            p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("probe", help="search for AB = 1, BA != 1 with supports in S")
    common(p)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("compile", help="compile a property sentence to a backend")
    p.add_argument("--group", required=True)
    p.add_argument("--property", required=True, help="stable:d, unit, zero-divisor or idempotent")
    p.add_argument("--support", default="all")
    p.add_argument("--backend", default="text", help="text, stats or smtlib:p")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("scan-fields", help="evaluate one sentence over many finite fields")
    p.add_argument("--sentence", help="file with a printed sentence ('-' for stdin)")
    p.add_argument("--group")
    p.add_argument("--property")
    p.add_argument("--support", default="all")
    p.add_argument("--primes", default="2,3,5", help="e.g. '2,3,5' or '2-7'; non-primes are dropped")
    p.add_argument("--degrees", default="1", help="e.g. '1' or '1-2'")
    p.add_argument("--budget", type=int, default=default_budget())
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan_fields)

    p = sub.add_parser("lca", help="decide properties of a cellular automaton over a finite group")
    p.add_argument("--group", required=True)
    p.add_argument("--field")
    p.add_argument("--matrix", help="matrix source file ('-' for stdin)")
    p.add_argument("--rule", help="local rule table file ('-' for stdin)")
    p.add_argument("--checks", default="injective,surjective,equivariance,consistency")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--budget", type=int, default=1 << 20)
    p.set_defaults(func=cmd_lca)

    p = sub.add_parser("search", help="units, zero-divisors or idempotents supported in S")
    common(p, jobs=False)
    p.add_argument("--kind", required=True, choices=["units", "zero-divisors", "idempotents"])
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("crosscheck", help="direct finiteness of K[GxH] vs stable finiteness of K[G]")
    common(p, support=False)
    p.add_argument("--other", required=True, help="spec of the finite group H")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc} (required {exc.required})", file=sys.stderr)
        json.dump({"tool": "kaplansky", "version": __version__, "command": args.command,
                   "argv": argv, "error": "budget-exceeded", "required_budget": exc.required,
                   "budget": exc.budget}, sys.stdout)
        sys.stdout.write("\n")
        return EXIT_BUDGET
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (KaplanskyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
