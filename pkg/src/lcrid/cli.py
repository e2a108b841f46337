"""Command-line front end: ``lcrid <subcommand> [network] [options]``.

Exit codes: 0 success, 1 analysis refused, 2 usage or parse error.
JSON output is deterministic for a fixed argv and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from .constitutive import Param, build_consteq, check_invariants, check_lc_invariants
from .identify import (
    GHProblem,
    NotApplicable,
    ShapeGapError,
    build_gh,
    count_criterion,
    gh_determinant,
    is_alternating_good,
    is_locally_identifiable,
)
from .network import (
    ElementKind,
    LimitExceeded,
    Network,
    NetworkError,
    Series,
    Leaf,
    dual_network,
    enumerate_networks,
    format_network,
    kinds_used,
    leaves,
    parse_network,
)
from .relations import StratumTooLarge, find_relations
from .typesys import (
    FORBIDDEN_TYPES,
    LC_TABLES,
    NotLCError,
    TypeInconsistency,
    combine_parallel,
    combine_series,
    lc_class,
    type_closure,
    type_of,
)

DEFAULT_SEED = 42


class Refused(Exception):
    """The requested analysis does not apply to the input."""


def default_seed() -> int:
    raw = os.environ.get("LCRID_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


# subcommand handlers return (json_payload, text)


def _consteq(args):
    n = parse_network(args.network)
    e = build_consteq(n, Param(args.param))
    payload = {"network": format_network(n), **e.to_json()}
    return payload, str(e)


def _ident(args):
    n = parse_network(args.network)
    v = is_locally_identifiable(n, seed=args.seed)
    word = "identifiable" if v.locally_identifiable else "unidentifiable"
    text = (
        f"{format_network(n)}: {word}, rank {v.generic_rank} of {v.n_params} parameters, "
        f"{v.n_nonmonic} non-monic coefficients"
    )
    return v.to_json(n, args.seed), text


def _count_ident(args):
    n = parse_network(args.network)
    try:
        v = count_criterion(n)
    except NotApplicable as exc:
        raise Refused(str(exc)) from exc
    word = "identifiable" if v.locally_identifiable else "unidentifiable"
    text = f"{format_network(n)}: {word}, {v.n_nonmonic} non-monic coefficients for {v.n_params} parameters"
    return v.to_json(n), text


def _type(args):
    n = parse_network(args.network)
    t = type_of(build_consteq(n))
    return {"network": format_network(n), "type": list(t)}, str(t)


def _lc_class(args):
    n = parse_network(args.network)
    try:
        cls = lc_class(build_consteq(n), n)
    except NotLCError as exc:
        raise Refused(str(exc)) from exc
    return {"network": format_network(n), "class": cls.name, "type": list(cls.quad)}, cls.name


def _dual(args):
    n = parse_network(args.network)
    d = format_network(dual_network(n))
    return {"network": format_network(n), "dual": d}, d


def _closure(args):
    closed = type_closure()
    rows = [{"type": list(t), "forbidden": False} for t in sorted(closed)]
    rows += [{"type": list(t), "forbidden": True} for t in sorted(FORBIDDEN_TYPES)]
    lines = [f"{len(closed)} types:"] + [f"  ({','.join(map(str, t))})" for t in sorted(closed)]
    lines += [f"{len(FORBIDDEN_TYPES)} forbidden:"] + [f"  ({','.join(map(str, t))})" for t in sorted(FORBIDDEN_TYPES)]
    return rows, "\n".join(lines)


def _lc_tables(args):
    rows = [row.to_json() for op in LC_TABLES for row in LC_TABLES[op]]
    lines = []
    for r in rows:
        verdict = "identifiable" if r["identifiable"] else "unidentifiable"
        lines.append(
            f"{r['op']:8} {r['pair'][0]}{r['pair'][1]}  V[{r['v_shape'][0]}, {r['v_shape'][1]}]  "
            f"I[{r['i_shape'][0]}, {r['i_shape'][1]}]  {r['nonmonic']:8} {verdict:15} -> {r['result']}"
        )
    return rows, "\n".join(lines)


def _parse_shapes(text: str) -> GHProblem:
    try:
        nums = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad shape list {text!r}") from exc
    if len(nums) != 8:
        raise argparse.ArgumentTypeError("--shapes needs eight integers m1,n1,m2,n2,m3,n3,m4,n4")
    try:
        return GHProblem.from_shapes([nums[k : k + 2] for k in range(0, 8, 2)])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _gh(args):
    problem = args.shapes
    try:
        good = is_alternating_good(problem)
    except ShapeGapError as exc:
        raise Refused(str(exc)) from exc
    rows, cols = problem.dimensions()
    payload = {
        "shapes": [list(s) for s in problem.shapes],
        "rows": rows,
        "cols": cols,
        "alternating_good": good,
        "matrix": [[str(x) for x in row] for row in build_gh(problem)],
    }
    if good:
        rng = random.Random(args.seed)
        dets = [gh_determinant(problem, rng) for _ in range(args.trials)]
        payload["trials"] = args.trials
        payload["nonzero_determinants"] = sum(1 for d in dets if d)
        payload["seed"] = args.seed
    text = [f"(G H) is {rows}x{cols}, alternating good: {good}"]
    text += ["  [" + ", ".join(row) + "]" for row in payload["matrix"]]
    if good:
        text.append(f"nonzero determinant in {payload['nonzero_determinants']}/{args.trials} draws")
    return payload, "\n".join(text)


def _relations(args):
    n = parse_network(args.network)
    try:
        rels = find_relations(n, args.cdeg, args.ddeg, args.wdeg, seed=args.seed)
    except StratumTooLarge as exc:
        raise Refused(str(exc)) from exc
    payload = [r.to_json() for r in rels]
    if not rels:
        return payload, "no relations in this stratum"
    return payload, "\n".join(f"{r}  (exact: {r.verified_exact})" for r in rels)


def _root_prediction(n: Network):
    if isinstance(n, Leaf):
        return None
    combine = combine_series if isinstance(n, Series) else combine_parallel
    t = type_of(build_consteq(n.children[0]))
    for ch in n.children[1:]:
        t = combine(t, type_of(build_consteq(ch)))
    return t


def _check_invariants(n: Network) -> list[str]:
    e = build_consteq(n)
    k = len(leaves(n))
    problems = check_invariants(e, k)
    if kinds_used(n) <= {ElementKind.INDUCTOR, ElementKind.CAPACITOR}:
        problems += check_lc_invariants(e, k)
    try:
        t = type_of(e)
    except TypeInconsistency as exc:
        return problems + [str(exc)]
    predicted = _root_prediction(n)
    if predicted is not None and predicted != t:
        problems.append(f"type {t} differs from predicted {predicted}")
    return problems


def _enumerate(args):
    total = checked = skipped = 0
    failures = []
    for n in enumerate_networks(args.kinds, args.max_leaves):
        total += 1
        if args.check is None:
            continue
        if args.check == "count-vs-rank":
            if len(kinds_used(n)) > 2:
                skipped += 1
                continue
            a = count_criterion(n).locally_identifiable
            b = is_locally_identifiable(n, seed=args.seed).locally_identifiable
            checked += 1
            if a != b:
                failures.append({"network": format_network(n), "count": a, "rank": b})
        else:
            checked += 1
            problems = _check_invariants(n)
            if problems:
                failures.append({"network": format_network(n), "problems": problems})
    failures.sort(key=lambda f: f["network"])
    payload = {"kinds": args.kinds, "max_leaves": args.max_leaves, "networks": total}
    if args.check is not None:
        payload.update(check=args.check, checked=checked, skipped=skipped, failures=failures)
    text = f"{total} networks"
    if args.check is not None:
        text += f", {checked} checked ({args.check}), {skipped} skipped, {len(failures)} failures"
        text += "".join(f"\n  {f['network']}" for f in failures)
    return payload, text


def _kinds(text: str) -> str:
    letters = text.upper()
    if not letters or any(ch not in "RLC" for ch in letters):
        raise argparse.ArgumentTypeError(f"kinds must be letters from R, L, C, got {text!r}")
    return "".join(ch for ch in "RLC" if ch in letters)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default: $LCRID_SEED, else 42)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="PATH", help="write the result to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="lcrid", description="Identifiability of series-parallel LCR networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, network=True, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        if network:
            p.add_argument("network", help='network formula, e.g. "(R1 | C1) & L1"')
        p.set_defaults(handler=handler)
        return p

    p = add("consteq", _consteq, help="constitutive equation")
    p.add_argument("--param", choices=("affine", "projective"), default="affine")
    add("ident", _ident, help="local identifiability by the Jacobian rank test")
    add("count-ident", _count_ident, help="identifiability by coefficient counting (two kinds at most)")
    add("type", _type, help="type quadruple")
    add("lc-class", _lc_class, help="class A-D of an LC network")
    add("dual", _dual, help="dual network")
    add("closure", _closure, network=False, help="the closure of the base types")
    add("lc-tables", _lc_tables, network=False, help="LC series and parallel combination tables")
    p = add("gh", _gh, network=False, help="reduced (G H) matrix of a shape quadruple")
    p.add_argument("--shapes", type=_parse_shapes, required=True, metavar="m1,n1,m2,n2,m3,n3,m4,n4")
    p.add_argument("--trials", type=int, default=100)
    p = add("relations", _relations, help="coefficient relations in one stratum")
    p.add_argument("--cdeg", type=int, required=True)
    p.add_argument("--ddeg", type=int, required=True)
    p.add_argument("--wdeg", type=int, required=True)
    p = add("enumerate", _enumerate, network=False, help="enumerate networks and run checks")
    p.add_argument("--kinds", type=_kinds, default="RLC")
    p.add_argument("--max-leaves", type=int, required=True)
    p.add_argument("--check", choices=("count-vs-rank", "invariants"))
    return parser


def _emit(payload, text: str, args) -> None:
    if args.format == "json":
        out = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        out = text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is None:
        args.seed = default_seed()
    try:
        payload, text = args.handler(args)
    except NetworkError as exc:
        if isinstance(exc, LimitExceeded):
            print(f"lcrid: refused: {exc}", file=sys.stderr)
            return 1
        print(f"lcrid: {exc}", file=sys.stderr)
        return 2
    except Refused as exc:
        print(f"lcrid: refused: {exc}", file=sys.stderr)
        return 1
    _emit(payload, text, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
