"""Command-line entry point.

Exit codes: 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certify import (
    PreconditionError,
    certify,
    certify_at,
    proof_identity_sweep,
    special_branch_checks,
    unitary_table,
)
from .field import FieldError, FieldSpec, parse_field
from .generators import STRATEGIES, BuildError, Family, build, check_conditions, field_for, search_parameter
from .groupcalc import DEFAULT_BUDGET, Exceeded, bfs_enumerate

FAMILIES = [f.value for f in Family]


class UsageError(Exception):
    pass


def _field(args) -> FieldSpec:
    fam = Family(args.family)
    if args.field and args.q:
        raise UsageError("give either --q or --field, not both")
    if args.field:
        return parse_field(args.field)
    if args.q:
        return field_for(fam, args.q)
    if fam.special:
        return field_for(fam, 0)
    raise UsageError(f"{fam.value} needs --q or --field")


def _param(F: FieldSpec, text: str | None):
    if text is None:
        return None
    return F.parse(text)


def _emit(args, payload: dict, lines: list[str]):
    text = json.dumps(payload, indent=2) if args.json else "\n".join(lines)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_build(args) -> int:
    fam = Family(args.family)
    if fam.special:
        pair = build(fam)
    else:
        F = _field(args)
        if args.a is None:
            raise UsageError(f"{fam.value} needs --a")
        pair = build(fam, F, _param(F, args.a))
    payload = {"family": fam.value, "field": pair.field.to_string(),
               "a": str(pair.a) if pair.a is not None else None,
               "b": str(pair.b) if pair.b is not None else None,
               "x": pair.x.to_json(), "y": pair.y.to_json()}
    lines = [f"family {fam.value} over {pair.field!r}", "x =", repr(pair.x), "y =", repr(pair.y)]
    _emit(args, payload, lines)
    return 0


def cmd_conditions(args) -> int:
    fam = Family(args.family)
    F = _field(args)
    if args.a is None:
        raise UsageError("conditions needs --a")
    rep = check_conditions(fam, F, _param(F, args.a))
    lines = [f"CHECK {c.name}: {'PASS' if c.passed else 'FAIL'}{'' if c.required else ' (informational)'}"
             for c in rep.clauses]
    _emit(args, rep.to_json(), lines)
    return 0 if rep.ok else 1


def cmd_search(args) -> int:
    fam = Family(args.family)
    if fam.special:
        raise UsageError(f"{fam.value} has no free parameter")
    F = _field(args)
    a = search_parameter(fam, F, args.strategy)
    payload = {"family": fam.value, "field": F.to_string(), "strategy": args.strategy,
               "a": str(a) if a is not None else None, "found": a is not None}
    lines = [f"a = {a}" if a is not None else "NotFound"]
    _emit(args, payload, lines)
    return 0 if a is not None else 1


def cmd_certify(args) -> int:
    fam = Family(args.family)
    kw = {"seed": args.seed, "budget": args.bsgs_budget, "keep_going": args.keep_going,
          "use_bsgs": not args.no_bsgs}
    if fam.special:
        cert = certify(fam, **kw)
    elif args.a is None:
        if args.field:
            raise UsageError("without --a give --q so a parameter can be searched")
        if not args.q:
            raise UsageError(f"{fam.value} needs --q or --field")
        cert = certify_at(fam, args.q, strategy=args.strategy, **kw)
    else:
        F = _field(args)
        cert = certify(fam, F, _param(F, args.a), **kw)
    _emit(args, cert.to_json(), cert.text_lines())
    return 0 if cert.passed else 1


def cmd_sweep(args) -> int:
    rep = proof_identity_sweep(args.qmax)
    extra = special_branch_checks()
    lines = [f"CHECK {i.identity} q={i.q}: {'PASS' if i.ok else 'FAIL'} cases={i.cases}"
             + (f" first_failure={i.failures[0]}" if i.failures else "") for i in rep.items]
    lines += [f"CHECK {c.name}: {c.verdict.upper()} {c.details.get('char', '')}" for c in extra]
    ok = rep.ok and all(c.verdict == "pass" for c in extra)
    payload = rep.to_json()
    payload["special_branches"] = [c.to_json() for c in extra]
    payload["ok"] = ok
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_table(args) -> int:
    rows = unitary_table()
    lines = [f"q={r.q:<3} m_a={r.poly:<22} {'PASS' if r.ok else 'FAIL'} {r.detail}" for r in rows]
    payload = {"rows": [vars(r) for r in rows], "ok": all(r.ok for r in rows)}
    _emit(args, payload, lines)
    return 0 if payload["ok"] else 1


def cmd_enumerate(args) -> int:
    fam = Family(args.family)
    if fam.special:
        pair = build(fam)
    else:
        F = _field(args)
        if args.a is None:
            raise UsageError(f"{fam.value} needs --a")
        pair = build(fam, F, _param(F, args.a))
    res = bfs_enumerate([pair.x, pair.y], args.cap)
    found = not isinstance(res, Exceeded)
    payload = {"family": fam.value, "order": str(res) if found else None, "cap": args.cap}
    _emit(args, payload, [f"order {res}" if found else f"Exceeded({args.cap})"])
    return 0 if found else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gen23", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_family=True):
        if need_family:
            p.add_argument("--family", required=True, choices=FAMILIES)
            p.add_argument("--q", type=int, help="base field size (the matrix field is F_(q^2) for u7)")
            p.add_argument("--field", help='explicit matrix field "p^n/c0,c1,...,1"')
            p.add_argument("--a", help='parameter as coefficients "c0,c1,..."')
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="machine-readable output")
        fmt.add_argument("--text", action="store_true", help="human-readable output (default)")
        p.add_argument("--output", help="write output to this path")

    p = sub.add_parser("build", help="print the generator matrices")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("conditions", help="evaluate the parameter conditions")
    common(p)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("search", help="find a parameter satisfying the conditions")
    common(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="exhaustive")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("certify", help="run the verification pipeline")
    common(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bsgs-budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--no-bsgs", action="store_true", help="skip the group order computation")
    p.add_argument("--keep-going", action="store_true", help="run every check after a failure")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", help="exhaustive check of the closed-form identities")
    common(p, need_family=False)
    p.add_argument("--qmax", type=int, default=13)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table", help="reproduce the unitary minimum-polynomial table")
    common(p, need_family=False)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="count <x, y> by breadth-first search")
    common(p)
    p.add_argument("--cap", type=int, default=2 * 10**6)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, PreconditionError, BuildError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
