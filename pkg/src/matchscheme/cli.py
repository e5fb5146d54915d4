"""Command-line front end.

Exit codes: 0 completed, 1 negative verdict (no / UNSAT / violations),
2 usage or input-format error, 3 aborted at a limit, 4 internal
inconsistency (the two factorisation checkers disagree).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions
from .factorisation import (
    check_by_definition,
    check_by_design,
    derive,
    expected_size,
    feasibility_screen,
    InfeasibleParameters,
    screen_table,
)
from .matchings import MAX_N, FormatError, MatchingSet, read_matching_set, space
from .partitions import format_partition, odd_double_factorial, parse_partition
from .scheme import MAX_TABLE_N, dual_distribution, eigenvalue_matrices, sphere_sizes, zonal_table
from .search import ABORTED, SAT, build_system, seed_from_derivation, solve

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_ABORTED, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(x: Fraction, decimal: bool) -> str:
    x = Fraction(x)
    if decimal:
        return f"{float(x):.6g}"
    return str(x)


def _lam(text: str) -> tuple[int, ...]:
    try:
        lam = parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not lam:
        raise UsageError("empty partition")
    return lam


def _vertex_set(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise UsageError(f"cannot parse vertex set {text!r}") from exc


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(int(lo), int(lo) + 1)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}; expected a..b") from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _read(path: str) -> MatchingSet:
    try:
        return read_matching_set(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _table_text(row_labels, col_labels, cells) -> str:
    head = [""] + [format_partition(c) for c in col_labels]
    body = [[format_partition(r)] + row for r, row in zip(row_labels, cells)]
    widths = [max(len(line[i]) for line in [head] + body) for i in range(len(head))]
    return "\n".join("  ".join(s.rjust(w) for s, w in zip(line, widths)) for line in [head] + body)


# --- subcommands ------------------------------------------------------------


def cmd_enumerate(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_N:
        raise UsageError(f"--n must lie in 1..{MAX_N}")
    print(f"n={n}: {odd_double_factorial(n)} perfect matchings of K_{2 * n}")
    for rho, k in sphere_sizes(n).items():
        print(f"  sphere {format_partition(rho)}: {k}")
    if args.list:
        for m in space(n).matchings:
            print(m)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_TABLE_N:
        raise UsageError(f"--n must lie in 1..{MAX_TABLE_N}")
    table = zonal_table(n, threads=args.threads)
    P, Q = eigenvalue_matrices(table)
    parts = table.partitions
    r = len(parts)
    omega = [[table.omega[i][j] for j in range(r)] for i in range(r)]
    if args.json:
        as_str = lambda M: [[str(Fraction(x)) for x in row] for row in M]
        print(json.dumps({
            "n": n,
            "partitions": [list(p) for p in parts],
            "valency": list(table.valency),
            "degree": list(table.degree),
            "omega": as_str(omega),
            "P": as_str(P.tolist()),
            "Q": as_str(Q.tolist()),
        }))
        return EXIT_OK
    d = args.decimal
    fmt = lambda M: [[_fmt(x, d) for x in row] for row in M]
    print("omega (rows mu, columns rho)")
    print(_table_text(parts, parts, fmt(omega)))
    print("\nP (rows mu, columns rho)")
    print(_table_text(parts, parts, fmt(P.tolist())))
    print("\nQ (rows rho, columns mu)")
    print(_table_text(parts, parts, fmt(Q.tolist())))
    return EXIT_OK


def cmd_check(args) -> int:
    D = _read(args.file)
    lam = _lam(args.lam)
    if sum(lam) != D.n:
        raise UsageError(f"{format_partition(lam)} is not a partition of n={D.n}")
    if len(D) == 0:
        raise UsageError("empty matching set")
    verdict_def = verdict_des = None
    if args.method in ("definition", "both"):
        report = check_by_definition(D, lam)
        verdict_def = report.is_factorisation
        print(f"definition: {report}")
    if args.method in ("design", "both"):
        if D.n > MAX_TABLE_N:
            raise UsageError(f"design check needs n <= {MAX_TABLE_N}")
        verdict_des = check_by_design(D, lam, zonal_table(D.n, threads=args.threads))
        print(f"design: {'yes' if verdict_des else 'no'}")
    if args.method == "both" and verdict_def != verdict_des:
        dump = {"lambda": list(lam), "definition": verdict_def, "design": verdict_des,
                "dual": {format_partition(k): str(v) for k, v in dual_distribution(D).items()},
                "set": json.loads(D.to_json())}
        print("INTERNAL ERROR: checkers disagree; please report with this dump:", file=sys.stderr)
        print(json.dumps(dump), file=sys.stderr)
        return EXIT_INTERNAL
    verdict = verdict_def if verdict_def is not None else verdict_des
    return EXIT_OK if verdict else EXIT_NO


def cmd_screen(args) -> int:
    lam = _lam(args.lam)
    violations = feasibility_screen(lam, args.index, strict=args.strict)
    try:
        size = expected_size(lam, args.index)
        print(f"{format_partition(lam)} index {args.index}: |D| would be {size}")
    except InfeasibleParameters as exc:
        print(f"{format_partition(lam)} index {args.index}: {exc}")
    if not violations:
        print("not ruled out")
        return EXIT_OK
    for v in violations:
        print(f"ruled out [{v.rule}]: {v.detail}")
    return EXIT_NO


def cmd_table(args) -> int:
    result = screen_table(args.pattern, _range(args.range), args.index, strict=args.strict)
    feasible = [n for n, v in result.items() if not v]
    print(f"pattern ({args.pattern}), index {args.index}")
    print("feasible n: " + (", ".join(map(str, feasible)) if feasible else "none"))
    if args.verbose:
        for n, vs in result.items():
            print(f"  n={n}: " + ("ok" if not vs else "; ".join(f"[{v.rule}] {v.detail}" for v in vs)))
    return EXIT_OK


def cmd_construct(args) -> int:
    fam = args.family
    if fam in ("roundrobin", "full") and args.n is None:
        raise UsageError(f"--family {fam} needs --n")
    if fam == "hyperoval" and args.a is None:
        raise UsageError("--family hyperoval needs --a")
    try:
        if fam == "roundrobin":
            D = constructions.round_robin(args.n)
        elif fam == "full":
            D = constructions.full_set(args.n)
        elif fam == "hyperoval":
            D = constructions.hyperoval_factorisation(args.a)
        else:
            D = constructions.agl11_factorisation()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(D.to_text().rstrip("\n") if args.format == "text" else D.to_json(), args.output)
    return EXIT_OK


def cmd_derive(args) -> int:
    D = _read(args.file)
    try:
        out = derive(D, _vertex_set(args.at))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if out is None or len(out) == 0:
        print("derived set is empty", file=sys.stderr)
        return EXIT_NO
    _emit(out.to_json(), args.output)
    return EXIT_OK


def cmd_dual(args) -> int:
    D = _read(args.file)
    if D.n > MAX_TABLE_N:
        raise UsageError(f"dual distribution needs n <= {MAX_TABLE_N}")
    if len(D) == 0:
        raise UsageError("empty matching set")
    dual = dual_distribution(D, zonal_table(D.n, threads=args.threads))
    if args.json:
        print(json.dumps({format_partition(k): str(v) for k, v in dual.items()}))
    else:
        for mu, v in dual.items():
            print(f"{format_partition(mu)}: {_fmt(v, args.decimal)}")
    return EXIT_OK


def cmd_search(args) -> int:
    lam = _lam(args.lam)
    if sum(lam) != args.n:
        raise UsageError(f"{format_partition(lam)} is not a partition of {args.n}")
    if (args.seed is None) != (args.at is None):
        raise UsageError("--seed and --at must be given together")
    if args.n >= 6:
        if not args.stretch:
            raise UsageError("n >= 6 searches need --stretch")
        if args.seed is None:
            raise UsageError("--stretch needs derivation seeding (--seed FILE --at S)")
    try:
        system = build_system(args.n, lam, args.index)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    pins = None
    if args.seed is not None:
        try:
            pins = seed_from_derivation(system, _read(args.seed), _vertex_set(args.at))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    outcome = solve(
        system,
        force_base=args.force_base,
        pins=pins,
        node_limit=args.node_limit,
        enumerate_all=args.enumerate_all,
    )
    print(json.dumps(outcome.to_dict()))
    if outcome.status == ABORTED:
        return EXIT_ABORTED
    return EXIT_OK if outcome.status == SAT else EXIT_NO


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="matchscheme", description="Perfect matching scheme and lambda-factorisations."
    )
    p.add_argument("--threads", type=int, default=1, help="worker threads for table construction")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", help="count (and list) perfect matchings")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("spectrum", help="zonal spherical functions, P and Q")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.add_argument("--decimal", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("check", help="is a matching set a lambda-factorisation?")
    s.add_argument("--file", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--method", choices=("definition", "design", "both"), default="definition")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("screen", help="necessary conditions for (lambda, index)")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--index", type=int, default=1)
    s.add_argument("--strict", action="store_true", help="also convert to every dominating shape")
    s.set_defaults(func=cmd_screen)

    s = sub.add_parser("table", help="screen a shape pattern such as n-4,3,1 over a range of n")
    s.add_argument("--pattern", required=True)
    s.add_argument("--range", required=True, help="a..b")
    s.add_argument("--index", type=int, default=1)
    s.add_argument("--strict", action="store_true")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("construct", help="emit a known family as a matching set")
    s.add_argument("--family", choices=("roundrobin", "full", "hyperoval", "agl11"), required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.add_argument("--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("derive", help="derived set at an even vertex subset")
    s.add_argument("--file", required=True)
    s.add_argument("--at", required=True, help="comma-separated vertices")
    s.add_argument("--output")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("dual", help="dual distribution of a matching set")
    s.add_argument("--file", required=True)
    s.add_argument("--json", action="store_true")
    s.add_argument("--decimal", action="store_true")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("search", help="backtracking search for a lambda-factorisation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--index", type=int, default=1)
    s.add_argument("--force-base", action="store_true")
    s.add_argument("--seed", help="matching set the solution must derive to")
    s.add_argument("--at", help="vertex set for --seed")
    s.add_argument("--node-limit", type=int)
    s.add_argument("--enumerate-all", action="store_true")
    s.add_argument("--stretch", action="store_true", help="allow n >= 6 (seeding required)")
    s.set_defaults(func=cmd_search)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
