"""Command-line front end.

Exit status: 0 when the checked formula holds, 1 when it does not, 2 on
usage, parse or I/O errors and 3 when a resource cap stops the search.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .checker import DEFAULT_SUL_DEPTH_CAP, CheckerConfig, check
from .errors import ResourceCapExceeded, SulcheckError
from .model import PointedModel, parse_model_with_point, serialize_model
from .oracles import parse_qbf, qbf_eval
from .reductions import build_distinguishing_family, build_figure_fixtures, build_scl_reduction, build_sdl_reduction, translate_ctl
from .syntax import parse_ctl, parse_formula, to_nnf, to_text
from .updates import UpdateChoice, enumerate_submodels, enumerate_supermodels, enumerate_updates

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_USAGE = 2
EXIT_CAP = 3

DEPTH_CAP_ENV = "SULCHECK_DEPTH_CAP"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 as well, but via SystemExit
        raise _UsageError(message)


def _read_text(arg: str) -> str:
    """Inline text, or the contents of a file when written ``@path``."""
    if arg.startswith("@"):
        return Path(arg[1:]).read_text(encoding="utf-8")
    return arg


def _depth_cap(flag: int | None) -> int | None:
    if flag is not None:
        return flag
    env = os.environ.get(DEPTH_CAP_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise _UsageError(f"{DEPTH_CAP_ENV} must be a positive integer, got {env!r}") from None
        if value < 1:
            raise _UsageError(f"{DEPTH_CAP_ENV} must be a positive integer, got {env!r}")
        return value
    return DEFAULT_SUL_DEPTH_CAP


def _load_pointed(path: str, point: str | None) -> PointedModel:
    model, declared = parse_model_with_point(Path(path).read_text(encoding="utf-8"))
    chosen = point or declared
    if chosen is None:
        raise _UsageError("no point given: use --point or a 'point:' line in the model file")
    return PointedModel(model, chosen)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_check(args) -> int:
    pm = _load_pointed(args.model, args.point)
    formula = parse_formula(_read_text(args.formula))
    cfg = CheckerConfig(
        memoization=not args.no_memo,
        max_positions=args.max_positions,
        sul_depth_cap=_depth_cap(args.depth_cap),
        parallel=args.parallel,
    )
    verdict = check(pm, formula, cfg)
    if args.json:
        out = {"formula": to_text(formula), "point": pm.point, "value": verdict.value}
        if args.witness:
            full = verdict.to_json()
            out["witness"] = full["witness"]
            out["trace"] = full["trace"]
        if not args.no_stats:
            out["stats"] = verdict.stats.to_json()
        print(_dump(out))
    else:
        print("satisfied" if verdict.value else "not satisfied")
        if not args.no_stats:
            print(f"positions: {verdict.stats.positions}  memo hits: {verdict.stats.memo_hits}")
        if args.witness:
            if verdict.witness is None:
                print("witness: none")
            else:
                print(f"witness for {verdict.witness.operator}:")
                for e in verdict.witness.entries:
                    c = e.choice.to_json()
                    print(f"  at {e.point} [{e.digest}]: add {c['add']} remove {c['remove']}")
    return EXIT_SAT if verdict.value else EXIT_UNSAT


def cmd_nnf(args) -> int:
    f = parse_formula(_read_text(args.formula), allow_path=True)
    print(to_text(to_nnf(f)))
    return 0


def cmd_translate(args) -> int:
    f = parse_ctl(_read_text(args.formula))
    print(to_text(translate_ctl(f, args.flavor)))
    return 0


def cmd_reduce_qbf(args) -> int:
    q = parse_qbf(_read_text(args.qbf))
    build = build_sdl_reduction if args.flavor == "sdl" else build_scl_reduction
    pm, formula = build(q)
    model_text = serialize_model(pm.model, pm.point)
    formula_text = to_text(formula)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.emit in ("model", "both"):
            (out / f"reduction-{args.flavor}.model").write_text(model_text, encoding="utf-8")
        if args.emit in ("formula", "both"):
            (out / f"reduction-{args.flavor}.formula").write_text(formula_text + "\n", encoding="utf-8")
    else:
        if args.emit in ("model", "both"):
            sys.stdout.write(model_text)
        if args.emit in ("formula", "both"):
            print(formula_text)
    if args.verify:
        expected = qbf_eval(q)
        got = check(pm, formula).value
        print(f"qbf: {str(expected).lower()}  check: {str(got).lower()}  agree: {str(expected == got).lower()}")
        return 0 if expected == got else 1
    return 0


def cmd_fixtures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, pm in build_figure_fixtures().items():
        (out / f"{name}.model").write_text(serialize_model(pm.model, pm.point), encoding="utf-8")
        print(out / f"{name}.model")
    return 0


def cmd_family(args) -> int:
    if args.n < 1:
        raise _UsageError("n must be at least 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    small, large = build_distinguishing_family(args.n)
    for label, pm in ((f"M{args.n + 2}", small), (f"M{args.n + 3}", large)):
        path = out / f"family{args.n}.{label}.model"
        path.write_text(serialize_model(pm.model, pm.point), encoding="utf-8")
        print(path)
    return 0


def _budgets(text: str, mode: str) -> tuple[int, int]:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise _UsageError(f"budgets must be naturals, got {text!r}") from None
    if any(p < 0 for p in parts) or len(parts) not in (1, 2):
        raise _UsageError("give one budget, or two as ANGEL,DEMON for --mode update")
    if mode == "update":
        if len(parts) == 1:
            parts = parts * 2
        return parts[0], parts[1]
    if len(parts) != 1:
        raise _UsageError("sub and super take a single budget")
    return parts[0], parts[0]


def cmd_enumerate(args) -> int:
    model, _ = parse_model_with_point(Path(args.model).read_text(encoding="utf-8"))
    a, d = _budgets(args.budgets, args.mode)
    if args.mode == "sub":
        rows = (UpdateChoice(removals=es) for es, _ in enumerate_submodels(model, d))
    elif args.mode == "super":
        rows = (UpdateChoice(additions=es) for es, _ in enumerate_supermodels(model, a))
    else:
        rows = enumerate_updates(model, a, d)
    for choice in rows:
        row = choice.to_json()
        row["cost"] = {"add": choice.additions.total_cost, "remove": choice.removals.total_cost}
        print(_dump(row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sulcheck", description="Model checking for strategic graph-modification logics.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("check", help="check a formula against a model file")
    c.add_argument("model")
    c.add_argument("formula", help="formula text, or @file")
    c.add_argument("--point", help="state to evaluate at (overrides the file's point)")
    c.add_argument("--json", action="store_true", help="machine-readable output")
    c.add_argument("--witness", action="store_true", help="include the strategy table")
    c.add_argument("--no-memo", action="store_true", help="disable memoization")
    c.add_argument("--no-stats", action="store_true", help="omit search statistics")
    c.add_argument("--parallel", action="store_true", help="fan out first-layer choices to threads")
    c.add_argument("--max-positions", type=int)
    c.add_argument("--depth-cap", type=int, help=f"update-logic depth cap (env {DEPTH_CAP_ENV})")
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("nnf", help="print the negation normal form")
    n.add_argument("formula")
    n.set_defaults(func=cmd_nnf)

    t = sub.add_parser("translate", help="translate CTL into a strategic logic")
    t.add_argument("formula")
    t.add_argument("--flavor", choices=("sdl", "scl", "sul"), default="sdl")
    t.set_defaults(func=cmd_translate)

    r = sub.add_parser("reduce-qbf", help="build the QBF reduction")
    r.add_argument("qbf", help="e.g. 'forall p1 exists p2 : (p1 -> p2)', or @file")
    r.add_argument("--flavor", choices=("sdl", "scl"), default="sdl")
    r.add_argument("--emit", choices=("model", "formula", "both"), default="both")
    r.add_argument("--out", help="directory to write files into (default: stdout)")
    r.add_argument("--verify", action="store_true", help="also run the checker and the QBF evaluator")
    r.set_defaults(func=cmd_reduce_qbf)

    f = sub.add_parser("fixtures", help="write the example models")
    f.add_argument("--out", default="fixtures")
    f.set_defaults(func=cmd_fixtures)

    fa = sub.add_parser("family", help="write the two models separated by <d:1> F p")
    fa.add_argument("n", type=int)
    fa.add_argument("--out", default=".")
    fa.set_defaults(func=cmd_family)

    e = sub.add_parser("enumerate", help="list accessible updates as JSON lines")
    e.add_argument("model")
    e.add_argument("--mode", choices=("sub", "super", "update"), default="sub")
    e.add_argument("--budgets", default="0", help="N, or ANGEL,DEMON for --mode update")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise _UsageError("missing command")
        return args.func(args)
    except _UsageError as exc:
        print(f"sulcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        print(f"sulcheck: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SulcheckError, OSError, ValueError) as exc:
        print(f"sulcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
