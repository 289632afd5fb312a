"""Command-line entry point: ``rexint <command> ...``.

Every command prints ``key=value`` lines.  Exit codes: 0 success, 1 EMPTY /
not a member / FAIL (only with --exitcode, or from verify), 2 bad input,
3 budget exceeded, 4 internal assumption failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Optional, Sequence

from . import bench, ov
from .answer import BudgetExceeded
from .automata import DEFAULT_PAIR_BUDGET, member
from .canonical import classify, coercible_types
from .dispatch import dispatch, route_for
from .syntax import RegexSyntaxError, parse, parse_word, render, render_word, size

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET, EXIT_ASSUMPTION = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _regex(arg: str, literal: bool):
    text = arg if literal else _read(arg)
    try:
        return parse(text)
    except RegexSyntaxError as e:
        line, col = e.line_col
        where = "<literal>" if literal else arg
        raise InputError(f"{where}:{line}:{col}: {e.args[0].rsplit(' at position', 1)[0]}") from None


def _word(arg: str, literal: bool):
    text = arg if literal else _read(arg)
    try:
        return parse_word(text)
    except RegexSyntaxError as e:
        line, col = e.line_col
        raise InputError(f"word:{line}:{col}: {e.args[0].rsplit(' at position', 1)[0]}") from None


def _out(**fields) -> None:
    print(" ".join(f"{k}={v}" for k, v in fields.items()))


# --- commands ------------------------------------------------------------------


def cmd_classify(args) -> int:
    node = _regex(args.regex, args.literal)
    print(classify(node))
    forms = coercible_types(node)
    _out(coercions=",".join(forms) if forms else "none", size=size(node))
    return EXIT_OK


def cmd_intersect(args) -> int:
    a, b = _regex(args.a, args.literal), _regex(args.b, args.literal)
    route = "baseline" if args.force_baseline else str(route_for(a, b))
    t0 = time.perf_counter()
    ans = dispatch(a, b, force_baseline=args.force_baseline, budget=args.budget)
    elapsed = time.perf_counter() - t0
    fields = {"verdict": ans.verdict}
    if ans.nonempty:
        fields["witness"] = render_word(ans.witness)
    fields.update(algo=ans.algo, route=route, size_a=size(a), size_b=size(b), seconds=f"{elapsed:.6f}")
    if args.witness and ans.nonempty:
        ok = member(ans.witness, a) and member(ans.witness, b)
        fields["witness_check"] = "ok" if ok else "FAILED"
        if not ok:
            _out(**fields)
            return EXIT_ASSUMPTION
    _out(**fields)
    if args.exitcode:
        return EXIT_OK if ans.nonempty else EXIT_NO
    return EXIT_OK


def cmd_member(args) -> int:
    word = _word(args.word, args.literal)
    node = _regex(args.regex, args.literal)
    ok = member(word, node)
    _out(member=str(ok).lower(), word=render_word(word))
    if args.exitcode:
        return EXIT_OK if ok else EXIT_NO
    return EXIT_OK


def _load_ov(path: str) -> ov.OvInstance:
    try:
        return ov.parse_ov(_read(path))
    except ov.OvFormatError as e:
        raise InputError(f"{path}: {e}") from None


def cmd_reduce(args) -> int:
    inst = _load_ov(args.ov)
    norm = ov.normalize_instance(inst)
    if isinstance(norm, ov.TriviallyDecided):
        _out(trivial="true", orthogonal=str(norm.orthogonal).lower(), written="none")
        return EXIT_OK
    ra, rb = ov.build_reduction(norm)
    for path, node in ((args.out_a, ra), (args.out_b, rb)):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render(node) + "\n")
    audit = ov.dollar_audit(ra, rb)
    bounds = ov.dollar_count_bounds(norm)
    _out(M=norm.M, N=norm.N, d=norm.d, size_a=size(ra), size_b=size(rb),
         type_a=classify(ra).name, type_b=classify(rb).name)
    _out(dollars_a=audit["a_exact"], dollars_b_min=audit["b_min"], dollars_b_max=audit["b_max"],
         expected_a=bounds["a_exact"], expected_b_min=bounds["b_min"], expected_b_max=bounds["b_max"])
    if any(audit[k] != bounds[k] for k in audit):
        raise ov.AssumptionError("dollar counts differ from the construction")
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = ov.verify_reduction(_load_ov(args.ov), budget=args.budget)
    print(rep)
    return {"PASS": EXIT_OK, "FAIL": EXIT_NO, "INCONCLUSIVE": EXIT_BUDGET}[rep.status]


def cmd_genov(args) -> int:
    if min(args.M, args.N, args.d) < 1:
        raise InputError("M, N and d must be >= 1")
    inst = ov.random_instance(args.M, args.N, args.d, args.seed, plant=args.plant)
    text = ov.format_ov(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    routes = bench.LINEAR_ROUTES + (bench.HARD_ROUTE,) if args.route == "all" else (args.route,)
    if args.csv and os.path.exists(args.csv):
        os.remove(args.csv)
    for r in routes:
        if args.sizes:
            sizes = args.sizes
        elif r == bench.HARD_ROUTE:
            sizes = bench.geometric_sizes(1000, 10_000, args.points)
        else:
            sizes = bench.geometric_sizes(args.min_size, args.max_size, args.points)
        try:
            rep = bench.run_scaling(r, sizes, args.trials, args.seed, args.csv, append=True)
        except ValueError as e:
            raise InputError(str(e)) from None
        print(rep)
    return EXIT_OK


def cmd_selftest(args) -> int:
    rep = bench.selftest(args.seed, args.count)
    for f in rep.failures:
        print(f)
    _out(result=f"{rep.agree}/{rep.total}", agree=str(rep.ok).lower(), seed=args.seed,
         nonempty=rep.nonempty, type_pairs=len(rep.type_pairs))
    return EXIT_OK if rep.ok else EXIT_NO


# --- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rexint", description="Regular expression intersection emptiness.")
    sub = p.add_subparsers(dest="command", required=True)

    def literal(sp):
        sp.add_argument("--literal", "-e", action="store_true",
                        help="treat positional arguments as regexp/word text, not file paths")

    sp = sub.add_parser("classify", help="print the type of a regexp and the types it coerces to")
    sp.add_argument("regex")
    literal(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("intersect", help="decide whether two regexps share a word")
    sp.add_argument("a")
    sp.add_argument("b")
    literal(sp)
    sp.add_argument("--force-baseline", action="store_true", help="always use the product automaton")
    sp.add_argument("--witness", action="store_true", help="re-check the witness against both inputs")
    sp.add_argument("--exitcode", action="store_true", help="exit 0 on NONEMPTY, 1 on EMPTY")
    sp.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET, help="max product state pairs")
    sp.set_defaults(fn=cmd_intersect)

    sp = sub.add_parser("member", help="test whether a word is in L(regexp)")
    sp.add_argument("word")
    sp.add_argument("regex")
    literal(sp)
    sp.add_argument("--exitcode", action="store_true", help="exit 0 if a member, 1 otherwise")
    sp.set_defaults(fn=cmd_member)

    sp = sub.add_parser("reduce", help="build the (∘+, ∘|) regexps for an OV instance")
    sp.add_argument("ov")
    sp.add_argument("out_a")
    sp.add_argument("out_b")
    sp.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("verify", help="check the reduction against brute force on an OV instance")
    sp.add_argument("ov")
    sp.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET, help="max product state pairs")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("genov", help="write a random OV instance")
    sp.add_argument("M", type=int)
    sp.add_argument("N", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--plant", action="store_true", help="force one orthogonal pair")
    sp.add_argument("--output", "-o")
    sp.set_defaults(fn=cmd_genov)

    sp = sub.add_parser("bench", help="time a route over geometric sizes and fit a log-log slope")
    sp.add_argument("--route", default="all", choices=("all",) + bench.LINEAR_ROUTES + (bench.HARD_ROUTE,))
    sp.add_argument("--sizes", type=int, nargs="+")
    sp.add_argument("--min-size", type=int, default=10_000)
    sp.add_argument("--max-size", type=int, default=1_000_000)
    sp.add_argument("--points", type=int, default=5)
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv")
    sp.set_defaults(fn=cmd_bench)

    sp = sub.add_parser("selftest", help="compare routing against the product automaton on random pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10_000)
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ov.AssumptionError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_ASSUMPTION


if __name__ == "__main__":
    sys.exit(main())
