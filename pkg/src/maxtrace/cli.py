"""Command-line front end.

Every randomized subcommand needs an explicit ``--seed``.  CSV output
starts with a ``#`` header recording the tool version and the full config.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from maxtrace import __version__
from maxtrace.bounds import (
    METHODS,
    ag_degree_bound,
    compute_lambda,
    defect_bound,
)
from maxtrace.codes import (
    LinearCode,
    counterexample_code,
    format_code,
    generalized_reed_solomon,
    generalized_weight,
    load_code,
    reed_solomon,
    repetition_code,
    sum_code,
)
from maxtrace.errors import CapExceededError, CodeFileError, InvariantError
from maxtrace.gf import field_tower
from maxtrace.probability import (
    RngSpec,
    exact_pc,
    monte_carlo_pc,
    random_alternant_experiment,
    s1,
    s2,
    s_limit,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARAMS = 3
EXIT_CODEFILE = 4
EXIT_CAP = 5
EXIT_INVARIANT = 6


def fmt_float(x: float) -> str:
    return format(x, ".15g")


def fmt_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def header(args) -> str:
    items = sorted((k, v) for k, v in vars(args).items() if k not in ("func", "config") and v is not None)
    cfg = " ".join(f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}" for k, v in items)
    return f"# maxtrace {__version__} {cfg}"


def emit(args, lines: list[str], csv: bool = True) -> None:
    text = "\n".join(([header(args)] if csv else []) + lines) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------


def cmd_sq_table(args) -> int:
    ns = args.n or list(range(5, 55, 5))
    limit = s_limit(args.q)
    lines = ["n,s1,s2,s1_minus_limit"]
    for n in ns:
        a = s1(n, args.q)
        lines.append(f"{n},{fmt_float(a)},{fmt_float(s2(n, args.q))},{fmt_float(a - limit)}")
    emit(args, lines)
    return EXIT_OK


def cmd_lambda(args) -> int:
    code = load_code(args.codefile)
    methods = METHODS if args.methods == "all" else args.methods.split(",")
    values = {}
    lines = ["method,value,decimal"]
    for method in methods:
        lam = compute_lambda(code, method)
        values[method] = lam.value
        lines.append(f"{method},{fmt_rational(lam.value)},{fmt_float(float(lam.value))}")
    if len(set(values.values())) > 1:
        emit(args, lines)
        raise InvariantError(f"lambda formulas disagree: {values}")
    emit(args, lines)
    return EXIT_OK


def cmd_pc(args) -> int:
    code = load_code(args.codefile)
    if args.mode == "exact":
        res = exact_pc(code)
    else:
        if args.seed is None:
            raise ValueError("monte-carlo mode needs --seed")
        res = monte_carlo_pc(code, args.trials, RngSpec(args.seed), workers=args.workers)
    lines = [
        "kind,trials,successes,value,estimate,seed",
        f"{res.kind},{res.trials},{res.successes},{res.successes}/{res.trials},"
        f"{fmt_float(res.estimate)},{'' if res.seed is None else res.seed}",
    ]
    emit(args, lines)
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.deg_g is not None:
        value = ag_degree_bound(args.q, args.m, args.n, args.deg_g)
    else:
        if args.k is None:
            raise ValueError("bound needs --k (and --h) or --deg-g")
        value = defect_bound(args.q, args.m, args.k, args.h, args.n)
    emit(args, [f"{fmt_rational(value)} ({fmt_float(float(value))})"], csv=False)
    return EXIT_OK


def cmd_alternant(args) -> int:
    lines = ["experiment,q,m,k,n,trials,successes,estimate,bound,min_dimension,seed"]
    for i, n in enumerate(args.n):
        rep = random_alternant_experiment(args.q, args.m, args.k, n, args.trials, RngSpec(args.seed))
        bound = "" if rep.bound is None else fmt_rational(rep.bound)
        lines.append(
            f"{i},{rep.q},{rep.m},{rep.k},{rep.n},{rep.trials},{rep.successes},"
            f"{fmt_float(rep.frequency)},{bound},{rep.min_dimension},{rep.seed}"
        )
        if rep.min_dimension < n - args.m * args.k:
            emit(args, lines)
            raise InvariantError("alternant dimension below n - mk")
    emit(args, lines)
    return EXIT_OK


def _random_code(tower, n: int, k: int, rng: random.Random) -> LinearCode:
    while True:
        rows = [[rng.randrange(tower.Q) for _ in range(n)] for _ in range(k)]
        try:
            return LinearCode.from_rows(tower, rows, n)
        except ValueError:
            continue


def cmd_dij_search(args) -> int:
    """Look for codes with d_i >= i*m for all i that still have P_C = 0."""
    tower = field_tower(args.p, args.s, args.m)
    rng = RngSpec(args.seed).stream(0)
    lines = ["experiment,d_i,meets_dij,pc,converse_violation"]
    for e in range(args.count):
        code = _random_code(tower, args.n, args.k, rng)
        d = [generalized_weight(code, i) for i in range(1, code.k + 1)]
        meets = all(di >= i * tower.m for i, di in enumerate(d, 1))
        pc = exact_pc(code).value
        if pc > 0 and not meets:
            raise InvariantError(f"code {e} has P_C > 0 but violates d_i >= i*m")
        lines.append(f"{e},{' '.join(map(str, d))},{int(meets)},{fmt_rational(pc)},{int(meets and pc == 0)}")
    emit(args, lines)
    return EXIT_OK


def cmd_code_build(args) -> int:
    tower = field_tower(args.p, args.s, args.m)
    fam = args.family
    support = args.support
    if fam in ("rs", "grs") and support is None:
        support = list(range(args.n))
    if fam == "rs":
        code = reed_solomon(tower, args.k, support)
    elif fam == "grs":
        mult = args.multiplier if args.multiplier is not None else [1] * len(support)
        code = generalized_reed_solomon(tower, args.k, support, mult)
    elif fam == "repetition":
        code = repetition_code(tower, args.n)
    elif fam == "sum":
        code = repetition_code(tower, args.n)
        for _ in range(args.k - 1):
            code = sum_code(code, repetition_code(tower, args.n))
    elif fam == "counterexample":
        code = counterexample_code(tower, args.k, support)
    elif fam == "random":
        if args.seed is None:
            raise ValueError("random family needs --seed")
        code = _random_code(tower, args.n, args.k, RngSpec(args.seed).stream(0))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(fam)
    text = format_code(code)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxtrace", description="Trace dimension experiments.")
    parser.add_argument("--version", action="version", version=f"maxtrace {__version__}")
    parser.add_argument("--config", help="file of key=value lines used as defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sq-table", help="full-rank probability table")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int_list, help="comma-separated list of n (default 5,10,...,50)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sq_table)

    p = sub.add_parser("lambda", help="lambda(C) of a code file")
    p.add_argument("codefile")
    p.add_argument("--methods", default="all", help="all or a comma list of weight,average,ng")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("pc", help="P_C of a code file")
    p.add_argument("codefile")
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pc)

    p = sub.add_parser("bound", help="lower bound on P_C")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--deg-g", type=int, help="use the divisor-degree form")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("alternant", help="random alternant dimension experiment")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int_list, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_alternant)

    p = sub.add_parser("dij-search", help="search random codes for d_i / P_C behaviour")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dij_search)

    p = sub.add_parser("code-build", help="construct and save a code")
    p.add_argument("--family", choices=("rs", "grs", "repetition", "sum", "counterexample", "random"), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--support", type=int_list)
    p.add_argument("--multiplier", type=int_list)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_code_build)
    return parser


def _apply_config(argv: list[str]) -> list[str]:
    """Turn ``--config FILE`` into flags placed before the command-line ones."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2 :]
    extra = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            extra += [f"--{key.strip().replace('_', '-')}", value.strip()]
    return rest[:1] + extra + rest[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
    except (OSError, IndexError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CodeFileError as exc:
        print(f"error: malformed code file: {exc}", file=sys.stderr)
        return EXIT_CODEFILE
    except CapExceededError as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantError as exc:
        print(f"error: invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODEFILE
    except ValueError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
