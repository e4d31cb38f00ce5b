"""Batch command-line surface: matrix dumps, norm brackets, harness runs.

Exit codes are part of the contract: 0 success, 1 usage, 2 resource
limit, 3 exponent pair out of scope, 4 unknown dispatch target, 5 failed
precondition. Results go to stdout (JSON by default, CSV on request);
diagnostics go to stderr. The only environment variable read is
MTOEPLITZ_THREADS, echoed for provenance; reported numerics follow the
sequential summation contract regardless.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .errors import (
    DispatchError,
    MToeplitzError,
    PreconditionError,
    ResourceLimitError,
    ScopeError,
)
from . import numtheory as nt
from . import symbols as sym
from . import operator as op
from . import norms
from . import supports as sup
from . import experiments as exp
from . import reporting

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_SCOPE = 3
EXIT_DISPATCH = 4
EXIT_PRECONDITION = 5

VERIFY_TARGETS = (
    "theorem1",
    "theorem2",
    "lemma4",
    "theorem3",
    "prop5",
    "prop6",
    "dyadic",
    "census",
)


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse default of 2 would collide with the
    # resource-limit code)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_extended(text: str) -> float:
    """Exponent values; 'inf' spells infinity."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _parse_int(text: str) -> int:
    """Integer sizes; scientific notation like 1e6 is accepted."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise argparse.ArgumentTypeError(f"cannot read {path!r}: {exc}")


def _table_from_file(path: str) -> dict:
    data = _load_json_file(path)
    if not isinstance(data, dict):
        raise argparse.ArgumentTypeError(f"{path!r} must hold a JSON object")
    return data


def _parse_symbol(text: str) -> sym.SymbolSpec:
    """Mini-language: power:a, prodpow:a,b, atom:n, cm:@f, mult:@f, tab:@f,
    @file.json, or inline JSON."""
    t = text.strip()
    try:
        if t.startswith("{"):
            return sym.symbol_from_json(json.loads(t))
        if t.startswith("@"):
            return sym.symbol_from_json(_load_json_file(t[1:]))
        if ":" not in t:
            raise ValueError("expected kind:args")
        kind, _, args = t.partition(":")
        kind = kind.lower()
        if kind == "power":
            return sym.power_on_naturals(float(args))
        if kind == "prodpow":
            alpha, _, beta = args.partition(",")
            if not beta:
                raise ValueError("prodpow needs two exponents")
            return sym.product_power(float(alpha), float(beta))
        if kind == "atom":
            n = int(args)
            if n < 1:
                raise ValueError("atom index must be positive")
            return sym.tabulated_naturals({n: 1.0})
        if kind in ("cm", "mult", "tab"):
            if not args.startswith("@"):
                raise ValueError(f"{kind} takes @file")
            table = _table_from_file(args[1:])
            if kind == "cm":
                return sym.completely_multiplicative(
                    {int(k): float(v) for k, v in table.items()}
                )
            if kind == "mult":
                values = {}
                for key, v in table.items():
                    prime, _, expo = str(key).partition("^")
                    values[(int(prime), int(expo) if expo else 1)] = float(v)
                return sym.multiplicative(values)
            if any("/" in str(k) for k in table):
                return sym.tabulated_rationals(
                    {str(k): float(v) for k, v in table.items()}
                )
            return sym.tabulated_naturals(
                {int(k): float(v) for k, v in table.items()}
            )
        raise ValueError(f"unknown symbol kind {kind!r}")
    except argparse.ArgumentTypeError:
        raise
    except (ValueError, KeyError, MToeplitzError) as exc:
        raise argparse.ArgumentTypeError(f"bad symbol {text!r}: {exc}")


def _parse_support(text: str) -> sup.SupportSetSpec:
    t = text.strip()
    try:
        name, _, arg = t.partition(":")
        if name.lower() in ("explicit", "explicitlist"):
            values = [int(v) for v in arg.split(",") if v]
            return sup.explicit_list(values)
        return sup.support_from_name(name, int(arg) if arg else None)
    except (ValueError, MToeplitzError) as exc:
        raise argparse.ArgumentTypeError(f"bad support {text!r}: {exc}")


def _parse_families(text: str) -> list[sup.SupportSetSpec]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty family list")
    out = []
    for part in parts:
        if part.strip().lower().startswith("explicit"):
            raise argparse.ArgumentTypeError(
                "explicit lists are library-only; use a named family"
            )
        out.append(_parse_support(part))
    return out


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="mtoeplitz",
        description="Truncations, norm brackets, and verification harnesses "
        "for multiplicative Toeplitz operators.",
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="re-execute the argv recorded in a previous run's JSON output "
        "(replaces all other flags)",
    )
    subs = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_matrix = subs.add_parser("matrix", help="dump the N x N truncation")
    p_matrix.add_argument("--symbol", type=_parse_symbol, required=True)
    p_matrix.add_argument("--n", type=_parse_int, required=True)
    p_matrix.add_argument("--json", action="store_true", help="JSON instead of CSV")

    p_bracket = subs.add_parser("bracket", help="lower/upper operator-norm bracket")
    p_bracket.add_argument("--symbol", type=_parse_symbol, required=True)
    p_bracket.add_argument("--p", type=_parse_extended, default=2.0)
    p_bracket.add_argument("--q", type=_parse_extended, default=2.0)
    p_bracket.add_argument(
        "--witness",
        choices=("auto", "delta", "diagonal", "dual", "ascent"),
        default="auto",
    )
    p_bracket.add_argument("--T", type=_parse_int, default=13)
    p_bracket.add_argument("--k", type=_parse_int, default=2)
    p_bracket.add_argument("--c", type=_parse_int, default=None)
    p_bracket.add_argument("--n", type=_parse_int, default=4096)
    p_bracket.add_argument("--max-iter", type=_parse_int, default=500)
    p_bracket.add_argument("--tol", type=float, default=1e-10)
    p_bracket.add_argument("--figures", metavar="DIR", default=None)

    p_verify = subs.add_parser("verify", help="run a verification harness")
    p_verify.add_argument("--target", required=True)
    p_verify.add_argument("--symbol", type=_parse_symbol, default=None)
    p_verify.add_argument("--p", type=_parse_extended, default=None)
    p_verify.add_argument("--q", type=_parse_extended, default=None)
    p_verify.add_argument("--alpha", type=float, default=0.6)
    p_verify.add_argument("--sigma", type=float, default=0.8)
    p_verify.add_argument("--seed", type=_parse_int, default=0)
    p_verify.add_argument("--trials", type=_parse_int, default=200)
    p_verify.add_argument("--samples", type=_parse_int, default=500)
    p_verify.add_argument("--n", type=_parse_int, default=None)
    p_verify.add_argument("--m", type=_parse_int, default=None)
    p_verify.add_argument("--k", type=_parse_int, default=1)
    p_verify.add_argument("--levels", type=_parse_int, default=40)
    p_verify.add_argument("--edge", choices=("p1", "pq", "qinf"), default="p1")
    p_verify.add_argument(
        "--distribution", choices=("uniform", "pareto"), default="uniform"
    )
    p_verify.add_argument("--x-rule", default="divisor_damped")
    p_verify.add_argument("--support", type=_parse_support, default=None)
    p_verify.add_argument("--x-max", type=_parse_int, default=10 ** 6)
    p_verify.add_argument("--csv", action="store_true", help="series CSV output")
    p_verify.add_argument("--figures", metavar="DIR", default=None)

    p_search = subs.add_parser("search", help="scan support families for growth")
    p_search.add_argument("--families", type=_parse_families, required=True)
    p_search.add_argument("--alpha", type=float, default=0.6)
    p_search.add_argument("--p", type=_parse_extended, default=1.5)
    p_search.add_argument("--seed", type=_parse_int, default=0)
    p_search.add_argument("--n", type=_parse_int, default=None)
    p_search.add_argument("--csv", action="store_true")
    p_search.add_argument("--figures", metavar="DIR", default=None)

    return parser


def _run_config(argv: list[str]) -> dict:
    return {"argv": list(argv)}


def _schedule_up_to(n: int | None, default_max: int) -> tuple[int, ...]:
    n = n if n is not None else default_max
    base = tuple(v for v in exp.DEFAULT_N_SCHEDULE if v < n)
    return base + (n,)


def _cmd_matrix(ns, argv) -> int:
    mat = op.build_matrix(ns.symbol, ns.n)
    if ns.json:
        payload = {
            "config": _run_config(argv),
            "n": mat.n,
            "lowerTriangular": mat.lower_triangular,
            "entries": reporting.sanitize(
                [[float(v) for v in row] for row in mat.entries]
            ),
        }
        sys.stdout.write(reporting.to_json_str(payload) + "\n")
    else:
        sys.stdout.write(op.matrix_to_csv(mat))
    return EXIT_OK


def _cmd_bracket(ns, argv) -> int:
    result = norms.bracket(
        ns.symbol,
        ns.p,
        ns.q,
        strategy=ns.witness,
        T=ns.T,
        k=ns.k,
        c=ns.c,
        n=ns.n,
        max_iter=ns.max_iter,
        tol=ns.tol,
    )
    payload = {"config": _run_config(argv)}
    payload.update(norms.bracket_to_json_dict(result))
    sys.stdout.write(reporting.to_json_str(reporting.sanitize(payload)) + "\n")
    if ns.figures:
        for path in reporting.render_bracket_figure(result, ns.figures):
            sys.stderr.write(f"figure: {path}\n")
    return EXIT_OK


def _dispatch_verify(ns) -> exp.ExperimentReport:
    target = ns.target
    if target not in VERIFY_TARGETS:
        raise DispatchError(
            f"unknown verify target {target!r}; choose from "
            + "|".join(VERIFY_TARGETS)
        )
    if target == "theorem1":
        return exp.check_theorem1(
            f=ns.symbol,
            p=ns.p if ns.p is not None else 2.0,
            q=ns.q if ns.q is not None else 2.0,
            trials=ns.trials,
            n=ns.n if ns.n is not None else 1024,
            seed=ns.seed,
            distribution=ns.distribution,
        )
    if target == "theorem2":
        return exp.check_theorem2_convergence(
            edge_case=ns.edge, f=ns.symbol, p=ns.p, q=ns.q, k=ns.k
        )
    if target == "lemma4":
        m_schedule = (
            exp.DEFAULT_M_SCHEDULE
            if ns.m is None
            else tuple(v for v in exp.DEFAULT_M_SCHEDULE if v < ns.m) + (ns.m,)
        )
        f = ns.symbol
        return exp.check_lemma4(f=f, m_schedule=m_schedule)
    if target == "theorem3":
        return exp.check_theorem3_ratio(
            f=ns.symbol,
            p=ns.p if ns.p is not None else 1.5,
            samples=ns.samples,
            seed=ns.seed,
            n=ns.n if ns.n is not None else 4096,
            sigma=ns.sigma,
        )
    if target == "prop5":
        return exp.check_prop5(
            alpha=ns.alpha,
            p=ns.p if ns.p is not None else 1.5,
            x_rule=ns.x_rule,
            n_schedule=_schedule_up_to(ns.n, exp.DEFAULT_N_SCHEDULE[-1]),
        )
    if target == "prop6":
        return exp.check_prop6_gamma(
            alpha=ns.alpha,
            p=ns.p if ns.p is not None else 1.5,
            support=ns.support,
            n=ns.n if ns.n is not None else 2 ** 20,
        )
    if target == "dyadic":
        return exp.check_dyadic_example(
            alpha=ns.alpha,
            p=ns.p if ns.p is not None else 1.5,
            levels=ns.levels,
        )
    return exp.sparsity_census(
        ns.support if ns.support is not None else sup.dyadic_powers(),
        p=ns.p if ns.p is not None else 1.5,
        x_max=ns.x_max,
    )


def _emit_report(report: exp.ExperimentReport, ns, argv) -> None:
    if ns.csv:
        sys.stdout.write(reporting.series_csv(report))
    else:
        payload = {
            "config": _run_config(argv),
            "report": reporting.report_to_json_dict(report),
        }
        sys.stdout.write(reporting.to_json_str(payload) + "\n")
    if ns.figures:
        for path in reporting.render_report_figures(report, ns.figures):
            sys.stderr.write(f"figure: {path}\n")


def _cmd_verify(ns, argv) -> int:
    report = _dispatch_verify(ns)
    _emit_report(report, ns, argv)
    return EXIT_OK


def _cmd_search(ns, argv) -> int:
    report = exp.search_counterexample(
        alpha=ns.alpha,
        p=ns.p,
        families=ns.families,
        n_schedule=_schedule_up_to(ns.n, exp.DEFAULT_N_SCHEDULE[-1]),
        seed=ns.seed,
    )
    _emit_report(report, ns, argv)
    return EXIT_OK


def _apply_config(argv: list[str]) -> list[str]:
    """Replace the argv with the one recorded in a saved run, if requested."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise argparse.ArgumentTypeError("--config needs a file path")
    data = _load_json_file(argv[idx + 1])
    if "argv" in data:
        saved = data["argv"]
    elif "config" in data and isinstance(data["config"], dict):
        saved = data["config"].get("argv")
    else:
        saved = None
    if not isinstance(saved, list):
        raise argparse.ArgumentTypeError(
            f"{argv[idx + 1]!r} records no argv to re-execute"
        )
    return [str(a) for a in saved]


def _echo_thread_env() -> None:
    raw = os.environ.get("MTOEPLITZ_THREADS")
    if raw is None:
        return
    try:
        count = int(raw)
        sys.stderr.write(
            f"MTOEPLITZ_THREADS={count}; reported sums stay sequential\n"
        )
    except ValueError:
        sys.stderr.write(f"ignoring non-integer MTOEPLITZ_THREADS={raw!r}\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        argv = _apply_config(argv)
        ns = parser.parse_args(argv)
        if ns.command is None:
            parser.error("a subcommand is required")
        _echo_thread_env()
        if ns.command == "matrix":
            return _cmd_matrix(ns, argv)
        if ns.command == "bracket":
            return _cmd_bracket(ns, argv)
        if ns.command == "verify":
            return _cmd_verify(ns, argv)
        if ns.command == "search":
            return _cmd_search(ns, argv)
        parser.error(f"unknown subcommand {ns.command!r}")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except argparse.ArgumentTypeError as exc:
        sys.stderr.write(f"mtoeplitz: error: {exc}\n")
        return EXIT_USAGE
    except ScopeError as exc:
        sys.stderr.write(f"mtoeplitz: scope: {exc}\n")
        return EXIT_SCOPE
    except ResourceLimitError as exc:
        sys.stderr.write(f"mtoeplitz: resource: {exc}\n")
        return EXIT_RESOURCE
    except DispatchError as exc:
        sys.stderr.write(f"mtoeplitz: dispatch: {exc}\n")
        return EXIT_DISPATCH
    except PreconditionError as exc:
        sys.stderr.write(f"mtoeplitz: precondition: {exc}\n")
        return EXIT_PRECONDITION
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
