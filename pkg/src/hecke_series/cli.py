import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from hecke_series import config
from hecke_series.core.errors import ConsistencyError
from hecke_series.lang.parser import ParseError
from hecke_series.services import codec, commands

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_CLOSED_FORM = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument(
        "--order",
        type=int,
        default=None,
        help=f"Truncation order (default {config.DEFAULT_ORDER}; verify uses per-suite orders)",
    )
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="hecke",
        description="Exact Hecke operators U_n and V_n on power series and pFq terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="Expand an expression to a series")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("transform", parents=[common], help="Apply U_n to an expression")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--mode", choices=commands.TRANSFORM_MODES, default="both")

    p = sub.add_parser("eigen", parents=[common], help="Eigen analysis under U_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser(
        "classify-cm", parents=[common], help="Complete multiplicativity of pFq coefficients"
    )
    p.add_argument("--a", required=True, help="Comma-separated upper parameters")
    p.add_argument("--b", required=True, help="Comma-separated lower parameters (no k! slot)")
    p.add_argument("--bound", type=int, default=30)

    p = sub.add_parser("inner", parents=[common], help="Inner-product R^2 sequence of f and g")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--radius", default=None, help="Rational R to fold the sequence at")

    p = sub.add_parser("verify", parents=[common], help="Run seeded verification suites")
    p.add_argument("--suite", choices=commands.VERIFY_SUITES, default="all")
    p.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    p.add_argument("--workers", type=int, default=None)
    return parser


def _run(args: argparse.Namespace) -> Dict[str, Any]:
    order = args.order if args.order is not None else config.DEFAULT_ORDER
    if args.command == "expand":
        return commands.expand(args.expr, order)
    if args.command == "transform":
        return commands.transform(args.expr, args.n, args.mode, order)
    if args.command == "eigen":
        return commands.eigen(args.expr, args.n, order)
    if args.command == "classify-cm":
        return commands.classify_cm(args.a, args.b, args.bound)
    if args.command == "inner":
        return commands.inner(args.f, args.g, order, args.radius)
    return commands.verify(args.suite, args.trials, args.seed, args.order, args.workers)


def _render(args: argparse.Namespace, document: Dict[str, Any]) -> str:
    if args.format == "json":
        return codec.dumps(document)
    if args.command == "expand":
        return codec.render_series_table(document["series"])
    return codec.render_table(document)


def _exit_code(document: Dict[str, Any]) -> int:
    if document.get("agree") is False or document.get("passed") is False:
        return EXIT_FAILED
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        format=config.LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        config._validate_config()
        document = _run(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except commands.ClosedFormUnavailable as e:
        print(f"error: closed form unavailable: {e}", file=sys.stderr)
        return EXIT_NO_CLOSED_FORM
    except ConsistencyError as e:
        log.error(f"Consistency check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, ArithmeticError, EnvironmentError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(_render(args, document))
    return _exit_code(document)


if __name__ == "__main__":
    sys.exit(main())
