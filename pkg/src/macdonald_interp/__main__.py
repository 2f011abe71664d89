"""macdonald_interp main file."""

import argparse
import json
import logging
import sys
import time

from . import mi_duals, mi_exceptions, mi_interpolation, mi_macdonald, mi_suites
from .mi_items import MI_DEFAULT_POINTS, MI_DEFAULT_SEED, MI_DESK_PROFILE, MIFamily, MIMode
from .mi_partitions import MIPartition
from .mi_scalars import scalar_to_json
from .mi_series import poly_to_json

logger = logging.getLogger(__name__)

COMPUTE_OBJECTS = ("macdonald", "interp", "dual", "sigma", "jack", "whittaker", "hl")
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise mi_exceptions.MIInvalidParameter(message)


def compute_object(kind: str, mu: MIPartition, n: int, k: int | None, family: MIFamily) -> dict:
    """JSON form of one computed object."""
    _require(n >= 1, f"--n must be at least 1, got {n}")
    match kind:
        case "macdonald":
            return poly_to_json(mi_macdonald.macdonald_P(mu, n))
        case "interp":
            return poly_to_json(mi_interpolation.interp_I(mu, n))
        case "jack":
            return poly_to_json(mi_interpolation.jack_interp_I(mu, n))
        case "whittaker":
            return poly_to_json(mi_interpolation.whittaker_A(mu, n))
        case "hl":
            return poly_to_json(mi_interpolation.hl_A(mu, n))
        case "dual":
            k = n if k is None else k
            _require(k >= 1, f"--k must be at least 1, got {k}")
            return mi_duals.dual_H(mu, k, family).to_json()
        case "sigma":
            c = mi_duals.q_parameters(n, 1, mu.part(1) + n - 1)
            return mi_duals.dual_sigma(mu, n, c).to_json()
    raise mi_exceptions.MIInvalidParameter(f"unknown object {kind!r}")


def compute_nodes(lam: MIPartition, n: int) -> list[dict]:
    """X_n(lam) coordinate by coordinate."""
    _require(n >= 1, f"--n must be at least 1, got {n}")
    return [scalar_to_json(value) for value in mi_interpolation.node(lam, n)]


def suite_config(args: argparse.Namespace) -> mi_suites.MISuiteConfig:
    """Common suite flags, range-checked."""
    _require(args.n >= 1, f"--n must be at least 1, got {args.n}")
    _require(args.k is None or args.k >= 1, f"--k must be at least 1, got {args.k}")
    _require(args.cutoff >= 0, f"--cutoff must be non-negative, got {args.cutoff}")
    _require(args.points >= 1, f"--points must be at least 1, got {args.points}")
    _require(args.threads is None or args.threads >= 1, f"--threads must be at least 1, got {args.threads}")
    return mi_suites.MISuiteConfig(
        n=args.n,
        k=args.k,
        cutoff=args.cutoff,
        seed=args.seed,
        points=args.points,
        mode=MIMode(args.mode),
        threads=args.threads,
    )


def verify(args: argparse.Namespace) -> int:
    """Run suites and print the aggregate report; exit 1 if any suite failed."""
    reports = mi_suites.run_suites([args.suite], suite_config(args), args.profile)
    passed = all(report.passed for report in reports)
    document = {
        "status": "pass" if passed else "fail",
        "reports": [report.to_json(timing=not args.no_timing) for report in reports],
    }
    print(json.dumps(document, indent=2))
    return EXIT_PASS if passed else EXIT_FAIL


def bench(args: argparse.Namespace) -> int:
    """Time suites and print one line per report."""
    start = time.perf_counter()
    reports = mi_suites.run_suites(args.suite, suite_config(args), args.profile)
    for report in reports:
        print(json.dumps({"suite": report.suite, "params": report.params, "millis": report.millis}))
    total = int((time.perf_counter() - start) * 1000)
    print(json.dumps({"suites": len(reports), "millis": total}))
    return EXIT_PASS if all(report.passed for report in reports) else EXIT_FAIL


def _add_suite_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=2, help="number of x-variables")
    parser.add_argument("--k", type=int, default=None, help="number of u-variables (defaults to --n)")
    parser.add_argument("--cutoff", type=int, default=3, help="weight bound and series cutoff")
    parser.add_argument("--seed", type=int, default=MI_DEFAULT_SEED, help="seed of the evaluation points")
    parser.add_argument("--points", type=int, default=MI_DEFAULT_POINTS, help="number of evaluation points")
    parser.add_argument("--mode", choices=[mode.value for mode in MIMode], default=MIMode.SYMBOLIC.value)
    parser.add_argument("--profile", choices=[MI_DESK_PROFILE], default=None, help="pinned desk-scale parameters")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (else SYMFUNC_THREADS, else 1)")
    parser.add_argument("--no-timing", action="store_true", help="omit millis from the reports")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the compute, nodes, verify and bench subcommands."""
    parser = argparse.ArgumentParser(description="Interpolation Macdonald polynomials and their Cauchy identities")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute a polynomial or dual function")
    compute.add_argument("object", choices=COMPUTE_OBJECTS)
    compute.add_argument("--mu", required=True, help='partition, e.g. "2,1"')
    compute.add_argument("--n", type=int, required=True)
    compute.add_argument("--k", type=int, default=None)
    compute.add_argument("--family", choices=[family.value for family in MIFamily], default=MIFamily.QT.value)
    compute.add_argument("--format", choices=["json"], default="json")

    nodes = commands.add_parser("nodes", help="interpolation node X_n(lambda)")
    nodes.add_argument("--lambda", dest="lam", required=True)
    nodes.add_argument("--n", type=int, required=True)

    suites = list(mi_suites.SUITES) + ["all"]
    verify_parser = commands.add_parser("verify", help="run an identity suite")
    verify_parser.add_argument("suite", choices=suites)
    _add_suite_flags(verify_parser)

    bench_parser = commands.add_parser("bench", help="time identity suites")
    bench_parser.add_argument("--suite", action="append", choices=suites, required=True)
    _add_suite_flags(bench_parser)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main function."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )

    try:
        match args.command:
            case "compute":
                family = MIFamily(args.family)
                result = compute_object(args.object, MIPartition.parse(args.mu), args.n, args.k, family)
                print(json.dumps(result, indent=2))
                return EXIT_PASS
            case "nodes":
                print(json.dumps(compute_nodes(MIPartition.parse(args.lam), args.n), indent=2))
                return EXIT_PASS
            case "verify":
                return verify(args)
            case "bench":
                return bench(args)
    except mi_exceptions.MIError as e:
        print(f"Error: {e}", file=sys.stderr)
        logger.debug("command %s failed", args.command, exc_info=True)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
