"""ccgeom entry point."""
import argparse
import logging
import sys

from .config import SUITE_PRESETS
from .errors import CliError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccgeom",
        description="Central symmetry of intersections of convex regions in S2, E2 and H2",
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Debug logging"
    )
    parser.add_argument(
        "--quiet", "-q",
        action="store_true",
        help="Disable progress output"
    )
    parser.add_argument(
        "--list-experiments",
        action="store_true",
        help="List available experiments and exit"
    )
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", help="Run verification experiments")
    verify.add_argument("names", nargs="*", default=["all"], help="Experiment names, or 'all' (default)")
    verify.add_argument("--seed", type=int, default=42, help="Master seed (default: 42)")
    verify.add_argument("--trials", type=int, help="Cap on trials per experiment")
    verify.add_argument("--tol", type=float, help="Symmetry residual tolerance (default: 1e-6)")
    verify.add_argument("--format", choices=["text", "structured", "json"], default="text",
                        help="Report format (json is an alias of structured)")
    verify.add_argument("--out", help="Write the report to this file")
    verify.add_argument(
        "--preset",
        choices=list(SUITE_PRESETS.keys()),
        default="default",
        help="Named suite size (smoke, default, thorough)"
    )
    verify.add_argument("--timings", action="store_true", help="Include wall-clock timings in the report")

    intersect = sub.add_parser("intersect", help="Intersect two region files")
    intersect.add_argument("file_a")
    intersect.add_argument("file_b")
    intersect.add_argument("--svg", help="Write an SVG of the intersection")
    intersect.add_argument("--report", help="Write a JSON report of the intersection")
    intersect.add_argument("--perturb", type=float, metavar="MAG",
                           help="Move the second region by a random congruence of this size")
    intersect.add_argument("--seed", type=int, default=42, help="Seed for --perturb (default: 42)")
    intersect.add_argument("--tol", type=float, help="Symmetry residual tolerance (default: 1e-6)")

    render = sub.add_parser("render", help="Render a scene file to SVG")
    render.add_argument("scene")
    render.add_argument("out_svg")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    # Lazy import keeps --help fast
    from .cli import cmd_intersect, cmd_render, cmd_verify, print_error, print_experiment_list

    if args.list_experiments:
        print_experiment_list()
        return 0

    try:
        if args.command == "verify":
            if args.trials is not None and args.trials < 1:
                parser.error("--trials must be >= 1")
            return cmd_verify(
                args.names, seed=args.seed, tol=args.tol, trials=args.trials, output_path=args.out,
                fmt=args.format, preset=args.preset, timings=args.timings, quiet=args.quiet,
            )
        if args.command == "intersect":
            return cmd_intersect(args.file_a, args.file_b, emit_svg=args.svg, emit_report=args.report,
                                 perturb=args.perturb, seed=args.seed, tol=args.tol)
        if args.command == "render":
            return cmd_render(args.scene, args.out_svg)
    except CliError as exc:
        print_error(str(exc))
        return exc.exit_code

    parser.print_help()
    return 0


if __name__ == "__main__":
    sys.exit(main())
