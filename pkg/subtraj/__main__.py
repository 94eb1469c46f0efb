"""Command line interface: ``subtraj cover`` and ``subtraj maximize``."""
import argparse
import logging
import sys

from subtraj.config import RunConfig
from subtraj.io import FORMATS
from subtraj.io import ingest
from subtraj.report import emit
from subtraj.runner import run
from subtraj.utils import configure_logging

__author__ = "The subtraj developers"

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_UNVERIFIED, EXIT_ERROR = 0, 1, 2


def _common(parser):
    parser.add_argument("--input", required=True, help="CSV or JSON lines curve")
    parser.add_argument("--format", choices=FORMATS, default=None)
    parser.add_argument("--delta", type=float, required=True)
    parser.add_argument("--ell", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument(
        "--simplifier", choices=("greedy", "identity"), default="greedy"
    )
    parser.add_argument("--tolerance", type=float, default=1e-9)
    parser.add_argument("--out", default=None, help="JSON report path")
    parser.add_argument("--plot", default=None, help="SVG plot path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="subtraj",
        description="Subtrajectory covering and coverage maximization.",
    )
    modes = parser.add_subparsers(dest="mode", required=True)

    cover = modes.add_parser("cover", help="cover the whole curve")
    _common(cover)
    cover.add_argument("--fast", action="store_true")

    maximize = modes.add_parser("maximize", help="cover as much as k centers can")
    _common(maximize)
    maximize.add_argument("--k", type=int, required=True)
    maximize.add_argument("--epsilon", type=float, default=0.1)
    return parser


def config_from_args(args):
    """The :class:`~subtraj.config.RunConfig` of parsed arguments."""
    options = dict(
        mode=args.mode,
        delta=args.delta,
        ell=args.ell,
        seed=args.seed,
        tolerance=args.tolerance,
        simplifier=args.simplifier,
        threads=args.threads,
    )
    if args.mode == "cover":
        options["fast"] = args.fast
    else:
        options.update(k=args.k, epsilon=args.epsilon)
    return RunConfig(**options)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        configure_logging()
        config = config_from_args(args)
        curve = ingest(args.input, args.format)
        report = run(config, curve)
        text = emit(report, out=args.out, plot=args.plot)
    except (ValueError, TypeError, RuntimeError, OSError) as error:
        print(f"subtraj: error: {error}", file=sys.stderr)
        return EXIT_ERROR
    if args.out is None:
        sys.stdout.write(text)
    if config.mode == "cover" and not report.verified:
        print("subtraj: the cover failed verification", file=sys.stderr)
        return EXIT_UNVERIFIED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
