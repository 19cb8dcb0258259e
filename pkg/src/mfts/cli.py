"""Command-line front end.

Runs the full analysis on a CSV file or a built-in generator and writes a
JSON report plus plot-ready CSVs, or prints the report to stdout when no
output directory is given. Exit status 0 on success, 2 on configuration
problems, 1 on runtime failures.
"""

from __future__ import annotations

import argparse
import sys

from .pipeline import AnalysisConfig, emit_plot_data, run_analysis, write_report
from .version import __version__

__all__ = ["build_parser", "main"]


def _parse_scales(text: str):
    if text == "auto":
        return None
    j1, sep, j2 = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"scales: expected j1:j2 or auto, got {text!r}"
        )
    try:
        return (int(j1), int(j2))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"scales: bounds must be integers, got {text!r}"
        ) from None


def _parse_qspec(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"q: expected lo:step:hi, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"q: bounds and step must be numbers, got {text!r}"
        ) from None


def _parse_ci(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"ci: expected lo,hi percentiles, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"ci: percentiles must be numbers, got {text!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="analyze",
        description="Multifractal analysis of a 1-D time series "
        "(wavelet leaders, log-cumulants, bootstrap intervals).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH", help="CSV file with the series")
    source.add_argument(
        "--generate",
        metavar="SPEC",
        help="synthetic input, e.g. cascade:levels=15,p=0.7 | fbm:n=32768,hurst=0.7 "
        "| fgn:n=32768,hurst=0.8 | counts:n=65536,shots=2000,prob=0.4",
    )
    parser.add_argument("--column", type=int, default=0, help="zero-based CSV column (default 0)")
    parser.add_argument("--delimiter", default=",", help="CSV delimiter (default ',')")
    parser.add_argument("--header", action="store_true", help="skip one header row")
    parser.add_argument(
        "--wavelet", type=int, default=3, metavar="N", help="vanishing moments (default 3)"
    )
    parser.add_argument(
        "--scales",
        type=_parse_scales,
        default="auto",
        metavar="j1:j2|auto",
        help="fixed scale range or automatic selection (default auto)",
    )
    parser.add_argument(
        "--q",
        type=_parse_qspec,
        default=(-7.0, 0.5, 7.0),
        metavar="lo:step:hi",
        help="moment grid (default -7:0.5:7)",
    )
    parser.add_argument(
        "--bootstrap", type=int, default=2000, metavar="B", help="replicates (default 2000)"
    )
    parser.add_argument(
        "--ci", type=_parse_ci, default=(5.0, 95.0), metavar="lo,hi",
        help="CI percentiles (default 5,95)",
    )
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument(
        "--surrogates",
        choices=("shuffle", "iaaft", "both"),
        default=None,
        help="run surrogate ensembles",
    )
    parser.add_argument(
        "--surrogate-count", type=int, default=2000, metavar="K",
        help="ensemble size per method (default 2000)",
    )
    parser.add_argument(
        "--iaaft-max-iter", type=int, default=200, metavar="K",
        help="IAAFT iteration cap (default 200)",
    )
    parser.add_argument(
        "--iaaft-tol", type=float, default=1e-6, metavar="T",
        help="IAAFT spectrum convergence tolerance (default 1e-6)",
    )
    parser.add_argument("--mfdfa", action="store_true", help="add the detrended-fluctuation cross-check")
    parser.add_argument("--out", metavar="DIR", help="write report.json and plot CSVs here")
    return parser


def _config_from_args(args) -> AnalysisConfig:
    scales = args.scales if args.scales != "auto" else None
    if args.surrogates is None:
        methods = ()
    elif args.surrogates == "both":
        methods = ("shuffle", "iaaft")
    else:
        methods = (args.surrogates,)
    q_lo, q_step, q_hi = args.q
    return AnalysisConfig(
        input_path=args.input,
        generate=args.generate,
        column=args.column,
        delimiter=args.delimiter,
        has_header=args.header,
        wavelet=args.wavelet,
        scales=scales,
        q_lo=q_lo,
        q_step=q_step,
        q_hi=q_hi,
        bootstrap_replicates=args.bootstrap,
        ci=args.ci,
        seed=args.seed,
        surrogates=methods,
        surrogate_count=args.surrogate_count,
        iaaft_max_iter=args.iaaft_max_iter,
        iaaft_tol=args.iaaft_tol,
        run_mfdfa=args.mfdfa,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_analysis(config)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        try:
            write_report(report, args.out)
            emit_plot_data(report, args.out)
        except OSError as exc:
            print(f"error: cannot write to {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(report.to_json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
