"""
Nonbinary Polar Codec CLI
=========================
Command surface for construction, encoding, FER sweeps, timing reports
and sorter checks.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, TextIO

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table
from tqdm import tqdm

from modules import __version__
from modules.app.config import resolve_run_config
from modules.app.controller import RunController
from modules.app.events import PointEvent, ProgressEvent, RunEvent
from modules.errors import PolarCodecError, RunConfigError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

# argparse bookkeeping that is not part of RunConfig
_NON_CONFIG_KEYS = {"handler", "config", "verbose", "quiet"}

logger = logging.getLogger(__name__)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting."""

    def error(self, message: str):
        raise _UsageError(f"{self.prog}: error: {message}")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file (flags override it)")
    common.add_argument("--verbose", action="store_true", help="Debug logging")
    common.add_argument("--quiet", action="store_true", help="Errors only, no progress bars")
    common.add_argument("--seed", type=int, help="Random seed (default: 0)")
    common.add_argument("--workers", type=int, help="Worker processes (default: 1)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Create the root CLI parser."""
    parser = _Parser(prog="nbpolar", description="Nonbinary polar codec toolkit")
    parser.add_argument("--version", action="version", version=f"nbpolar {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common_options()

    # construct
    construct_parser = subparsers.add_parser("construct", parents=[common], help="Build a frozen-set file")
    construct_parser.add_argument("--N", type=int, help="Code length (default: 128)")
    construct_parser.add_argument("--K", type=int, help="Free symbols (default: 64)")
    construct_parser.add_argument("--q", type=int, help="Field order (default: 256)")
    construct_parser.add_argument("--poly", help="Reduction polynomial, e.g. 0x11D")
    construct_parser.add_argument("--alpha", help="Kernel alpha")
    construct_parser.add_argument("--beta", help="Kernel beta")
    construct_parser.add_argument("--search-kernel", dest="search_kernel", action="store_true", default=None,
                                  help="Pick alpha/beta by polarization proxy")
    construct_parser.add_argument("--design-ebn0", dest="design_ebn0", type=float, help="Design Eb/N0 in dB")
    construct_parser.add_argument("--trials", type=int, help="Monte-Carlo frames (>= 1000)")
    construct_parser.add_argument("--output", help="Frozen-set file to write")
    construct_parser.set_defaults(handler=handle_construct)

    # encode
    encode_parser = subparsers.add_parser("encode", parents=[common], help="Encode a message")
    encode_parser.add_argument("--code", help="Frozen-set file")
    encode_parser.add_argument("--message", help="Comma-separated message symbols")
    encode_parser.add_argument("--random", action="store_true", default=None, help="Random message from --seed")
    encode_parser.set_defaults(handler=handle_encode)

    # fer-sim
    fer_parser = subparsers.add_parser("fer-sim", parents=[common], help="Monte-Carlo FER sweep")
    fer_parser.add_argument("--code", help="Frozen-set file")
    fer_parser.add_argument("--decoder", choices=["sc", "scl", "s-nbscl"], help="Decoder (default: scl)")
    fer_parser.add_argument("--L", type=int, help="List size (default: 4)")
    fer_parser.add_argument("--M", type=int, help="Split factor for s-nbscl (default: 2)")
    fer_parser.add_argument("--Ls", type=int, help="Skim size for s-nbscl (default: 16)")
    fer_parser.add_argument("--ebn0", help='Eb/N0 points in dB, e.g. "1.0,1.5,2.0"')
    fer_parser.add_argument("--min-errors", dest="min_errors", type=int, help="Errors per point (default: 100)")
    fer_parser.add_argument("--max-frames", dest="max_frames", type=int, help="Frame budget per point")
    fer_parser.add_argument("--quantized", action="store_true", default=None, help="Fixed-point decoding")
    fer_parser.add_argument("--output", help="Output prefix for .csv and .json")
    fer_parser.set_defaults(handler=handle_fer)

    # timing-report
    timing_parser = subparsers.add_parser("timing-report", parents=[common], help="Cycle and throughput model")
    timing_parser.add_argument("--arch", choices=["dm", "st", "both"], help="Architecture (default: both)")
    timing_parser.add_argument("--N", type=int, help="Code length (default: 128)")
    timing_parser.add_argument("--K", type=int, help="Free symbols (default: 64)")
    timing_parser.add_argument("--q", type=int, help="Field order (default: 256)")
    timing_parser.add_argument("--L", type=int, help="List size (default: 4)")
    timing_parser.add_argument("--M", type=int, help="Split factor (default: 2)")
    timing_parser.add_argument("--Ls", type=int, help="Skim size (default: 16)")
    timing_parser.add_argument("--clock", type=float, help="Clock in Hz (default: 500e6)")
    source = timing_parser.add_mutually_exclusive_group()
    source.add_argument("--code", help="Take frozen and level patterns from a frozen-set file")
    source.add_argument("--levels", help='Bypassed/reconciled level counts (default: "19/45")')
    timing_parser.add_argument("--format", choices=["json", "csv", "table"], help="Output format (default: table)")
    timing_parser.add_argument("--output", help="Write the report to a file instead of the terminal")
    timing_parser.set_defaults(handler=handle_timing)

    # sorter-check
    sorter_parser = subparsers.add_parser("sorter-check", parents=[common], help="Validate the 2D sorter")
    sorter_parser.add_argument("--W", help='Sorter widths (default: "16,32")')
    sorter_parser.add_argument("--trials", dest="sorter_trials", type=int, help="Random inputs per width")
    sorter_parser.set_defaults(handler=handle_sorter_check)

    return parser


def _print(msg: str, out: TextIO) -> None:
    out.write(msg + "\n")
    out.flush()


def _console(out: TextIO) -> Console:
    return Console(file=out, width=120, highlight=False)


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Install a RichHandler on the root logger."""
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


class _ProgressBars:
    """Renders progress events as one tqdm bar per stage; a point event closes its bar."""

    def __init__(self, out: TextIO, disable: bool):
        self.out = out
        self.disable = disable
        self._bars: dict[str, tqdm] = {}

    def __call__(self, event: RunEvent) -> None:
        if isinstance(event, PointEvent):
            bar = self._bars.pop(event.stage, None)
            if bar is not None:
                bar.n = bar.total
                bar.set_postfix_str(f"FER {event.fer:.3g} ({event.errors}/{event.frames})")
                bar.close()
            return
        if not isinstance(event, ProgressEvent):
            return
        bar = self._bars.get(event.stage)
        if bar is None:
            bar = tqdm(total=1000, desc=event.stage, file=self.out, disable=self.disable, leave=True)
            self._bars[event.stage] = bar
        bar.n = int(event.progress * 1000)
        bar.set_postfix_str(event.message)
        bar.refresh()

    def close(self) -> None:
        for bar in self._bars.values():
            bar.close()


def handle_construct(args: argparse.Namespace, controller: RunController, out: TextIO) -> int:
    """Construct a code and write its frozen-set file."""
    config = args.run_config
    bars = _ProgressBars(out, disable=args.quiet or not out.isatty())
    try:
        result = controller.construct(config, on_event=bars)
    finally:
        bars.close()

    if result.kernel_scores:
        for (alpha, beta), score in result.kernel_scores.items():
            _print(f"kernel alpha={alpha} beta={beta}: proxy={score:.6f}", out)
    _print(f"code: {result.code.describe()}", out)
    _print(f"frozen symbols: {len(result.code.frozen_indices)}", out)
    _print(f"output: {result.path}", out)
    return EXIT_OK


def handle_encode(args: argparse.Namespace, controller: RunController, out: TextIO) -> int:
    """Encode a message and print message and codeword."""
    message, codeword = controller.encode(args.run_config)
    _print("message: " + ",".join(str(int(v)) for v in message), out)
    _print("codeword: " + ",".join(str(int(v)) for v in codeword), out)
    return EXIT_OK


def handle_fer(args: argparse.Namespace, controller: RunController, out: TextIO) -> int:
    """Run an FER sweep and print the resulting points."""
    bars = _ProgressBars(out, disable=args.quiet or not out.isatty())
    try:
        result = controller.run_fer(args.run_config, on_event=bars)
    finally:
        bars.close()

    table = Table(title="Frame error rate")
    for column in ("Eb/N0 (dB)", "frames", "errors", "failures", "FER", "95% CI"):
        table.add_column(column, justify="right")
    for point in result.points:
        lo, hi = point.ci95
        table.add_row(f"{point.ebn0_db:g}", str(point.frames), str(point.errors),
                      str(point.failures), f"{point.fer:.3e}", f"[{lo:.2e}, {hi:.2e}]")
    _console(out).print(table)
    _print(f"csv: {result.csv_path}", out)
    _print(f"manifest: {result.manifest_path}", out)
    return EXIT_OK


_TIMING_COLUMNS = ("arch", "trellis_cycles", "pm_cycles", "sort_cycles", "update_cycles",
                   "recon_cycles", "total_cycles", "throughput_mbps")


def _timing_csv(result, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(_TIMING_COLUMNS)
    for report in result.reports.values():
        row = report.to_dict()
        writer.writerow([row[key] for key in _TIMING_COLUMNS])


def _timing_table(result, out: TextIO) -> None:
    table = Table(title="Frame latency")
    for column in _TIMING_COLUMNS:
        table.add_column(column.replace("_", " "), justify="right")
    for report in result.reports.values():
        row = report.to_dict()
        table.add_row(*(f"{row[key]:.2f}" if key == "throughput_mbps" else str(row[key])
                        for key in _TIMING_COLUMNS))
    console = _console(out)
    console.print(table)
    if result.speedup is not None:
        console.print(f"speedup st vs dm: {result.speedup:.1f}x")


def handle_timing(args: argparse.Namespace, controller: RunController, out: TextIO) -> int:
    """Print or write the cycle breakdown."""
    config = args.run_config
    result = controller.timing(config)

    if config.output is not None and config.format != "table":
        path = Path(config.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            if config.format == "json":
                json.dump(result.to_dict(), f, indent=2, sort_keys=True)
                f.write("\n")
            else:
                _timing_csv(result, f)
        _print(f"output: {path}", out)
    elif config.format == "json":
        _print(json.dumps(result.to_dict(), indent=2, sort_keys=True), out)
    elif config.format == "csv":
        _timing_csv(result, out)
    else:
        _timing_table(result, out)
    return EXIT_OK


def handle_sorter_check(args: argparse.Namespace, controller: RunController, out: TextIO) -> int:
    """Randomized 2D sorter validation."""
    rows = controller.sorter_check(args.run_config)
    table = Table(title="2D sorter check")
    for column in ("W", "trials", "sorted", "phases", "cycles", "passes", "shear-6 counterexamples"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(str(row["W"]), str(row["trials"]), str(row["sorted"]), str(row["phases"]),
                      str(row["cycles"]), str(row["passes"]), str(row["shear6_counterexamples"]))
    _console(out).print(table)
    return EXIT_OK


def main(
    argv: Optional[list[str]] = None,
    controller_factory: Callable[[], RunController] = RunController,
    out: TextIO = sys.stdout,
) -> int:
    """
    CLI entrypoint.

    Args:
        argv: Optional argv override for testing.
        controller_factory: Dependency-injection hook for tests.
        out: Output stream.

    Returns:
        Process exit code: 0 success, 1 usage error, 2 runtime error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _print(str(exc), out)
        return EXIT_USAGE

    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_help(file=out)
        return EXIT_USAGE

    setup_logging(args.verbose, args.quiet)
    flags = {key: value for key, value in vars(args).items() if key not in _NON_CONFIG_KEYS}
    try:
        args.run_config = resolve_run_config(flags, args.config)
    except RunConfigError as exc:
        _print(f"error: {exc}", out)
        return EXIT_USAGE

    controller = controller_factory()
    try:
        return int(handler(args, controller, out))
    except RunConfigError as exc:
        _print(f"error: {exc}", out)
        return EXIT_USAGE
    except PolarCodecError as exc:
        _print(f"error: {exc}", out)
        return EXIT_RUNTIME
    except Exception as exc:
        logger.exception(f"{args.command} failed")
        _print(f"error: {exc}", out)
        return EXIT_RUNTIME


if __name__ == "__main__":
    raise SystemExit(main())
