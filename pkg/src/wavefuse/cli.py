"""Command-line driver.

    wavefuse fuse --method all a.pgm b.pgm -o out/

writes ``out/fused_<method>.pgm`` for every selected method, a report
``out/report.<csv|tsv|txt>`` and prints the report to stdout.

Exit status: 0 success, 1 usage error, 2 I/O error, 3 size mismatch,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

from wavefuse.core import ImageFormatError, load_image, save_image
from wavefuse.filterbank import BANK_NAMES
from wavefuse.fusion import (
    METHOD_LABELS,
    METHODS,
    DimensionMismatchError,
    FusionRule,
    Method,
    NumericalFailure,
    fuse_images,
)
from wavefuse.metrics import POLICIES, UndefinedMetricError, report

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_SIZE, EXIT_NUMERIC = 0, 1, 2, 3, 4

HEADER = ("method", "EN", "PSNR", "RMSE", "IQI", "SD")
FORMATS = ("csv", "tsv", "pretty")


@dataclass(frozen=True)
class RunConfig:
    input1: str
    input2: str
    output_dir: str
    method: str = "all"
    levels: int = 4
    bank: str = "db4"
    approx_rule: str = "average"
    reference_policy: str = "mean_of_both"
    report_format: str = "csv"
    # accepted for symmetry with other tools; nothing in the pipeline is random
    seed: int | None = None

    def methods(self):
        return METHODS if self.method == "all" else (self.method,)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wavefuse", description="Wavelet-domain fusion of two registered grayscale images.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fuse = sub.add_parser("fuse", help="fuse an image pair and report quality metrics")
    fuse.add_argument("input1")
    fuse.add_argument("input2")
    fuse.add_argument("-o", "--output-dir", required=True)
    fuse.add_argument("--method", choices=METHODS + ("all",), default="all")
    fuse.add_argument("--levels", type=int, default=4)
    fuse.add_argument("--bank", choices=BANK_NAMES, default="db4", help="filter bank for dwt/swt")
    fuse.add_argument("--approx-rule", choices=("average", "max_magnitude"), default="average")
    fuse.add_argument("--reference", dest="reference_policy", choices=POLICIES, default="mean_of_both")
    fuse.add_argument("--format", dest="report_format", choices=FORMATS, default="csv")
    fuse.add_argument("--seed", type=int, default=None, help="reserved; the pipeline is deterministic")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.levels < 1:
        build_parser().error("--levels must be >= 1")
    return RunConfig(
        input1=ns.input1,
        input2=ns.input2,
        output_dir=ns.output_dir,
        method=ns.method,
        levels=ns.levels,
        bank=ns.bank,
        approx_rule=ns.approx_rule,
        reference_policy=ns.reference_policy,
        report_format=ns.report_format,
        seed=ns.seed,
    )


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.4f}"


def render_report(reports, fmt: str = "csv") -> str:
    """Render metric rows; ``pretty`` transposes to one column per method."""
    if fmt in ("csv", "tsv"):
        sep = "," if fmt == "csv" else "\t"
        lines = [sep.join(HEADER)]
        for name, rep in reports:
            lines.append(sep.join([name] + [_fmt(v) for v in rep.row()]))
        return "\n".join(lines) + "\n"
    if fmt != "pretty":
        raise ValueError(f"unknown report format {fmt!r}")
    cols = [METHOD_LABELS.get(name, name) for name, _ in reports]
    cells = [[_fmt(v) for v in rep.row()] for _, rep in reports]
    first = max(len("Bench marks"), *(len(h) for h in HEADER[1:]))
    widths = [max(len(c), *(len(cells[i][r]) for r in range(5))) for i, c in enumerate(cols)]
    out = ["  ".join(["Bench marks".ljust(first)] + [c.rjust(w) for c, w in zip(cols, widths)])]
    out.append("  ".join(["-" * first] + ["-" * w for w in widths]))
    for r, metric in enumerate(HEADER[1:]):
        out.append("  ".join([metric.ljust(first)] + [cells[i][r].rjust(w) for i, w in enumerate(widths)]))
    return "\n".join(out) + "\n"


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("WAVEFUSE_THREADS", "")))
    except ValueError:
        return max(1, min(len(METHODS), os.cpu_count() or 1))


def run(config: RunConfig) -> int:
    try:
        img1 = load_image(config.input1)
        img2 = load_image(config.input2)
    except (OSError, ImageFormatError) as exc:
        print(f"wavefuse: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    if img1.shape != img2.shape:
        print(
            f"wavefuse: input sizes differ: {config.input1} is {img1.width}x{img1.height}, "
            f"{config.input2} is {img2.width}x{img2.height}",
            file=sys.stderr,
        )
        return EXIT_SIZE
    try:
        rule = FusionRule(approx_rule=config.approx_rule)
        methods = [Method(m, config.levels, config.bank) for m in config.methods()]
    except ValueError as exc:
        print(f"wavefuse: {exc}", file=sys.stderr)
        return EXIT_USAGE

    def work(method):
        fused = fuse_images(img1, img2, method, rule)
        return fused, report(fused, img1, img2, config.reference_policy, method.variant)

    try:
        with ThreadPoolExecutor(max_workers=min(_thread_cap(), len(methods))) as pool:
            results = list(pool.map(work, methods))
    except DimensionMismatchError as exc:
        print(f"wavefuse: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (NumericalFailure, UndefinedMetricError) as exc:
        print(f"wavefuse: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"wavefuse: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rows = [(m.variant, rep) for m, (_, rep) in zip(methods, results)]
    text = render_report(rows, config.report_format)
    ext = {"csv": "csv", "tsv": "tsv", "pretty": "txt"}[config.report_format]
    try:
        os.makedirs(config.output_dir, exist_ok=True)
        for m, (fused, _) in zip(methods, results):
            save_image(fused, os.path.join(config.output_dir, f"fused_{m.variant}.pgm"))
        with open(os.path.join(config.output_dir, f"report.{ext}"), "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"wavefuse: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    config = parse_config(sys.argv[1:] if argv is None else argv)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
