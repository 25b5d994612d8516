"""Command-line entry: accelflow-plot --manifest PATH --out DIR [--panels LIST]."""

from __future__ import annotations

import argparse
import sys

from .render import FigureJob, JobError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="accelflow-plot",
                                     description="Render experiment CSVs into figure panels")
    parser.add_argument("--manifest", required=True, help="manifest written by the harness")
    parser.add_argument("--out", required=True, help="output directory for images")
    parser.add_argument("--panels", default=None,
                        help="comma-separated panel names (default: all in the manifest)")
    parser.add_argument("--format", default="png", dest="image_format",
                        help="image format (default png)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    panels = None
    if args.panels is not None:
        panels = tuple(p for p in args.panels.split(",") if p)
    job = FigureJob(manifest=args.manifest, out_dir=args.out, panels=panels,
                    image_format=args.image_format)
    try:
        written = render(job)
    except JobError as e:
        print(f"render error: {e}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
