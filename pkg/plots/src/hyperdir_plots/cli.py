"""One command renders one figure from one CSV."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdir-plot",
        description="Render a hyperdir evaluation CSV as a figure.")
    parser.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, metavar="IMAGE")
    parser.add_argument("--title", default="", metavar="TEXT")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(args.input_csv, args.kind, args.out, args.title)
    try:
        render(spec)
    except FileNotFoundError:
        print(f"hyperdir-plot: no such file: {spec.input_csv}", file=sys.stderr)
        return 2
    except SchemaError as err:
        print(f"hyperdir-plot: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
