#!/usr/bin/env python3
"""Regenerate the reference sweep dataset: P(k, x) for k = 5..8 over F_1000,
all three computation routes side by side.

The CSV is byte-deterministic, so reruns can be diffed directly."""

import argparse
import sys

from harosgraph.cli import main as haros_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--order", type=int, default=1000)
    parser.add_argument("--k", default="5,6,7,8")
    parser.add_argument("--out", default="sweep_f1000.csv")
    args = parser.parse_args()
    return haros_main(
        ["sweep", "--k", args.k, "--order", str(args.order), "--out", args.out]
    )


if __name__ == "__main__":
    sys.exit(main())
