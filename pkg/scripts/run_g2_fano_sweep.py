#!/usr/bin/env python3
"""Run the codimension-8 Fano threefold sweep and print the reference table.

Equivalent to::

    wflag search --format g2 --k -1 --n 3 --u-max 7 --out <records> --emit text
    wflag report table1 --from <records>

but as one self-contained program with progress lines on stderr.
"""
from __future__ import annotations

import argparse
import sys

from wflag.cli import _run_sweep
from wflag.records import EMITTERS
from wflag.search import SearchConfig


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--u-max", type=int, default=7)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default=None, help="record file (append)")
    parser.add_argument("--emit", choices=sorted(EMITTERS), default="text")
    args = parser.parse_args(argv)

    config = SearchConfig(
        format_name="g2", k=-1, n=3, u_max=args.u_max, jobs=args.jobs
    )
    merged = _run_sweep(config, args.out, args.out, sys.stderr)
    EMITTERS[args.emit](merged, sys.stdout)
    print(f"# {len(merged)} candidates", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
