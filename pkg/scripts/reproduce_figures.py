#!/usr/bin/env python3
"""Regenerate all reference figure data at the default operating point.

Writes fig2, fig3, fig5, fig6 and fig7 CSVs plus the full sweep grid to
the chosen output directory. Runs entirely through the CLI so the output
is identical to what a user would get by hand.
"""

import argparse
import sys

from opocluster.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--config", default=None, help="configuration file")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    base = ["--out", args.out, "--seed", str(args.seed)]
    if args.config:
        base = ["--config", args.config] + base
    for fig in ("fig2", "fig3", "fig5", "fig6", "fig7"):
        rc = cli_main(base + ["figure", fig])
        if rc != 0:
            return rc
    return cli_main(base + ["sweep"])


if __name__ == "__main__":
    sys.exit(main())
