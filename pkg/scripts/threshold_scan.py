#!/usr/bin/env python3
"""Scan the oscillation threshold over nonlinearity and loss rate.

Prints a small table of eps_c(chi, gamma) together with the scaling
collapse eps_c * chi / gamma^2, which the coupling structure fixes to a
single constant.
"""

import argparse

import numpy as np

from opocluster import SystemParams, threshold_pump


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--chi", type=float, nargs="+",
                        default=[0.005, 0.01, 0.02, 0.1, 1.0])
    parser.add_argument("--gamma", type=float, nargs="+",
                        default=[0.5, 1.0, 2.0])
    args = parser.parse_args()

    print(f"{'chi':>10} {'gamma':>8} {'eps_c':>14} {'eps_c*chi/gamma^2':>18}")
    for chi in args.chi:
        for gamma in args.gamma:
            p = SystemParams.symmetric(chi=chi, eps=0.0, gamma=gamma)
            eps_c = threshold_pump(p)
            collapse = eps_c * chi / gamma**2
            print(f"{chi:>10g} {gamma:>8g} {eps_c:>14.6f} {collapse:>18.8f}")
    print()
    print("collapse constant should equal 2/(sqrt(5)+1) =",
          f"{2.0 / (np.sqrt(5.0) + 1.0):.8f}")


if __name__ == "__main__":
    main()
