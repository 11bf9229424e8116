#!/usr/bin/env python3
"""Tabulate the grid lower-envelope estimate of the monotonicity modulus
delta_f for the outer-norm catalog; emits CSV rows (tag, eps, delta, resolution)."""

import argparse
from pathlib import Path

import numpy as np

from fnorms import a_norm, l1, lp, max_norm, monotonicity_profile, weighted_lp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=None, help="CSV path (default: stdout)")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--resolution", type=int, default=None)
    args = ap.parse_args()

    norms = {
        "l1": l1(args.n),
        "l1.5": lp(args.n, 1.5),
        "l2": lp(args.n, 2.0),
        "max": max_norm(args.n),
        "a_norm": a_norm(args.n),
        "weighted_l2(1,3..)": weighted_lp(args.n, 2.0, [1.0] + [3.0] * (args.n - 1)),
    }
    eps_grid = np.round(np.linspace(0.1, 0.9, 9), 2)
    lines = ["tag,eps,delta,resolution"]
    for tag, f in norms.items():
        prof = monotonicity_profile(f, args.resolution)
        for eps in eps_grid:
            lines.append(f"{tag},{eps},{prof.value(float(eps))!r},{prof.resolution}")
    text = "\n".join(lines)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)


if __name__ == "__main__":
    main()
