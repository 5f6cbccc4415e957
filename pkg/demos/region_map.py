"""Map of the region where each complexity surface is nonnegative.

Exponentially many critical points (or local maxima) exist exactly where the
surface is >= 0, so the emitted masks draw the phase portrait in the
(overlap, value) plane: a band around m = 0 and, above the critical SNR, a
tangency island near the planted direction.  The island only touches zero,
so a small tolerance makes it visible on a finite grid.
"""

import argparse
import os

import numpy as np

from tensorlandscape import GridSpec, ModelParams, grid_centers, region_nonnegative


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--lambda", dest="lam", type=float, default=2.25)
    ap.add_argument("--m-steps", type=int, default=240)
    ap.add_argument("--x-steps", type=int, default=600)
    ap.add_argument("--tol", type=float, default=2e-3)
    ap.add_argument("--outdir", default="demo_out")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    params = ModelParams(args.k, args.lam)
    grid = GridSpec(m_min=-0.999, m_max=0.999, x_min=-3.0, x_max=3.0,
                    m_steps=args.m_steps, x_steps=args.x_steps)
    m, x = grid_centers(grid)
    for which in ("star", "zero"):
        mask = region_nonnegative(params, grid, which, tol=args.tol)
        frac = mask.mean()
        m_cols = mask.any(axis=1)
        # count m-runs: connected components of the band structure
        runs = int(np.count_nonzero(np.diff(m_cols.astype(int)) == 1)
                   + (1 if m_cols[0] else 0))
        print(f"{which}: {frac:.4%} of cells nonnegative (tol {args.tol}), "
              f"{runs} overlap component(s)")
        path = os.path.join(args.outdir, f"region_{which}_lam{args.lam}.csv")
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write("m,x,inside\n")
            for i in range(m.size):
                for j in range(x.size):
                    fh.write(f"{m[i]:.17g},{x[j]:.17g},{int(mask[i, j])}\n")
        print(f"  wrote {path}")


if __name__ == "__main__":
    main()
