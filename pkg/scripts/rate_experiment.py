#!/usr/bin/env python3
"""Empirical L2 convergence rate of the truncated reconstruction, per zero and domain.

For each zero index and each domain [x_min, x_max], the residual norm is
measured for l in --l and a log-log line is fitted against 2l + 1. The
Euler-Maclaurin endpoint term predicts pointwise decay like l^(Re rho - 2),
i.e. slope about -1.5 on the critical line; the fitted L2 slope is reported
next to that reference.

    python scripts/rate_experiment.py --zeros 1,2,3 --l 2,4,8,16,32,64 --out rates.csv
"""

import argparse
import csv
import sys
import time

from hplab.eigenfunctions import EigenParams
from hplab.reconstruction import l2_norm_residual, rate_fit
from hplab.zeta_zeros import load_zeros


def parse_domains(text):
    out = []
    for part in text.split(","):
        lo, hi = (float(v) for v in part.split(":"))
        out.append((lo, hi))
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--zeros", default="1,2,3", help="comma-separated zero indices")
    parser.add_argument("--l", default="2,4,8,16,32,64")
    parser.add_argument("--domains", default="0.1:10,0.05:20,0.5:2", help="LO:HI pairs, comma-separated")
    parser.add_argument("--n-grid", type=int, default=64)
    parser.add_argument("--out", default=None, help="CSV of (zero, domain, l, norm)")
    args = parser.parse_args(argv)

    idx = [int(v) for v in args.zeros.split(",")]
    ls = [int(v) for v in args.l.split(",")]
    zeros = load_zeros(max(idx))
    rows = []
    print(f"{'zero':>4} {'domain':>14} {'slope':>8} {'r^2':>7} {'time':>6}")
    for k in idx:
        p = EigenParams(zeros[k - 1].rho)
        for lo, hi in parse_domains(args.domains):
            t0 = time.perf_counter()
            pts = [(l, l2_norm_residual(l, p, lo, hi, args.n_grid)) for l in ls]
            fit = rate_fit(pts)
            rows.extend((k, lo, hi, l, v) for l, v in pts)
            print(f"{k:>4} {f'[{lo:g}, {hi:g}]':>14} {fit.slope:8.3f} {fit.r_squared:7.4f} "
                  f"{time.perf_counter() - t0:5.1f}s")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["zero", "x_min", "x_max", "l", "l2_norm"])
            for k, lo, hi, l, v in rows:
                w.writerow([k, repr(lo), repr(hi), l, format(v, ".17g")])
    return 0


if __name__ == "__main__":
    sys.exit(main())
