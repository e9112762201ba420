#!/usr/bin/env python3
"""Seeded random sweep of the two-variable identities.

    python3 scripts/sweep.py [-n CASES] [--seed SEED]

Draws random 1-forms against the pool curves, checks every identity the
library promises (both Bruce-Roberts routes, the relative split, the trivial
module evaluation, tangency order against GSV, the multiplicity bound, and
oracle agreement on all finite colengths), and prints one line per identity.
"""

from __future__ import annotations

import argparse
import sys
import time

from brindex.corpus import run_identity_sweep


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-n", type=int, default=25, help="number of accepted cases")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed")
    args = parser.parse_args()

    t0 = time.perf_counter()
    if args.seed is None:
        record = run_identity_sweep(n=args.n)
    else:
        record = run_identity_sweep(n=args.n, seed=args.seed)
    elapsed = time.perf_counter() - t0

    print(f"cases: {record.values['cases']}   skipped: {record.values['skipped']}")
    failed = 0
    for check in record.checks:
        verdict = "ok" if check.passed else "FAIL"
        failed += not check.passed
        print(f"  {check.name:<22} {check.lhs:>4} / {check.rhs:<4} {verdict}")
    print(f"total {elapsed:.2f}s")
    return 4 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
