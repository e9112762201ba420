#!/usr/bin/env python3
"""Run the embedded corpus with per-case timing.

    python3 scripts/run_corpus.py [--filter STR] [--json] [--perturb]

Exit code 4 when any check fails, 0 otherwise (same contract as the CLI).
"""

from __future__ import annotations

import argparse
import sys
import time

from brindex.corpus import corpus_failures, render_corpus_human, run_corpus
from brindex.session import render_jsonl


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--filter", default=None, help="substring of a case id or tag")
    parser.add_argument("--json", action="store_true", help="JSON Lines output")
    parser.add_argument(
        "--perturb",
        action="store_true",
        help="corrupt one expectation to confirm failures surface",
    )
    args = parser.parse_args()

    t0 = time.perf_counter()
    groups = run_corpus(args.filter, args.perturb)
    elapsed = time.perf_counter() - t0

    if args.json:
        print(render_jsonl([r for _, recs in groups for r in recs]))
    else:
        print(render_corpus_human(groups))
        print(f"total {elapsed:.2f}s")
    return 4 if corpus_failures(groups) else 0


if __name__ == "__main__":
    sys.exit(main())
