"""Command line front end.

    brindex run FILE [--json] [--steps N] [--trunc N] [--bound N]
    brindex corpus [--json] [--filter STR] [--perturb] [...]

Exit codes: 0 success, 1 parse error, 2 mathematical domain error,
3 resource limit, 4 identity-check failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import DEFAULT_LIMITS, set_limits
from .corpus import corpus_failures, render_corpus_human, run_corpus
from .errors import (
    BrindexError,
    ExprParseError,
    ResourceLimitError,
    SessionError,
)
from .session import render_human, render_jsonl, run_session_text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brindex",
        description="Local indices of 1-forms along hypersurface singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="execute a session file")
    run_p.add_argument("file", help="session file (UTF-8, # comments)")
    corpus_p = sub.add_parser("corpus", help="run the embedded example corpus")
    corpus_p.add_argument(
        "--filter", default=None, help="only cases whose id or tag contains STR"
    )
    corpus_p.add_argument(
        "--perturb",
        action="store_true",
        help="self-test: corrupt one expectation and confirm the failure surfaces",
    )
    for p in (run_p, corpus_p):
        p.add_argument("--json", action="store_true", help="JSON Lines output")
        p.add_argument("--steps", type=int, help="normal-form reduction budget")
        p.add_argument("--trunc", type=int, help="series truncation order")
        p.add_argument("--bound", type=int, help="colength oracle degree cap")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {}
    if args.steps is not None:
        overrides["max_reduction_steps"] = args.steps
    if args.trunc is not None:
        overrides["series_trunc"] = args.trunc
        overrides["series_trunc_max"] = max(args.trunc, DEFAULT_LIMITS.series_trunc_max)
    if args.bound is not None:
        overrides["oracle_bound"] = args.bound
    if overrides:
        set_limits(**overrides)

    try:
        if args.command == "run":
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 1
            records = run_session_text(text)
            print(render_jsonl(records) if args.json else render_human(records))
            failed = any(not c.passed for r in records for c in r.checks)
            return 4 if failed else 0

        groups = run_corpus(args.filter, args.perturb)
        if args.json:
            flat = [r for _, recs in groups for r in recs]
            print(render_jsonl(flat))
        else:
            print(render_corpus_human(groups))
        return 4 if corpus_failures(groups) else 0

    except (SessionError, ExprParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except BrindexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
