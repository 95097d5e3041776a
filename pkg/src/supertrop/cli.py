"""Command-line entry point for the verification harness.

Examples::

    supertrop --mode conjecture --n 1..6 --trials 1000 --seed 42
    supertrop --mode detcross --n 1..7 --trials 3500
    supertrop --mode claims --n 2..3 --trials 400
    supertrop --mode oracle --n 2..6 --trials 200
    supertrop --mode bench --n 2..9 --trials 3
    supertrop --mode conjecture --input matrix.txt

``--trials`` is the total trial count; trial i uses the i-th order of the
``--n`` range, round-robin, so ``--n 1..7 --trials 3500`` runs 500 trials
per order.  The environment variable ``SUPERTROP_THREADS`` caps worker
threads (default 1); records are emitted in trial order either way.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .harness import DEFAULT_PROBS, MODES, TrialConfig, run
from .errors import RejectionLimit

__all__ = ["main", "build_parser"]


def parse_n_range(text: str):
    """Either a single order like ``4`` or an inclusive range like ``1..6``."""
    text = text.strip()
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty order range {text!r}")
        return tuple(range(lo, hi + 1))
    return (int(text),)


def parse_probs(text: str):
    parts = [Fraction(p.strip()) for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated probabilities, got {text!r}")
    return tuple(parts)


def parse_ks(text: str):
    return tuple(sorted({int(p.strip()) for p in text.split(",")}))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supertrop",
        description="Seeded verification suites for exact supertropical linear algebra.",
    )
    parser.add_argument("--mode", required=True, choices=MODES)
    parser.add_argument("--n", default="3", metavar="N|A..B",
                        help="matrix order, single value or inclusive range (default 3)")
    parser.add_argument("--k", default=None, metavar="K[,K...]",
                        help="restrict per-k checks to these k values")
    parser.add_argument("--trials", type=int, default=None,
                        help="total trial count (default 100; bench: repeats per engine, default 3)")
    parser.add_argument("--seed", type=int, default=42, help="64-bit master seed (default 42)")
    parser.add_argument("--bound", type=int, default=20,
                        help="entry values are drawn from [-bound, bound] (default 20)")
    parser.add_argument("--probs", default=None, metavar="T,G,E",
                        help="tangible,ghost,eps probabilities; exact rationals or decimals "
                             "(default 0.8,0.15,0.05)")
    parser.add_argument("--engine", default="auto", choices=("auto", "brute", "assignment", "both"),
                        help="determinant engine (auto: brute up to order 8, assignment above)")
    parser.add_argument("--allow-singular", action="store_true",
                        help="conjecture mode: keep singular draws and check k >= 1 only (exploratory)")
    parser.add_argument("--input", default=None, metavar="FILE",
                        help="run the suite once on this matrix file instead of random trials")
    parser.add_argument("--format", default="jsonl", choices=("jsonl", "pretty"))
    return parser


def _config_from_args(args) -> TrialConfig:
    trials = args.trials
    if trials is None:
        trials = 3 if args.mode == "bench" else 100
    input_text = None
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as handle:
            input_text = handle.read()
    threads_env = os.environ.get("SUPERTROP_THREADS")
    threads = int(threads_env) if threads_env else 1
    cfg = TrialConfig(
        mode=args.mode,
        n_values=parse_n_range(args.n),
        trials=trials,
        seed=args.seed,
        bound=args.bound,
        probs=parse_probs(args.probs) if args.probs else DEFAULT_PROBS,
        engine=args.engine,
        ks=parse_ks(args.k) if args.k else None,
        allow_singular=args.allow_singular,
        threads=threads,
        out_format=args.format,
        input_text=input_text,
    )
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code else 0
    try:
        cfg = _config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"supertrop: config error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg, sys.stdout, sys.stderr)
    except RejectionLimit as exc:
        print(f"supertrop: degenerate config: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"supertrop: input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
