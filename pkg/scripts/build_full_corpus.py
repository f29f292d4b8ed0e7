#!/usr/bin/env python3
"""Build the full balanced corpus from the bundled seed.

Runs funnel -> augment -> balance -> tag over all nine region classes at
6,400 rows per class (57,600 total) and writes the tagged corpus, the
balanced records, and a stats summary.

Usage:
    python scripts/build_full_corpus.py [--out-dir out] [--target 6400]
"""
import argparse
import json
import sys
import time
from pathlib import Path

from dialect_forge.bundled import seed_corpus_path
from dialect_forge.cli import main as forge


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", type=Path)
    parser.add_argument("--target", default=6400, type=int)
    parser.add_argument("--seed", default=42, type=int)
    args = parser.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    tagged = args.out_dir / "tagged_corpus.jsonl"
    records = args.out_dir / "balanced_records.jsonl"
    stats_path = args.out_dir / "stats.json"

    start = time.monotonic()
    code = forge([
        "build", "--in", str(seed_corpus_path()), "--regions", "all",
        "--target", str(args.target), "--seed", str(args.seed),
        "--out", str(tagged), "--records-out", str(records),
    ])
    if code != 0:
        return code
    elapsed = time.monotonic() - start

    code = forge(["stats", "--in", str(records), "--out", str(stats_path)])
    if code != 0:
        return code
    stats = json.loads(stats_path.read_text(encoding="utf-8"))
    print(f"built {stats['total']} rows in {elapsed:.1f}s "
          f"({args.target} per region class)")
    for label, count in stats["regions"].items():
        print(f"  {label:16s} {count:6d}")
    print(f"tagged corpus: {tagged}")
    print(f"records:       {records}")
    print(f"stats:         {stats_path}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
