#!/usr/bin/env python3
"""Run the full claim battery over the default corpus and print the tally.

Equivalent to `nclosed verify --corpus default`; kept as a script so the
whole suite can be kicked off (and its JSON archived) without remembering
CLI flags.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from nclosed.verify import DEFAULT_CORPUS, run_verification  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--json-out", type=Path, default=None,
                        help="also write the JSON report here")
    args = parser.parse_args()

    report = run_verification(DEFAULT_CORPUS, seed=args.seed, jobs=args.jobs)
    print(report.render_text())
    if args.json_out:
        args.json_out.write_text(
            json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
        print(f"JSON report written to {args.json_out}")
    return 2 if report.violation_count else 0


if __name__ == "__main__":
    raise SystemExit(main())
