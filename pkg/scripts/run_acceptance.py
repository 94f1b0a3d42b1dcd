"""Run acceptance criteria 1-9 and write a JSON report.

    python3 scripts/run_acceptance.py [--only 1,4] [--out acceptance.json]
"""
import argparse
import sys

from stmodkit.acceptance import AcceptanceConfig, run_all
from stmodkit.io import write_json


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--only", default="")
    p.add_argument("--out", default="")
    args = p.parse_args()
    only = {int(x) for x in args.only.split(",") if x} or None
    results = run_all(AcceptanceConfig(), echo=lambda s: print(s, flush=True), only=only)
    ok = all(r.passed for r in results)
    if args.out:
        write_json({"passed": ok, "criteria": [r.to_json() for r in results]}, args.out)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
