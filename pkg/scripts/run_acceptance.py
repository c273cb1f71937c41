"""Run the acceptance suites and exit nonzero if any of them fails."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sigmadamp.acceptance import SUITES, AcceptanceLab  # noqa: E402
from sigmadamp.cli import _stable_details, dumps17  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suites", help=f"comma separated subset of: {', '.join(SUITES)}")
    ap.add_argument("--quad-tol", type=float, default=1e-6)
    ap.add_argument("--json", type=Path, help="write the full report here")
    args = ap.parse_args()

    names = tuple(s.strip() for s in args.suites.split(",")) if args.suites else None
    lab = AcceptanceLab(quad_tol=args.quad_tol)
    results = lab.run(names)

    for res in results:
        print(f"[{'PASS' if res.passed else 'FAIL'}] {res.name}: {res.message}")
    failed = [res.name for res in results if not res.passed]
    print(f"{len(results) - len(failed)} passed, {len(failed)} failed")

    if args.json:
        payload = {
            "schema_version": 1,
            "results": [
                {
                    "name": res.name,
                    "passed": res.passed,
                    "message": res.message,
                    "details": _stable_details(res.details),
                }
                for res in results
            ],
            "all_passed": not failed,
        }
        args.json.parent.mkdir(parents=True, exist_ok=True)
        args.json.write_text(dumps17(payload) + "\n")
        print(f"wrote {args.json}")

    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
