#!/usr/bin/env python3
"""Run the seven-way coherence dashboard across the builtin space matrix and
write one JSON report per space plus a CSV summary of the column statuses."""

import argparse
import json
from pathlib import Path

from fnorms import TrialConfig, builtin_matrix, dashboard_matrix, seven_way_dashboard

COLUMNS = ("delta2", "oc", "um", "ulum", "dum", "llum", "ium")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=10)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = TrialConfig(seed=args.seed, trials=args.trials)

    eligible = dashboard_matrix()
    rows = []
    for name, pair in eligible.items():
        rep = seven_way_dashboard(pair, cfg)
        (out / f"dashboard.{name}.json").write_text(
            json.dumps(rep.to_json(), indent=2, sort_keys=True) + "\n")
        cols = rep.details["columns"]
        rows.append([name, rep.verdict] + [cols.get(c, {}).get("status", "-") for c in COLUMNS])
        print(f"{name:28s} {rep.verdict:6s} "
              + " ".join(f"{c}={cols.get(c, {}).get('status', '-')}" for c in COLUMNS))

    skipped = sorted(set(builtin_matrix()) - set(eligible))
    lines = ["space,verdict," + ",".join(COLUMNS)]
    lines += [",".join(r) for r in rows]
    lines += [f"{name},skipped-outside-hypotheses," + ",".join("-" for _ in COLUMNS)
              for name in skipped]
    (out / "matrix_summary.csv").write_text("\n".join(lines) + "\n")
    print(f"\nwrote {len(rows)} dashboards + summary to {out}/ "
          f"({len(skipped)} spaces outside the seven-way hypotheses)")


if __name__ == "__main__":
    main()
