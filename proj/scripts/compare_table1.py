#!/usr/bin/env python3
"""Compare a corrnet sector table against the published 2007-08-01..2008-10-10 values.

Usage: compare_table1.py OUT_DIR [--tolerance 0.02]

OUT_DIR is a directory written by `corrnet run` on real daily closes. The
script reads sector_table.csv (and centrality.csv, if present) and reports
per-cell differences under two diagonal conventions:

  exclusive   within-sector mean over pairs i != j (what corrnet writes)
  inclusive   mean over all n*n ordered pairs including rho_ii = 1,
              i.e. ((n - 1) * m + 1) / n for exclusive mean m

Exit status is 0 when every cell is within tolerance under at least one
convention, 1 otherwise, 2 on bad input.
"""

import argparse
import csv
import sys
from pathlib import Path

SECTORS = [
    "Basic Materials", "Conglomerates", "Consumer Goods", "Financial", "Healthcare",
    "Industrial Goods", "Services", "Technology", "Utilities",
]
COUNTS = [61, 7, 61, 85, 49, 42, 98, 100, 30]
PUBLISHED = [
    [0.65, 0.68, 0.46, 0.52, 0.46, 0.62, 0.52, 0.58, 0.60],
    [0.68, 0.88, 0.62, 0.69, 0.60, 0.79, 0.70, 0.74, 0.75],
    [0.46, 0.62, 0.48, 0.53, 0.45, 0.56, 0.52, 0.53, 0.55],
    [0.52, 0.69, 0.53, 0.64, 0.49, 0.63, 0.59, 0.59, 0.60],
    [0.46, 0.60, 0.45, 0.49, 0.46, 0.53, 0.49, 0.51, 0.54],
    [0.62, 0.79, 0.56, 0.63, 0.53, 0.71, 0.63, 0.66, 0.66],
    [0.52, 0.70, 0.52, 0.59, 0.49, 0.63, 0.59, 0.60, 0.61],
    [0.58, 0.74, 0.53, 0.59, 0.51, 0.66, 0.60, 0.65, 0.63],
    [0.60, 0.75, 0.55, 0.60, 0.54, 0.66, 0.61, 0.63, 0.76],
]
PUBLISHED_HUB = "CBS"


def read_table(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0][:2] != ["sector", "count"] or rows[0][2:] != SECTORS:
        raise ValueError(f"{path}: unexpected header {rows[0] if rows else []}")
    counts, values = {}, {}
    for row in rows[1:]:
        name = row[0]
        counts[name] = int(row[1])
        values[name] = [float(x) if x else None for x in row[2:]]
    missing = [s for s in SECTORS if s not in values]
    if missing:
        raise ValueError(f"{path}: missing rows for {', '.join(missing)}")
    return [counts[s] for s in SECTORS], [values[s] for s in SECTORS]


def inclusive(counts, values):
    out = [row[:] for row in values]
    for k, n in enumerate(counts):
        m = values[k][k]
        if n >= 1:
            out[k][k] = 1.0 if m is None else ((n - 1) * m + 1.0) / n
    return out


def report(title, values, tolerance):
    print(f"\n== {title} ==")
    print(f"{'':18}" + "".join(f"{s[:9]:>10}" for s in SECTORS))
    worst, misses = 0.0, 0
    for i, s in enumerate(SECTORS):
        cells = []
        for j in range(len(SECTORS)):
            v = values[i][j]
            if v is None:
                cells.append(f"{'absent':>10}")
                misses += 1
                continue
            diff = v - PUBLISHED[i][j]
            worst = max(worst, abs(diff))
            flag = " " if abs(diff) <= tolerance else "*"
            if flag == "*":
                misses += 1
            cells.append(f"{diff:+9.3f}{flag}")
        print(f"{s:18}" + "".join(cells))
    total = len(SECTORS) ** 2
    print(f"cells within +/-{tolerance}: {total - misses}/{total}; max |diff| = {worst:.4f}")
    return misses == 0


def report_hub(out_dir):
    path = out_dir / "centrality.csv"
    if not path.exists():
        print("\ncentrality.csv not found; hub comparison skipped")
        return
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    ranked = sorted(rows, key=lambda r: (-int(r["betweenness"]), r["ticker"]))
    print("\ntop betweenness:")
    for r in ranked[:5]:
        print(f"  {r['ticker']:8} {r['betweenness']}")
    hub = ranked[0]["ticker"] if ranked else "(none)"
    rank = next((k + 1 for k, r in enumerate(ranked) if r["ticker"] == PUBLISHED_HUB), None)
    print(f"hub: {hub}; published hub {PUBLISHED_HUB} ranks {rank if rank else 'absent'}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir", type=Path, help="directory written by `corrnet run`")
    parser.add_argument("--tolerance", type=float, default=0.02)
    args = parser.parse_args()

    try:
        counts, values = read_table(args.out_dir / "sector_table.csv")
    except (OSError, ValueError) as e:
        print(f"compare_table1: {e}", file=sys.stderr)
        return 2

    print("sector counts (yours / published):")
    for s, n, p in zip(SECTORS, counts, COUNTS):
        print(f"  {s:18} {n:4} / {p:4}" + ("" if n == p else "  <- differs"))

    ok_excl = report("diagonal excludes self-pairs (corrnet default)", values, args.tolerance)
    ok_incl = report("diagonal includes self-pairs", inclusive(counts, values), args.tolerance)
    report_hub(args.out_dir)
    return 0 if (ok_excl or ok_incl) else 1


if __name__ == "__main__":
    sys.exit(main())
