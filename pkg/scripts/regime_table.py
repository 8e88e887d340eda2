"""Print the rigidity regime for every (s, r', s') on a grid.

    python3 scripts/regime_table.py --smax 6 --max-target 12 --format csv
"""
import argparse
import csv
import sys

from grassorth.rigidity import regime


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--smin", type=int, default=2)
    ap.add_argument("--smax", type=int, default=6)
    ap.add_argument("--max-target", type=int, default=12, help="largest r' and s'")
    ap.add_argument("--format", choices=("csv", "grid"), default="grid")
    args = ap.parse_args()

    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["s", "rp", "sp", "regime"])
        for s in range(args.smin, args.smax + 1):
            for rp in range(2, args.max_target + 1):
                for sp in range(rp, args.max_target + 1):
                    w.writerow([s, rp, sp, regime(s, rp, sp).tag.value])
        return

    # one block per s: rows r', columns s'; C = Constant, L = LinearRigid, . = NoRigidity
    symbol = {"Constant": "C", "LinearRigid": "L", "NoRigidity": "."}
    cols = range(2, args.max_target + 1)
    for s in range(args.smin, args.smax + 1):
        print(f"s = {s}   (C: s'-r' < {s - 1},  L: {s - 1} <= s'-r' < {2 * s - 2})")
        print("r'\\s' " + " ".join(f"{c:>2}" for c in cols))
        for rp in range(2, args.max_target + 1):
            cells = [symbol[regime(s, rp, sp).tag.value] if sp >= rp else " " for sp in cols]
            print(f"{rp:>5} " + " ".join(f"{c:>2}" for c in cells))
        print()


if __name__ == "__main__":
    main()
