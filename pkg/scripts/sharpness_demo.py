"""Rigidity on both sides of the boundary s' - r' = 2s - 2.

For each s the standard embedding (inside the rigid range) and the
generalized Whitney map (on the boundary) are run through the verification
engines and the analyzer.  Both preserve orthogonality; only the first is
linear.

    python3 scripts/sharpness_demo.py --smax 4 --seed 1
"""
import argparse
import json

from grassorth.maps import (
    check_null_preservation,
    check_orthogonality_preservation,
    pit_orthogonality,
    standard_embedding,
    whitney_map,
)
from grassorth.rigidity import RigidityConfig, classify_map


def summarize(F, args):
    Ff = F.to_float()
    null = check_null_preservation(Ff, args.samples, args.tol, args.seed)
    orth = check_orthogonality_preservation(Ff, args.samples, args.tol, args.seed)
    pit = pit_orthogonality(F, args.trials, args.seed)
    rep = classify_map(Ff, RigidityConfig(tol=args.tol, seed=args.seed))
    return {
        "map": F.name,
        "target": list(F.tgt),
        "gap": F.tgt[1] - F.tgt[0],
        "null_residual": null.max_residual,
        "orth_residual": orth.max_residual,
        "pit_all_zero": pit.all_zero,
        "regime": rep.regime.tag.value,
        "classification": rep.classification.value,
        "linear_model_residual": rep.residuals.get("linear_model"),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--smax", type=int, default=4)
    ap.add_argument("--rp", type=int, default=2)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    args = ap.parse_args()

    rows = []
    for s in range(2, args.smax + 1):
        rows.append(summarize(standard_embedding(s, args.rp, s + args.rp - 1), args))
        rows.append(summarize(whitney_map(s, args.rp), args))
    if args.json:
        for r in rows:
            print(json.dumps(r, sort_keys=True))
        return
    print(f"{'map':28} {'gap':>3} {'null':>9} {'orth':>9} {'pit':>5} {'regime':>12} {'class':>15} {'lin.res':>9}")
    for r in rows:
        lin = r["linear_model_residual"]
        print(f"{r['map']:28} {r['gap']:>3} {r['null_residual']:9.1e} {r['orth_residual']:9.1e} "
              f"{str(r['pit_all_zero']):>5} {r['regime']:>12} {r['classification']:>15} "
              f"{'-' if lin is None else f'{lin:9.1e}':>9}")


if __name__ == "__main__":
    main()
