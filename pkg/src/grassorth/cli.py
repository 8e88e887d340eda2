"""grassorth command line.

    grassorth regime --s 2 --rp 2 --sp 3
    grassorth check --builtin standard --s 2 --rp 2 --sp 3 --mode exact
    grassorth check mymap.json --samples 5000
    grassorth analyze --builtin whitney --s 3 --rp 2
    grassorth sample shilov --r 2 --s 3 --n 5 --seed 7
    grassorth demo

Exit codes: 0 pass/complete, 1 verification failure, 2 usage or input error.
Reports are single JSON documents (or CSV); samples are JSON lines.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .config import RunConfig, default_seed
from .errors import GrassorthError, MapFormatError
from .grassmannian import chart_to_json, sample_shilov
from .maps import (
    builtin,
    check_null_preservation,
    check_orthogonality_preservation,
    load_map,
    pit_orthogonality,
    sample_orthogonal_pair,
    trial_rng,
)
from .rigidity import RigidityConfig, classify_map, regime, sample_orthogonal_frame

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _flatten(obj, prefix="") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list):
        return [(prefix, json.dumps(obj, sort_keys=True))]
    return [(prefix, "" if obj is None else str(obj))]


def to_csv(rows: list[dict]) -> str:
    flat = [dict(_flatten(r)) for r in rows]
    keys = []
    for f in flat:
        keys += [k for k in f if k not in keys]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue()


def render(rows: list[dict], cfg: RunConfig, single: bool = True) -> str:
    if cfg.format == "csv":
        return to_csv(rows)
    if single:
        return dumps(rows[0] if len(rows) == 1 else rows) + "\n"
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def emit(text: str, cfg: RunConfig):
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- map selection ------------------------------------------------------------------

def resolve_map(args, cfg: RunConfig):
    if args.map_file and args.builtin:
        raise UsageError("give either a map file or --builtin, not both")
    if args.map_file:
        F = load_map(args.map_file, exact=True)
    elif args.builtin:
        if args.s is None or args.rp is None:
            raise UsageError("--builtin needs --s and --rp")
        try:
            F = builtin(args.builtin, args.s, args.rp, args.sp)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        raise UsageError("no map given (file or --builtin)")
    return F if cfg.exact else F.to_float()


# -- commands -------------------------------------------------------------------------

def cmd_regime(args, cfg: RunConfig) -> int:
    reg = regime(args.s, args.rp, args.sp)
    row = {"s": args.s, "rp": args.rp, "sp": args.sp, **reg.to_json()}
    emit(render([row], cfg), cfg)
    return EXIT_OK


def run_checks(F, cfg: RunConfig) -> list[dict]:
    reports = [check_null_preservation(F, cfg.samples, cfg.tolerance, cfg.seed)]
    if F.src[0] == 1:
        reports.append(check_orthogonality_preservation(F, cfg.samples, cfg.tolerance, cfg.seed))
        if cfg.exact:
            reports.append(pit_orthogonality(F, cfg.trials, cfg.seed))
    return [r.to_json() for r in reports]


def cmd_check(args, cfg: RunConfig) -> int:
    F = resolve_map(args, cfg)
    rows = run_checks(F, cfg)
    passed = all(r["passed"] for r in rows)
    if cfg.format == "csv":
        emit(to_csv(rows), cfg)
    else:
        emit(dumps({"map": F.name, "src": list(F.src), "tgt": list(F.tgt), "config": cfg.to_json(),
                    "passed": passed, "reports": rows}) + "\n", cfg)
    return EXIT_OK if passed else EXIT_FAIL


def rigidity_config(cfg: RunConfig) -> RigidityConfig:
    return RigidityConfig(tol=cfg.tolerance, seed=cfg.seed, exact=cfg.exact)


def cmd_analyze(args, cfg: RunConfig) -> int:
    F = resolve_map(args, cfg)
    if F.src[0] != 1:
        raise UsageError("analyze handles source rank 1 only")
    report = classify_map(F, rigidity_config(cfg)).to_json()
    report["map"] = F.name
    emit(render([report], cfg), cfg)
    return EXIT_OK


def cmd_sample(args, cfg: RunConfig) -> int:
    rows = []
    for i in range(args.n):
        rng = trial_rng(cfg.seed, i)
        if args.kind == "shilov":
            if args.r > args.s:
                raise UsageError("shilov samples need r <= s")
            rows.append({"index": i, **chart_to_json(sample_shilov(args.r, args.s, rng))})
        elif args.kind == "pair":
            z, w = sample_orthogonal_pair(args.s, rng)
            rows.append({"index": i, "z": chart_to_json(z), "w": chart_to_json(w)})
        else:
            frame = sample_orthogonal_frame(args.s, rng, cfg.tolerance, cfg.exact)
            rows.append({"index": i, "points": [chart_to_json(z) for z in frame]})
    emit(render(rows, cfg, single=False), cfg)
    return EXIT_OK


DEMO_CASES = [("standard", 2, 2, 3), ("whitney", 2, 2, None), ("constant", 2, 2, 3)]


def cmd_demo(args, cfg: RunConfig) -> int:
    table = [{"s": s, "rp": rp, "sp": sp, **regime(s, rp, sp).to_json()}
             for s in (2, 3) for rp in (2, 3) for sp in range(rp, rp + 2 * s)]
    small = RunConfig(cfg.scalar_mode, cfg.tolerance, min(cfg.samples, 200), min(cfg.trials, 20), cfg.seed)
    maps = []
    for name, s, rp, sp in DEMO_CASES:
        F = builtin(name, s, rp, sp)
        F = F if cfg.exact else F.to_float()
        checks = run_checks(F, small)
        rep = classify_map(F, rigidity_config(cfg))
        maps.append({
            "map": F.name,
            "checks_passed": all(c["passed"] for c in checks),
            "regime": rep.regime.tag.value,
            "classification": rep.classification.value,
        })
    if cfg.format == "csv":
        emit(to_csv(maps), cfg)
    else:
        emit(dumps({"regime_table": table, "maps": maps}) + "\n", cfg)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--mode", choices=("float", "exact"), default="float")
    g.add_argument("--tol", type=float, default=None, help="residual tolerance (default 1e-9)")
    g.add_argument("--samples", type=_positive, default=1000)
    g.add_argument("--trials", type=_positive, default=100)
    g.add_argument("--seed", type=_seed, default=None, help="default: $GRASSORTH_SEED or 0")
    g.add_argument("--out", default=None, help="write the report here instead of stdout")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def _map_args(p: argparse.ArgumentParser):
    p.add_argument("map_file", nargs="?", help="JSON map file")
    p.add_argument("--builtin", choices=("standard", "whitney", "constant"))
    p.add_argument("--s", type=int)
    p.add_argument("--rp", type=int)
    p.add_argument("--sp", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = common_flags()
    parser = argparse.ArgumentParser(prog="grassorth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regime", parents=[common], help="rigidity regime for (s, r', s')")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--rp", type=int, required=True)
    p.add_argument("--sp", type=int, required=True)
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("check", parents=[common], help="verify null and orthogonality preservation")
    _map_args(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", parents=[common], help="run the rigidity analyzer")
    _map_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", parents=[common], help="emit seeded samples as JSON lines")
    p.add_argument("kind", choices=("shilov", "pair", "frame"))
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--n", type=_positive, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("demo", parents=[common], help="small end-to-end tour")
    p.set_defaults(func=cmd_demo)
    return parser


def make_config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else default_seed()
    tol = 1e-9 if args.tol is None else args.tol
    return RunConfig(args.mode, tol, args.samples, args.trials, seed, args.out, args.format)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        return args.func(args, cfg)
    except (UsageError, MapFormatError, ValueError) as exc:
        print(f"grassorth {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GrassorthError as exc:
        print(f"grassorth {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
