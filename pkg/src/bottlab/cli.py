"""Command-line driver: run verification suites, write reports.

Reports are deterministic byte-for-byte for a fixed configuration: JSON and
CSV artifacts contain no timestamps (the run manifest carries those) and
suite execution is pure, so thread scheduling cannot change the output.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys

import numpy as np

from . import __version__
from .verify import SUITES, SweepConfig, run_suite

SUBCOMMANDS = {
    "spectrum": ["spectrum"],
    "mehler": ["mehler", "s1s2-asymptotics"],
    "commutators": ["dirac-commutator", "cd-commutator"],
    "composition": ["composition-gamma"],
    "homotopy": ["homotopy-projection"],
    "delta": ["delta-xr"],
    "clifford-iso": ["clifford-iso"],
    "compactness": ["compactness"],
    "report-all": sorted(SUITES),
}


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--dim", type=int, default=1, help="spatial dimension n (default 1)")
    p.add_argument("--levels", type=int, default=12,
                   help="Hermite truncation level K (default 12)")
    p.add_argument("--t-min", type=float, default=1.0, help="sweep start (default 1)")
    p.add_argument("--t-max", type=float, default=16.0, help="sweep end (default 16)")
    p.add_argument("--t-points", type=int, default=9,
                   help="geometric grid size (default 9)")
    p.add_argument("--tol", type=float, default=None,
                   help="override the pass threshold (relative to the initial norm "
                        "for equivalence suites, absolute otherwise)")
    p.add_argument("--format", choices=("json", "csv", "both"), default="both",
                   help="report formats to write (default both)")
    p.add_argument("--out", default="reports", help="output directory (default ./reports)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottlab",
        description="Numerical verification suites for the graded oscillator calculus.",
    )
    parser.add_argument("--version", action="version", version=f"bottlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run: {', '.join(SUBCOMMANDS[name])}")
        _add_common_flags(p)
        if name == "report-all":
            p.add_argument("--suite", action="append", default=None,
                           help="restrict to specific suite ids (repeatable)")
    return parser


def _config_from_args(args) -> SweepConfig:
    if args.dim < 1:
        raise ValueError("dim must be >= 1")
    if args.levels < 4:
        raise ValueError("levels must be >= 4")
    if args.t_min < 1.0:
        raise ValueError("t-min must be >= 1")
    if args.t_max <= args.t_min:
        raise ValueError("t-max must exceed t-min")
    if args.t_points < 2:
        raise ValueError("t-points must be >= 2")
    t_grid = tuple(float(t) for t in np.geomspace(args.t_min, args.t_max, args.t_points))
    return SweepConfig(dim=args.dim, level=args.levels, t_grid=t_grid, tol=args.tol)


def _worker_count(n_suites: int) -> int:
    env = os.environ.get("BOTTLAB_THREADS")
    if env is not None:
        try:
            cap = int(env)
        except ValueError:
            raise ValueError(f"BOTTLAB_THREADS must be an integer, got {env!r}")
        if cap < 1:
            raise ValueError("BOTTLAB_THREADS must be >= 1")
    else:
        cap = min(4, os.cpu_count() or 1)
    return max(1, min(cap, n_suites))


def _atomic_write(path: str, data: str):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _csv_text(report) -> str:
    lines = ["suite,curve,t,value"]
    for suite, curve, t, v in report.csv_rows():
        lines.append(f'{suite},"{curve}",{t!r},{v!r}')
    return "\n".join(lines) + "\n"


def run(command: str, args) -> int:
    try:
        cfg = _config_from_args(args)
        suite_ids = list(SUBCOMMANDS[command])
        if command == "report-all" and args.suite:
            unknown = [s for s in args.suite if s not in SUITES]
            if unknown:
                raise ValueError(f"unknown suite ids: {', '.join(unknown)}")
            suite_ids = [s for s in suite_ids if s in set(args.suite)]
        workers = _worker_count(len(suite_ids))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if workers == 1:
        reports = {sid: run_suite(sid, cfg) for sid in suite_ids}
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {sid: pool.submit(run_suite, sid, cfg) for sid in suite_ids}
            reports = {sid: fut.result() for sid, fut in futures.items()}

    os.makedirs(args.out, exist_ok=True)
    outputs = {}
    for sid in sorted(reports):
        rep = reports[sid]
        paths = {}
        if args.format in ("json", "both"):
            paths["json"] = os.path.join(args.out, f"{sid}.json")
            _atomic_write(paths["json"], json.dumps(rep.to_json_dict(), indent=2) + "\n")
        if args.format in ("csv", "both"):
            paths["csv"] = os.path.join(args.out, f"{sid}.csv")
            _atomic_write(paths["csv"], _csv_text(rep))
        outputs[sid] = paths

    from datetime import datetime, timezone

    manifest = {
        "tool": f"bottlab {__version__}",
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "threads": workers,
        "suites": {sid: {**reports[sid].params, "tol": reports[sid].tol} for sid in sorted(reports)},
        "outputs": outputs,
    }
    _atomic_write(os.path.join(args.out, "manifest.json"),
                  json.dumps(manifest, indent=2) + "\n")

    width = max(len(s) for s in reports)
    print(f"{'suite':<{width}}  {'status':6}  {'final':>12}  {'exponent':>9}")
    for sid in sorted(reports):
        rep = reports[sid]
        final = rep.datapoints[-1][1] if rep.datapoints else float("nan")
        expo = f"{rep.fit[0]:+.2f}" if rep.fit else "-"
        status = "PASS" if rep.passed else "FAIL"
        print(f"{sid:<{width}}  {status:6}  {final:12.3e}  {expo:>9}")
    all_pass = all(r.passed for r in reports.values())
    print(f"overall: {'PASS' if all_pass else 'FAIL'} ({len(reports)} suites, reports in {args.out})")
    return 0 if all_pass else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args.command, args)


if __name__ == "__main__":
    sys.exit(main())
