"""Command-line interface.

    scrollrank bounds   --m 3 --n 2 --d 3
    scrollrank table    --kind bound --d 3 --m 2:8 --n 1:8
    scrollrank probe    --profile 4 --m 3 --r 5
    scrollrank member   point.json
    scrollrank synth    --m 3 --n 2 --d 3 --r 4 --embed point.json > model.json
    scrollrank recover  point.json --directions model.json
    scrollrank audit-ah --m-max 5 --d-max 5

Exit status: 0 success, 1 computation error, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bounds as B
from . import decouple, terracini
from .catalecticant import ProfilePoint, scroll_membership

log = logging.getLogger("scrollrank")

TABLE_KINDS = ("bound", "terracini", "dis", "dims")


class InputError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    for sep in (":", "..", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use LO:HI") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_profile(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad profile {text!r}; use e.g. 1,2,3") from None


def _backend(args) -> terracini.RankBackend:
    return terracini.RankBackend.from_name(args.backend, prime=args.prime, tolerance=args.tolerance)


def _workers() -> int:
    env = os.environ.get("SCROLLRANK_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"SCROLLRANK_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _load_point(path: str) -> ProfilePoint:
    """ProfilePoint, dense-polynomial or model JSON."""
    data = _load_json(path)
    if "terms" in data:
        return decouple.dense_from_json(data)
    if "V" in data:
        return decouple.embed(decouple.DecoupledModel.from_json(data))
    return ProfilePoint.from_json(data)


# -- table cells (top level so they pickle for worker processes) ---------------

def table_cell(kind: str, d: int, m: int, n: int, seed: int, trials: int,
               backend: terracini.RankBackend, bound: int, r: int | None, cap: int | None):
    profile = tuple(range(1, d + 1))
    if kind == "bound":
        if m < 2 or d < 3:
            return None
        return B.identifiability_bound(profile, m, n)
    if kind == "dis":
        return B.dis_bound(m, n)
    if kind == "terracini":
        return terracini.max_nondefective_rank(profile, m, n, backend, cap, trials, seed, bound)
    if kind == "dims":
        return terracini.secant_dim_probe(profile, m, n, r, trials, seed, backend, bound).measured_dim
    raise InputError(f"unknown table kind {kind!r}")


def _table_cell_star(job):
    return table_cell(*job)


def build_table(kind: str, d: int, m_range, n_range, seed=0, trials=3,
                backend: terracini.RankBackend = terracini.DEFAULT_BACKEND, bound=99,
                r=None, cap=None, workers=1) -> list[list]:
    """Rows [m, cell(n_lo), ..., cell(n_hi)]; probe kinds use seed ^ cell_index."""
    if kind not in TABLE_KINDS:
        raise InputError(f"unknown table kind {kind!r}")
    if kind == "dims" and (r is None or r < 1):
        raise InputError("--kind dims needs --r >= 1")
    ms = range(m_range[0], m_range[1] + 1)
    ns = range(n_range[0], n_range[1] + 1)
    if min(ms) < 1 or min(ns) < 1:
        raise InputError("m and n ranges must start at >= 1")
    jobs = []
    for idx, (m, n) in enumerate((m, n) for m in ms for n in ns):
        jobs.append((kind, d, m, n, seed ^ idx, trials, backend, bound, r, cap))
    if workers > 1 and kind in ("terracini", "dims") and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            cells = list(pool.map(_table_cell_star, jobs))
    else:
        cells = [_table_cell_star(job) for job in jobs]
    rows = []
    it = iter(cells)
    for m in ms:
        rows.append([m] + [next(it) for _ in ns])
    return rows


def render_table_csv(kind: str, rows: list[list], n_range) -> str:
    """Comma-separated, ``*`` marks ranks equal to m*n, empty for undefined cells."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["m/n"] + list(range(n_range[0], n_range[1] + 1)))
    for row in rows:
        m = row[0]
        cells = []
        for n, value in zip(range(n_range[0], n_range[1] + 1), row[1:]):
            if value is None:
                cells.append("")
            elif kind != "dims" and value == m * n:
                cells.append(f"{value}*")
            else:
                cells.append(str(value))
        writer.writerow([m] + cells)
    return out.getvalue()


def _emit(obj: dict, fmt: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        return
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    keys = sorted(obj)
    writer.writerow(keys)
    writer.writerow([
        json.dumps(obj[k], sort_keys=True) if isinstance(obj[k], (dict, list)) else
        ("" if obj[k] is None else obj[k])
        for k in keys
    ])
    sys.stdout.write(out.getvalue())


# -- commands ------------------------------------------------------------------

def cmd_bounds(args):
    policy = B.AHExceptionPolicy.paper()
    if args.policy == "probe-audited":
        policy = B.AHExceptionPolicy.probe_audited(
            trials=args.trials, seed=args.seed, backend=_backend(args), bound=args.bound)
    report = B.bounds_report(args.m, args.n, args.d, policy).to_json()
    report["ah_policy"] = {"source": policy.source.value,
                           "exception_pairs": sorted(list(p) for p in policy.exception_pairs)}
    _emit(report, args.format)


def cmd_table(args):
    rows = build_table(args.kind, args.d, args.m, args.n, args.seed, args.trials, _backend(args),
                       args.bound, args.r, args.cap, _workers())
    if args.format == "json":
        _emit({"kind": args.kind, "d": args.d, "n_values": list(range(args.n[0], args.n[1] + 1)),
               "rows": rows}, "json")
    else:
        sys.stdout.write(render_table_csv(args.kind, rows, args.n))


def cmd_probe(args):
    probe = terracini.secant_dim_probe(args.profile, args.m, args.n, args.r, args.trials, args.seed,
                                       _backend(args), args.bound)
    _emit(probe.to_json(), args.format)


def cmd_member(args):
    point = _load_point(args.file)
    _emit({"member": scroll_membership(point)}, args.format)


def cmd_synth(args):
    model = decouple.synth(args.m, args.n, args.d, args.r, args.seed, args.bound)
    if args.embed:
        Path(args.embed).write_text(json.dumps(decouple.embed(model).to_json(), indent=2) + "\n")
    if args.dense:
        Path(args.dense).write_text(json.dumps(decouple.dense_to_json(decouple.embed(model)), indent=2) + "\n")
    _emit(model.to_json(), args.format)


def cmd_recover(args):
    point = _load_point(args.point)
    data = _load_json(args.directions)
    model = decouple.DecoupledModel.from_json(data)
    report = decouple.recover_coefficients(point, model.directions())
    out = report.to_json()
    out["matches_model"] = all(report.consistent_per_degree) and tuple(report.C) == model.C
    _emit(out, args.format)


def cmd_audit_ah(args):
    report = terracini.audit_ah(args.m_max, args.d_max, args.m_min, args.d_min,
                                trials=args.trials, seed=args.seed, backend=_backend(args), bound=args.bound)
    _emit(report, args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--backend", choices=[k.value for k in terracini.BackendKind], default="prime-field")
    common.add_argument("--prime", type=int, default=terracini.MERSENNE_61)
    common.add_argument("--tolerance", type=float, default=1e-9, help="float-svd relative threshold")
    common.add_argument("--bound", type=int, default=99, help="sampling range [-bound, bound]")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="scrollrank", description="X-rank tools for polynomial decoupling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds as JSON")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--policy", choices=["paper", "probe-audited"], default="paper")
    p.set_defaults(func=cmd_bounds, default_format="json")

    p = sub.add_parser("table", parents=[common], help="m x n table as CSV")
    p.add_argument("--kind", choices=TABLE_KINDS, required=True)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--m", type=parse_range, default=(2, 8))
    p.add_argument("--n", type=parse_range, default=(1, 8))
    p.add_argument("--r", type=int, default=None, help="rank for --kind dims")
    p.add_argument("--cap", type=int, default=None, help="raise the m*n cap for --kind terracini")
    p.set_defaults(func=cmd_table, default_format="csv")

    p = sub.add_parser("probe", parents=[common], help="Terracini dimension probe")
    p.add_argument("--profile", type=parse_profile, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_probe, default_format="json")

    p = sub.add_parser("member", parents=[common], help="Veronese-scroll membership of a point")
    p.add_argument("file")
    p.set_defaults(func=cmd_member, default_format="json")

    p = sub.add_parser("synth", parents=[common], help="random decoupled model")
    for name in ("m", "n", "d", "r"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--embed", metavar="PATH", help="also write the embedded point")
    p.add_argument("--dense", metavar="PATH", help="also write the dense polynomial map")
    p.set_defaults(func=cmd_synth, default_format="json")

    p = sub.add_parser("recover", parents=[common], help="recover coefficients from known directions")
    p.add_argument("point", help="point, dense-polynomial or model JSON")
    p.add_argument("--directions", required=True, help="model JSON whose V, W give the directions")
    p.set_defaults(func=cmd_recover, default_format="json")

    p = sub.add_parser("audit-ah", parents=[common], help="probe Veronese secant defectivity")
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=5)
    p.set_defaults(func=cmd_audit_ah, default_format="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (InputError, ValueError, TypeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        log.debug("computation failed", exc_info=True)
        print(f"computation error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
