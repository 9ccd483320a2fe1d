"""Command-line interface.

Subcommands: eval, path, simulate, correlate, tdcf. Exit codes: 0 on
success, 2 on bad input, 3 when the concurrent t-EER search found no sign
change (the reported point is then only a best effort).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import metadata

import numpy as np

from .analysis import class_conditional_correlation, special_case_eers
from .concurrent import concurrent_from_path, verify_intersection
from .curves import asv_rate_curve, cm_rate_curve, eer
from .path import build_teer_path, path_to_csv
from .score_io import ScoreFormatError, format_asv_scores, format_cm_scores, format_paired_scores, read_scores
from .simulate import SimulationParams, params_digest, simulate_scores
from .tandem import TandemPriors, tandem_rates_at
from .tdcf import TdcfParams, min_tdcf, tdcf, tdcf_bounds_at_concurrent

log = logging.getLogger("teer")

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3
DEFAULT_RHOS = "0,0.2,0.5,0.8,1"


class InputError(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _num(x):
    """Round rates to 6 significant digits for output."""
    if x is None:
        return None
    return float(f"{x:.6g}")


def _thr(t: float):
    # thresholds are kept exact so they map back onto the same operating point
    return "-inf" if t == -np.inf else float(t)


def _rounded(obj):
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_rounded(v) for v in obj]
    if isinstance(obj, float):
        return _num(obj)
    return obj


def _parse_rhos(text: str) -> list[float]:
    try:
        rhos = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"--rho: cannot parse {text!r}") from None
    if not rhos:
        raise InputError("--rho: empty list")
    for r in rhos:
        if not 0.0 <= r <= 1.0:
            raise InputError(f"--rho: {r} is outside [0, 1]")
    return rhos


def _load(path: str, kind: str):
    if not os.path.exists(path):
        raise InputError(f"score file not found: {path}")
    try:
        return read_scores(path, kind)
    except ScoreFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_pair(args):
    asv = _load(args.asv_scores, "asv")
    cm = _load(args.cm_scores, "cm")
    if asv.non.size == 0 or asv.spf.size == 0:
        raise InputError(f"{args.asv_scores}: tandem metrics need nontarget and spoof ASV trials")
    return asv, cm


def _tdcf_params(args, required: bool):
    vals = [args.c_miss, args.c_fa_non, args.c_fa_spf, args.pi_tar, args.pi_non, args.pi_spf]
    if all(v is None for v in vals):
        if required:
            raise InputError("t-DCF needs --c-miss --c-fa-non --c-fa-spf --pi-tar --pi-non --pi-spf")
        return None
    if any(v is None for v in vals):
        raise InputError("give all of --c-miss --c-fa-non --c-fa-spf --pi-tar --pi-non --pi-spf")
    try:
        return TdcfParams(args.c_miss, args.c_fa_non, args.c_fa_spf,
                          TandemPriors(args.pi_tar, args.pi_non, args.pi_spf))
    except ValueError as exc:
        raise InputError(f"t-DCF parameters: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _tdcf_block(a, c, params, point):
    best = min_tdcf(a, c, params)
    at_point = tdcf(params, tandem_rates_at(a, c, point.asv_index, point.cm_index))
    lo, hi, linear = tdcf_bounds_at_concurrent(params, point.teer)
    return {
        "params": {"c_miss": params.c_miss, "c_fa_non": params.c_fa_non, "c_fa_spf": params.c_fa_spf,
                   "pi_tar": params.asserted.pi_tar, "pi_non": params.asserted.pi_non,
                   "pi_spf": params.asserted.pi_spoof},
        "min_tdcf": {"value": _num(best.value), "tau_asv": _thr(a.threshold_at(best.asv_index)),
                     "tau_cm": _thr(c.threshold_at(best.cm_index))},
        "tdcf_at_concurrent": _num(at_point),
        "linear_at_concurrent": _num(linear),
        "bounds_at_concurrent": [_num(lo), _num(hi)],
    }


def _point_json(point):
    return {"concurrent_teer": _num(point.teer), "tau_asv": _thr(point.asv_threshold),
            "tau_cm": _thr(point.cm_threshold), "rate_spread": _num(point.rate_spread),
            "warning": point.warning}


def cmd_eval(args) -> int:
    rhos = _parse_rhos(args.rho)
    params = _tdcf_params(args, required=False)
    asv, cm = _load_pair(args)
    a, c = asv_rate_curve(asv), cm_rate_curve(cm)

    paths = [build_teer_path(a, c, rho) for rho in rhos]
    if args.format == "csv":
        _write(path_to_csv(paths), args.out)
        return EXIT_OK

    special = special_case_eers(asv, cm, rhos[0])
    point = special.concurrent_point
    check = verify_intersection(a, c, rhos, point)
    per_rho = []
    warning = point.warning
    for rho, p, (_, dev) in zip(rhos, paths, check.rows):
        cp = concurrent_from_path(p)
        warning = warning or cp.warning
        per_rho.append({
            "rho": rho,
            "asv_eer_mix": _num(eer(a, {"non": 1.0 - rho, "spf": rho}).eer),
            "path_entries": len(p),
            "min_path_teer": _num(float(p.teer.min())),
            "max_path_teer": _num(float(p.teer.max())),
            "concurrent_teer": _num(cp.teer),
            "concurrent_rate_spread": _num(cp.rate_spread),
            "deviation_at_concurrent": _num(dev),
        })

    report = {
        "metadata": {
            "asv_scores": args.asv_scores,
            "cm_scores": args.cm_scores,
            "counts": {"asv": asv.counts(), "cm": cm.counts()},
            "version": _version(),
            "conventions": {
                "decision": "accept iff score > threshold",
                "eer_ties": "smallest operating index",
                "path_ties": "smallest CM index",
                "concurrent_search_rho": 0.0,
            },
        },
        "special_case_eers": _rounded(special.to_json()),
        "concurrent": _point_json(point) | {
            "grid_step": _num(point.grid_step),
            "n_sign_changes": point.n_sign_changes,
            "max_deviation": _num(check.max_deviation),
        },
        "per_rho": per_rho,
    }
    if params is not None:
        report["tdcf"] = _tdcf_block(a, c, params, point)
    if args.paired_scores:
        report["correlation"] = _rounded(class_conditional_correlation(
            _load(args.paired_scores, "paired")).to_json())
    _write(_dump_json(report), args.out)
    return EXIT_SOLVER if warning else EXIT_OK


def cmd_path(args) -> int:
    rho = _parse_rhos(args.rho)
    if len(rho) != 1:
        raise InputError("--rho: path takes a single value")
    asv, cm = _load_pair(args)
    path = build_teer_path(asv_rate_curve(asv), cm_rate_curve(cm), rho[0])
    _write(path_to_csv(path), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        params = SimulationParams(args.eer_asv_non, args.eer_asv_spf, args.eer_cm,
                                  args.n_per_class, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    asv, cm, paired = simulate_scores(params)
    prefix = args.out_prefix
    files = {"asv": f"{prefix}.asv.txt", "cm": f"{prefix}.cm.txt", "paired": f"{prefix}.paired.txt"}
    _write(format_asv_scores(asv), files["asv"])
    _write(format_cm_scores(cm), files["cm"])
    _write(format_paired_scores(paired), files["paired"])
    sidecar = {"params": params.to_dict(), "digest": params_digest(params),
               "files": {k: os.path.basename(v) for k, v in files.items()},
               "version": _version()}
    _write(_dump_json(sidecar), f"{prefix}.json")
    return EXIT_OK


def cmd_correlate(args) -> int:
    paired = _load(args.paired_scores, "paired")
    report = class_conditional_correlation(paired)
    if args.format == "csv":
        lines = ["group,key,n,pearson_r,reason"]
        groups = [("class", report.per_class), ("attack", report.per_attack or {})]
        for group, entries in groups:
            for key, e in entries.items():
                r = "" if e.r is None else f"{e.r:.6g}"
                lines.append(f"{group},{key},{e.n},{r},{e.reason or ''}")
        _write("\n".join(lines) + "\n", args.out)
    else:
        _write(_dump_json(_rounded(report.to_json())), args.out)
    return EXIT_OK


def cmd_tdcf(args) -> int:
    params = _tdcf_params(args, required=True)
    asv, cm = _load_pair(args)
    a, c = asv_rate_curve(asv), cm_rate_curve(cm)
    point = concurrent_from_path(build_teer_path(a, c, 0.0))
    report = {"concurrent": _point_json(point)} | _tdcf_block(a, c, params, point)
    _write(_dump_json(report), args.out)
    return EXIT_SOLVER if point.warning else EXIT_OK


def _add_pair_flags(p):
    p.add_argument("--asv-scores", required=True, help="ASV score file")
    p.add_argument("--cm-scores", required=True, help="CM score file")


def _add_tdcf_flags(p):
    g = p.add_argument_group("t-DCF")
    for flag in ("--c-miss", "--c-fa-non", "--c-fa-spf", "--pi-tar", "--pi-non", "--pi-spf"):
        g.add_argument(flag, type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="teer", description="Tandem (CM + ASV) error-rate evaluation.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="full report: special-case EERs, concurrent t-EER, per-rho paths")
    _add_pair_flags(p)
    p.add_argument("--rho", default=DEFAULT_RHOS, help="comma-separated spoof prevalences")
    p.add_argument("--paired-scores", help="optional paired file for the correlation block")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    _add_tdcf_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("path", help="t-EER path as CSV")
    _add_pair_flags(p)
    p.add_argument("--rho", default="0")
    p.add_argument("--out")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("simulate", help="write simulated Gaussian score files")
    p.add_argument("--eer-asv-non", type=float, default=0.08)
    p.add_argument("--eer-asv-spf", type=float, default=0.35)
    p.add_argument("--eer-cm", type=float, default=0.10)
    p.add_argument("--n-per-class", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", "--out", dest="out_prefix", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("correlate", help="class-conditional ASV/CM score correlations")
    p.add_argument("--paired-scores", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("tdcf", help="minimum t-DCF and its bounds at the concurrent point")
    _add_pair_flags(p)
    p.add_argument("--out")
    _add_tdcf_flags(p)
    p.set_defaults(func=cmd_tdcf)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    threads = os.environ.get("TEER_THREADS")
    if threads:
        log.debug("TEER_THREADS=%s (informational)", threads)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"teer {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
