"""Command-line front end.

    imsteer <eval|region|thresholds|monogamy|witness|audit> [options]

Every command emits CSV or JSON with 9-significant-digit numbers and LF line
endings, so identical (arguments, seed) runs are byte-identical.  Exit codes:
0 success, 2 input error, 3 invariant/acceptance failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import audit as audit_mod
from . import monogamy as mono
from . import states as st
from . import steering as sg
from . import witness as wt

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _sig(x) -> str:
    """9 significant digits."""
    return format(float(x), ".9g")


def _jsonable(obj):
    """Recursively convert to JSON types, rounding floats to 9 digits."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(_sig(obj))
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _csv_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return _sig(value)
    return str(value)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(header, rows, fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_csv_cell(v) for v in row) for row in rows]
        _emit("\n".join(lines) + "\n", out_path)
    else:
        payload = [dict(zip(header, row)) for row in rows]
        _emit(json.dumps(_jsonable(payload), indent=2) + "\n", out_path)


def _emit_report(report: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        rows = _flatten(report)
        _emit_rows(("key", "value"), rows, "csv", out_path)
    else:
        _emit(json.dumps(_jsonable(report), indent=2) + "\n", out_path)


def _flatten(obj, prefix: str = ""):
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows += _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple)):
        for idx, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}{idx}.")
    else:
        rows.append((prefix.rstrip("."), _csv_cell(obj)))
    return rows


class InputError(Exception):
    """User-input problem; mapped to exit code 2."""


# ---------------------------------------------------------------------------
# State loading
# ---------------------------------------------------------------------------

_BETA_KEYS = ("z0", "0z", "xx", "xy", "yx", "yy", "zz")


def _state_from_json(payload: dict) -> np.ndarray:
    kind = payload.get("kind")
    if kind == "werner":
        return st.werner(float(payload["v"]))
    if kind == "mems":
        return st.mems(float(payload["c"]))
    if kind == "xstate":
        beta = payload["beta"]
        return st.x_state(st.XStateParams(
            **{f"beta_{k}": float(beta.get(k, 0.0)) for k in _BETA_KEYS}))
    if kind == "bloch":
        params = st.BlochTwoQubit(m=payload["m"], n=payload["n"],
                                  T=payload["T"])
        return st.require_state(st.from_bloch(params), dim=4)
    if kind == "matrix":
        rho = np.asarray(payload["re"], dtype=float) \
            + 1j * np.asarray(payload["im"], dtype=float)
        return st.require_state(rho)
    raise InputError(f"unknown state kind {kind!r}")


def _load_state(args) -> np.ndarray:
    name = args.state
    if name is None:
        raise InputError("--state is required")
    if name == "werner":
        if args.v is None:
            raise InputError("--state werner requires --v")
        return st.werner(args.v)
    if name == "mems":
        if args.c is None:
            raise InputError("--state mems requires --c")
        return st.mems(args.c)
    if name == "singlet":
        return st.singlet()
    try:
        with open(name) as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read state file {name!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"unparseable state file {name!r}: {exc}") from exc
    try:
        return _state_from_json(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad state file {name!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    rho = _load_state(args)
    bloch = st.to_bloch(rho)
    selected, expectation = wt.select_witness(bloch)
    naqc = {}
    for g in ("l1", "rel_entropy", "skew"):
        cv = sg.naqc_value(rho, g)
        naqc[g] = {"value": cv.value, "bound": cv.bound}
    naqi = {}
    for g in ("l1", "rel_entropy"):
        cv = sg.naqi_value(rho, g)
        naqi[g] = {"value": cv.value, "bound": cv.bound}
    report = {
        "i2": sg.isi_operational(rho),
        "i2_closed": sg.isi_closed(bloch),
        "violated": sg.isi_violated(rho),
        "cffw": sg.cffw_value(rho),
        "naqc": naqc,
        "naqi": naqi,
        "selected_witness": {"k": selected.k, "i": selected.i,
                             "j": selected.j, "expectation": expectation},
    }
    if args.lam is not None:
        report["i2_unsharp"] = sg.isi_unsharp(rho, args.lam)
    _emit_report(report, args.format, args.out)
    return 0


def _region_rows(resolution: int):
    """Grid of the two swept X-state parameters with a PSD completion search.

    Non-swept parameters are fixed to zero; beta_zz defaults to 0 and falls
    back to the first valid point of a 41-point grid, since the matrix with
    beta_zz = 0 is not positive everywhere on the square.
    """
    axis = np.linspace(-1.0, 1.0, resolution)
    zz_grid = np.linspace(-1.0, 1.0, 41)
    tol = 1e-12
    rows = []
    for bxx in axis:
        for byy in axis:
            lo = abs(bxx - byy) - 1.0
            hi = 1.0 - abs(bxx + byy)
            if lo <= tol and -tol <= hi:
                bzz, valid = 0.0, True
            else:
                candidates = zz_grid[(zz_grid >= lo - tol) & (zz_grid <= hi + tol)]
                if len(candidates):
                    bzz, valid = float(candidates[0]), True
                else:
                    bzz, valid = 0.0, False
            rows.append((float(bxx), float(byy), bzz, valid))
    return rows


def cmd_region(args) -> int:
    if args.resolution < 2:
        raise InputError("--resolution must be >= 2")
    rows = _region_rows(args.resolution)
    valid_rows = [r for r in rows if r[3]]
    rhos = np.stack([st.x_state(st.XStateParams(beta_xx=bxx, beta_yy=byy,
                                                beta_zz=bzz))
                     for bxx, byy, bzz, _ in valid_rows])
    i2_op = iter(sg.isi_operational_batch(rhos))
    out = []
    for bxx, byy, _, valid in rows:
        closed = abs(bxx) + abs(byy)
        i2 = float(next(i2_op)) if valid else closed
        out.append((bxx, byy, i2, closed > SQRT2, valid))
    _emit_rows(("beta_xx", "beta_yy", "i2", "violated", "valid"),
               out, args.format, args.out)
    return 0


def cmd_thresholds(args) -> int:
    rows = []
    for criterion in ("isi", "naqc_l1", "naqi_l1"):
        rows.append(("v", criterion,
                     sg.threshold_scan(st.werner, criterion)))
    s = st.singlet()
    unsharp = {
        "isi": lambda lam: sg.isi_unsharp(s, lam) - sg.ISI_BOUND,
        "naqc_l1": lambda lam: sg.naqc_value(s, "l1", sharpness=lam).value
        - sg.NAQC_BOUNDS["l1"],
        "naqi_l1": lambda lam: sg.naqi_value(s, "l1", sharpness=lam).value
        - sg.NAQI_BOUNDS["l1"],
    }
    for criterion, excess in unsharp.items():
        rows.append(("lambda", criterion, sg.bisect_threshold(excess)))
    _emit_rows(("parameter", "criterion", "threshold"),
               rows, args.format, args.out)
    return 0


def cmd_monogamy(args) -> int:
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    result = mono.monogamy_scan(args.samples, seed=args.seed,
                                include_maximizer=args.include_maximizer)
    report = {
        "max_sum": result.max_sum,
        "argmax": {"eta": list(result.argmax.eta),
                   "theta": result.argmax.theta},
        "bound": mono.MONOGAMY_BOUND,
        "samples": result.samples,
    }
    _emit_report(report, args.format, args.out)
    if result.max_sum > mono.MONOGAMY_BOUND + 1e-9:
        print("monogamy bound exceeded: implementation invariant violated",
              file=sys.stderr)
        return 3
    return 0


def cmd_witness(args) -> int:
    rho = _load_state(args)
    bloch = st.to_bloch(rho)
    selected, expectation = wt.select_witness(bloch)
    terms = wt.projector_decomposition(selected)
    residual = float(np.max(np.abs(wt.reconstruct(terms) - selected.matrix)))
    report = wt.to_json_dict(selected)
    report["expectation"] = expectation
    report["reconstruction_residual"] = residual
    _emit_report(report, args.format, args.out)
    return 0


def cmd_audit(args) -> int:
    names = list(audit_mod.SUITES) if args.suite == "all" else [args.suite]
    results = audit_mod.run_suites(names, n=args.n, seed=args.seed)
    rows = [(r.suite, r.samples, r.worst, r.tolerance, r.passed)
            for r in results]
    _emit_rows(("suite", "samples", "worst_residual", "tolerance", "passed"),
               rows, args.format, args.out)
    if not all(r.passed for r in results):
        print("audit failure: at least one property suite exceeded tolerance",
              file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imsteer",
        description="Imaginarity steering toolkit for two-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fmt_default):
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        p.add_argument("--out", metavar="PATH", default=None,
                       help="write output here instead of stdout")

    def add_state(p):
        p.add_argument("--state", metavar="NAME_OR_FILE",
                       help="werner | mems | singlet | path to a JSON state file")
        p.add_argument("--v", type=float, default=None,
                       help="Werner visibility in [0, 1]")
        p.add_argument("--c", type=float, default=None,
                       help="MEMS concurrence in [0, 1]")

    p = sub.add_parser("eval", help="evaluate all steering criteria on a state")
    add_state(p)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="also report I2 under unsharp measurements")
    add_common(p, "json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("region",
                       help="violation region over the two swept X-state parameters")
    p.add_argument("--resolution", type=int, default=201)
    add_common(p, "csv")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("thresholds",
                       help="critical visibility / sharpness per criterion")
    add_common(p, "csv")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("monogamy", help="Monte-Carlo check of the 2 sqrt(2) bound")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0, help="PCG64 seed (default 0)")
    p.add_argument("--include-maximizer", action="store_true",
                   help="append the analytic maximizer as an extra sample")
    add_common(p, "json")
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("witness",
                       help="selected witness with its projector decomposition")
    add_state(p)
    add_common(p, "json")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("audit", help="run the bulk property suites")
    p.add_argument("--suite", choices=("all", *audit_mod.SUITES), default="all")
    p.add_argument("--n", type=int, default=None,
                   help="override the per-suite sample count")
    p.add_argument("--seed", type=int, default=0, help="PCG64 seed (default 0)")
    add_common(p, "csv")
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
