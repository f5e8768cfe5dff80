"""Command-line reports: circle, sphere, rotator, verify.

All reports are deterministic for a fixed seed and configuration; JSON is
emitted with sorted keys and CSV follows RFC 4180.  Exit codes: 0 success,
1 verification failure, 2 flag error, 3 phase-space constraint violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

# lets "--l -17.49,7.49,10" parse as a value rather than an unknown flag
_NEGATIVE_TOKEN = re.compile(r"^-\d+(\.\d+)?([,eE][-+\d.,]+)?$")

from . import __version__
from .checks import run_all
from .circle import (CirclePhasePoint, circle_coherent, circle_eigen_residual,
                     circle_expect_J, circle_expect_U, circle_relative_U,
                     circle_uncertainty_report)
from .repspace import RepParams
from .rotator import (argmax_j, argmax_m, classical_peak_j, distribution_from_state,
                      rotator_energy)
from .sphere import (ConstraintError, SpherePhasePoint,
                     coherent_ladder_generated, coherent_state,
                     coherent_triple_sum, eigen_residual, expect_J, expect_X,
                     max_amplitude_rel_diff, phase_to_z, relative_X,
                     uncertainty_J)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_FLAG_ERROR = 2
EXIT_CONSTRAINT = 3


class _SubParser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self._negative_number_matcher = _NEGATIVE_TOKEN


def _cnum(z: complex) -> list[float]:
    return [z.real, z.imag]


def _fnum(x: float):
    return None if (isinstance(x, float) and math.isnan(x)) else x


def _vec_arg(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected three comma-separated numbers, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _j_cut_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--j-cut must be an integer or 'auto', got {text!r}") from None
    if v < 10:
        raise argparse.ArgumentTypeError("--j-cut must be at least 10")
    return v


def _tail_tol_arg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--tail-tol must be a number, got {text!r}") from None
    if not 0.0 < v <= 1e-6:
        raise argparse.ArgumentTypeError("--tail-tol must be in (0, 1e-6]")
    return v


def _emit(args, payload: dict, csv_rows: list[dict] | None,
          csv_fields: list[str] | None):
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True,
                          allow_nan=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=csv_fields,
                                quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        writer.writeheader()
        for row in csv_rows:
            writer.writerow(row)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_circle(args) -> int:
    point = CirclePhasePoint(args.phi, args.l)
    j_cut = None if args.j_cut == "auto" else args.j_cut
    state = circle_coherent(point, j_cut)
    exp_j = circle_expect_J(point, j_cut)
    exp_u = circle_expect_U(point, j_cut)
    rel_u = circle_relative_U(point, CirclePhasePoint(0.0, args.l), j_cut)
    unc = circle_uncertainty_report(point, j_cut)
    payload = {
        "command": "circle",
        "version": __version__,
        "phi": point.phi,
        "l": point.l,
        "j_cut": state.j_cut,
        "tail_fraction": state.tail_fraction(),
        "expect_J": exp_j,
        "expect_U": _cnum(exp_u),
        "expect_U_abs": abs(exp_u),
        "expect_U_arg": math.atan2(exp_u.imag, exp_u.real),
        "relative_U": _cnum(rel_u),
        "uncertainty": {"var_J": unc.var_j, "bound": unc.bound,
                        "ratio_U2": _cnum(unc.ratio_u2)},
        "eigen_residual": circle_eigen_residual(state),
    }
    rows = [{"quantity": "expect_J", "value": repr(exp_j)},
            {"quantity": "expect_U_re", "value": repr(exp_u.real)},
            {"quantity": "expect_U_im", "value": repr(exp_u.imag)},
            {"quantity": "var_J", "value": repr(unc.var_j)},
            {"quantity": "bound", "value": repr(unc.bound)}]
    _emit(args, payload, rows, ["quantity", "value"])
    return EXIT_OK


def _build_sphere_state(args):
    point = SpherePhasePoint(args.x, args.l, r=args.r,
                             project_tangent=args.project_tangent)
    state = coherent_state(point, j_cut=args.j_cut, tail_tol=args.tail_tol)
    return point, state


def cmd_sphere(args) -> int:
    point, state = _build_sphere_state(args)
    zl = phase_to_z(point)
    ej = expect_J(state)
    ex = expect_X(state)
    rx = relative_X(state, point)
    unc = uncertainty_J(state)
    payload = {
        "command": "sphere",
        "version": __version__,
        "x": list(point.x),
        "l": list(point.l),
        "r": point.r,
        "z_label": [_cnum(complex(v)) for v in zl.z],
        "j_cut": state.j_cut,
        "tail_fraction": state.tail_fraction(bands=2),
        "lost_fraction": state.lost_fraction(),
        "expect_J": list(ej),
        "expect_X": list(ex),
        "relative_X": [_fnum(v) for v in rx],
        "uncertainty": {"var_J": unc.var_j, "bound": unc.bound},
        "eigen_residual": eigen_residual(state, zl),
        "amplitudes": [
            {"j": int(k.j), "m": int(k.m),
             "log_mag": state.amplitudes[k].log_mag,
             "phase": state.amplitudes[k].phase}
            for k in sorted(state.amplitudes)
        ],
    }
    if args.check_paths:
        rep = RepParams(r=point.r)
        b = coherent_triple_sum(zl, rep, state.j_cut)
        c = coherent_ladder_generated(zl, rep, state.j_cut)
        payload["path_disagreement"] = max(max_amplitude_rel_diff(state, b),
                                           max_amplitude_rel_diff(state, c))
    rows = [{"j": a["j"], "m": a["m"], "log_mag": repr(a["log_mag"]),
             "phase": repr(a["phase"])} for a in payload["amplitudes"]]
    _emit(args, payload, rows, ["j", "m", "log_mag", "phase"])
    return EXIT_OK


def cmd_rotator(args) -> int:
    point, state = _build_sphere_state(args)
    table = distribution_from_state(state, point)
    ln2 = state.log_norm_sq()
    rows = []
    for k in sorted(state.amplitudes):
        ln_p = state.amplitudes[k].abs_sq_log() - ln2
        rows.append({"j": int(k.j), "m": int(k.m),
                     "p": repr(table.probability(k.j, k.m)),
                     "ln_p": repr(ln_p)})
    lsq = float(point.l @ point.l)
    root = classical_peak_j(lsq)
    payload = {
        "command": "rotator",
        "version": __version__,
        "x": list(point.x),
        "l": list(point.l),
        "r": point.r,
        "j_cut": state.j_cut,
        "total_probability": table.total(),
        "l_squared": lsq,
        "peak_j_root": root,
        "peak_j_nearest": math.ceil(root - 0.5),
        "argmax_j": {str(m): argmax_j(table, m) for m in args.fix_m},
        "argmax_m": {str(j): argmax_m(table, j) for j in args.fix_j},
        "peak_energy": rotator_energy(math.ceil(root - 0.5)),
    }
    _emit(args, payload, rows, ["j", "m", "p", "ln_p"])
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(seed=args.seed, j_cut=args.identity_j_cut,
                      tail_j_cut=args.j_cut, tail_tol=args.tail_tol)
    ok = all(r.passed for r in results)
    payload = {
        "command": "verify",
        "version": __version__,
        "seed": args.seed,
        "identity_j_cut": args.identity_j_cut,
        "all_passed": ok,
        "checks": [
            {"check": r.name, "measured": r.measured,
             "tolerance": r.tolerance, "pass": r.passed}
            for r in results
        ],
    }
    rows = [{"check": r.name, "measured": repr(r.measured),
             "tolerance": repr(r.tolerance), "pass": str(r.passed).lower()}
            for r in results]
    _emit(args, payload, rows, ["check", "measured", "tolerance", "pass"])
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohstates",
        description="Coherent states on the circle and the sphere: "
                    "reports and verification.")
    parser._negative_number_matcher = _NEGATIVE_TOKEN
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_SubParser)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write the report here "
                       "instead of stdout")
        p.add_argument("--j-cut", type=_j_cut_arg, default="auto",
                       help="truncation level or 'auto' (adaptive)")
        p.add_argument("--tail-tol", type=_tail_tol_arg, default=1e-24,
                       help="adaptive truncation target for the top bands")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized sweeps")

    pc = sub.add_parser("circle", help="circle coherent-state report")
    common(pc)
    pc.add_argument("--phi", type=float, required=True, help="angle label")
    pc.add_argument("--l", type=float, required=True,
                    help="angular-momentum label")
    pc.set_defaults(func=cmd_circle)

    ps = sub.add_parser("sphere", help="sphere coherent-state report")
    common(ps)
    ps.add_argument("--x", type=_vec_arg, required=True,
                    help="position as x1,x2,x3")
    ps.add_argument("--l", type=_vec_arg, required=True,
                    help="angular momentum as l1,l2,l3")
    ps.add_argument("--r", type=float, default=1.0, help="sphere radius")
    ps.add_argument("--project-tangent", action="store_true",
                    help="repair l by projecting out its radial component")
    ps.add_argument("--check-paths", action="store_true",
                    help="also build the state by the other two routes and "
                         "report the worst amplitude disagreement")
    ps.set_defaults(func=cmd_sphere)

    pr = sub.add_parser("rotator", help="energy distribution report")
    common(pr)
    pr.add_argument("--x", type=_vec_arg, required=True)
    pr.add_argument("--l", type=_vec_arg, required=True)
    pr.add_argument("--r", type=float, default=1.0)
    pr.add_argument("--project-tangent", action="store_true")
    pr.add_argument("--fix-m", type=int, nargs="*", default=[0],
                    help="report argmax over j at these m values")
    pr.add_argument("--fix-j", type=int, nargs="*", default=[],
                    help="report argmax over m at these j values")
    pr.set_defaults(func=cmd_rotator)

    pv = sub.add_parser("verify", help="run the full invariant suite")
    common(pv)
    pv.add_argument("--identity-j-cut", type=int, default=30,
                    help="truncation level for the operator-identity sweeps")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstraintError as exc:
        print(f"constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAG_ERROR


if __name__ == "__main__":
    sys.exit(main())
