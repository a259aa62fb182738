"""Command-line front end: ``hp <command> [options]``.

Every report carries the versioned threshold table that decided pass/fail.
Reports are deterministic: floats are written with 17 significant digits,
JSON keys keep a fixed order, and no wall-clock data is emitted unless
``--metadata`` is given.

Exit status: 0 when every check passes, 1 on a failed check, 2 on usage or
I/O errors.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .delta_mollifier import DeltaQuery, delta_closed_a, delta_closed_b, delta_growth_limit, delta_quadrature
from .eigenfunctions import EigenParams, eigen_residual, f_rho, f_rho_prime, f_rho_quadrature, f_rho_series
from .eta_kernel import eta, eta_antiderivative, fourier_eta_numeric, z_eta
from .quadrature import QuadSpec, integrate_adaptive
from .reconstruction import (
    decomposition_terms,
    l2_norm_residual,
    log_grid,
    rate_fit,
    reconstruction_report,
    residual,
)
from .zeta_zeros import load_zeros, read_zero_table, refine_zero, verify_zero

THRESHOLDS_VERSION = "1"
THRESHOLDS = {
    "self_fourier": 1e-8,
    "antiderivative": 1e-12,
    "theta": 1e-10,
    "delta_a_vs_b": 1e-9,
    "delta_a_vs_quadrature": 1e-6,
    "eigen_residual": 1e-6,
    "series_vs_quadrature": 1e-8,
    "derivative_fd_rel": 1e-6,
    "decomposition": 1e-6,
    "pointwise_ratio_min": 8.0,
    "pointwise_slope_max": -0.8,
    "rate_slope_max": -0.9,
    "rate_r_squared_min": 0.98,
    "delta_growth_rel": 1e-6,
    "zero_residual": 1e-8,
    "zero_refine": 1e-9,
}

SELF_FOURIER_Y = (0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0)
ANTIDERIVATIVE_A = (0.5, 1.0, 2.0, 3.0)
THETA_X = (0.3, 0.5, 0.8, 1.0, 1.7, 2.5)
EIGEN_X = (0.3, 0.7, 1.0, 2.0, 5.0)
CONTROL_RHO = complex(0.3, 5.0)
DELTA_L = (1, 2, 5, 10, 20)
DELTA_X = (0.5, 1.0, 2.0)
POINTWISE_X = (0.5, 1.0, 2.0)
POINTWISE_L = (2, 4, 8, 16, 32, 64)
DECOMPOSITION_POINTS = ((3, 1.0), (8, 0.7))
RATE_L = (2, 4, 8, 16, 32)
GROWTH_L = 400


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    suite: str = "all"
    rho_index: int = 1
    l_list: list[int] = field(default_factory=lambda: list(RATE_L))
    x_list: list[float] | None = None
    domain: tuple[float, float, int] = (0.1, 10.0, 64)
    count: int = 10
    quad: QuadSpec = field(default_factory=QuadSpec)
    output_path: str | None = None
    fmt: str = "json"
    jobs: int = 1
    metadata: bool = False
    decomposition: bool = False
    both_routes: bool = False


@dataclass
class Report:
    command: str
    checks: list[dict] = field(default_factory=list)
    columns: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def check(self, name: str, error: float, tol: float, passed: bool | None = None) -> None:
        ok = (error < tol) if passed is None else passed
        self.checks.append({"check": name, "max_abs_error": float(error), "tolerance": float(tol),
                            "pass": bool(ok)})

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)


# ---------------------------------------------------------------- formatting

def fmt_float(v: float) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0.0:
        return "0"
    return format(v, ".17g")


def _json_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def to_json(obj, indent: int = 2, level: int = 0) -> str:
    """Minimal JSON writer with 17-digit floats; non-finite floats become null."""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return to_json({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return _json_str(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_str(str(k))}: {to_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, bool)) or v is None for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def render(report: Report, cfg: RunConfig, elapsed: float | None = None) -> str:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        if report.columns:
            buf.write(",".join(report.columns) + "\n")
            for row in report.rows:
                buf.write(",".join(_cell(v) for v in row) + "\n")
        else:
            buf.write("check,max_abs_error,tolerance,pass\n")
            for c in report.checks:
                buf.write(",".join(_cell(c[k]) for k in ("check", "max_abs_error", "tolerance", "pass")) + "\n")
        # the threshold table trails the data as comment lines
        buf.write(f"# thresholds_version={THRESHOLDS_VERSION}\n")
        for k, v in THRESHOLDS.items():
            buf.write(f"# {k}={fmt_float(v)}\n")
        buf.write(f"# pass={_cell(report.passed)}\n")
        return buf.getvalue()
    doc = {"command": report.command}
    doc.update(report.extra)
    if report.columns:
        doc["columns"] = report.columns
        doc["rows"] = report.rows
    doc["checks"] = report.checks
    doc["pass"] = report.passed
    doc["thresholds_version"] = THRESHOLDS_VERSION
    doc["thresholds"] = THRESHOLDS
    doc["config"] = config_dict(cfg)
    if cfg.metadata:
        doc["metadata"] = {"version": __version__, "elapsed_seconds": elapsed}
    return to_json(doc) + "\n"


def config_dict(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "suite": cfg.suite,
        "rho_index": cfg.rho_index,
        "l": list(cfg.l_list),
        "x": None if cfg.x_list is None else list(cfg.x_list),
        "domain": list(cfg.domain),
        "count": cfg.count,
        "abs_tol": cfg.quad.abs_tol,
        "rel_tol": cfg.quad.rel_tol,
        "format": cfg.fmt,
    }


# ---------------------------------------------------------------- suites

def _rho(index: int) -> complex:
    return load_zeros(index)[index - 1].rho


def run_zeros(cfg: RunConfig) -> Report:
    rep = Report("zeros", columns=["index", "gamma", "zeta_residual", "pass"])
    zeros = load_zeros(cfg.count)
    tol = THRESHOLDS["zero_residual"]
    for z in zeros:
        rep.rows.append([z.index, z.gamma, z.residual, verify_zero(z, tol)])
    rep.check("zero_residual", max((z.residual for z in zeros), default=0.0), tol)
    if cfg.count >= 1:
        g1 = read_zero_table()[0][1]
        refined = refine_zero(14.0, 15.0, tol=1e-12, index=1)
        rep.check("zero_refine", abs(refined.gamma - g1), THRESHOLDS["zero_refine"])
    return rep


def run_eta(cfg: RunConfig) -> Report:
    rep = Report("verify eta")
    err = max(abs(fourier_eta_numeric(y, cfg.quad) - eta(y)) for y in SELF_FOURIER_Y)
    rep.check("self_fourier", err, THRESHOLDS["self_fourier"])
    spec = QuadSpec(abs_tol=1e-15, rel_tol=1e-13)
    errs = []
    for A in ANTIDERIVATIVE_A:
        res = integrate_adaptive(eta, 0.0, A, spec, vectorized=True)
        errs.append(abs(res.value.real - eta_antiderivative(A)))
    rep.check("antiderivative", max(errs), THRESHOLDS["antiderivative"])
    err = max(abs(z_eta(x) - z_eta(1.0 / x) / x) for x in THETA_X)
    rep.check("theta", err, THRESHOLDS["theta"])
    return rep


def _eigen_rhos(cfg: RunConfig) -> list[complex]:
    return [z.rho for z in load_zeros(3)] + [CONTROL_RHO]


def _fd_rel(x: float, p: EigenParams) -> float:
    """Relative gap between F' and a fourth-order central difference of F."""
    h = 1e-4 * x
    fd = (-f_rho(x + 2 * h, p) + 8 * f_rho(x + h, p) - 8 * f_rho(x - h, p) + f_rho(x - 2 * h, p)) / (12 * h)
    d = f_rho_prime(x, p)
    return abs(fd - d) / abs(d)


def run_eigen_verify(cfg: RunConfig) -> Report:
    rep = Report("verify eigen", columns=["rho_re", "rho_im", "x", "re_f", "im_f", "eigen_residual",
                                          "series_minus_quadrature", "derivative_fd_rel"])
    worst_eq, worst_sq, worst_fd = 0.0, 0.0, 0.0
    for rho in _eigen_rhos(cfg):
        p = EigenParams(rho, quad=cfg.quad)
        for x in EIGEN_X:
            f = f_rho(x, p)
            r = eigen_residual(x, p)
            d = abs(f_rho_series(x, p) - f_rho_quadrature(x, p))
            fd = _fd_rel(x, p)
            worst_eq, worst_sq, worst_fd = max(worst_eq, r), max(worst_sq, d), max(worst_fd, fd)
            rep.rows.append([rho.real, rho.imag, x, f.real, f.imag, r, d, fd])
    rep.check("eigen_residual", worst_eq, THRESHOLDS["eigen_residual"])
    rep.check("series_vs_quadrature", worst_sq, THRESHOLDS["series_vs_quadrature"])
    rep.check("derivative_fd_rel", worst_fd, THRESHOLDS["derivative_fd_rel"])
    return rep


def _delta_rows(rep: Report, rho: complex, ls, xs, quad: QuadSpec) -> tuple[float, float]:
    worst_ab, worst_aq = 0.0, 0.0
    for l in ls:
        for x in xs:
            q = DeltaQuery(l, x, rho)
            a, b, qd = delta_closed_a(q), delta_closed_b(q), delta_quadrature(q, quad)
            worst_ab = max(worst_ab, abs(a - b))
            worst_aq = max(worst_aq, abs(a - qd))
            rep.rows.append([l, x, a.real, a.imag, b.real, b.imag, qd.real, qd.imag,
                             max(abs(a - b), abs(a - qd), abs(b - qd))])
    return worst_ab, worst_aq


DELTA_COLUMNS = ["l", "x", "re_a", "im_a", "re_b", "im_b", "re_quad", "im_quad", "max_disagreement"]


def run_delta(cfg: RunConfig) -> Report:
    rep = Report("delta", columns=list(DELTA_COLUMNS))
    xs = cfg.x_list if cfg.x_list is not None else list(DELTA_X)
    ab, aq = _delta_rows(rep, _rho(cfg.rho_index), cfg.l_list, xs, cfg.quad)
    rep.check("delta_a_vs_b", ab, THRESHOLDS["delta_a_vs_b"])
    rep.check("delta_a_vs_quadrature", aq, THRESHOLDS["delta_a_vs_quadrature"])
    return rep


def run_delta_verify(cfg: RunConfig) -> Report:
    rep = Report("verify delta", columns=["rho_index"] + DELTA_COLUMNS)
    worst_ab, worst_aq = 0.0, 0.0
    for k in (1, 2):
        sub = Report("")
        ab, aq = _delta_rows(sub, _rho(k), DELTA_L, DELTA_X, cfg.quad)
        rep.rows.extend([k] + r for r in sub.rows)
        worst_ab, worst_aq = max(worst_ab, ab), max(worst_aq, aq)
    rep.check("delta_a_vs_b", worst_ab, THRESHOLDS["delta_a_vs_b"])
    rep.check("delta_a_vs_quadrature", worst_aq, THRESHOLDS["delta_a_vs_quadrature"])
    rho = _rho(1)
    scaled = abs(delta_closed_a(DeltaQuery(GROWTH_L, 1.0, rho))) * (GROWTH_L + 0.5) ** (-rho.real)
    limit = delta_growth_limit(1.0, rho)
    rep.check("delta_growth_rel", abs(scaled - limit) / limit, THRESHOLDS["delta_growth_rel"])
    return rep


def _grid(cfg: RunConfig) -> list[float]:
    if cfg.x_list is not None:
        return sorted(set(cfg.x_list))
    lo, hi, n = cfg.domain
    return [float(v) for v in log_grid(lo, hi, n)]


def run_eigen(cfg: RunConfig) -> Report:
    rep = Report("eigen", columns=["x", "re_f", "im_f", "eigen_residual"])
    p = EigenParams(_rho(cfg.rho_index), quad=cfg.quad)
    worst = 0.0
    for x in _grid(cfg):
        f = f_rho(x, p)
        r = eigen_residual(x, p)
        worst = max(worst, r)
        rep.rows.append([x, f.real, f.imag, r])
    rep.check("eigen_residual", worst, THRESHOLDS["eigen_residual"])
    return rep


def run_reconstruct(cfg: RunConfig) -> Report:
    cols = ["l", "x", "re_partial", "im_partial", "re_delta", "im_delta", "re_f", "im_f",
            "re_residual", "im_residual", "abs_residual"]
    if cfg.both_routes:
        cols += ["re_delta_b", "im_delta_b"]
    if cfg.decomposition:
        cols += ["re_i1", "im_i1", "re_i2", "im_i2", "re_i3", "im_i3", "identity_error"]
    rep = Report("reconstruct", columns=cols)
    worst_ab = 0.0
    p = EigenParams(_rho(cfg.rho_index), quad=cfg.quad)
    grid = _grid(cfg)
    norms = []
    worst = 0.0
    for l in cfg.l_list:
        r = reconstruction_report(l, p, grid, cfg.jobs)
        norms.append({"l": l, "l2_norm": r.l2_norm})
        for i, x in enumerate(grid):
            s, d, f, res = r.partial_sums[i], r.deltas[i], r.f_values[i], r.residuals[i]
            row = [l, x, s.real, s.imag, d.real, d.imag, f.real, f.imag, res.real, res.imag, abs(res)]
            if cfg.both_routes:
                db = delta_closed_b(DeltaQuery(l, x, p.rho))
                worst_ab = max(worst_ab, abs(d - db))
                row += [db.real, db.imag]
            if cfg.decomposition:
                i1, i2, i3 = decomposition_terms(l, x, p, cfg.quad)
                e = abs(i1 - i2 + i3 - res)
                worst = max(worst, e)
                row += [i1.real, i1.imag, i2.real, i2.imag, i3.real, i3.imag, e]
            rep.rows.append(row)
    rep.extra["l2_norms"] = norms
    rep.extra["domain"] = [grid[0], grid[-1]]
    if cfg.both_routes:
        rep.check("delta_a_vs_b", worst_ab, THRESHOLDS["delta_a_vs_b"])
    if cfg.decomposition:
        rep.check("decomposition", worst, THRESHOLDS["decomposition"])
    return rep


def run_rate(cfg: RunConfig) -> Report:
    rep = Report("rate")
    lo, hi, n = cfg.domain
    p = EigenParams(_rho(cfg.rho_index), quad=cfg.quad)
    pts = [(l, l2_norm_residual(l, p, lo, hi, n, cfg.jobs)) for l in cfg.l_list]
    fit = rate_fit(pts)
    rep.extra.update({"points": [[l, v] for l, v in fit.points], "slope": fit.slope,
                      "intercept": fit.intercept, "r_squared": fit.r_squared})
    rep.check("rate_slope_max", fit.slope, THRESHOLDS["rate_slope_max"],
              passed=fit.slope <= THRESHOLDS["rate_slope_max"])
    return rep


def run_reconstruction_verify(cfg: RunConfig) -> Report:
    rep = Report("verify reconstruction")
    p = EigenParams(_rho(1), quad=cfg.quad)
    worst = 0.0
    for l, x in DECOMPOSITION_POINTS:
        i1, i2, i3 = decomposition_terms(l, x, p, cfg.quad)
        worst = max(worst, abs(i1 - i2 + i3 - residual(l, x, p)))
    rep.check("decomposition", worst, THRESHOLDS["decomposition"])
    ratio_min, slope_max = math.inf, -math.inf
    for x in POINTWISE_X:
        pts = [(l, abs(residual(l, x, p))) for l in POINTWISE_L]
        ratio_min = min(ratio_min, pts[0][1] / pts[-1][1])
        slope_max = max(slope_max, rate_fit(pts).slope)
    rep.check("pointwise_ratio_min", ratio_min, THRESHOLDS["pointwise_ratio_min"],
              passed=ratio_min >= THRESHOLDS["pointwise_ratio_min"])
    rep.check("pointwise_slope_max", slope_max, THRESHOLDS["pointwise_slope_max"],
              passed=slope_max <= THRESHOLDS["pointwise_slope_max"])
    fit = rate_fit([(l, l2_norm_residual(l, p, 0.1, 10.0, 64, cfg.jobs)) for l in RATE_L])
    rep.check("rate_slope_max", fit.slope, THRESHOLDS["rate_slope_max"],
              passed=fit.slope <= THRESHOLDS["rate_slope_max"])
    rep.check("rate_r_squared_min", fit.r_squared, THRESHOLDS["rate_r_squared_min"],
              passed=fit.r_squared >= THRESHOLDS["rate_r_squared_min"])
    return rep


VERIFY_SUITES = {
    "zeros": run_zeros,
    "eta": run_eta,
    "eigen": run_eigen_verify,
    "delta": run_delta_verify,
    "reconstruction": run_reconstruction_verify,
}


def run_verify(cfg: RunConfig) -> Report:
    if cfg.suite != "all":
        return VERIFY_SUITES[cfg.suite](cfg)
    rep = Report("verify all")
    for name, fn in VERIFY_SUITES.items():
        sub = fn(cfg)
        for c in sub.checks:
            rep.checks.append(dict(c, check=f"{name}.{c['check']}"))
    return rep


COMMANDS = {
    "zeros": run_zeros,
    "verify": run_verify,
    "delta": run_delta,
    "eigen": run_eigen,
    "reconstruct": run_reconstruct,
    "rate": run_rate,
}
ALIASES = {"eta-check": "eta", "eigen-check": "eigen", "delta-check": "delta"}


def run(cfg: RunConfig) -> tuple[int, str]:
    t0 = time.perf_counter()
    rep = COMMANDS[cfg.command](cfg)
    text = render(rep, cfg, time.perf_counter() - t0)
    return (0 if rep.passed else 1), text


# ---------------------------------------------------------------- parsing

def _int_list(s: str) -> list[int]:
    try:
        vals = [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("values must be positive integers")
    return vals


def _float_list(s: str) -> list[float]:
    try:
        vals = [float(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")
    if not vals or any(not (v > 0 and math.isfinite(v)) for v in vals):
        raise argparse.ArgumentTypeError("values must be positive and finite")
    return vals


def _domain(s: str) -> tuple[float, float, int]:
    parts = s.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2]) if len(parts) > 2 else 64
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"domain must be LO:HI[:N], got {s!r}")
    if len(parts) > 3 or not 0 < lo < hi or n < 16:
        raise argparse.ArgumentTypeError("domain needs 0 < LO < HI and N >= 16")
    return lo, hi, n


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rho-index", type=int, default=1, help="1-based index into the zero table")
    common.add_argument("--abs-tol", type=_positive_float, default=QuadSpec.abs_tol)
    common.add_argument("--rel-tol", type=_positive_float, default=QuadSpec.rel_tol)
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker processes for grid evaluation")
    common.add_argument("--metadata", action="store_true",
                        help="add version and timing (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="hp", description="Numerical checks of the eta-kernel eigenfunctions "
                                     "and their truncated Poisson reconstruction.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", parents=[common], help="certify the embedded zeta zeros")
    p.add_argument("--count", type=int, default=10)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=list(VERIFY_SUITES) + ["all"])
    for alias, suite in ALIASES.items():
        p = sub.add_parser(alias, parents=[common], help=f"same as 'verify {suite}'")
        p.set_defaults(suite=suite)
    p = sub.add_parser("all", parents=[common], help="same as 'verify all'")
    p.set_defaults(suite="all")

    p = sub.add_parser("delta", parents=[common], help="three-way counterterm comparison")
    p.add_argument("--l", type=_int_list, default=list(DELTA_L), dest="l_list")
    p.add_argument("--x", type=_float_list, default=None, dest="x_list")

    p = sub.add_parser("eigen", parents=[common], help="sample F_rho and its eigen-equation residual")
    p.add_argument("--x", type=_float_list, default=None, dest="x_list")
    p.add_argument("--domain", type=_domain, default=(0.1, 10.0, 64))

    p = sub.add_parser("reconstruct", parents=[common], help="partial sums, counterterms and residuals")
    p.add_argument("--l", type=_int_list, default=[8], dest="l_list")
    p.add_argument("--x", type=_float_list, default=None, dest="x_list")
    p.add_argument("--domain", type=_domain, default=(0.1, 10.0, 64))
    p.add_argument("--decomposition", action="store_true", help="also compute I1, I2, I3")
    p.add_argument("--both-routes", action="store_true", help="also report the second closed form of delta")

    p = sub.add_parser("rate", parents=[common], help="fit the L2 convergence rate")
    p.add_argument("--l", type=_int_list, default=list(RATE_L), dest="l_list")
    p.add_argument("--domain", type=_domain, default=(0.1, 10.0, 64))
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = ns.command
    if command in ALIASES or command == "all":
        command = "verify"
    if ns.rho_index < 1:
        raise UsageError("--rho-index must be >= 1")
    table_size = len(read_zero_table())
    if ns.rho_index > table_size:
        raise UsageError(f"--rho-index {ns.rho_index} exceeds the zero table ({table_size} entries)")
    count = getattr(ns, "count", 10)
    if not 0 <= count <= table_size:
        raise UsageError(f"--count must be between 0 and {table_size}")
    if command == "rate" and len(ns.l_list) < 3:
        raise UsageError("rate needs at least 3 values of --l")
    return RunConfig(
        command=command,
        suite=getattr(ns, "suite", "all"),
        rho_index=ns.rho_index,
        l_list=list(getattr(ns, "l_list", RATE_L)),
        x_list=getattr(ns, "x_list", None),
        domain=tuple(getattr(ns, "domain", (0.1, 10.0, 64))),
        count=count,
        quad=QuadSpec(abs_tol=ns.abs_tol, rel_tol=ns.rel_tol),
        output_path=ns.out,
        fmt=ns.fmt,
        jobs=max(1, ns.jobs),
        metadata=ns.metadata,
        decomposition=getattr(ns, "decomposition", False),
        both_routes=getattr(ns, "both_routes", False),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        cfg = config_from_args(ns)
        status, text = run(cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"hp: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        # a quadrature or series that did not converge counts as a failed check
        print(f"hp: check failed: {exc}", file=sys.stderr)
        return 1
    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"hp: error: cannot write report: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
