"""Truncated Poisson reconstruction of F_rho from the dual samples of f = Z^-1 F_rho.

The residual

    r_l(x) = (1/x) sum_{m=1}^{l} Ff(m/x) - delta_l(x) - F_rho(x)

splits into three oscillatory integrals (see ``decomposition_terms``):

    I1 = int_0^{1/2} f(x t) (1/sin(pi t) - 1/(pi t)) sin((2l+1) pi t) dt
    I2 = int_{1/2}^inf f(x t) sin((2l+1) pi t) / (pi t) dt
    I3 = sum_{m>=1} int_{-1/2}^{1/2} (f(x(t+m)) - f(m x)) D_l(t) dt

with D_l(t) = sin((2l+1) pi t) / sin(pi t), and r_l = I1 - I2 + I3.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .delta_mollifier import DeltaQuery, delta
from .eigenfunctions import (
    EigenParams,
    SAFETY_TERMS,
    f_rho_series,
    inv_dilation,
    inv_dilation_bound,
    inv_dilation_fourier,
)
from .quadrature import QuadSpec, _csum, integrate_oscillatory_dirichlet

PI = math.pi
# |1/sin(u) - 1/u| is replaced by its Taylor series below this u
_SMALL_U = 1e-2
MIN_GRID = 16
# the m-sum of I3 and the I2 tail give up past this many unit cells
MAX_CELLS = 100_000


@dataclass
class ReconstructionReport:
    l: int
    rho: complex
    grid: list[float]
    partial_sums: list[complex]
    deltas: list[complex]
    f_values: list[complex]
    residuals: list[complex]
    l2_norm: float
    domain: tuple[float, float]


@dataclass
class RateFit:
    points: list[tuple[int, float]]
    slope: float
    intercept: float
    r_squared: float


def _check_lx(l: int, x: float) -> None:
    if int(l) != l or l < 1:
        raise ValueError("l must be a positive integer")
    if not x > 0:
        raise ValueError("x must be positive")


def partial_sum(l: int, x: float, p: EigenParams) -> complex:
    """(1/x) sum_{m=1}^{l} Ff(m/x), compensated."""
    _check_lx(l, x)
    return _csum(inv_dilation_fourier(m / x, p) for m in range(1, l + 1)) / x


def residual(l: int, x: float, p: EigenParams, route: str = "a") -> complex:
    return partial_sum(l, x, p) - delta(DeltaQuery(l, x, p.rho), route, p.quad) - f_rho_series(x, p)


def _support_end(p: EigenParams, cutoff: float) -> float:
    """Smallest A (to 1e-6) beyond which the majorant of |f| stays below ``cutoff``."""
    sigma = p.rho.real
    lo, hi = 0.5, 1.0
    while inv_dilation_bound(hi, sigma) >= cutoff:
        lo, hi = hi, 2.0 * hi
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if inv_dilation_bound(mid, sigma) < cutoff:
            hi = mid
        else:
            lo = mid
    return hi


def _inv_sin_minus_inv(u: float) -> float:
    """1/sin(u) - 1/u without cancellation near 0."""
    if abs(u) < _SMALL_U:
        u2 = u * u
        return u * (1.0 / 6.0 + u2 * (7.0 / 360.0 + u2 * 31.0 / 15120.0))
    return 1.0 / math.sin(u) - 1.0 / u


def _dirichlet_kernel(t: float, l: int) -> float:
    s = math.sin(PI * t)
    if s == 0.0:
        return 2.0 * l + 1.0
    return math.sin((2 * l + 1) * PI * t) / s


def decomposition_terms(l: int, x: float, p: EigenParams,
                        spec: QuadSpec | None = None) -> tuple[complex, complex, complex]:
    """(I1, I2, I3); the residual equals I1 - I2 + I3.

    The I2 range and the m-sum of I3 stop where the Gaussian majorant of f
    drops below ``spec.tail_cutoff``.
    """
    _check_lx(l, x)
    spec = p.quad if spec is None else spec
    n = 2 * l + 1
    A_end = _support_end(p, spec.tail_cutoff)

    def g1(t):
        return inv_dilation(x * t, p) * _inv_sin_minus_inv(PI * t) * math.sin(n * PI * t)

    r1 = integrate_oscillatory_dirichlet(g1, 0.0, 0.5, l, spec)

    t_end = A_end / x
    if t_end <= 0.5:
        r2_value, r2_ok = 0j, True
    else:
        if t_end > MAX_CELLS:
            raise OverflowError(f"I2 range too long at x={x}")

        def g2(t):
            return inv_dilation(x * t, p) * math.sin(n * PI * t) / (PI * t)

        r2 = integrate_oscillatory_dirichlet(g2, 0.5, t_end, l, spec)
        r2_value, r2_ok = r2.value, r2.converged

    # cells with x (m - 1/2) >= A_end contribute below the cutoff
    m_max = math.ceil(A_end / x + 0.5) + SAFETY_TERMS
    if m_max > MAX_CELLS:
        raise OverflowError(f"I3 needs more than {MAX_CELLS} cells at x={x}")
    parts = []
    ok = r1.converged and r2_ok
    for m in range(1, m_max + 1):
        centre = inv_dilation(m * x, p)

        def g3(t, m=m, centre=centre):
            return (inv_dilation(x * (t + m), p) - centre) * _dirichlet_kernel(t, l)

        r3 = integrate_oscillatory_dirichlet(g3, -0.5, 0.5, l, spec)
        parts.append(r3.value)
        ok = ok and r3.converged
    if not ok:
        raise ArithmeticError(f"decomposition quadrature did not converge at l={l}, x={x}")
    return r1.value, r2_value, _csum(parts)


def trapezoid_weights(grid: np.ndarray) -> np.ndarray:
    h = np.diff(grid)
    w = np.zeros_like(grid)
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    return w


def l2_norm(grid: Sequence[float], values: Sequence[complex]) -> float:
    """sqrt(int |values|^2 dx) by the trapezoid rule on ``grid``."""
    g = np.asarray(grid, dtype=float)
    v = np.abs(np.asarray(values, dtype=complex)) ** 2
    if g.size != v.size or g.size < 1:
        raise ValueError("grid and values must have equal, nonzero length")
    if g.size == 1:
        return 0.0  # zero-length domain
    if np.any(np.diff(g) <= 0):
        raise ValueError("grid must be strictly increasing")
    return math.sqrt(math.fsum(trapezoid_weights(g) * v))


def log_grid(x_min: float, x_max: float, n_grid: int) -> np.ndarray:
    if not 0 < x_min < x_max:
        raise ValueError("need 0 < x_min < x_max")
    if n_grid < MIN_GRID:
        raise ValueError(f"n_grid must be >= {MIN_GRID}")
    return np.geomspace(x_min, x_max, n_grid)


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Order-preserving map; a process pool when ``jobs > 1``."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _grid_point(args):
    l, x, p = args
    s = partial_sum(l, x, p)
    d = delta(DeltaQuery(l, x, p.rho), "a")
    f = f_rho_series(x, p)
    return s, d, f


def reconstruction_report(l: int, p: EigenParams, grid: Sequence[float], jobs: int = 1) -> ReconstructionReport:
    grid = [float(x) for x in grid]
    rows = parallel_map(_grid_point, [(l, x, p) for x in grid], jobs)
    sums = [r[0] for r in rows]
    deltas = [r[1] for r in rows]
    fvals = [r[2] for r in rows]
    res = [s - d - f for s, d, f in rows]
    return ReconstructionReport(l, p.rho, grid, sums, deltas, fvals, res, l2_norm(grid, res),
                                (grid[0], grid[-1]))


def l2_norm_residual(l: int, p: EigenParams, x_min: float = 0.1, x_max: float = 10.0,
                     n_grid: int = 64, jobs: int = 1) -> float:
    """L2 norm of the residual over [x_min, x_max] on a log-spaced trapezoid grid."""
    return reconstruction_report(l, p, log_grid(x_min, x_max, n_grid), jobs).l2_norm


def rate_fit(points: Sequence[tuple[int, float]]) -> RateFit:
    """Least-squares line through (log(2l+1), log norm)."""
    pts = [(int(l), float(v)) for l, v in points]
    if len(pts) < 3:
        raise ValueError("rate_fit needs at least 3 points")
    if any(v <= 0 or not math.isfinite(v) for _, v in pts):
        raise ValueError("norms must be positive and finite")
    if len({l for l, _ in pts}) < 2:
        raise ValueError("rate_fit needs at least two distinct l")
    X = np.log([2.0 * l + 1.0 for l, _ in pts])
    Y = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(X, Y, 1)
    fitted = slope * X + intercept
    ss_res = float(np.sum((Y - fitted) ** 2))
    ss_tot = float(np.sum((Y - Y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return RateFit(pts, float(slope), float(intercept), r2)
