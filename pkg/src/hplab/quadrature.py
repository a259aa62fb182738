"""Adaptive quadrature on finite, semi-infinite and Dirichlet-kernel panels.

All integrators work on complex-valued integrands. The real and imaginary
parts share one subdivision tree; an interval is refined while the larger
of its two component error estimates dominates the global error.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

# Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (1, 3, 5) plus the centre.
for _i, _w in zip((1, 3, 5), _WG[:3]):
    _GAUSS_W[_i] = _w
    _GAUSS_W[14 - _i] = _w
_GAUSS_W[7] = _WG[3]

# Hard cap on the number of subintervals in one adaptive run.
MAX_INTERVALS = 4000
# Truncation search for semi-infinite integrals stops at a + SEMI_INF_HARD_CAP.
SEMI_INF_HARD_CAP = 1.0e6

Integrand = Callable[[float], complex]


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40
    tail_cutoff: float = 1e-16

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not self.tail_cutoff > 0:
            raise ValueError("tail_cutoff must be positive")

    def target(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool


def _sample(f, xs: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        return np.asarray(f(xs), dtype=complex)
    return np.array([f(float(x)) for x in xs], dtype=complex)


def _gk15(f, a: float, b: float, vectorized: bool):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    ys = _sample(f, mid + half * _NODES, vectorized)
    if not np.all(np.isfinite(ys)):
        raise FloatingPointError(f"non-finite integrand value on [{a}, {b}]")
    k = half * (ys @ _KRONROD_W)
    g = half * (ys @ _GAUSS_W)
    err = max(abs(k.real - g.real), abs(k.imag - g.imag))
    return complex(k), err


def _csum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def integrate_adaptive(f: Integrand, a: float, b: float, spec: QuadSpec = QuadSpec(),
                       vectorized: bool = False) -> QuadResult:
    """Globally adaptive Gauss-Kronrod integration of ``f`` over ``[a, b]``.

    The interval with the largest error estimate is bisected until the summed
    estimate meets ``spec`` or no interval can be split further (``max_depth``
    reached everywhere, or ``MAX_INTERVALS`` exhausted). Non-convergence is
    reported through ``converged``; it never raises.
    """
    if not a < b:
        if a == b:
            return QuadResult(0j, 0.0, 0, True)
        raise ValueError("integrate_adaptive requires a < b")
    value, err = _gk15(f, a, b, vectorized)
    evals = 15
    # heap entries: (-err, counter, lo, hi, depth, value)
    heap = [(-err, 0, a, b, 0, value)]
    frozen = []  # (value, err) of intervals at max_depth
    counter = 1
    run_value, run_err = value, err
    while True:
        if run_err <= spec.target(run_value):
            # confirm with exact sums before accepting
            run_value = _csum([h[5] for h in heap] + [v for v, _ in frozen])
            run_err = math.fsum([-h[0] for h in heap] + [e for _, e in frozen])
            if run_err <= spec.target(run_value):
                return QuadResult(run_value, run_err, evals, True)
        if not heap or counter >= MAX_INTERVALS:
            run_value = _csum([h[5] for h in heap] + [v for v, _ in frozen])
            run_err = math.fsum([-h[0] for h in heap] + [e for _, e in frozen])
            return QuadResult(run_value, run_err, evals, run_err <= spec.target(run_value))
        neg_err, _, lo, hi, depth, old = heapq.heappop(heap)
        if depth >= spec.max_depth:
            frozen.append((old, -neg_err))
            continue
        mid = 0.5 * (lo + hi)
        run_value -= old
        run_err += neg_err
        for left, right in ((lo, mid), (mid, hi)):
            v, e = _gk15(f, left, right, vectorized)
            heapq.heappush(heap, (-e, counter, left, right, depth + 1, v))
            run_value += v
            run_err += e
            counter += 1
        evals += 30


def find_truncation(a: float, bound: Callable[[float], float], cutoff: float) -> float | None:
    """Smallest point (to bisection accuracy) past ``a`` with ``bound * (1 + t - a) < cutoff``."""
    def small(t):
        return bound(t) * (1.0 + t - a) < cutoff

    step = 0.5
    prev = a
    t = a + step
    while not small(t):
        prev = t
        step *= 2.0
        t = a + step
        if step > SEMI_INF_HARD_CAP:
            return None
    lo, hi = prev, t
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if small(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-3 * (1.0 + hi - a):
            break
    return hi


def integrate_semi_infinite(f: Integrand, a: float, bound: Callable[[float], float],
                            spec: QuadSpec = QuadSpec(), vectorized: bool = False) -> QuadResult:
    """Integrate ``f`` over ``[a, inf)`` given a decreasing majorant ``bound >= |f|``.

    The range is cut at the point ``T`` where the majorant tail is negligible;
    the majorant integral over ``[T, 2T - a + 1]`` is added to the error estimate.
    """
    T = find_truncation(a, bound, spec.tail_cutoff)
    if T is None:
        return QuadResult(complex("nan"), math.inf, 0, False)
    body = integrate_adaptive(f, a, T, spec, vectorized)
    tail = integrate_adaptive(lambda t: bound(t), T, 2.0 * T - a + 1.0, spec)
    tail_est = abs(tail.value.real) + tail.error_estimate + bound(2.0 * T - a + 1.0)
    err = body.error_estimate + tail_est
    return QuadResult(body.value, err, body.evaluations + tail.evaluations,
                      body.converged and err <= spec.target(body.value) + spec.tail_cutoff)


def dirichlet_breakpoints(a: float, b: float, l: int) -> list[float]:
    """``a``, every zero ``k/(2l+1)`` of ``sin((2l+1) pi t)`` inside ``(a, b)``, and ``b``."""
    n = 2 * l + 1
    k_lo = math.floor(a * n) + 1
    k_hi = math.ceil(b * n) - 1
    pts = [a] + [k / n for k in range(k_lo, k_hi + 1) if a < k / n < b] + [b]
    return pts


def integrate_oscillatory_dirichlet(f: Integrand, a: float, b: float, l: int,
                                    spec: QuadSpec = QuadSpec(),
                                    vectorized: bool = False) -> QuadResult:
    """Panel-wise integration of an integrand oscillating like ``sin((2l+1) pi t)``.

    ``f`` already contains the oscillatory factor. Panels end at the zeros of
    ``sin((2l+1) pi t)``; panel sums are accumulated with ``math.fsum``.
    """
    if l < 1:
        raise ValueError("l must be a positive integer")
    if not a < b:
        raise ValueError("integrate_oscillatory_dirichlet requires a < b")
    pts = dirichlet_breakpoints(a, b, l)
    results = [integrate_adaptive(f, lo, hi, spec, vectorized) for lo, hi in zip(pts, pts[1:])]
    value = _csum(r.value for r in results)
    err = math.fsum(r.error_estimate for r in results)
    return QuadResult(value, err, sum(r.evaluations for r in results),
                      all(r.converged for r in results))
