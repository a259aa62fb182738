"""The self-Fourier kernel eta(t) = 8 pi t^2 (pi t^2 - 3/2) exp(-pi t^2).

Mellin integrals of eta reduce to incomplete gamma functions through

    int v^(k+s-1) exp(-pi v^2) dv = (1/2) pi^(-(k+s)/2) Gamma((k+s)/2, .)

and the recurrence Gamma(a+1, x) = a Gamma(a, x) + x^a e^-x, which folds the
two polynomial terms of eta into a single incomplete gamma call.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .complex_special import loggamma, lower_incomplete_gamma, upper_incomplete_gamma
from .quadrature import QuadSpec, integrate_semi_infinite

PI = math.pi
_LOG_PI = math.log(PI)

# |eta(t)| <= ETA_BOUND_COEFF * t^4 * exp(-pi t^2) for t >= ETA_BOUND_FROM
ETA_BOUND_COEFF = 8.0 * PI * PI
ETA_BOUND_FROM = math.sqrt(1.5 / PI)
# dilation sums refuse to run past this many terms
Z_ETA_MAX_TERMS = 50_000


def eta(t):
    """eta(t), even in t; accepts scalars or numpy arrays."""
    if isinstance(t, np.ndarray):
        t2 = np.square(t)
        return 8.0 * PI * t2 * (PI * t2 - 1.5) * np.exp(-PI * t2)
    t2 = t * t
    return 8.0 * PI * t2 * (PI * t2 - 1.5) * math.exp(-PI * t2)


def eta_bound(t: float) -> float:
    """Majorant 8 pi^2 t^4 exp(-pi t^2); valid for |t| >= ETA_BOUND_FROM, where eta >= 0."""
    t2 = t * t
    return ETA_BOUND_COEFF * t2 * t2 * math.exp(-PI * t2)


def eta_antiderivative(A: float) -> float:
    """int_0^A eta(t) dt = -4 pi A^3 exp(-pi A^2)."""
    return -4.0 * PI * A ** 3 * math.exp(-PI * A * A)


def _pi_power_gamma(s: complex) -> complex:
    """pi^(-s/2) Gamma(s/2 + 1), formed in log space."""
    return cmath.exp(-0.5 * s * _LOG_PI + loggamma(0.5 * s + 1.0))


def mellin_eta(s: complex) -> complex:
    """int_0^inf eta(v) v^(s-1) dv = s (s-1) pi^(-s/2) Gamma(s/2)."""
    s = complex(s)
    return 2.0 * (s - 1.0) * _pi_power_gamma(s)


def eta_tail_mellin(A: float, s: complex) -> complex:
    """int_A^inf eta(v) v^(s-1) dv for A > 0."""
    if not A > 0:
        raise ValueError("eta_tail_mellin requires A > 0")
    s = complex(s)
    a = 0.5 * s + 1.0
    x = PI * A * A
    # 4 Gamma(a+1, x) - 6 Gamma(a, x) = (2s - 2) Gamma(a, x) + 4 x^a e^-x
    upper = upper_incomplete_gamma(a, x)
    edge = cmath.exp(a * math.log(x) - x)
    return cmath.exp(-0.5 * s * _LOG_PI) * ((2.0 * s - 2.0) * upper + 4.0 * edge)


def eta_head_mellin(A: float, s: complex) -> complex:
    """int_0^A eta(w) w^(s-1) dw for A > 0 and Re s > -2."""
    if not A > 0:
        raise ValueError("eta_head_mellin requires A > 0")
    s = complex(s)
    if s.real <= -2.0:
        raise ValueError("eta_head_mellin requires Re s > -2")
    a = 0.5 * s + 1.0
    x = PI * A * A
    # 4 gamma(a+1, x) - 6 gamma(a, x) = (2s - 2) gamma(a, x) - 4 x^a e^-x
    lower = lower_incomplete_gamma(a, x)
    edge = cmath.exp(a * math.log(x) - x)
    return cmath.exp(-0.5 * s * _LOG_PI) * ((2.0 * s - 2.0) * lower - 4.0 * edge)


def fourier_eta_numeric(y: float, spec: QuadSpec = QuadSpec()) -> float:
    """2 int_0^inf eta(t) cos(2 pi t y) dt by quadrature."""
    def integrand(t):
        return 2.0 * eta(t) * np.cos(2.0 * PI * t * y)

    def bound(t):
        return 2.0 * eta_bound(t) if t >= ETA_BOUND_FROM else math.inf

    res = integrate_semi_infinite(integrand, 0.0, bound, spec, vectorized=True)
    if not res.converged:
        raise ArithmeticError(f"Fourier quadrature of eta did not converge at y={y}")
    return float(res.value.real)


def z_eta_terms(x: float, tol: float = 1e-16) -> int:
    """Number of terms of sum_n eta(n x) whose omitted tail is below ``tol``.

    Past A = n x >= 0.8 the majorant is decreasing, and the omitted sum is at
    most bound(A) * (1 + 1 / (2 pi A x)) by comparison with an integral.
    """
    if not x > 0:
        raise ValueError("z_eta requires x > 0")

    def tail(A):
        return eta_bound(A) * (1.0 + 1.0 / (2.0 * PI * A * x))

    lo, hi = 0.8, 0.8
    while tail(hi) >= tol:
        lo, hi = hi, 2.0 * hi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if tail(mid) < tol:
            hi = mid
        else:
            lo = mid
    n = math.ceil(hi / x)
    if n > Z_ETA_MAX_TERMS:
        raise OverflowError(f"z_eta needs {n} terms at x={x}; cap is {Z_ETA_MAX_TERMS}")
    return n


def z_eta(x: float, tol: float = 1e-16) -> float:
    """(Z eta)(x) = sum_{n >= 1} eta(n x) with a Gaussian-bounded truncation."""
    n = z_eta_terms(x, tol)
    terms = eta(x * np.arange(1, n + 1, dtype=float))
    return math.fsum(terms)


def gaussian_moment_tail_bound(k: float, A: float) -> float:
    """Upper bound on int_A^inf v^k exp(-pi v^2) dv for k >= 1 and 2 pi A^2 > k - 1."""
    denom = 1.0 - (k - 1.0) / (2.0 * PI * A * A)
    if denom <= 0:
        return math.inf
    return A ** (k - 1.0) * math.exp(-PI * A * A) / (2.0 * PI * denom)

