"""The eigenfunctions F_rho(x) = int_1^inf (Z eta)(t x) t^(rho-1) dt.

Exchanging the dilation sum and the integral gives the series

    F_rho(x) = sum_n f(n x),   f(A) = A^(-rho) int_A^inf eta(v) v^(rho-1) dv,

where f is the inverse dilation sum Z^-1 F_rho. Its Fourier transform has the
closed form t^(rho-1) int_0^t eta(w) w^(-rho) dw.

Complex powers A^(-rho) are exp(-rho log A) with the real logarithm of A > 0.

The Mellin transform of F_rho is xi(s) / (s - rho). Moving the inversion
contour across s = rho and substituting s -> 1 - s gives the reflection

    F_rho(x) = xi(rho) x^(-rho) - (1/x) F_(1-rho)(1/x),

which ``f_rho`` uses below x = 1. There the direct series cancels to many
digits, while the reflected series is short and cancellation-free.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .complex_special import xi_completed
from .eta_kernel import (
    ETA_BOUND_COEFF,
    ETA_BOUND_FROM,
    eta,
    eta_bound,
    eta_head_mellin,
    eta_tail_mellin,
    gaussian_moment_tail_bound,
    z_eta,
)
from .quadrature import QuadSpec, integrate_semi_infinite

# extra series terms kept after the majorant drops below series_tol
SAFETY_TERMS = 2
MAX_SERIES_TERMS = 50_000
# f_rho and f_rho_derivative switch to the reflected form below this x
REFLECT_BELOW = 1.0


@dataclass(frozen=True)
class EigenParams:
    rho: complex
    series_tol: float = 1e-20
    quad: QuadSpec = field(default_factory=QuadSpec)

    def __post_init__(self):
        object.__setattr__(self, "rho", complex(self.rho))
        if not self.series_tol > 0:
            raise ValueError("series_tol must be positive")


@dataclass(frozen=True)
class EigenSample:
    x: float
    value: complex
    method: str  # "series", "reflected", "auto" or "quadrature"


def _cpow(A: float, s: complex) -> complex:
    return cmath.exp(s * math.log(A))


def inv_dilation_bound(A: float, sigma: float) -> float:
    """Majorant of |A^(-rho) int_A^inf eta(v) v^(rho-1) dv| with sigma = Re rho."""
    if A < ETA_BOUND_FROM:
        return math.inf
    return A ** (-sigma) * ETA_BOUND_COEFF * gaussian_moment_tail_bound(3.0 + sigma, A)


def inv_dilation(t: float, p: EigenParams) -> complex:
    """(Z^-1 F_rho)(t) = int_1^inf eta(t u) u^(rho-1) du, extended evenly to t < 0."""
    A = abs(t)
    if A == 0.0:
        raise ValueError("Z^-1 F_rho is singular at 0")
    return _cpow(A, -p.rho) * eta_tail_mellin(A, p.rho)


def _series_length(x: float, p: EigenParams) -> int:
    sigma = p.rho.real
    n = 1
    while inv_dilation_bound(n * x, sigma) >= p.series_tol:
        n += 1
        if n > MAX_SERIES_TERMS:
            raise OverflowError(f"F_rho series needs more than {MAX_SERIES_TERMS} terms at x={x}")
    return n + SAFETY_TERMS


def _series(x: float, p: EigenParams) -> tuple[complex, float]:
    """(sum_n f(n x), sum_n eta(n x)) over the same truncated range."""
    if not x > 0:
        raise ValueError("F_rho requires x > 0")
    n_terms = _series_length(x, p)
    vals = [inv_dilation(n * x, p) for n in range(1, n_terms + 1)]
    f_sum = complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    eta_sum = math.fsum(eta(n * x) for n in range(1, n_terms + 1))
    return f_sum, eta_sum


def f_rho_series(x: float, p: EigenParams) -> complex:
    return _series(x, p)[0]


def f_rho_quadrature(x: float, p: EigenParams) -> complex:
    """Direct quadrature of the defining integral; slow, used as an oracle."""
    if not x > 0:
        raise ValueError("F_rho requires x > 0")
    rho = p.rho
    sigma = rho.real

    def integrand(t):
        return z_eta(t * x) * _cpow(t, rho - 1.0)

    def bound(t):
        A = t * x
        if A < 1.0:
            return math.inf
        # the n >= 2 terms of the dilation sum add well under 1% for A >= 1
        return 1.01 * eta_bound(A) * t ** (sigma - 1.0)

    res = integrate_semi_infinite(integrand, 1.0, bound, p.quad)
    if not res.converged:
        raise ArithmeticError(f"F_rho quadrature did not converge at x={x}")
    return res.value


def f_rho_derivative(x: float, p: EigenParams) -> complex:
    """d/dx F_rho(x), differentiating the series term by term.

    d/dx f(n x) = -(rho f(n x) + eta(n x)) / x, because the lower limit of the
    tail integral moves with x.
    """
    f_sum, eta_sum = _series(x, p)
    return -(p.rho * f_sum + eta_sum) / x


def _reflected_params(p: EigenParams) -> EigenParams:
    return EigenParams(1.0 - p.rho, p.series_tol, p.quad)


def f_rho_reflected(x: float, p: EigenParams) -> complex:
    """xi(rho) x^(-rho) - (1/x) F_(1-rho)(1/x); valid for every rho."""
    if not x > 0:
        raise ValueError("F_rho requires x > 0")
    y = 1.0 / x
    return xi_completed(p.rho) * _cpow(x, -p.rho) - y * f_rho_series(y, _reflected_params(p))


def f_rho_derivative_reflected(x: float, p: EigenParams) -> complex:
    if not x > 0:
        raise ValueError("F_rho requires x > 0")
    y = 1.0 / x
    q = _reflected_params(p)
    h_val, eta_sum = _series(y, q)
    h_der = -(q.rho * h_val + eta_sum) / y
    return -p.rho * xi_completed(p.rho) * _cpow(x, -p.rho - 1.0) + y * y * h_val + y ** 3 * h_der


def f_rho(x: float, p: EigenParams) -> complex:
    """F_rho(x): direct series for x >= REFLECT_BELOW, reflected series below."""
    return f_rho_reflected(x, p) if x < REFLECT_BELOW else f_rho_series(x, p)


def f_rho_prime(x: float, p: EigenParams) -> complex:
    """d/dx F_rho(x), with the same choice of representation as ``f_rho``."""
    return f_rho_derivative_reflected(x, p) if x < REFLECT_BELOW else f_rho_derivative(x, p)


def eigen_residual(x: float, p: EigenParams) -> float:
    """|-x F'(x) - rho F(x) - (Z eta)(x)|.

    This is an integration-by-parts identity of the integral definition and
    holds for every rho in the strip, zeta zero or not. For x >= 1 it is
    built into the series derivative; below, the reflected form reproduces it
    only through the theta relation of Z eta.
    """
    return abs(-x * f_rho_prime(x, p) - p.rho * f_rho(x, p) - z_eta(x))


def sample(x: float, p: EigenParams, method: str = "series") -> EigenSample:
    if method == "auto":
        return EigenSample(x, f_rho(x, p), method)
    if method == "reflected":
        return EigenSample(x, f_rho_reflected(x, p), method)
    if method == "series":
        return EigenSample(x, f_rho_series(x, p), method)
    if method == "quadrature":
        return EigenSample(x, f_rho_quadrature(x, p), method)
    raise ValueError(f"unknown method {method!r}")


def inv_dilation_fourier(t: float, p: EigenParams) -> complex:
    """Fourier transform of Z^-1 F_rho at t > 0: t^(rho-1) int_0^t eta(w) w^(-rho) dw."""
    if not t > 0:
        if t == 0:
            return 0j
        t = -t
    return _cpow(t, p.rho - 1.0) * eta_head_mellin(t, 1.0 - p.rho)

