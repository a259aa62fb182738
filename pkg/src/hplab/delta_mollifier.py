"""The counterterm delta_{l,F_rho}(x) by three independent routes.

With B = (l + 1/2) / x and a = (3 - rho) / 2:

* route A:  mellin_eta(1-rho) B^rho / rho + 2 pi^(rho/2 - 1/2) B^rho Gamma(a, pi B^2)
* route B:  -2 pi^(rho/2 - 1/2) B^rho gamma(a, pi B^2)
            (= -4 pi B^3 int_0^1 u^(2-rho) exp(-pi B^2 u^2) du)
* quadrature: int_0^B of the Fourier transform of Z^-1 F_rho.

Route A is the default. Its incomplete gamma term is dropped once
pi B^2 > GAUSSIAN_UNDERFLOW, where exp(-pi B^2) underflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .complex_special import lower_incomplete_gamma, upper_incomplete_gamma
from .eigenfunctions import EigenParams, inv_dilation_fourier
from .eta_kernel import mellin_eta
from .quadrature import QuadSpec, integrate_adaptive

PI = math.pi
GAUSSIAN_UNDERFLOW = 700.0


@dataclass(frozen=True)
class DeltaQuery:
    l: int
    x: float
    rho: complex

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 1:
            raise ValueError("l must be a positive integer")
        if not self.x > 0:
            raise ValueError("x must be positive")
        object.__setattr__(self, "rho", complex(self.rho))

    @property
    def B(self) -> float:
        return (self.l + 0.5) / self.x


def _prefactor(q: DeltaQuery) -> complex:
    """4 pi * (1/2) pi^(-(3-rho)/2) * B^rho, the common factor of both closed forms."""
    rho = q.rho
    return 2.0 * cmath.exp(rho * math.log(q.B) + (0.5 * rho - 0.5) * math.log(PI))


def delta_closed_a(q: DeltaQuery) -> complex:
    rho = q.rho
    B = q.B
    main = mellin_eta(1.0 - rho) * cmath.exp(rho * math.log(B)) / rho
    x_arg = PI * B * B
    if x_arg > GAUSSIAN_UNDERFLOW:
        return main
    return main + _prefactor(q) * upper_incomplete_gamma(0.5 * (3.0 - rho), x_arg)


def delta_closed_b(q: DeltaQuery, quadrature: bool = False, spec: QuadSpec = QuadSpec()) -> complex:
    """Second closed form; ``quadrature=True`` integrates the u-integral numerically instead."""
    rho = q.rho
    B = q.B
    if quadrature:
        res = integrate_adaptive(
            lambda u: cmath.exp((2.0 - rho) * math.log(u) - PI * (B * u) ** 2) if u > 0 else 0j,
            0.0, 1.0, spec)
        if not res.converged:
            raise ArithmeticError(f"delta u-integral did not converge for {q}")
        return -4.0 * PI * B ** 3 * res.value
    return -_prefactor(q) * lower_incomplete_gamma(0.5 * (3.0 - rho), PI * B * B)


def delta_quadrature(q: DeltaQuery, spec: QuadSpec = QuadSpec()) -> complex:
    """int_0^B of the Fourier transform of Z^-1 F_rho, by adaptive quadrature."""
    p = EigenParams(q.rho, quad=spec)
    res = integrate_adaptive(lambda t: inv_dilation_fourier(t, p), 0.0, q.B, spec)
    if not res.converged:
        raise ArithmeticError(f"delta quadrature did not converge for {q}")
    return res.value


def delta(q: DeltaQuery, route: str = "a", spec: QuadSpec = QuadSpec()) -> complex:
    if route == "a":
        return delta_closed_a(q)
    if route == "b":
        return delta_closed_b(q)
    if route == "quadrature":
        return delta_quadrature(q, spec)
    raise ValueError(f"unknown delta route {route!r}")


def delta_growth_limit(x: float, rho: complex) -> float:
    """lim_l |delta(l, x, rho)| (l + 1/2)^(-Re rho) = |mellin_eta(1-rho)| / (|rho| x^Re rho)."""
    rho = complex(rho)
    return abs(mellin_eta(1.0 - rho)) / (abs(rho) * x ** rho.real)
