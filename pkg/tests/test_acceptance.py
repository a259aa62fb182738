"""Acceptance suite: one check per criterion at its stated tolerance and time budget.

Run with pytest (a summary block lists one PASS/FAIL line per criterion) or
directly: ``python tests/test_acceptance.py``.
"""

import math
import time

import pytest

from hplab.delta_mollifier import DeltaQuery, delta_closed_a, delta_closed_b, delta_growth_limit, delta_quadrature
from hplab.eigenfunctions import EigenParams, eigen_residual
from hplab.eta_kernel import eta, eta_antiderivative, fourier_eta_numeric, z_eta
from hplab.quadrature import QuadSpec, integrate_adaptive
from hplab.reconstruction import decomposition_terms, l2_norm_residual, rate_fit, residual
from hplab.zeta_zeros import load_zeros, refine_zero, verify_zero

RESULTS = []


def _rho(k):
    return load_zeros(k)[k - 1].rho


def c1_self_fourier():
    err = max(abs(fourier_eta_numeric(y) - eta(y)) for y in (0, 0.25, 0.5, 1, 1.5, 2, 3))
    return err < 1e-8, f"max |F eta - eta| = {err:.2e} (tol 1e-8)", 5.0


def c2_antiderivative():
    spec = QuadSpec(abs_tol=1e-15, rel_tol=1e-13)
    err = max(abs(integrate_adaptive(eta, 0.0, A, spec, vectorized=True).value.real - eta_antiderivative(A))
              for A in (0.5, 1, 2, 3))
    return err < 1e-12, f"max antiderivative error = {err:.2e} (tol 1e-12)", 1.0


def c3_theta():
    err = max(abs(z_eta(x) - z_eta(1 / x) / x) for x in (0.3, 0.5, 0.8, 1.0, 1.7, 2.5))
    return err < 1e-10, f"max theta error = {err:.2e} (tol 1e-10)", 1.0


def c4_delta_routes():
    ab = aq = 0.0
    for rho in (_rho(1), _rho(2)):
        for l in (1, 2, 5, 10, 20):
            for x in (0.5, 1.0, 2.0):
                q = DeltaQuery(l, x, rho)
                a = delta_closed_a(q)
                ab = max(ab, abs(a - delta_closed_b(q)))
                aq = max(aq, abs(a - delta_quadrature(q)))
    return ab < 1e-9 and aq < 1e-6, f"|A-B| = {ab:.2e} (tol 1e-9), |A-quad| = {aq:.2e} (tol 1e-6)", 30.0


def c5_eigen_equation():
    worst = 0.0
    for rho in [z.rho for z in load_zeros(3)] + [complex(0.3, 5.0)]:
        p = EigenParams(rho)
        worst = max(worst, max(eigen_residual(x, p) for x in (0.3, 0.7, 1, 2, 5)))
    return worst < 1e-6, f"max eigen residual = {worst:.2e} (tol 1e-6)", 60.0


def c6_decomposition():
    p = EigenParams(_rho(1))
    err = 0.0
    for l, x in ((3, 1.0), (8, 0.7)):
        i1, i2, i3 = decomposition_terms(l, x, p)
        err = max(err, abs(i1 - i2 + i3 - residual(l, x, p)))
    return err < 1e-6, f"max |I1 - I2 + I3 - residual| = {err:.2e} (tol 1e-6)", 60.0


def c7_pointwise():
    p = EigenParams(_rho(1))
    ratio, slope = math.inf, -math.inf
    for x in (0.5, 1.0, 2.0):
        pts = [(l, abs(residual(l, x, p))) for l in (2, 4, 8, 16, 32, 64)]
        ratio = min(ratio, pts[0][1] / pts[-1][1])
        slope = max(slope, rate_fit(pts).slope)
    return ratio >= 8 and slope <= -0.8, f"min decrease factor = {ratio:.1f} (>= 8), max slope = {slope:.3f} (<= -0.8)", 120.0


def c8_rate():
    p = EigenParams(_rho(1))
    fit = rate_fit([(l, l2_norm_residual(l, p, 0.1, 10.0, 64)) for l in (2, 4, 8, 16, 32)])
    ok = fit.slope <= -0.9 and fit.r_squared >= 0.98
    return ok, f"slope = {fit.slope:.3f} (<= -0.9), r^2 = {fit.r_squared:.4f} (>= 0.98)", 180.0


def c9_growth():
    rho = _rho(1)
    lim = delta_growth_limit(1.0, rho)
    val = abs(delta_closed_a(DeltaQuery(400, 1.0, rho))) * 400.5 ** -0.5
    rel = abs(val - lim) / lim
    return rel < 1e-6, f"relative gap to limit at l = 400: {rel:.2e} (tol 1e-6)", 5.0


def c10_zeros():
    zs = load_zeros(10)
    ok_table = all(verify_zero(z, 1e-8) for z in zs)
    worst = max(z.residual for z in zs)
    gap = abs(refine_zero(14.0, 15.0, tol=1e-12).gamma - zs[0].gamma)
    return ok_table and gap < 1e-9, f"max |zeta| = {worst:.2e} (tol 1e-8), refine gap = {gap:.2e} (tol 1e-9)", 10.0


CRITERIA = [
    (1, "self-Fourier kernel", c1_self_fourier),
    (2, "antiderivative identity", c2_antiderivative),
    (3, "theta functional equation", c3_theta),
    (4, "three-way counterterm agreement", c4_delta_routes),
    (5, "eigen-equation", c5_eigen_equation),
    (6, "residual decomposition", c6_decomposition),
    (7, "pointwise convergence", c7_pointwise),
    (8, "empirical L2 rate at Re rho = 1/2", c8_rate),
    (9, "counterterm growth", c9_growth),
    (10, "zero certification", c10_zeros),
]


def evaluate(num, name, fn):
    t0 = time.perf_counter()
    ok, detail, budget = fn()
    dt = time.perf_counter() - t0
    ok = ok and dt < budget
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {name}: {detail}; {dt:.2f}s (budget {budget:g}s)"
    return ok, line


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn):
    ok, line = evaluate(num, name, fn)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, name, fn in CRITERIA:
        ok, line = evaluate(num, name, fn)
        failed += not ok
        print(line, flush=True)
    raise SystemExit(1 if failed else 0)
