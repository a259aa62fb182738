import math

import numpy as np
import pytest

from hplab.delta_mollifier import DeltaQuery, delta, delta_growth_limit
from hplab.eigenfunctions import EigenParams, f_rho_series, inv_dilation_fourier
from hplab.reconstruction import (
    decomposition_terms,
    l2_norm,
    l2_norm_residual,
    log_grid,
    parallel_map,
    partial_sum,
    rate_fit,
    reconstruction_report,
    residual,
)


@pytest.fixture(scope="module")
def p1(rho1):
    return EigenParams(rho1)


def test_single_term_partial_sum(p1):
    assert partial_sum(1, 0.8, p1) == inv_dilation_fourier(1 / 0.8, p1) / 0.8


def test_partial_sum_conjugation(rho1):
    p, q = EigenParams(rho1), EigenParams(rho1.conjugate())
    assert abs(partial_sum(7, 1.1, q) - partial_sum(7, 1.1, p).conjugate()) < 1e-16


def test_residual_shrinks(p1):
    assert abs(residual(10, 1.0, p1)) < abs(residual(5, 1.0, p1))
    assert abs(residual(50, 1.0, p1)) < abs(residual(5, 1.0, p1))


def test_residual_routes_agree(p1):
    ra = residual(6, 0.9, p1, "a")
    assert abs(ra - residual(6, 0.9, p1, "b")) < 1e-13
    assert abs(ra - residual(6, 0.9, p1, "quadrature")) < 1e-12


def test_scaled_residual_bounded(p1):
    scaled = [abs(residual(l, 2.0, p1)) * (2 * l + 1) for l in (4, 8, 16, 32)]
    assert max(scaled) < 2 * scaled[0]


@pytest.mark.parametrize("l,x", [(3, 1.0), (8, 0.7), (5, 2.5), (4, 0.3)])
def test_decomposition_identity(p1, l, x):
    i1, i2, i3 = decomposition_terms(l, x, p1)
    assert abs(i1 - i2 + i3 - residual(l, x, p1)) < 1e-12


def test_decomposition_control_rho():
    # the identity needs only f(0) = Ff(0) = 0 pointwise, not zeta(rho) = 0
    p = EigenParams(complex(0.3, 5.0))
    i1, i2, i3 = decomposition_terms(4, 1.0, p)
    assert abs(i1 - i2 + i3 - residual(4, 1.0, p)) < 1e-12


def test_decomposition_terms_decay(p1):
    a = decomposition_terms(4, 1.0, p1)
    b = decomposition_terms(16, 1.0, p1)
    assert abs(b[2]) * 10 < abs(a[2])
    assert abs(b[1]) * 10 < abs(a[1])


def test_sampled_term_rates(p1):
    xs = np.geomspace(0.2, 5.0, 16)
    ls = (4, 8, 16, 32)
    norms = {l: [l2_norm(xs, [t[k] for t in (decomposition_terms(l, x, p1) for x in xs)]) for k in range(3)]
             for l in ls}
    # rather than 3 separate fits, unpack the cached norms
    slopes = [rate_fit([(l, norms[l][k]) for l in ls]).slope for k in range(3)]
    assert slopes[0] <= -0.9
    assert slopes[1] <= -1.8
    assert slopes[2] <= -1.8


def test_pointwise_convergence(rho1, rho2):
    for rho in (rho1, rho2):
        p = EigenParams(rho)
        for x in (0.5, 1.0, 2.0):
            pts = [(l, abs(residual(l, x, p))) for l in (2, 4, 8, 16, 32, 64)]
            assert pts[0][1] / pts[-1][1] >= 8
            assert rate_fit(pts).slope <= -0.8


def test_counterterm_carries_the_divergence(p1):
    # partial_sum - F grows like the counterterm, sqrt(l + 1/2) times its limit constant
    lim = delta_growth_limit(1.0, p1.rho)
    F = f_rho_series(1.0, p1)
    for l in (400, 1600):
        v = abs(partial_sum(l, 1.0, p1) - F) / math.sqrt(l + 0.5)
        assert abs(v - lim) < 1e-3 * lim
    assert abs(delta(DeltaQuery(1600, 1.0, p1.rho))) > abs(delta(DeltaQuery(100, 1.0, p1.rho))) * 3.9


def test_l2_norm_basics():
    xs = np.linspace(0.0, 1.0, 101)
    assert l2_norm(xs, np.zeros(101)) == 0.0
    assert abs(l2_norm(xs, np.ones(101) * 2j) - 2.0) < 1e-15
    assert abs(l2_norm(xs, xs) - math.sqrt(1 / 3)) < 1e-4
    with pytest.raises(ValueError):
        l2_norm(xs[::-1], xs)
    with pytest.raises(ValueError):
        l2_norm(xs, xs[:-1])
    assert l2_norm([1.0], [3.0]) == 0.0


def test_report_invariants(p1):
    grid = log_grid(0.5, 2.0, 16)
    rep = reconstruction_report(4, p1, grid)
    for s, d, f, r in zip(rep.partial_sums, rep.deltas, rep.f_values, rep.residuals):
        assert r == s - d - f
    assert rep.l2_norm >= 0
    assert rep.domain == (0.5, 2.0)


def test_l2_monotone_and_grid_converged(p1):
    assert l2_norm_residual(16, p1) < l2_norm_residual(2, p1)
    coarse, fine = l2_norm_residual(4, p1, n_grid=64), l2_norm_residual(4, p1, n_grid=128)
    assert abs(coarse - fine) < 0.05 * fine


def test_grid_validation(p1):
    with pytest.raises(ValueError):
        log_grid(0.1, 10.0, 8)
    with pytest.raises(ValueError):
        log_grid(1.0, 0.5, 32)


def test_rate_fit_exact_laws():
    pts = [(l, 3.0 / (2 * l + 1)) for l in (2, 4, 8, 16)]
    fit = rate_fit(pts)
    assert abs(fit.slope + 1) < 1e-12 and abs(fit.r_squared - 1) < 1e-12
    assert abs(fit.intercept - math.log(3.0)) < 1e-12
    fit2 = rate_fit([(l, 1.0 / (2 * l + 1) ** 2) for l in (1, 3, 9)])
    assert abs(fit2.slope + 2) < 1e-12


def test_rate_fit_errors():
    with pytest.raises(ValueError):
        rate_fit([(1, 1.0), (2, 0.5)])
    with pytest.raises(ValueError):
        rate_fit([(4, 1.0), (4, 0.5), (4, 0.2)])
    with pytest.raises(ValueError):
        rate_fit([(1, 1.0), (2, 0.0), (3, 0.2)])


def test_parallel_map_matches_serial(p1):
    grid = list(log_grid(0.5, 2.0, 16))
    serial = reconstruction_report(3, p1, grid, jobs=1)
    par = reconstruction_report(3, p1, grid, jobs=2)
    assert serial.residuals == par.residuals
    assert parallel_map(abs, [-1, 2, -3], jobs=2) == [1, 2, 3]


def test_asymptotic_rate_matches_endpoint_term(rho1):
    # the upper-endpoint Euler-Maclaurin term decays like l^(Re rho - 2)
    p = EigenParams(rho1)
    fit = rate_fit([(l, l2_norm_residual(l, p)) for l in (64, 128, 256, 512)])
    assert abs(fit.slope - (rho1.real - 2.0)) < 0.02
    assert fit.r_squared > 0.9999
