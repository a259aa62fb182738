import mpmath
import pytest

from hplab.delta_mollifier import (
    GAUSSIAN_UNDERFLOW,
    DeltaQuery,
    delta,
    delta_closed_a,
    delta_closed_b,
    delta_growth_limit,
    delta_quadrature,
)
from hplab.eta_kernel import mellin_eta
from hplab.quadrature import QuadSpec

mpmath.mp.dps = 30
L_GRID = (1, 2, 5, 10, 20)
X_GRID = (0.5, 1.0, 2.0)


def mp_delta(l, x, rho):
    B = mpmath.mpf(l + 0.5) / x
    a = (3 - rho) / 2
    return -2 * mpmath.pi ** (rho / 2 - 0.5) * B ** rho * mpmath.gammainc(a, 0, mpmath.pi * B * B)


def test_three_routes_agree(rho1, rho2):
    for rho in (rho1, rho2):
        for l in L_GRID:
            for x in X_GRID:
                q = DeltaQuery(l, x, rho)
                a = delta_closed_a(q)
                assert abs(a - delta_closed_b(q)) < 1e-13
                assert abs(a - delta_quadrature(q)) < 1e-12


@pytest.mark.parametrize("l,x", [(1, 0.5), (5, 1.0), (20, 2.0), (3, 0.3)])
def test_against_mpmath(rho1, l, x):
    ref = complex(mp_delta(l, mpmath.mpf(x), mpmath.mpc(rho1)))
    assert abs(delta_closed_a(DeltaQuery(l, x, rho1)) - ref) < 1e-13


def test_u_integral_variant(rho1):
    q = DeltaQuery(4, 1.3, rho1)
    # the u-integral is scaled by 4 pi B^3, so its tolerance must be tighter
    spec = QuadSpec(abs_tol=1e-16, rel_tol=1e-13)
    assert abs(delta_closed_b(q, quadrature=True, spec=spec) - delta_closed_b(q)) < 1e-13


def test_underflow_branch_is_continuous(rho1):
    # pi B^2 just past the cut-off: route A drops the Gamma term, route B keeps everything
    l = 16
    x = (l + 0.5) / (1.01 * (GAUSSIAN_UNDERFLOW / 3.141592653589793) ** 0.5)
    q = DeltaQuery(l, x, rho1)
    assert abs(delta_closed_a(q) - delta_closed_b(q)) < 1e-12 * abs(delta_closed_b(q))


def test_growth_limit(rho1):
    lim = delta_growth_limit(1.0, rho1)
    assert abs(lim - abs(mellin_eta(1 - rho1)) / abs(rho1)) < 1e-18
    vals = [abs(delta(DeltaQuery(l, 1.0, rho1))) * (l + 0.5) ** -0.5 for l in (100, 200, 400)]
    for v in vals:
        assert abs(v - lim) < 1e-6 * lim


def test_conjugation(rho1):
    q, qc = DeltaQuery(5, 0.8, rho1), DeltaQuery(5, 0.8, rho1.conjugate())
    assert abs(delta(qc) - delta(q).conjugate()) < 1e-16


def test_query_validation(rho1):
    with pytest.raises(ValueError):
        DeltaQuery(0, 1.0, rho1)
    with pytest.raises(ValueError):
        DeltaQuery(2.5, 1.0, rho1)
    with pytest.raises(ValueError):
        DeltaQuery(2, 0.0, rho1)
    with pytest.raises(ValueError):
        delta(DeltaQuery(2, 1.0, rho1), route="c")
    assert DeltaQuery(2, 0.5, rho1).B == 5.0
