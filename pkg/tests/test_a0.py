import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickgamma import (
    DensityFamily,
    Kind,
    find_a0,
    golden_section,
    minimize_rho,
    positivity_scan,
    rho_ks,
    rho_ks_direct,
)

A0_REPORTED = 0.3681154742
M_REPORTED = {1: 1.6477352344, 178: 1.0000028637, 179: 0.9999936630, 510: 0.9993586013}


@pytest.fixture(scope="module")
def report():
    return find_a0(1000, 1e-10)


def rho_mp(k, s):
    with mpmath.workdps(40):
        k, s = mpmath.mpf(k), mpmath.mpf(s)
        return float(mpmath.log(k + s) - mpmath.log(mpmath.gamma(k + s) * mpmath.sin(mpmath.pi * s) / mpmath.pi) / k)


def test_rho_limit_in_k():
    assert rho_ks(10**6, 0.5) == pytest.approx(1.0, abs=1e-5)


def test_rho_diverges_at_endpoints():
    for k in (1, 50, 1000):
        assert rho_ks(k, 0.0) == math.inf
        assert rho_ks(k, 1.0) == math.inf
        assert rho_ks(k, 1e-12) > rho_ks(k, 1e-6) > rho_ks(k, 0.5)
        assert rho_ks(k, 1 - 1e-12) > rho_ks(k, 1 - 1e-6)


def test_rho_validation():
    with pytest.raises(ValueError):
        rho_ks(0, 0.5)
    with pytest.raises(ValueError):
        rho_ks(3, 1.5)
    with pytest.raises(ValueError):
        rho_ks(2.5, 0.5)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 1000), st.floats(1e-6, 1 - 1e-6))
def test_rho_matches_mpmath(k, s):
    assert rho_ks(k, s) == pytest.approx(rho_mp(k, s), rel=1e-13)


def test_dual_form_agreement():
    rng = np.random.default_rng(11)
    ks = rng.integers(1, 1001, 10_000)
    ss = rng.uniform(0, 1, 10_000)
    worst = 0.0
    for k in np.unique(ks):
        s = ss[ks == k]
        a, b = rho_ks(int(k), s), rho_ks_direct(int(k), s)
        worst = max(worst, float(np.max(np.abs(a - b) / np.abs(a))))
    assert worst <= 1e-12


@pytest.mark.parametrize("k,m", sorted(M_REPORTED.items()))
def test_reported_minima(k, m):
    assert minimize_rho(k).m_k == pytest.approx(m, abs=1e-8)


def test_minimum_against_mpmath():
    for k in (1, 178, 510):
        km = minimize_rho(k)
        with mpmath.workdps(30):
            f = lambda s: mpmath.log(k + s) - mpmath.log(mpmath.gamma(k + s) * mpmath.sin(mpmath.pi * s) / mpmath.pi) / k
            s_ref = mpmath.re(mpmath.findroot(lambda s: mpmath.diff(f, s), mpmath.mpf(km.s_star)))
            m_ref = float(f(s_ref))
        assert km.m_k == pytest.approx(m_ref, abs=1e-12)
        assert km.s_star == pytest.approx(float(s_ref), abs=1e-5)


@pytest.mark.parametrize("k", [1, 10, 510])
def test_stationarity(k):
    km = minimize_rho(k)
    h = 1e-6
    slope = (rho_ks(k, km.s_star + h) - rho_ks(k, km.s_star - h)) / (2 * h)
    assert abs(slope) <= 1e-6


@pytest.mark.parametrize("k", [1, 7, 178, 510, 999])
def test_minimum_is_below_audit_grid(k):
    km = minimize_rho(k)
    assert 0 < km.s_star < 1
    assert not km.multimodal
    grid = np.linspace(1e-4, 1 - 1e-4, 2001)
    assert km.m_k <= np.min(rho_ks(k, grid)) + 1e-15


def test_minimize_rho_rejects_loose_tol():
    with pytest.raises(ValueError):
        minimize_rho(5, tol=1e-6)


def test_golden_section_on_parabola():
    x, fx = golden_section(lambda x: (x - 0.3) ** 2 + 2.0, 0.0, 1.0, 1e-12)
    # a flat minimum pins x only to about sqrt(machine epsilon)
    assert x == pytest.approx(0.3, abs=1e-7)
    assert fx == pytest.approx(2.0, abs=1e-20)


def test_find_a0(report):
    assert report.a0 == pytest.approx(A0_REPORTED, abs=1e-9)
    assert report.k_star == 510
    assert report.a0 == math.exp(-report.m_inf)
    assert report.m_inf == min(row.m_k for row in report.table)
    assert report.table[report.k_star - 1].m_k == report.m_inf


def test_monotone_pattern(report):
    m = np.array([row.m_k for row in report.table])
    assert np.all(np.diff(m[:510]) < 0)
    assert np.all(np.diff(m[509:]) > 0)
    assert report.decreasing_through == 510
    assert report.increasing_after
    assert report.monotone_pattern


def test_table_ordering_and_flags(report):
    assert [row.k for row in report.table] == list(range(1, 1001))
    assert not any(row.multimodal for row in report.table)


def test_limit_of_minima(report):
    m10k = minimize_rho(10_000).m_k
    assert 0.999 < m10k < 1.001
    assert m10k > report.m_inf


def test_parallel_sweep_is_identical(report):
    par = find_a0(1000, 1e-10, workers=4)
    assert [r.m_k for r in par.table] == [r.m_k for r in report.table]
    assert par.a0 == report.a0


def test_find_a0_validation():
    with pytest.raises(ValueError):
        find_a0(500)
    with pytest.raises(ValueError):
        find_a0(1000, tol=1e-6)


def test_link_to_density_sign(report):
    a0 = report.a0
    assert positivity_scan(DensityFamily(Kind.D, a0 * (1 + 1e-3)), 600.0, 64) == []
    a = a0 * (1 - 1e-3)
    witnesses = positivity_scan(DensityFamily(Kind.D, a), 600.0, 64)
    assert witnesses
    # the deepest violation of the per-interval numerator N_a / k = rho(k, s) - ln(1/a)
    t = np.array([w[0] for w in witnesses])
    v = np.array([w[1] for w in witnesses])
    k = np.floor(t)
    per_k = v * t * (np.log(a * t) ** 2 + math.pi**2) / k
    deepest = k[np.argmin(per_k)]
    assert abs(deepest - report.k_star) <= 50
