import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickgamma import CutPlaneError, binet_mu, boundary_log_abs_gamma, log_gamma, principal_log
from pickgamma.kernel import CONSTANTS, CutPoint

EULER = float(mpmath.euler)

finite = st.floats(-60, 60, allow_nan=False, allow_infinity=False)


def off_cut(z):
    return not (z.imag == 0 and z.real <= 0)


anywhere = st.builds(complex, finite, finite).filter(off_cut)


def mp_loggamma(z):
    return complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))


def test_mu_at_one():
    assert binet_mu(1.0) == pytest.approx(1 - CONSTANTS.ln_sqrt_2pi, abs=1e-15)
    assert binet_mu(1.0) == pytest.approx(0.0810614667953272, abs=1e-15)


def test_mu_at_two():
    assert binet_mu(2.0) == pytest.approx(2 - 1.5 * math.log(2) - CONSTANTS.ln_sqrt_2pi, abs=1e-14)


def test_log_gamma_half():
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert log_gamma(1.0) == 0


def test_log_gamma_on_cut_raises():
    with pytest.raises(CutPlaneError):
        log_gamma(-2.5)
    with pytest.raises(CutPlaneError):
        log_gamma(0.0)
    with pytest.raises(CutPlaneError):
        principal_log(-1.0)


def test_cut_point_rejects_cut():
    with pytest.raises(CutPlaneError):
        CutPoint(-2.5, 0.0)
    assert complex(CutPoint(-2.5, 1e-300)) == complex(-2.5, 1e-300)


def test_principal_log_examples():
    assert principal_log(1.0) == 0
    assert principal_log(1j) == pytest.approx(0.5j * math.pi, abs=1e-16)


def test_tiny_imaginary_part_near_cut():
    val = log_gamma(complex(-2.5, 1e-300))
    assert val.real == pytest.approx(math.log(abs(math.gamma(-2.5))), abs=1e-12)
    assert val.imag == pytest.approx(-3 * math.pi, abs=1e-12)
    assert log_gamma(complex(-0.5, 1e-8)).real == pytest.approx(math.log(2 * math.sqrt(math.pi)), abs=1e-7)


@pytest.mark.parametrize("t,ln_abs,k", [(-0.5, math.log(2 * math.sqrt(math.pi)), 1),
                                        (-1.5, math.log(4 * math.sqrt(math.pi) / 3), 2)])
def test_boundary_examples(t, ln_abs, k):
    b = boundary_log_abs_gamma(t)
    assert b.ln_abs == pytest.approx(ln_abs, abs=1e-14)
    assert b.branch_k == k


def test_boundary_value_minus_two_and_half():
    b = boundary_log_abs_gamma(-2.5)
    assert b.branch_k == 3
    assert b.finite
    assert b.ln_abs == pytest.approx(math.log(abs(math.gamma(-2.5))), abs=1e-14)


@pytest.mark.parametrize("n", [0, -1, -7])
def test_boundary_value_at_poles(n):
    b = boundary_log_abs_gamma(float(n))
    assert not b.finite
    assert b.ln_abs == math.inf
    assert b.branch_k == -n


@pytest.mark.parametrize("z", [3 + 4j, -7.3 + 0.01j, 0.2 - 30j, 45 + 1j, 1e-3 + 1e-3j, -40.5 - 2j])
def test_log_gamma_mpmath_points(z):
    ref = mp_loggamma(z)
    assert abs(log_gamma(z) - ref) <= 1e-13 * max(1.0, abs(ref))


@settings(max_examples=300, deadline=None)
@given(anywhere)
def test_log_gamma_matches_mpmath(z):
    ref = mp_loggamma(z)
    assert abs(log_gamma(z) - ref) <= 1e-10 * max(1.0, abs(ref))


@settings(max_examples=300, deadline=None)
@given(anywhere)
def test_conjugate_symmetry(z):
    assert abs(log_gamma(z.conjugate()) - log_gamma(z).conjugate()) <= 1e-13
    assert abs(binet_mu(z.conjugate()) - binet_mu(z).conjugate()) <= 1e-14 * max(1.0, abs(binet_mu(z)))


@settings(max_examples=300, deadline=None)
@given(anywhere)
def test_recurrence(z):
    lhs = log_gamma(z + 1)
    rhs = log_gamma(z) + principal_log(z)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(log_gamma(z)))


@settings(max_examples=200, deadline=None)
@given(st.builds(complex, st.floats(10, 30), st.floats(-30, 30)))
def test_stirling_form_consistency(z):
    rhs = CONSTANTS.ln_sqrt_2pi + (z - 0.5) * principal_log(z) - z + binet_mu(z)
    lhs = log_gamma(z)
    assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(lhs))


@pytest.mark.parametrize("t", [-0.3, -0.7, -2.5, -7.1])
def test_boundary_consistency(t):
    b = boundary_log_abs_gamma(t)
    target = complex(b.ln_abs, -math.pi * b.branch_k)
    devs = [abs(log_gamma(complex(t, y)) - target) for y in (1e-2, 1e-4, 1e-6)]
    assert all(devs[i + 1] < devs[i] for i in range(2))
    assert devs[-1] < 1e-4


@settings(max_examples=200, deadline=None)
@given(st.floats(-60, -1e-3).filter(lambda t: abs(t - round(t)) > 1e-3))
def test_boundary_is_upper_limit(t):
    b = boundary_log_abs_gamma(t)
    upper = log_gamma(complex(t, 1e-13))
    assert b.branch_k == math.floor(-t) + 1
    assert abs(upper.real - b.ln_abs) <= 1e-8 * max(1.0, abs(b.ln_abs))
    assert upper.imag == pytest.approx(-b.branch_k * math.pi, abs=1e-8)


@settings(max_examples=200, deadline=None)
@given(st.floats(-60, -1e-3).filter(lambda t: abs(t - round(t)) > 1e-6))
def test_boundary_matches_mpmath(t):
    ref = float(mpmath.log(abs(mpmath.gamma(t))))
    assert boundary_log_abs_gamma(t).ln_abs == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_mu_decays_like_one_over_twelve_z():
    for x in (10.0, 100.0, 1e4, 1e8):
        assert binet_mu(x) * 12 * x == pytest.approx(1.0, abs=1.0 / (10 * x * x))


def test_mu_closed_form_at_integers():
    for n in range(1, 30):
        exact = math.lgamma(n) - CONSTANTS.ln_sqrt_2pi - (n - 0.5) * math.log(n) + n
        assert binet_mu(float(n)) == pytest.approx(exact, abs=2e-14 * max(1, n))


def test_vectorised_agrees_with_scalar():
    zs = np.array([0.5 + 1j, 3.0, -4.2 + 0.3j, 20 - 5j])
    vec = log_gamma(zs)
    for z, v in zip(zs, vec):
        assert v == log_gamma(complex(z))


def test_euler_constant():
    assert CONSTANTS.euler_gamma == pytest.approx(EULER, abs=1e-16)


@pytest.mark.parametrize("z", [1e100 * complex(math.cos(2.5), math.sin(2.5)), -999135.15 + 41580.66j,
                               -9899.9 + 1411.2j, -5e4 + 1e3j, 1e8 - 1e8j])
def test_large_arguments_in_left_half_plane(z):
    ref = mp_loggamma(z)
    assert abs(log_gamma(z) - ref) <= 1e-14 * abs(ref)
