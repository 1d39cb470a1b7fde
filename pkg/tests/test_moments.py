import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickgamma import (
    cm_function_check,
    cm_sequence_check,
    f_of,
    hankel_psd_check,
    log_convexity_check,
    log_f,
    moment_sequence,
    unit_ball_volume,
)
from pickgamma.moments import E_MINUS_HALF


def f_mp(x):
    with mpmath.workdps(40):
        x = mpmath.mpf(x)
        omega = mpmath.pi ** (x / 2) / mpmath.gamma(1 + x / 2)
        return float(omega ** (1 / (x * mpmath.log(x))))


def test_unit_ball_volumes():
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-15)
    with pytest.raises(ValueError):
        unit_ball_volume(0)


def test_f_examples():
    assert f_of(2) == pytest.approx(math.pi ** (1 / (2 * math.log(2))), rel=1e-15)
    assert f_of(2) == pytest.approx(2.28359, abs=1e-5)
    assert f_of(3) == pytest.approx((4 * math.pi / 3) ** (1 / (3 * math.log(3))), rel=1e-15)
    for x in (1, 10, 100):
        assert log_f(x + 1) + 0.5 > 0
    with pytest.raises(ValueError):
        f_of(1.0)
    with pytest.raises(ValueError):
        f_of(0.5)


@pytest.mark.parametrize("n", range(2, 201))
def test_f_consistency_with_volume(n):
    assert f_of(n) == pytest.approx(unit_ball_volume(n) ** (1 / (n * math.log(n))), rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(1.01, 1e6))
def test_f_matches_mpmath(x):
    assert f_of(x) == pytest.approx(f_mp(x), rel=1e-13)


def test_moment_sequence_report():
    rep = moment_sequence(100)
    a = [v for _, v in rep.values]
    assert [n for n, _ in rep.values] == list(range(101))
    assert a[0] == pytest.approx(f_of(2), rel=1e-15)
    assert all(a[i + 1] < a[i] for i in range(100))
    assert all(v > E_MINUS_HALF for v in a)
    assert all(g > 0 for g in rep.limit_gap)
    assert rep.min_logconvexity_margin >= -1e-12
    assert min(rep.diff_table_max_violation.values()) >= -1e-9
    assert min(rep.hankel_min_eigenvalues) >= -1e-10


def test_limit_gap_decays_to_1e4():
    gaps = [f_of(n + 2) - E_MINUS_HALF for n in range(10_001)]
    assert all(g > 0 for g in gaps)
    assert all(gaps[i + 1] < gaps[i] for i in range(10_000))


def test_cm_sequence_examples():
    assert all(v == 0 for v in cm_sequence_check([3.0] * 12, 10).values())
    harmonic = [1 / (n + 1) for n in range(40)]
    assert min(cm_sequence_check(harmonic, 10).values()) >= 0
    a = [f_of(n + 2) for n in range(101)]
    assert min(cm_sequence_check(a, 10).values()) >= -1e-9
    with pytest.raises(ValueError):
        cm_sequence_check([1.0, 0.5], 3)


def test_cm_sequence_detects_violation():
    res = cm_sequence_check([float(n) for n in range(10)], 3)
    assert res[1] == -1.0


def test_cm_differences_exact_for_harmonic():
    # (-1)^k Delta^k 1/(n+1) = k! / ((n+1)(n+2)...(n+k+1))
    h = [1 / (n + 1) for n in range(30)]
    res = cm_sequence_check(h, 8)
    for k, v in res.items():
        n = 30 - k - 1
        exact = math.factorial(k) / math.prod(range(n + 1, n + k + 2))
        assert v == pytest.approx(exact, rel=1e-9)


def test_log_convexity_examples():
    assert log_convexity_check([0.5**n for n in range(10)]) == pytest.approx(0.0, abs=1e-18)
    assert log_convexity_check([1.0, 1.0, 2.0]) == 1.0
    assert log_convexity_check([1.0, 2.0, 1.0]) == -3.0
    assert log_convexity_check([f_of(n + 2) for n in range(101)]) >= -1e-12
    with pytest.raises(ValueError):
        log_convexity_check([1.0, 2.0])


def test_hankel_examples():
    h = [1 / (n + 1) for n in range(10)]
    plain, shifted = hankel_psd_check(h, 4)
    assert plain > 0 and shifted > 0
    plain, shifted = hankel_psd_check([f_of(n + 2) for n in range(101)], 6)
    assert plain >= -1e-10 and shifted >= -1e-10
    _, shifted = hankel_psd_check([2.0**n for n in range(12)], 4)
    assert shifted < 0
    with pytest.raises(ValueError):
        hankel_psd_check([1.0] * 5, 3)


def test_hankel_matches_direct_eigenvalues():
    a = [1 / (n + 1) for n in range(8)]
    H = np.array([[a[i + j] for j in range(4)] for i in range(4)])
    assert hankel_psd_check(a, 4)[0] == pytest.approx(np.linalg.eigvalsh(H).min(), rel=1e-12)


def test_cm_function_examples():
    res = cm_function_check(lambda x: math.exp(-x), 0.5, 10, 0.5, 8)
    for k, v in res.items():
        assert v >= 0
    assert cm_function_check(lambda x: x, 0.5, 10, 0.5, 3)[1] == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        cm_function_check(lambda x: x, 0.0, 10, 0.5, 3)
    with pytest.raises(ValueError):
        cm_function_check(lambda x: x, 1.0, 2.0, 0.5, 3)


def test_f_shifted_is_completely_monotonic():
    res = cm_function_check(lambda x: f_of(x + 1), 0.5, 20, 0.5, 10)
    assert min(res.values()) >= -1e-9


def test_log_f_plus_half_is_completely_monotonic():
    res = cm_function_check(lambda x: log_f(x + 1) + 0.5, 0.5, 20, 0.5, 8)
    assert min(res.values()) >= -1e-9
