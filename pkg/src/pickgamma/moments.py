"""Unit-ball volumes and the moment sequence ``f(n+2) = Omega_{n+2}^(1/((n+2) ln(n+2)))``.

``f(x) = (pi^(x/2) / Gamma(1 + x/2))^(1/(x ln x))``; ``f(x+1)`` is completely
monotonic, so ``f(n+2)`` is a Hausdorff moment sequence with limit
``exp(-1/2)``.  The checks here are finite, double-precision surrogates:
alternating finite differences, log-convexity and Hankel positivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "MomentReport",
    "cm_function_check",
    "cm_sequence_check",
    "f_of",
    "hankel_psd_check",
    "log_convexity_check",
    "log_f",
    "moment_sequence",
    "unit_ball_volume",
]

_LN_PI = math.log(math.pi)
E_MINUS_HALF = math.exp(-0.5)


@dataclass(frozen=True)
class MomentReport:
    values: list
    min_logconvexity_margin: float
    diff_table_max_violation: dict
    hankel_min_eigenvalues: tuple
    limit_gap: list


def unit_ball_volume(n: int) -> float:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return math.exp(0.5 * n * _LN_PI - math.lgamma(1.0 + 0.5 * n))


def log_f(x: float) -> float:
    """``ln f(x) = ((x/2) ln pi - ln Gamma(1 + x/2)) / (x ln x)`` for ``x > 1``."""
    x = float(x)
    if not x > 1:
        raise ValueError(f"f is defined for x > 1, got {x}")
    return (0.5 * x * _LN_PI - math.lgamma(1.0 + 0.5 * x)) / (x * math.log(x))


def f_of(x: float) -> float:
    return math.exp(log_f(x))


def _diff(seq: Sequence[float], order: int, n: int) -> float:
    # (-1)^order Delta^order a_n, summed exactly
    return math.fsum((-1) ** j * math.comb(order, j) * seq[n + j] for j in range(order + 1))


def cm_sequence_check(seq: Sequence[float], max_order: int) -> dict[int, float]:
    """``{k: min_n (-1)^k Delta^k a_n}`` for ``k = 1..max_order``; negative means violated."""
    seq = [float(v) for v in seq]
    if len(seq) < max_order + 2:
        raise ValueError("sequence too short for the requested order")
    return {
        k: min(_diff(seq, k, n) for n in range(len(seq) - k))
        for k in range(1, max_order + 1)
    }


def log_convexity_check(seq: Sequence[float]) -> float:
    """Minimum of ``a_{n-1} a_{n+1} - a_n^2``."""
    if len(seq) < 3:
        raise ValueError("need at least three terms")
    a = [float(v) for v in seq]
    return min(math.fsum((a[n - 1] * a[n + 1], -a[n] * a[n])) for n in range(1, len(a) - 1))


def hankel_psd_check(seq: Sequence[float], m: int = 6) -> tuple[float, float]:
    """Smallest eigenvalues of ``(a_{i+j})`` and ``(a_{i+j} - a_{i+j+1})``, ``0 <= i, j < m``."""
    a = np.asarray(seq, dtype=float)
    if len(a) < 2 * m:
        raise ValueError("sequence must have at least 2m terms")
    idx = np.add.outer(np.arange(m), np.arange(m))
    plain = a[idx]
    shifted = a[idx] - a[idx + 1]
    return float(np.linalg.eigvalsh(plain)[0]), float(np.linalg.eigvalsh(shifted)[0])


def cm_function_check(fn: Callable[[float], float], x_min: float, x_max: float,
                      h: float, max_order: int) -> dict[int, float]:
    """Worst ``(-1)^k Delta_h^k fn(x)`` over the grid ``x_min + j h`` inside ``[x_min, x_max]``."""
    if not x_min > 0:
        raise ValueError("x_min must be positive")
    if x_max - x_min < max_order * h:
        raise ValueError("range too short for the requested order")
    n = int(math.floor((x_max - x_min) / h + 1e-9)) + 1
    values = [float(fn(x_min + j * h)) for j in range(n)]
    return cm_sequence_check(values, max_order)


def moment_sequence(n_max: int, max_order: int = 10, hankel_m: int = 6) -> MomentReport:
    """``f(n+2)`` for ``n = 0..n_max`` together with the sequence-level checks."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    values = [(n, f_of(n + 2)) for n in range(n_max + 1)]
    a = [v for _, v in values]
    order = min(max_order, len(a) - 2)
    m = min(hankel_m, len(a) // 2)
    return MomentReport(
        values=values,
        min_logconvexity_margin=log_convexity_check(a),
        diff_table_max_violation=cm_sequence_check(a, order),
        hankel_min_eigenvalues=hankel_psd_check(a, m),
        limit_gap=[v - E_MINUS_HALF for v in a],
    )
