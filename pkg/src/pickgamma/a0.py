"""Smallest ``a`` for which the density ``d_a`` is non-negative.

On ``(k, k+1)`` the numerator of ``d_a`` is ``k (rho(k, s) - ln(1/a))`` with

    rho(k, s) = ln(k+s) - (1/k) ln(Gamma(k+s) sin(pi s) / pi)
              = 1 + ln(pi/2)/(2k)
                - (1/k) [(s - 1/2) ln(s+k) + ln sin(pi s) - s + mu(s+k)]

so ``d_a >= 0`` everywhere iff ``ln(1/a) <= inf_k min_s rho(k, s)``.  The
second form (``mu`` is Binet's function) is the production one; the first is
kept as an audit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .kernel import binet_mu, log_gamma

__all__ = ["A0Report", "KMinimum", "find_a0", "golden_section", "minimize_rho", "rho_ks", "rho_ks_direct"]

_HALF_LN_PI_2 = 0.5 * math.log(math.pi / 2.0)
_LN_PI = math.log(math.pi)
_PRESCAN = 64
_S_WIDTH = 1e-12
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class KMinimum:
    k: int
    s_star: float
    m_k: float
    multimodal: bool = False
    other_minima: tuple = ()


@dataclass(frozen=True)
class A0Report:
    table: list
    k_star: int
    m_inf: float
    a0: float
    decreasing_through: int
    increasing_after: bool

    @property
    def monotone_pattern(self) -> bool:
        """m_k strictly decreases up to k_star and strictly increases afterwards."""
        return self.decreasing_through == self.k_star and self.increasing_after


def _ln_sin_pi(s):
    return np.log(np.sin(np.pi * np.minimum(s, 1.0 - s)))


def _check_args(k, s):
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    s = np.asarray(s, dtype=float)
    if np.any((s < 0) | (s > 1)) or np.any(np.isnan(s)):
        raise ValueError("s must lie in [0, 1]")
    return int(k), s


def rho_ks(k: int, s):
    """``rho(k, s)`` through the Binet-function form; ``+inf`` at ``s`` in {0, 1}."""
    k, s = _check_args(k, s)
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    out = np.full(s.shape, np.inf)
    inner = (s > 0) & (s < 1)
    if inner.any():
        si = s[inner]
        mu = binet_mu(si + k).real
        bracket = (si - 0.5) * np.log(si + k) + _ln_sin_pi(si) - si + mu
        out[inner] = 1.0 + _HALF_LN_PI_2 / k - bracket / k
    return float(out[0]) if scalar else out


def rho_ks_direct(k: int, s):
    """``rho(k, s)`` straight from ``ln Gamma``; used to audit :func:`rho_ks`."""
    k, s = _check_args(k, s)
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    out = np.full(s.shape, np.inf)
    inner = (s > 0) & (s < 1)
    if inner.any():
        si = s[inner]
        lg = log_gamma(si + k).real
        out[inner] = np.log(k + si) - (lg + _ln_sin_pi(si) - _LN_PI) / k
    return float(out[0]) if scalar else out


def golden_section(f, lo: float, hi: float, width: float):
    """Minimise a unimodal ``f`` on ``[lo, hi]`` down to a bracket of ``width``.

    Returns ``(x, f(x))`` for the best point seen.
    """
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > width:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def _local_minima(v: np.ndarray) -> list[int]:
    idx = []
    for j in range(len(v)):
        left = v[j - 1] if j > 0 else np.inf
        right = v[j + 1] if j + 1 < len(v) else np.inf
        if v[j] < left and v[j] <= right:
            idx.append(j)
    return idx


def minimize_rho(k: int, tol: float = 1e-10) -> KMinimum:
    """Minimum of ``rho(k, .)`` over ``(0, 1)``.

    A 64-point pre-scan brackets the minimum, golden-section search refines
    it to an ``s``-bracket of width 1e-12.  If the pre-scan shows several
    local minima each one is refined, the global one is returned and the
    result is flagged ``multimodal``.
    """
    if tol > 1e-10:
        raise ValueError("tol must be <= 1e-10")
    grid = np.arange(1, _PRESCAN + 1) / (_PRESCAN + 1)
    vals = rho_ks(k, grid)
    minima = _local_minima(vals)
    if not minima:
        raise RuntimeError(f"pre-scan found no interior minimum of rho({k}, .)")
    edges = np.concatenate(([0.0], grid, [1.0]))
    refined = []
    for j in minima:
        s, m = golden_section(lambda x: rho_ks(k, x), edges[j], edges[j + 2], _S_WIDTH)
        refined.append((m, s))
    refined.sort()
    m, s = refined[0]
    others = tuple((float(si), float(mi)) for mi, si in refined[1:])
    return KMinimum(int(k), float(s), float(m), len(refined) > 1, others)


def find_a0(k_max: int = 1000, tol: float = 1e-10, workers: int = 1) -> A0Report:
    """Sweep ``k = 1..k_max``, take the infimum of the ``m_k`` and return ``a0 = exp(-m_inf)``."""
    if int(k_max) != k_max or k_max < 600:
        raise ValueError("k_max must be an integer >= 600")
    if tol > 1e-9:
        raise ValueError("tol must be <= 1e-9")
    ks = range(1, int(k_max) + 1)
    inner_tol = min(tol, 1e-10)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            table = list(pool.map(lambda k: minimize_rho(k, inner_tol), ks))
    else:
        table = [minimize_rho(k, inner_tol) for k in ks]
    m = np.array([row.m_k for row in table])
    j = int(np.argmin(m))
    diffs = np.diff(m)
    dec = np.nonzero(diffs >= 0)[0]
    decreasing_through = int(dec[0]) + 1 if len(dec) else len(m)
    increasing_after = bool(np.all(diffs[j:] > 0))
    m_inf = float(m[j])
    return A0Report(table, table[j].k, m_inf, math.exp(-m_inf), decreasing_through, increasing_after)
