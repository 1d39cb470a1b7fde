"""Boundary densities of the F_a, G_a, z/log Gamma(z+1) and 1/Log(z+1) representations.

On each unit interval ``(k-1, k)`` write ``t = k - 1 + s`` with ``0 < s < 1``.
The shared numerator is

    N_a(t) = ln|Gamma(1-t)| + (k-1) ln(a t)

and the densities are

    d_a(t)   = N_a(t) / (t ((ln(a t))^2 + pi^2))
    rho_a(t) = t N_a(t) / ((ln|Gamma(1-t)|)^2 + ((k-1) pi)^2)
    tau(t)   = (k-1) t / ((ln|Gamma(1-t)|)^2 + ((k-1) pi)^2)

The vectorised ``*_ks`` helpers take the pair ``(k, s)`` plus the complement
``sc = 1 - s`` so that points within rounding distance of an integer keep
their distance to the endpoint (the densities are singular there).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, zeta

from .kernel import CONSTANTS

__all__ = [
    "DensityFamily",
    "DensitySample",
    "Kind",
    "SingularDensityError",
    "density_d",
    "density_invlog",
    "density_rho",
    "density_tau",
    "density_values",
    "family_values_ks",
    "numerator_N",
    "positivity_scan",
]

_PI2 = math.pi**2
_LN_PI = math.log(math.pi)

# ln Gamma(1-s) = gamma s + sum_{n>=2} zeta(n) s^n / n, used for s < _SMALL_S
_SMALL_S = 0.05
_LG1M_COEF = np.array([CONSTANTS.euler_gamma] + [zeta(n) / n for n in range(2, 17)])


class SingularDensityError(ValueError):
    """The numerator is requested at a positive integer, where it has a pole."""


class Kind(enum.Enum):
    D = "d"
    RHO = "rho"
    TAU = "tau"
    INVLOG = "invlog"


@dataclass(frozen=True)
class DensityFamily:
    kind: Kind
    a: float = 1.0

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind in (Kind.D, Kind.RHO) and not self.a > 0:
            raise ValueError(f"a must be positive, got {self.a}")


@dataclass(frozen=True)
class DensitySample:
    t: float
    value: float
    interval_k: int
    singular: bool


def _lgamma_1m(s: np.ndarray, sc: np.ndarray) -> np.ndarray:
    """``ln Gamma(1 - s)`` for ``0 <= s < 1`` given ``sc = 1 - s``."""
    out = np.empty_like(s)
    small = s < _SMALL_S
    if small.any():
        x = s[small]
        acc = np.zeros_like(x)
        for c in _LG1M_COEF[::-1]:
            acc = acc * x + c
        out[small] = acc * x
    big = ~small
    out[big] = gammaln(sc[big])
    return out


def ln_abs_gamma_1mt(k: np.ndarray, s: np.ndarray, sc: np.ndarray) -> np.ndarray:
    """``ln|Gamma(1-t)|`` for ``t = k - 1 + s`` in the open interval ``(k-1, k)``."""
    k = np.broadcast_to(k, s.shape)
    out = np.empty_like(s)
    first = k == 1
    if first.any():
        out[first] = _lgamma_1m(s[first], sc[first])
    rest = ~first
    if rest.any():
        sr, scr = s[rest], sc[rest]
        # reflection |Gamma(1-t)| = pi / (|sin(pi t)| Gamma(t)); sin from the nearer endpoint
        ln_sin = np.log(np.sin(np.pi * np.minimum(sr, scr)))
        out[rest] = _LN_PI - ln_sin - gammaln(k[rest] - 1 + sr)
    return out


def family_values_ks(family: DensityFamily, k, s, sc) -> np.ndarray:
    """Density values at ``t = k - 1 + s`` (open intervals only, 0 < s < 1).

    For ``Kind.INVLOG`` the same convention is used with ``u = t - 1``, i.e.
    the returned values are ``1/((ln u)^2 + pi^2)`` at ``u = k - 1 + s``.
    """
    s = np.asarray(s, dtype=float)
    sc = np.asarray(sc, dtype=float)
    k = np.broadcast_to(np.asarray(k), s.shape)
    km1 = k - 1
    t = km1 + s
    ln_t = np.log(t)
    if family.kind is Kind.INVLOG:
        return 1.0 / (ln_t * ln_t + _PI2)
    lg = ln_abs_gamma_1mt(k, s, sc)
    if family.kind is Kind.TAU:
        return km1 * t / (lg * lg + (km1 * math.pi) ** 2)
    ln_a = math.log(family.a)
    num = lg + km1 * (ln_a + ln_t)
    if family.kind is Kind.D:
        ln_at = ln_a + ln_t
        return num / (t * (ln_at * ln_at + _PI2))
    # RHO; for k = 1 this is t / ln Gamma(1-t) -> 1/gamma as t -> 0
    return t * num / (lg * lg + (km1 * math.pi) ** 2)


def _split(t: np.ndarray):
    fl = np.floor(t)
    s = t - fl
    return (fl + 1).astype(np.int64), s, 1.0 - s


def density_values(family: DensityFamily, t) -> np.ndarray:
    """Vectorised density on ``t >= 0`` (``t >= 1`` for INVLOG) with the integer conventions."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if family.kind is Kind.INVLOG:
        u = t - 1.0
        with np.errstate(divide="ignore"):
            lu = np.log(u)
        return np.where(u > 0, 1.0 / (lu * lu + _PI2), 0.0)
    out = np.empty_like(t)
    integer = t == np.floor(t)
    if family.kind is Kind.D:
        out[integer] = np.where(t[integer] == 0, 0.0, np.inf)
    elif family.kind is Kind.RHO:
        out[integer] = np.where(t[integer] == 0, 1.0 / CONSTANTS.euler_gamma, 0.0)
    else:
        out[integer] = 0.0
    inner = ~integer
    if inner.any():
        k, s, sc = _split(t[inner])
        out[inner] = family_values_ks(family, k, s, sc)
    return out


def _sample(family: DensityFamily, t: float) -> DensitySample:
    t = float(t)
    if not t >= 0:
        raise ValueError(f"t must be non-negative, got {t}")
    value = float(density_values(family, t)[0])
    integer = t == math.floor(t)
    singular = integer and t > 0 and family.kind is Kind.D
    return DensitySample(t, value, int(math.floor(t)) + 1, singular)


def numerator_N(a: float, t: float) -> float:
    """Shared numerator ``ln|Gamma(1-t)| + (k-1) ln(a t)`` of ``d_a`` and ``rho_a``."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    t = float(t)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if t == math.floor(t):
        raise SingularDensityError(f"N_a has a pole at the integer t = {t:g}")
    k, s, sc = _split(np.array([t]))
    lg = ln_abs_gamma_1mt(k, s, sc)[0]
    return float(lg + (k[0] - 1) * math.log(a * t))


def density_d(a: float, t: float) -> DensitySample:
    return _sample(DensityFamily(Kind.D, a), t)


def density_rho(a: float, t: float) -> DensitySample:
    return _sample(DensityFamily(Kind.RHO, a), t)


def density_tau(t: float) -> DensitySample:
    return _sample(DensityFamily(Kind.TAU), t)


def density_invlog(t: float) -> float:
    """Density ``1/((ln(t-1))^2 + pi^2)`` of ``1/Log(z+1)`` on ``[1, inf)``."""
    if not t >= 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return float(density_values(DensityFamily(Kind.INVLOG), t)[0])


def chebyshev_offsets(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev points on (0, 1) as ``(s, 1 - s)`` pairs, clustered at both ends."""
    theta = np.pi * (np.arange(n) + 0.5) / n
    s = np.sin(theta / 2) ** 2
    sc = np.cos(theta / 2) ** 2
    return s, sc


def positivity_scan(family: DensityFamily, t_max: float, resolution: int = 64) -> list[tuple[float, float]]:
    """Sample the density on every unit interval up to ``t_max``; return the negative samples.

    Each interval gets ``resolution`` Chebyshev points.  An empty list means
    no violation at this resolution.  Witnesses are sorted by ``t``.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    s, sc = chebyshev_offsets(resolution)
    n_int = int(math.ceil(t_max))
    k = np.arange(1, n_int + 1)[:, None]
    vals = family_values_ks(family, k, np.broadcast_to(s, (n_int, resolution)).copy(),
                            np.broadcast_to(sc, (n_int, resolution)).copy())
    t = (k - 1) + s
    if family.kind is Kind.INVLOG:
        t = t + 1.0
    keep = (t <= t_max) & (vals < 0)
    order = np.argsort(t[keep], kind="stable")
    return [(float(tt), float(v)) for tt, v in zip(t[keep][order], vals[keep][order])]
