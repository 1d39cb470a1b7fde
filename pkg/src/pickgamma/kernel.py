"""Principal logarithm, Binet's function and log-gamma on the cut plane.

The cut plane is ``C \\ (-inf, 0]``.  ``log_gamma`` is the holomorphic branch
of ``log Gamma`` there that is real on the positive axis; its imaginary part is
a continuous argument of ``Gamma``, so approaching ``t in (-k, -k+1)`` from
above gives ``ln|Gamma(t)| - i*pi*k``.

All functions accept scalars or array-likes.  Scalars come back as Python
``complex``/``float``; arrays come back as ``numpy`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

__all__ = [
    "CONSTANTS",
    "BoundaryValue",
    "Constants",
    "CutPlaneError",
    "CutPoint",
    "binet_mu",
    "boundary_log_abs_gamma",
    "log_gamma",
    "principal_log",
]


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    ln_sqrt_2pi: float
    psi2: float


_EULER_GAMMA = 0.57721566490153286061
CONSTANTS = Constants(
    euler_gamma=_EULER_GAMMA,
    ln_sqrt_2pi=0.5 * math.log(2.0 * math.pi),
    psi2=1.0 - _EULER_GAMMA,
)


class CutPlaneError(ValueError):
    """Raised for arguments on the cut (-inf, 0] or non-finite arguments."""


@dataclass(frozen=True)
class CutPoint:
    """A complex number known to lie in the cut plane."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise CutPlaneError(f"non-finite point {self.re!r}{self.im:+}j")
        if self.im == 0 and self.re <= 0:
            raise CutPlaneError(f"{self.re!r} lies on the cut (-inf, 0]")

    @classmethod
    def of(cls, z) -> "CutPoint":
        if isinstance(z, CutPoint):
            return z
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class BoundaryValue:
    """``ln|Gamma(t)|`` at a negative ``t`` with its branch index ``k``."""

    ln_abs: float
    branch_k: int
    finite: bool


# Stirling coefficients B_{2j} / (2j (2j-1)), j = 1..9
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
)
# asymptotic series is used for Re w >= 0 and |w| >= _RADIUS, or unshifted where
# the first omitted term 1.4 sec^20(arg w / 2) / |w|^19 is below 1e-17
_RADIUS = 15.0
_LN_TRUNC = math.log(1e-17 / 1.4)
_MAX_SHIFT = 10_000_000
# h(w) = x^2/3 + x^4/5 + ... with x = 1/(2w+1); used when |x| <= _X_SERIES
_X_SERIES = 0.35
_H_TERMS = 20


def _as_complex_array(z) -> tuple[np.ndarray, bool]:
    scalar = np.ndim(z) == 0
    if isinstance(z, CutPoint):
        z = complex(z)
    arr = np.asarray(z, dtype=complex)
    bad = ~np.isfinite(arr) | ((arr.imag == 0) & (arr.real <= 0))
    if bad.any():
        first = arr[bad].ravel()[0] if arr.ndim else arr
        raise CutPlaneError(f"{complex(first)} is not in the cut plane C \\ (-inf, 0]")
    return arr, scalar


def _out(arr: np.ndarray, scalar: bool):
    return complex(arr) if scalar else arr


def principal_log(z):
    """``Log z = ln|z| + i Arg z`` with ``-pi < Arg z < pi``."""
    arr, scalar = _as_complex_array(z)
    return _out(np.log(arr), scalar)


def _shift_count(z: np.ndarray) -> np.ndarray:
    """Smallest m >= 0 with Re(z+m) >= 0 and |z+m| >= _RADIUS (0 where no shift is needed)."""
    re, im = z.real, z.imag
    r = np.abs(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        ln_cos_half = 0.5 * np.log(np.maximum(0.5 * (1.0 + re / r), 0.0))
        direct = (r >= _RADIUS) & (-20.0 * ln_cos_half - 19.0 * np.log(r) <= _LN_TRUNC)
    need = np.sqrt(np.maximum(_RADIUS * _RADIUS - im * im, 0.0)) - re
    m = np.where(direct, 0.0, np.maximum(np.ceil(np.maximum(need, -re)), 0.0))
    if m.size and m.max() > _MAX_SHIFT:
        raise ValueError("argument too close to the negative axis for its size")
    return m.astype(np.int64)


def _mu_asymptotic(w: np.ndarray) -> np.ndarray:
    r = 1.0 / w
    r2 = r * r
    acc = np.zeros_like(w)
    for c in reversed(_STIRLING):
        acc = acc * r2 + c
    return acc * r


def _h(w: np.ndarray) -> np.ndarray:
    """One term ``(w + 1/2) Log(1 + 1/w) - 1`` of the Binet series."""
    x = 1.0 / (2.0 * w + 1.0)
    out = np.empty_like(w)
    near = np.abs(x) > _X_SERIES
    if near.any():
        wn = w[near]
        out[near] = (wn + 0.5) * (np.log(wn + 1.0) - np.log(wn)) - 1.0
    far = ~near
    if far.any():
        x2 = x[far] * x[far]
        acc = np.zeros_like(x2)
        for j in range(_H_TERMS, 0, -1):
            acc = acc * x2 + 1.0 / (2 * j + 1)
        out[far] = acc * x2
    return out


def _binet_mu(z: np.ndarray) -> np.ndarray:
    m = _shift_count(z)
    out = _mu_asymptotic(z + m)
    for n in range(int(m.max(initial=0))):
        sel = n < m
        out[sel] += _h(z[sel] + n)
    return out


def binet_mu(z):
    """Binet's function, ``log Gamma(z+1) = ln sqrt(2 pi) + (z+1/2) Log z - z + mu(z)``.

    Uses ``mu(z) = sum_{n<m} h(z+n) + mu(z+m)`` to move the argument to
    ``Re >= 0, |.| >= 15`` where the Stirling series converges to full double
    precision.
    """
    arr, scalar = _as_complex_array(z)
    return _out(_binet_mu(arr.ravel()).reshape(arr.shape), scalar)


_NEAR_ZERO = 0.2
# ln Gamma(1+e) = -gamma e + sum_{k>=2} zeta(k) (-e)^k / k, |e| < 1
_ZETA_COEF = np.concatenate(([-_EULER_GAMMA], [(-1) ** k * zeta(k) / k for k in range(2, 32)]))


def _lgamma_1p(e: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(e)
    for c in _ZETA_COEF[::-1]:
        acc = acc * e + c
    return acc * e


def _log_gamma(z: np.ndarray) -> np.ndarray:
    near1 = np.abs(z - 1.0) <= _NEAR_ZERO
    near2 = np.abs(z - 2.0) <= _NEAR_ZERO
    if near1.any() or near2.any():
        # full relative accuracy around the zeros at 1 and 2
        out = np.empty_like(z)
        rest = ~(near1 | near2)
        out[rest] = _log_gamma_shifted(z[rest])
        out[near1] = _lgamma_1p(z[near1] - 1.0)
        e = z[near2] - 2.0
        out[near2] = _lgamma_1p(e) + np.log1p(e)
        return out
    return _log_gamma_shifted(z)


def _log_gamma_shifted(z: np.ndarray) -> np.ndarray:
    m = _shift_count(z)
    w = z + m
    out = (w - 0.5) * np.log(w) - w + CONSTANTS.ln_sqrt_2pi + _mu_asymptotic(w)
    # log Gamma(z) = log Gamma(z+m) - sum Log(z+l); both sides holomorphic on the cut plane
    for l in range(int(m.max(initial=0))):
        sel = l < m
        out[sel] -= np.log(z[sel] + l)
    return out


def log_gamma(z):
    """Holomorphic ``log Gamma`` on the cut plane, real on ``(0, inf)``."""
    arr, scalar = _as_complex_array(z)
    return _out(_log_gamma(arr.ravel()).reshape(arr.shape), scalar)


def _ln_abs_sin_pi(t: float) -> float:
    frac = t - math.floor(t)
    return math.log(math.sin(math.pi * min(frac, 1.0 - frac)))


def boundary_log_abs_gamma(t: float) -> BoundaryValue:
    """Boundary value of ``log Gamma`` at ``t < 0`` approached from above.

    Returns ``ln|Gamma(t)|`` and ``k`` with ``t in (-k, -k+1)``, so that the
    limit is ``ln|Gamma(t)| - i pi k``.  At non-positive integers the value is
    infinite and ``finite`` is False (``branch_k`` is then ``-t``).
    """
    t = float(t)
    if not t < 0 and t != 0:
        raise ValueError(f"t must be negative, got {t}")
    if t == math.floor(t):
        return BoundaryValue(math.inf, int(-t), False)
    k = int(math.floor(-t)) + 1
    # reflection: |Gamma(t)| = pi / (|sin(pi t)| Gamma(1-t))
    ln_abs = math.log(math.pi) - _ln_abs_sin_pi(t) - math.lgamma(1.0 - t)
    return BoundaryValue(ln_abs, k, True)
