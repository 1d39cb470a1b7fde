"""Direct values and integral representations of the gamma-quotient functions.

Functions covered (``Log`` the principal logarithm, ``log Gamma`` the cut-plane
branch from :mod:`pickgamma.kernel`):

* ``F_a(z) = log Gamma(z+1) / (z Log(a z))``
  ``= 1 + ln Gamma(1+1/a)/(z - 1/a) - int_0^inf d_a(t)/(z+t) dt``
* ``G_a(z) = 1/F_a(z)``
  ``= 1 + ln a/((1-gamma)(z-1)) + int_0^inf rho_a(t)/(z+t) dt``
* ``z/log Gamma(z+1) = 1/((1-gamma)(z-1)) + int_0^inf tau(t)/(z+t) dt``
* ``log f(z+1) = -1/2 + ln(2/sqrt(pi))/z + ln(sqrt(pi))/Log(z+1)``
  ``+ 1/2 int_1^inf d_2((t-1)/2)/(z+t) dt``
* ``1/Log(z+1) = 1/z + int_1^inf dt / ((z+t)((ln(t-1))^2 + pi^2))``

The integrals are summed interval by interval over ``(k-1, k)``, ``k <= T``,
with a tanh-sinh rule on each interval (the densities have logarithmic
singularities at the integers), and the remainder beyond ``T`` is replaced
by the closed-form leading tail from :func:`tail_correction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densities import DensityFamily, Kind, family_values_ks
from .kernel import CONSTANTS, CutPoint, _log_gamma, principal_log

__all__ = [
    "PoleError",
    "PoleInfo",
    "QuadratureError",
    "QuadraturePlan",
    "RepComparison",
    "F_direct",
    "F_rep",
    "F_values",
    "G_direct",
    "G_rep",
    "integrate_density",
    "invlog_rep",
    "logf_direct",
    "logf_rep",
    "tail_correction",
    "z_over_loggamma",
    "z_over_loggamma_rep",
]

_GAMMA = CONSTANTS.euler_gamma
_POLE_RADIUS = 1e-8
_LN_SQRT_PI = 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class PoleInfo:
    location: float
    residue: float
    removable: bool


class PoleError(ValueError):
    def __init__(self, info: PoleInfo):
        super().__init__(f"simple pole at z = {info.location:g} with residue {info.residue:.12g}")
        self.info = info


class QuadratureError(RuntimeError):
    def __init__(self, message: str, diagnostics: dict):
        super().__init__(f"{message}: {diagnostics}")
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class QuadraturePlan:
    """How to evaluate ``int_0^inf density(t)/(z+t) dt``.

    ``nodes_per_interval`` sets the coarsest tanh-sinh level; the step is then
    halved until two successive levels agree to ``rel_tol`` or ``max_levels``
    is exhausted.
    """

    truncation_T: int = 10_000
    nodes_per_interval: int = 15
    rel_tol: float = 1e-10
    tail_correction: bool = True
    max_levels: int = 6

    def __post_init__(self):
        if int(self.truncation_T) != self.truncation_T or self.truncation_T < 10:
            raise ValueError("truncation_T must be an integer >= 10")
        if self.nodes_per_interval < 8:
            raise ValueError("nodes_per_interval must be >= 8")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_levels < 1:
            raise ValueError("max_levels must be >= 1")


@dataclass(frozen=True)
class RepComparison:
    direct: complex
    via_rep: complex
    deviation: float
    tail_estimate: float
    plan: QuadraturePlan
    error_estimate: float = 0.0

    @classmethod
    def build(cls, direct, via_rep, tail, plan, err):
        direct, via_rep = complex(direct), complex(via_rep)
        return cls(direct, via_rep, abs(direct - via_rep), float(tail), plan, float(err))


# ---------------------------------------------------------------- direct values


def _cut(z) -> complex:
    return complex(CutPoint.of(z))


def F_values(a: float, z) -> np.ndarray:
    """Vectorised ``F_a`` on cut-plane points; NaN within ``1e-8`` of the pole ``1/a``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    lg = _log_gamma((z + 1.0).ravel()).reshape(z.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = lg / (z * np.log(a * z))
    near = np.abs(z - 1.0 / a) < _POLE_RADIUS
    out[near] = (1.0 - _GAMMA) if a == 1 else np.nan
    return out


def F_direct(a: float, z) -> complex:
    """``F_a(z) = log Gamma(z+1)/(z Log(az))``; at ``a = 1`` the point ``z = 1`` gives ``1 - gamma``."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    z = _cut(z)
    if abs(z - 1.0 / a) < _POLE_RADIUS:
        if a == 1:
            return complex(1.0 - _GAMMA)
        raise PoleError(PoleInfo(1.0 / a, math.lgamma(1.0 + 1.0 / a), False))
    return complex(F_values(a, z)[0])


def G_direct(a: float, z) -> complex:
    """``G_a(z) = z Log(az)/log Gamma(z+1)``, the reciprocal of ``F_a``."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    z = _cut(z)
    if abs(z - 1.0) < _POLE_RADIUS:
        if a == 1:
            return complex(1.0 / (1.0 - _GAMMA))
        raise PoleError(PoleInfo(1.0, math.log(a) / (1.0 - _GAMMA), False))
    lg = complex(_log_gamma(np.array([z + 1.0]))[0])
    return z * principal_log(a * z) / lg


def z_over_loggamma(z) -> complex:
    """``z / log Gamma(z+1)``; simple pole at ``z = 1`` with residue ``1/(1-gamma)``."""
    z = _cut(z)
    if abs(z - 1.0) < _POLE_RADIUS:
        raise PoleError(PoleInfo(1.0, 1.0 / (1.0 - _GAMMA), False))
    return z / complex(_log_gamma(np.array([z + 1.0]))[0])


def logf_direct(z) -> complex:
    """``log f(z+1) = ln sqrt(pi)/Log(z+1) - F_2((z+1)/2)/2``."""
    z = _cut(z)
    return _LN_SQRT_PI / principal_log(z + 1.0) - 0.5 * F_direct(2.0, (z + 1.0) / 2.0)


# ---------------------------------------------------------------- quadrature

_X_MAX = 4.0  # s, 1-s ~ exp(-pi sinh 4) ~ 1e-37 at the last node
_CHUNK = 1 << 21


def _level_nodes(plan: QuadraturePlan, level: int):
    """New tanh-sinh abscissae at ``level`` and the step ``h`` of that level."""
    half = (plan.nodes_per_interval - 1) // 2
    h0 = _X_MAX / half
    if level == 0:
        x = h0 * np.arange(-half, half + 1)
        return x, h0
    h = h0 / 2**level
    n = half * 2**level
    x = h * np.arange(-n + 1, n, 2)
    return x, h


def _reference_rule(x: np.ndarray):
    """Map abscissae to ``(s, 1-s, ds/dx)`` on the unit interval."""
    e = np.pi * np.sinh(x)
    s = 1.0 / (1.0 + np.exp(-e))
    sc = 1.0 / (1.0 + np.exp(e))
    w = np.pi * np.cosh(x) * s * sc
    return s, sc, w


def _sum_level(family: DensityFamily, shift: complex, n_int: int, x: np.ndarray) -> complex:
    s, sc, w = _reference_rule(x)
    per_block = max(1, _CHUNK // len(x))
    total = 0.0 + 0.0j
    for start in range(1, n_int + 1, per_block):
        k = np.arange(start, min(start + per_block, n_int + 1))[:, None]
        S = np.broadcast_to(s, (len(k), len(s)))
        SC = np.broadcast_to(sc, (len(k), len(s)))
        vals = family_values_ks(family, k, S, SC)
        total += np.sum(vals * w / (shift + (k - 1) + S))
    return total


def _tail_params(family: DensityFamily, T: int):
    """Leading large-t behaviour ``density ~ c / (ell(t)^2 + pi^2)``; returns ``(c, ell(T))``."""
    if family.kind is Kind.D:
        return 1.0 + math.log(family.a), math.log(family.a * T)
    if family.kind is Kind.RHO:
        return 1.0 + math.log(family.a), math.log(T) - 1.0
    if family.kind is Kind.TAU:
        return 1.0, math.log(T) - 1.0
    return 1.0, math.log(T - 1.0)


def tail_correction(family: DensityFamily, z, T: int) -> float:
    """Closed-form leading part of ``int_T^inf density(t)/(z+t) dt``.

    Replaces the density by ``c/(ell^2 + pi^2)`` and ``1/(z+t)`` by ``dt/d ell``,
    giving ``c (pi/2 - arctan(ell(T)/pi)) / pi``.  Here ``ell = ln(a t)`` for
    ``d_a``, ``ln(t/e)`` for ``rho_a`` and ``tau`` and ``ln(t-1)`` for the
    ``1/Log(z+1)`` density; ``c = 1 + ln a`` for ``d_a, rho_a`` and 1 otherwise.
    The residual is ``O((1 + |z| + ln T) / (T ln^2 T))``.
    """
    if int(T) != T or T < 100:
        raise ValueError("T must be an integer >= 100")
    CutPoint.of(z)
    return _tail_value(family, int(T))


def _tail_value(family: DensityFamily, T: int) -> float:
    c, ell = _tail_params(family, T)
    return c * (0.5 * math.pi - math.atan(ell / math.pi)) / math.pi


def _tail_residual_bound(family: DensityFamily, z: complex, T: int) -> float:
    c, ell = _tail_params(family, T)
    return (abs(c) * (abs(z) + 1.0) + 1.0 + math.log(T)) / (T * (ell * ell + math.pi**2))


def integrate_density(family: DensityFamily, z, plan: QuadraturePlan = QuadraturePlan()):
    """``int density(t)/(z+t) dt`` over the family's half-line.

    Returns ``(value, error_estimate)``.  The estimate adds the last
    refinement step and the tail residual (or the whole tail when the tail
    correction is switched off).
    """
    z = _cut(z)
    T = int(plan.truncation_T)
    if family.kind is Kind.INVLOG:
        # integrate over u = t - 1 in (0, T - 1)
        shift, n_int = z + 1.0, T - 1
    else:
        shift, n_int = z, T
    running = 0.0 + 0.0j
    prev = None
    history = []
    for level in range(plan.max_levels + 1):
        x, h = _level_nodes(plan, level)
        running += _sum_level(family, shift, n_int, x)
        value = h * running
        history.append(value)
        if prev is not None:
            delta = abs(value - prev)
            if delta <= plan.rel_tol * max(abs(value), 1e-300) and level >= 2:
                break
        prev = value
    else:
        raise QuadratureError(
            "tanh-sinh refinement did not reach rel_tol",
            {"family": family, "z": z, "T": T, "levels": [complex(v) for v in history]},
        )
    err = delta
    tail = _tail_value(family, T)
    if plan.tail_correction:
        value += tail
        err += _tail_residual_bound(family, z, T)
    else:
        err += abs(tail)
    return complex(value), float(err)


# ---------------------------------------------------------------- representations


def F_rep(a: float, z, plan: QuadraturePlan = QuadraturePlan()) -> RepComparison:
    direct = F_direct(a, z)
    z = _cut(z)
    fam = DensityFamily(Kind.D, a)
    integral, err = integrate_density(fam, z, plan)
    pole = math.lgamma(1.0 + 1.0 / a) / (z - 1.0 / a)
    return RepComparison.build(direct, 1.0 + pole - integral, _tail_value(fam, plan.truncation_T), plan, err)


def G_rep(a: float, z, plan: QuadraturePlan = QuadraturePlan()) -> RepComparison:
    direct = G_direct(a, z)
    z = _cut(z)
    fam = DensityFamily(Kind.RHO, a)
    integral, err = integrate_density(fam, z, plan)
    pole = math.log(a) / ((1.0 - _GAMMA) * (z - 1.0))
    return RepComparison.build(direct, 1.0 + pole + integral, _tail_value(fam, plan.truncation_T), plan, err)


def z_over_loggamma_rep(z, plan: QuadraturePlan = QuadraturePlan()) -> RepComparison:
    z = _cut(z)
    direct = z_over_loggamma(z)
    fam = DensityFamily(Kind.TAU)
    integral, err = integrate_density(fam, z, plan)
    via = 1.0 / ((1.0 - _GAMMA) * (z - 1.0)) + integral
    return RepComparison.build(direct, via, _tail_value(fam, plan.truncation_T), plan, err)


def logf_rep(z, plan: QuadraturePlan = QuadraturePlan()) -> RepComparison:
    """Representation of ``log f(z+1)``.

    The ``1/Log(z+1)`` term is taken in closed form.  With ``t = 1 + 2u`` the
    integral equals ``1/2 int_0^inf d_2(u)/((z+1)/2 + u) du``, so
    ``plan.truncation_T`` counts unit intervals in ``u``.
    """
    z = _cut(z)
    direct = logf_direct(z)
    fam = DensityFamily(Kind.D, 2.0)
    w = (z + 1.0) / 2.0
    integral, err = integrate_density(fam, w, plan)
    via = (-0.5 + math.log(2.0 / math.sqrt(math.pi)) / z
           + _LN_SQRT_PI / principal_log(z + 1.0) + 0.5 * integral)
    return RepComparison.build(direct, via, 0.5 * _tail_value(fam, plan.truncation_T), plan, 0.5 * err)


def invlog_rep(z, plan: QuadraturePlan = QuadraturePlan()) -> RepComparison:
    """Stieltjes representation ``1/Log(z+1) = 1/z + int_1^inf dt/((z+t)((ln(t-1))^2 + pi^2))``.

    The ``1/z`` term is the unit point mass at ``t = 0`` coming from the
    simple pole of ``1/Log(z+1)`` at ``z = 0``; the integral alone equals
    ``1/Log(z+1) - 1/z``.
    """
    z = _cut(z)
    direct = 1.0 / principal_log(z + 1.0)
    fam = DensityFamily(Kind.INVLOG)
    integral, err = integrate_density(fam, z, plan)
    return RepComparison.build(direct, 1.0 / z + integral, _tail_value(fam, plan.truncation_T), plan, err)
