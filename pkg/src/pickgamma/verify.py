"""Finite property checks for F_a: Pick positivity, boundary limits, derivative signs, identities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .densities import DensityFamily, Kind, density_values
from .kernel import CONSTANTS, binet_mu
from .representations import F_values

__all__ = [
    "BoundaryLimitResult",
    "ScanReport",
    "boundary_limit_check",
    "derivative_sign_check",
    "identity_suite",
    "pick_scan",
]

PICK_TOL = 1e-12
DERIVATIVE_FLOOR = 1e-10
IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class ScanReport:
    grid_spec: dict
    min_value: float
    witness: tuple | None
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BoundaryLimitResult:
    t: float
    target: float
    deviations: list
    divergent: bool

    @property
    def decreasing(self) -> bool:
        d = self.deviations
        return all(d[i + 1] < d[i] for i in range(len(d) - 1))


def _polar_grid(r_min, r_max, n_r, theta_lo, theta_hi, n_theta):
    r = np.geomspace(r_min, r_max, n_r)
    theta = np.linspace(theta_lo, theta_hi, n_theta)
    R, TH = np.meshgrid(r, theta, indexing="ij")
    return R, TH, R * np.exp(1j * TH)


def pick_scan(a: float, r_range=(0.01, 100.0), n_r: int = 200, n_theta: int = 100,
              theta_margin: float = 0.01) -> ScanReport:
    """Minimum of ``Im F_a`` over a log-polar grid in the upper half-plane.

    If the minimum is below ``-1e-12`` one local refinement pass is made around
    the witness (a 41 x 41 grid spanning the neighbouring grid cells), since
    the violation for ``a < 1`` sits next to the pole at ``1/a``.
    """
    r_min, r_max = r_range
    if not (0 < r_min < r_max):
        raise ValueError("need 0 < r_min < r_max")
    R, TH, Z = _polar_grid(r_min, r_max, n_r, theta_margin, math.pi - theta_margin, n_theta)
    im = F_values(a, Z).imag
    im = np.where(np.isnan(im), np.inf, im)
    j = np.unravel_index(np.argmin(im), im.shape)
    best_z, best = complex(Z[j]), float(im[j])
    refined = False
    if best < -PICK_TOL:
        ratio = (r_max / r_min) ** (1.0 / max(n_r - 1, 1))
        dth = (math.pi - 2 * theta_margin) / max(n_theta - 1, 1)
        th0 = float(TH[j])
        _, _, Zl = _polar_grid(float(R[j]) / ratio, float(R[j]) * ratio, 41,
                               max(theta_margin, th0 - dth), min(math.pi - theta_margin, th0 + dth), 41)
        iml = F_values(a, Zl).imag
        iml = np.where(np.isnan(iml), np.inf, iml)
        jl = np.unravel_index(np.argmin(iml), iml.shape)
        if iml[jl] < best:
            best_z, best = complex(Zl[jl]), float(iml[jl])
        refined = True
    grid = {"a": a, "r_min": r_min, "r_max": r_max, "n_r": n_r, "n_theta": n_theta,
            "theta_margin": theta_margin, "tolerance": PICK_TOL}
    return ScanReport(grid, best, (best_z, best), best >= -PICK_TOL, {"refined": refined})


def boundary_limit_check(a: float, t: float, y_sequence=(1e-2, 1e-4, 1e-6)) -> BoundaryLimitResult:
    """``|Im F_a(t + iy) - pi d_a(-t)|`` along decreasing ``y`` for ``t < 0``.

    At negative integers ``|F_a(t + iy)|`` itself is returned and
    ``divergent`` reports whether it grows as ``y`` shrinks.
    """
    if not t < 0:
        raise ValueError("t must be negative")
    ys = [float(y) for y in y_sequence]
    if any(not 0 < y <= 1 for y in ys) or any(ys[i + 1] >= ys[i] for i in range(len(ys) - 1)):
        raise ValueError("y_sequence must be decreasing values in (0, 1]")
    z = np.array([complex(t, y) for y in ys])
    vals = F_values(a, z)
    if t == math.floor(t):
        mags = [float(abs(v)) for v in vals]
        growing = all(mags[i + 1] > mags[i] for i in range(len(mags) - 1))
        return BoundaryLimitResult(t, math.inf, mags, growing)
    target = math.pi * float(density_values(DensityFamily(Kind.D, a), -t)[0])
    return BoundaryLimitResult(t, target, [float(abs(v.imag - target)) for v in vals], False)


def _F_real(a: float, x: np.ndarray) -> np.ndarray:
    return gammaln(x + 1.0) / (x * np.log(a * x))


def derivative_sign_check(a: float, x_range=(None, 50.0), h: float = 0.1, n_max: int = 6) -> ScanReport:
    """Worst ``(-1)^(n-1) Delta_h^n F_a(x)`` over ``x`` in ``x_range``, ``n = 1..n_max``.

    Forward differences stand in for derivatives; every point entering a
    difference lies inside ``x_range``, so ``x_range`` only has to start
    to the right of the pole at ``1/a``.
    """
    if a < 1:
        raise ValueError("derivative signs are claimed for a >= 1")
    if not 1 <= n_max <= 6:
        raise ValueError("n_max must be in 1..6")
    x_lo, x_hi = x_range
    if x_lo is None:
        x_lo = 1.0 / a + 1.0
    if x_lo <= 1.0 / a:
        raise ValueError("x_range must start beyond the pole at 1/a")
    if x_hi - x_lo < h * n_max:
        raise ValueError("x_range too short for the requested order")
    n = int(math.floor((x_hi - x_lo) / h + 1e-9)) + 1
    x = x_lo + h * np.arange(n)
    F = [float(v) for v in _F_real(a, x)]
    worst = {}
    for order in range(1, n_max + 1):
        sign = (-1) ** (order - 1)
        worst[order] = min(
            sign * (-1) ** order * math.fsum((-1) ** j * math.comb(order, j) * F[i + j] for j in range(order + 1))
            for i in range(n - order)
        )
    m = min(worst.values())
    grid = {"a": a, "x_min": x_lo, "x_max": x_hi, "h": h, "n_max": n_max, "tolerance": DERIVATIVE_FLOOR}
    return ScanReport(grid, m, None, m >= -DERIVATIVE_FLOOR, {"per_order": worst})


def identity_suite(sample_count: int = 500, seed: int = 0) -> ScanReport:
    """Largest relative error of three exact identities at random admissible points.

    * ``F_a(z) = F_1(z) Log z / Log(a z)``
    * ``d_a(t) = [(ln t)^2 + pi^2]/[(ln at)^2 + pi^2] d_1(t) + (k-1) ln a / (t ((ln at)^2 + pi^2))``
    * ``ln Gamma(x) = ln sqrt(2 pi) + (x - 1/2) ln x - x + mu(x)``

    Errors are measured relative to the largest term on either side, which
    keeps the measure meaningful where a side passes through zero.
    """
    if sample_count < 100:
        raise ValueError("sample_count must be >= 100")
    rng = np.random.default_rng(seed)
    errors = {}

    a_vals = rng.choice([0.5, 2.0, 10.0], sample_count)
    # z away from the poles/zeros at 1 and 1/a
    zs = []
    while len(zs) < sample_count:
        r = math.exp(rng.uniform(math.log(0.05), math.log(50.0)))
        th = rng.uniform(-math.pi + 0.01, math.pi - 0.01)
        z = r * complex(math.cos(th), math.sin(th))
        if abs(z - 1) > 0.1 and abs(z - 1 / a_vals[len(zs)]) > 0.1:
            zs.append(z)
    zs = np.array(zs)
    quot_err = 0.0
    for a in (0.5, 2.0, 10.0):
        sel = a_vals == a
        lhs = F_values(a, zs[sel])
        rhs = F_values(1.0, zs[sel]) * np.log(zs[sel]) / np.log(a * zs[sel])
        quot_err = max(quot_err, float(np.max(np.abs(lhs - rhs) / np.abs(lhs))))
    errors["quotient"] = quot_err

    t = rng.uniform(0.0, 50.0, sample_count)
    t = t[t != np.floor(t)]
    d1 = density_values(DensityFamily(Kind.D, 1.0), t)
    cross = 0.0
    for a in (0.5, 2.0, 10.0):
        da = density_values(DensityFamily(Kind.D, a), t)
        lat2 = np.log(a * t) ** 2 + math.pi**2
        term1 = (np.log(t) ** 2 + math.pi**2) / lat2 * d1
        term2 = np.floor(t) * math.log(a) / (t * lat2)
        scale = np.maximum.reduce([np.abs(da), np.abs(term1), np.abs(term2)])
        cross = max(cross, float(np.max(np.abs(da - term1 - term2) / scale)))
    errors["cross_density"] = cross

    x = np.concatenate([np.arange(2, 2 + sample_count // 2, dtype=float),
                        rng.uniform(0.5, 100.0, sample_count - sample_count // 2)])
    stir = 0.0
    mu = binet_mu(x).real
    for xi, mi in zip(x.tolist(), mu.tolist()):
        terms = (CONSTANTS.ln_sqrt_2pi, (xi - 0.5) * math.log(xi), -xi, mi)
        rhs = math.fsum(terms)
        lhs = math.lgamma(xi)
        stir = max(stir, abs(lhs - rhs) / max(abs(lhs), max(abs(v) for v in terms)))
    errors["stirling"] = stir

    worst = max(errors.values())
    grid = {"sample_count": sample_count, "seed": seed, "tolerance": IDENTITY_TOL}
    return ScanReport(grid, -worst, None, worst <= IDENTITY_TOL, {"errors": errors})
