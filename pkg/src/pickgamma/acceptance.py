"""Reproduction checks run by ``pickgamma verify-all``.

Each check returns a :class:`Check` with the measured quantities and the
tolerance it was held to.  Tolerances are fixed here and nowhere else.
"""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .a0 import find_a0
from .densities import DensityFamily, Kind, positivity_scan
from .kernel import CONSTANTS, binet_mu, log_gamma
from .moments import E_MINUS_HALF, cm_sequence_check, hankel_psd_check, log_convexity_check, moment_sequence
from .representations import (
    F_direct,
    F_rep,
    QuadraturePlan,
    integrate_density,
    invlog_rep,
    logf_rep,
)
from .verify import boundary_limit_check, derivative_sign_check, identity_suite, pick_scan

A0_REPORTED = 0.3681154742
M_K_REPORTED = {1: 1.6477352344, 178: 1.0000028637, 179: 0.9999936630, 510: 0.9993586013}


@dataclass
class Check:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] {self.number:2d} {self.name}: {parts}"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, complex):
        return f"{v.real:.6g}{v.imag:+.6g}j"
    return str(v)


@functools.lru_cache(maxsize=None)
def _a0_run(k_max: int):
    t0 = time.perf_counter()
    rep = find_a0(k_max, 1e-10)
    return rep, time.perf_counter() - t0


def check_a0(k_max: int = 1000) -> Check:
    rep, elapsed = _a0_run(k_max)
    ok = abs(rep.a0 - A0_REPORTED) <= 1e-9 and rep.k_star == 510 and elapsed <= 60.0
    return Check(1, "a0 reproduction", ok, {"a0": rep.a0, "k_star": rep.k_star, "seconds": elapsed})


def check_mk_table(k_max: int = 1000) -> Check:
    rep, _ = _a0_run(k_max)
    m = {row.k: row.m_k for row in rep.table}
    errs = {k: abs(m[k] - v) for k, v in M_K_REPORTED.items()}
    seq = np.array([row.m_k for row in rep.table])
    dec = bool(np.all(np.diff(seq[:510]) < 0))
    inc = bool(np.all(np.diff(seq[509:]) > 0))
    ok = max(errs.values()) <= 1e-8 and dec and inc
    return Check(2, "m_k table", ok, {"max_err": max(errs.values()), "decreasing_1_510": dec, "increasing_510_kmax": inc})


def check_F_rep() -> Check:
    t0 = time.perf_counter()
    on = F_rep(1.0, 2.0, QuadraturePlan(truncation_T=10_000, tail_correction=True))
    off = F_rep(1.0, 2.0, QuadraturePlan(truncation_T=10_000, tail_correction=False))
    raw = QuadraturePlan(truncation_T=10_000, tail_correction=False)
    fam = DensityFamily(Kind.D, 1.0)
    i2, _ = integrate_density(fam, 2.0, raw)
    i4, _ = integrate_density(fam, 4.0, raw)
    diff_direct = F_direct(1.0, 2.0) - F_direct(1.0, 4.0)
    diff_err = abs(diff_direct - (i4 - i2))
    elapsed = time.perf_counter() - t0
    ok = abs(on.via_rep - 0.5) <= 1e-4 and off.deviation > 0.05 and diff_err <= 1e-5 and elapsed <= 30.0
    return Check(3, "F_1(2) representation", ok, {
        "err_tail_on": abs(on.via_rep - 0.5), "err_tail_off": off.deviation,
        "difference_form_err": diff_err, "seconds": elapsed})


def check_G_tau() -> Check:
    plan = QuadraturePlan(truncation_T=10_000)
    rho, _ = integrate_density(DensityFamily(Kind.RHO, 1.0), 2.0, plan)
    tau, _ = integrate_density(DensityFamily(Kind.TAU), 2.0, plan)
    tau_target = 2.0 / math.log(2.0) - 1.0 / (1.0 - CONSTANTS.euler_gamma)
    e1, e2 = abs(rho - 1.0), abs(tau - tau_target)
    return Check(4, "G and tau representations", e1 <= 1e-3 and e2 <= 1e-3, {"rho_err": e1, "tau_err": e2})


def check_logf() -> Check:
    devs = {z: logf_rep(z).deviation for z in (1.0, 2.0, 5.0)}
    inv = invlog_rep(math.e - 1.0)
    e_inv = abs(inv.via_rep - 1.0)
    ok = max(devs.values()) <= 1e-4 and e_inv <= 1e-4
    return Check(5, "log f and 1/Log representations", ok, {"max_logf_dev": max(devs.values()), "invlog_err": e_inv})


def check_mu2() -> Check:
    err = abs(binet_mu(2.0) - (2.0 - 1.5 * math.log(2.0) - CONSTANTS.ln_sqrt_2pi))
    return Check(6, "mu(2) closed form", err <= 1e-12, {"err": err})


def check_pick() -> Check:
    mins = {a: pick_scan(a).min_value for a in (1.0, 2.0, 5.0)}
    bad = pick_scan(0.5)
    wz, wv = bad.witness
    ok = min(mins.values()) >= -1e-12 and wv < -10 and abs(wz - 2.0) <= 0.5
    return Check(7, "Pick property", ok, {"min_im_a>=1": min(mins.values()), "witness_z": wz, "witness_im": wv})


def check_positivity() -> Check:
    clean = {a: len(positivity_scan(DensityFamily(Kind.D, a), 100.0)) for a in (0.5, 1.0, 2.0)}
    neg = positivity_scan(DensityFamily(Kind.D, 0.3), 100.0)
    ok = not any(clean.values()) and len(neg) > 0
    return Check(8, "density positivity boundary", ok, {"negatives_a>=0.5": sum(clean.values()), "negatives_a=0.3": len(neg)})


def check_derivative_signs() -> Check:
    reps = {a: derivative_sign_check(a, (1.0 / a + 1.0, 50.0), 0.1, 6) for a in (1.0, 2.0)}
    worst = min(r.min_value for r in reps.values())
    return Check(9, "alternating derivative signs", all(r.passed for r in reps.values()), {"worst": worst})


def check_moments() -> Check:
    rep = moment_sequence(100)
    a = [v for _, v in rep.values]
    dec = all(a[i + 1] < a[i] for i in range(len(a) - 1))
    above = all(v > E_MINUS_HALF for v in a)
    lc = log_convexity_check(a)
    cm = min(cm_sequence_check(a, 10).values())
    h_plain, h_shift = hankel_psd_check(a, 6)
    ok = dec and above and lc >= -1e-12 and cm >= -1e-9 and min(h_plain, h_shift) >= -1e-10
    return Check(10, "Hausdorff moment sequence", ok, {
        "decreasing": dec, "above_limit": above, "logconvex_margin": lc,
        "cm_worst": cm, "hankel_min": min(h_plain, h_shift)})


def check_boundary_limit() -> Check:
    res = boundary_limit_check(1.0, -0.5, (1e-2, 1e-4, 1e-6))
    ok = res.deviations[-1] <= 1e-4 and res.decreasing
    return Check(11, "boundary limit", ok, {"dev_at_1e-6": res.deviations[-1], "monotone": res.decreasing})


def check_identities(seed: int = 0) -> Check:
    import mpmath

    suite = identity_suite(500, seed)
    rng = np.random.default_rng(seed + 1)
    zs = []
    while len(zs) < 100:
        z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
        if abs(z) <= 50 and abs(z.imag) > 1e-3:
            zs.append(z)
    ours = log_gamma(np.array(zs))
    oracle_err = max(
        abs(o - complex(mpmath.loggamma(z))) / max(1.0, abs(complex(mpmath.loggamma(z))))
        for z, o in zip(zs, ours)
    )
    ok = suite.passed and oracle_err <= 1e-10
    return Check(12, "exact identities", ok, {**suite.details["errors"], "loggamma_oracle": oracle_err})


CHECKS = [
    check_a0,
    check_mk_table,
    check_F_rep,
    check_G_tau,
    check_logf,
    check_mu2,
    check_pick,
    check_positivity,
    check_derivative_signs,
    check_moments,
    check_boundary_limit,
    check_identities,
]


def run_all() -> list[Check]:
    return [fn() for fn in CHECKS]
