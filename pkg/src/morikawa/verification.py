"""Residual suite run by ``morikawa verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import algebra, geometry, minimize


@dataclass(frozen=True)
class Check:
    name: str
    r: float
    value: float
    tol: float
    passed: bool


def exact_sqrt(r) -> Fraction:
    """sqrt(r) as a rational: exact when r is a rational square, else the float root."""
    q = algebra.as_rational(r)
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return Fraction(math.sqrt(float(q)))


def unimodal_sign_changes(r: float, n: int = 10_000) -> int:
    xs = np.linspace(minimize.X_LO, minimize.X_HI, n + 2)[1:-1]
    zs = np.array([minimize.z(r, float(x)) for x in xs])
    return minimize._count_sign_changes(zs)


def p_residual(r: float, x_m: float) -> float:
    up = algebra.specialize(algebra.build_p(), exact_sqrt(r))
    return algebra.scaled_residual(up, x_m)


def h_residual(k, x_m: float, lam: float) -> float:
    k = algebra.as_rational(k)
    hk = algebra.build_h().subs("k", k)
    return float(abs(hk(algebra.as_rational(x_m), algebra.as_rational(lam))) / hk.max_abs_coeff())


def run_checks(r: float, grid_n: int = 2000) -> list[Check]:
    scene = geometry.Scene(r)
    res = minimize.minimize_mu(r)
    _, bf_mu = geometry.brute_force_mu(scene, grid_n)
    k = exact_sqrt(r)
    out = []

    def add(name, value, tol, passed=None):
        out.append(Check(name, r, float(value), tol, value <= tol if passed is None else passed))

    add("two_path_agreement", abs(bf_mu - res.mu), 1e-8)
    add("stationarity", abs(res.residual_zprime), 1e-9)
    add("unimodal_sign_changes", unimodal_sign_changes(r), 1.0, unimodal_sign_changes(r) == 1)
    add("p_scaled_residual", p_residual(r, res.x_m), 1e-7)
    add("h_scaled_residual", h_residual(k, res.x_m, res.mu**2), 1e-7)
    add("mu_below_bound_M", res.mu - geometry.bound_M(r), 0.0)
    return out
