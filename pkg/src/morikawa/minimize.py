"""Side length z(x) of the corner-contact square and its minimisation.

``x`` is the height above L of the vertex ``v_A`` resting on C1.  On the open
interval ``(1 - 1/sqrt(2), 1)`` the function z is unimodal and its minimum is
the minimal inscribed side length mu(r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._numerics import golden_section
from .errors import ConvergenceError, DomainError

X_LO = 1.0 - 1.0 / math.sqrt(2.0)
X_HI = 1.0
EDGE_EPS = 1e-9
SCOUT_POINTS = 64
CLAMP_SLACK = 1e-14
DERIV_SLACK = 1e-13


@dataclass(frozen=True)
class MuResult:
    r: float
    x_m: float
    mu: float
    iterations: int
    residual_zprime: float


def _check_r(r):
    if not (r >= 1.0) or math.isinf(r):
        raise DomainError(f"r must be a finite real >= 1, got {r!r}")


def _sqrt_clamped(val, what):
    if val < 0.0:
        if val < -CLAMP_SLACK:
            raise DomainError(f"negative radicand in {what}: {val!r}")
        return 0.0
    return math.sqrt(val)


def inner_radicand(r: float, x: float) -> float:
    """``r^2 - (2 sqrt(r) - x - sqrt(2x - x^2))^2``, the radicand under the outer root."""
    sb = _sqrt_clamped(2.0 * x - x * x, "2x - x^2")
    w = 2.0 * math.sqrt(r) - x - sb
    return r * r - w * w


def z(r: float, x: float) -> float:
    """Side of the square with ``v_dn`` on L, ``v_A`` on C1 at height ``x`` and ``v_up`` on Cr."""
    _check_r(r)
    rad = inner_radicand(r, x)
    # r^2 - w^2 cancels catastrophically at the domain edge; snap the dust to zero
    if abs(rad) <= CLAMP_SLACK * max(1.0, r * r):
        rad = 0.0
    sa = _sqrt_clamped(rad, "r^2 - (2 sqrt(r) - x - sqrt(2x - x^2))^2")
    h = r - x - sa
    return math.sqrt(x * x + h * h)


def z_squared_expanded(r: float, x: float) -> float:
    """z^2 via the expanded form in t = sqrt(r) (independent of :func:`z`)."""
    t = math.sqrt(r)
    sb = math.sqrt(2.0 * x - x * x)
    a = (-2.0 * x + 4.0 * t) * sb + (4.0 * t - 2.0) * x + t**4 - 4.0 * t * t
    return 2.0 * ((x - t * t) * math.sqrt(a) + (-x + 2.0 * t) * sb + x * x
                  + (-t * t + 2.0 * t - 1.0) * x + t**4 - 2.0 * t * t)


def half_dA_dx(r: float, x: float) -> float:
    """Closed form of (1/2) d(z^2)/dx."""
    _check_r(r)
    t = math.sqrt(r)
    b = 2.0 * x - x * x
    if b < DERIV_SLACK:
        raise DomainError(f"x={x!r} too close to a zero of 2x - x^2")
    sb = math.sqrt(b)
    a = (-2.0 * x + 4.0 * t) * sb + (4.0 * t - 2.0) * x + t**4 - 4.0 * t * t
    if a < DERIV_SLACK:
        raise DomainError(f"x={x!r} too close to a zero of the inner radicand")
    sa = math.sqrt(a)
    return ((x - t * t) * ((2.0 * t - 1.0) * sb + 2.0 * x * x - (2.0 * t + 3.0) * x + 2.0 * t) / (sa * sb)
            + sa
            + (x * x - (2.0 * t + 1.0) * x + 2.0 * t) / sb
            - sb + 2.0 * x - t * t + 2.0 * t - 1.0)


def z_prime(r: float, x: float) -> float:
    """dz/dx, from the closed form of dA/dx with A = z^2."""
    return half_dA_dx(r, x) / z(r, x)


def _count_sign_changes(values) -> int:
    d = np.sign(np.diff(values))
    d = d[d != 0]
    return int(np.count_nonzero(d[1:] != d[:-1]))


def scout_grid(r: float, n: int = SCOUT_POINTS, eps: float = EDGE_EPS):
    xs = np.linspace(X_LO + eps, X_HI - eps, n)
    zs = np.array([z(r, float(x)) for x in xs])
    return xs, zs


def minimize_mu(r: float, tol: float = 1e-13) -> MuResult:
    """Minimise z on ``(1 - 1/sqrt(2), 1)``.

    A 64-point scout grid brackets the single valley (raising
    :class:`ConvergenceError` if the samples are not unimodal); the minimiser is
    then the root of z' in that bracket, found by Brent's method.
    """
    _check_r(r)
    if not tol >= 1e-14:
        raise DomainError(f"tol must be >= 1e-14, got {tol!r}")
    xs, zs = scout_grid(r)
    if _count_sign_changes(zs) > 1:
        raise ConvergenceError(f"z is not unimodal on the scout grid for r={r!r}")
    i = int(np.argmin(zs))
    lo = float(xs[max(i - 1, 0)])
    hi = float(xs[min(i + 1, len(xs) - 1)])
    dlo, dhi = z_prime(r, lo), z_prime(r, hi)
    if dlo < 0.0 < dhi:
        x_m, info = brentq(lambda x: z_prime(r, x), lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps,
                           full_output=True)
        iterations = info.iterations
    else:
        # valley pressed against an end of the interval; fall back to golden section
        x_m, _, iterations = golden_section(lambda x: z(r, x), lo, hi, tol=max(tol, 1e-12))
    return MuResult(r=float(r), x_m=float(x_m), mu=z(r, x_m), iterations=int(iterations),
                    residual_zprime=z_prime(r, x_m))


def mu(r: float) -> float:
    return minimize_mu(r).mu


def x_m(r: float) -> float:
    return minimize_mu(r).x_m


def xi(k: float) -> float:
    """Minimiser location as a function of k = sqrt(r)."""
    if not k >= 1.0:
        raise DomainError(f"k must be >= 1, got {k!r}")
    return minimize_mu(k * k).x_m


def lambda_fn(k: float) -> float:
    """Squared minimal side length as a function of k = sqrt(r)."""
    if not k >= 1.0:
        raise DomainError(f"k must be >= 1, got {k!r}")
    return minimize_mu(k * k).mu ** 2
