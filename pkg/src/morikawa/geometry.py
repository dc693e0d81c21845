"""Inscribed squares between the line L and the tangent circles C1, Cr.

Canonical frame: L is the x-axis, C1 (radius 1) is tangent to L at the
origin and Cr (radius r) is tangent to L at (2*sqrt(r), 0); the two circles
are externally tangent.  A square at tilt ``theta`` has its bottom vertex
``v_dn`` on L and its lower-right side at angle ``theta`` to L.  In the
square's local frame (origin ``v_dn``, first axis along ``v_dn -> v_B``,
second along ``v_dn -> v_A``) the square is the box ``[0, s] x [0, s]``,
which is how every clearance below is evaluated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._numerics import bisect_root, golden_section
from .errors import ConvergenceError, DomainError, NotInscribed

Point = tuple[float, float]

HALF_PI = 0.5 * math.pi
SWEEP_END = HALF_PI - 1e-6
SOLVER_RTOL = 1e-13


@dataclass(frozen=True)
class Scene:
    r: float

    def __post_init__(self):
        if not (self.r >= 1.0) or math.isinf(self.r):
            raise DomainError(f"radius ratio r must be a finite real >= 1, got {self.r!r}")

    @property
    def center1(self) -> Point:
        return (0.0, 1.0)

    @property
    def center_r(self) -> Point:
        return (2.0 * math.sqrt(self.r), float(self.r))

    @property
    def tangent1(self) -> Point:
        return (0.0, 0.0)

    @property
    def tangent_r(self) -> Point:
        return (2.0 * math.sqrt(self.r), 0.0)

    @property
    def scale(self) -> float:
        return max(1.0, float(self.r))


@dataclass(frozen=True)
class SquarePose:
    theta: float
    s: float
    v_dn: Point
    v_B: Point
    v_up: Point
    v_A: Point

    @classmethod
    def from_bottom(cls, theta: float, s: float, a: float) -> "SquarePose":
        """Square with bottom vertex ``(a, 0)``, side ``s`` and tilt ``theta``."""
        c, sn = math.cos(theta), math.sin(theta)
        v_dn = (a, 0.0)
        v_B = (a + s * c, s * sn)
        v_A = (a - s * sn, s * c)
        v_up = (a + s * (c - sn), s * (sn + c))
        return cls(theta, s, v_dn, v_B, v_up, v_A)

    @property
    def vertices(self) -> tuple[Point, Point, Point, Point]:
        return (self.v_dn, self.v_B, self.v_up, self.v_A)

    def local(self, p: Point) -> Point:
        """Coordinates of ``p`` in the square's own frame."""
        c, sn = math.cos(self.theta), math.sin(self.theta)
        dx = p[0] - self.v_dn[0]
        dy = p[1] - self.v_dn[1]
        return (dx * c + dy * sn, -dx * sn + dy * c)


class LineContact(enum.Enum):
    CORNER_ON_LINE = "CornerOnLine"
    SIDE_ON_LINE = "SideOnLine"


class CircleContact(enum.Enum):
    CORNER = "Corner"
    SIDE_TANGENT = "SideTangent"
    CORNER_WITH_TANGENCY = "CornerWithTangency"
    NONE = "None"


@dataclass(frozen=True)
class ContactProfile:
    line_contact: LineContact
    c1_contact: CircleContact
    cr_contact: CircleContact
    c1_feature: str
    cr_feature: str
    named_hint: Optional[str] = None


# -- distance predicates ----------------------------------------------------


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    px, py = p[0] - ax, p[1] - ay
    den = dx * dx + dy * dy
    if den == 0.0:
        return math.hypot(px, py)
    t = min(1.0, max(0.0, (px * dx + py * dy) / den))
    return math.hypot(px - t * dx, py - t * dy)


def point_square_distance(p: Point, pose: SquarePose) -> float:
    """Unsigned distance from ``p`` to the boundary of the square."""
    vs = pose.vertices
    return min(point_segment_distance(p, vs[i], vs[(i + 1) % 4]) for i in range(4))


def _box_distance(u, v, s):
    # signed distance from local point (u, v) to [0, s]^2; negative inside
    ou = max(-u, 0.0, u - s)
    ov = max(-v, 0.0, v - s)
    if ou > 0.0 or ov > 0.0:
        return math.hypot(ou, ov)
    return -min(u, s - u, v, s - v)


def signed_distance(p: Point, pose: SquarePose) -> float:
    """Distance from ``p`` to the filled square, negative when ``p`` is inside.

    Outside the square this equals :func:`point_square_distance`.
    """
    u, v = pose.local(p)
    return _box_distance(u, v, pose.s)


def clearances(scene: Scene, pose: SquarePose) -> tuple[float, float, float]:
    """Gaps between the square and L, C1, Cr (negative means overlap)."""
    line = min(y for _, y in pose.vertices)
    c1 = signed_distance(scene.center1, pose) - 1.0
    cr = signed_distance(scene.center_r, pose) - scene.r
    return line, c1, cr


# -- the nested bisection ---------------------------------------------------


def _gap_c1(theta_c, theta_s, s, a):
    # square with v_dn = (a, 0); C1 centre is (0, 1)
    dx, dy = -a, 1.0
    return _box_distance(dx * theta_c + dy * theta_s, -dx * theta_s + dy * theta_c, s) - 1.0


def _touch_offset(theta_c, theta_s, s, rtol):
    hi = s * theta_s + 2.0
    return bisect_root(lambda a: _gap_c1(theta_c, theta_s, s, a), 0.0, hi, rtol)


def _gap_cr(scene, theta_c, theta_s, s, rtol):
    a = _touch_offset(theta_c, theta_s, s, rtol)
    cx, cy = scene.center_r
    dx, dy = cx - a, cy
    u = dx * theta_c + dy * theta_s
    v = -dx * theta_s + dy * theta_c
    return _box_distance(u, v, s) - scene.r


def _check_theta(theta):
    if not (0.0 <= theta < HALF_PI):
        raise DomainError(f"theta must lie in [0, pi/2), got {theta!r}")


def default_s_max(scene: Scene) -> float:
    return 2.0 * math.sqrt(scene.r) + 2.0


def inscribed_square(scene: Scene, theta: float, *, s_max: Optional[float] = None,
                     rtol: float = SOLVER_RTOL) -> SquarePose:
    """The unique inscribed square at tilt ``theta``.

    Outer bisection on the side length; for each trial side the square is slid
    along L (inner bisection) until it just touches C1, and the sign of its gap
    to Cr decides the next bracket.
    """
    _check_theta(theta)
    c, sn = math.cos(theta), math.sin(theta)
    hi = default_s_max(scene) if s_max is None else float(s_max)
    if _gap_cr(scene, c, sn, hi, rtol) >= 0.0:
        raise ConvergenceError(f"side bracket (0, {hi}] does not reach Cr at theta={theta!r}")
    s = bisect_root(lambda s_: _gap_cr(scene, c, sn, s_, rtol), 0.0, hi, rtol)
    a = _touch_offset(c, sn, s, rtol)
    return SquarePose.from_bottom(theta, s, a)


def side_length(scene: Scene, theta: float) -> float:
    return inscribed_square(scene, theta).s


def _box_distance_vec(u, v, s):
    ou = np.maximum(np.maximum(-u, 0.0), u - s)
    ov = np.maximum(np.maximum(-v, 0.0), v - s)
    outside = np.hypot(ou, ov)
    inside = -np.minimum(np.minimum(u, s - u), np.minimum(v, s - v))
    return np.where((ou > 0.0) | (ov > 0.0), outside, inside)


def _bisect_vec(f, lo, hi, rtol, increasing):
    # f is monotone on each bracket; sign convention fixed by ``increasing``
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(400):
        if np.all(hi - lo <= rtol * np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))):
            break
        mid = 0.5 * (lo + hi)
        pos = f(mid) > 0.0
        go_left = pos if increasing else ~pos
        hi = np.where(go_left, mid, hi)
        lo = np.where(go_left, lo, mid)
    else:
        raise ConvergenceError("vectorised bisection did not converge")
    return 0.5 * (lo + hi)


def side_lengths(scene: Scene, thetas, rtol: float = SOLVER_RTOL) -> np.ndarray:
    """Vectorised :func:`side_length` over an array of tilts (same algorithm)."""
    thetas = np.asarray(thetas, dtype=float)
    if np.any((thetas < 0.0) | (thetas >= HALF_PI)):
        raise DomainError("all thetas must lie in [0, pi/2)")
    c, sn = np.cos(thetas), np.sin(thetas)
    cx, cy = scene.center_r
    r = scene.r

    def touch(s):
        def gap1(a):
            dx = -a
            return _box_distance_vec(dx * c + sn, -dx * sn + c, s) - 1.0
        return _bisect_vec(gap1, np.zeros_like(s), s * sn + 2.0, rtol, increasing=True)

    def gap_r(s):
        a = touch(s)
        dx = cx - a
        return _box_distance_vec(dx * c + cy * sn, -dx * sn + cy * c, s) - r

    hi = np.full_like(thetas, default_s_max(scene))
    if np.any(gap_r(hi) >= 0.0):
        raise ConvergenceError("side bracket does not reach Cr for some theta")
    return _bisect_vec(gap_r, np.zeros_like(thetas), hi, rtol, increasing=False)


def sweep_thetas(grid_n: int) -> np.ndarray:
    return np.linspace(0.0, SWEEP_END, grid_n)


def brute_force_mu(scene: Scene, grid_n: int = 2000) -> tuple[float, float]:
    """Global minimum of s(theta) by a grid sweep plus golden-section refinement.

    Returns ``(theta_star, mu)``.
    """
    if grid_n < 100:
        raise DomainError(f"grid_n must be >= 100, got {grid_n}")
    thetas = sweep_thetas(grid_n)
    s = side_lengths(scene, thetas)
    i = int(np.argmin(s))
    a = thetas[max(i - 1, 0)]
    b = thetas[min(i + 1, grid_n - 1)]
    theta, mu, _ = golden_section(lambda t: side_length(scene, t), a, b, tol=1e-12)
    grid_best = side_length(scene, float(thetas[i]))
    if grid_best < mu:
        return float(thetas[i]), grid_best
    return theta, mu


# -- bound and pivot formulas -------------------------------------------------


def bound_M(r: float) -> float:
    """Upper bound on the side of the square in configuration 10+."""
    if not r > 0.0:
        raise DomainError(f"bound_M needs r > 0, got {r!r}")
    sr = math.sqrt(r)
    return 2.0 * r / (r + math.sqrt(8.0) * sr + 1.0)


def _check_pivot_args(ell, phi, beta):
    if not ell > 0.0:
        raise DomainError(f"segment length must be positive, got {ell!r}")
    if not (0.0 < phi < HALF_PI):
        raise DomainError(f"phi must lie in (0, pi/2), got {phi!r}")
    if not (HALF_PI - phi < beta < HALF_PI):
        raise DomainError(f"beta must lie in (pi/2 - phi, pi/2), got {beta!r}")
    return math.pi - phi - beta


def pivot_balance(ell: float, phi: float, beta: float) -> tuple[float, float]:
    """Split ``ell = b + c`` of the sliding segment at its pivot.

    ``b`` is measured from the x-axis endpoint and ``c`` from the endpoint on
    the line through the origin at angle ``phi``; they satisfy
    ``b cot(beta) = c cot(gamma)`` with ``gamma = pi - phi - beta``.
    """
    gamma = _check_pivot_args(ell, phi, beta)
    cb = 1.0 / math.tan(beta)
    cg = 1.0 / math.tan(gamma)
    b = ell * cg / (cb + cg)
    return b, ell - b


def pivot_y(ell: float, phi: float, beta: float) -> float:
    """Height of the pivot of the family of perpendiculars through the segment pivots."""
    gamma = _check_pivot_args(ell, phi, beta)
    return ell * (math.cos(gamma) + math.cos(gamma - beta) * math.cos(beta)) / math.sin(gamma + beta)


# -- contact classification -----------------------------------------------------

_VERTEX_NAMES = {(0, 0): "v_dn", (1, 0): "v_B", (0, 1): "v_A", (1, 1): "v_up"}
# sides keyed by (axis held fixed, value): axis 0 is u, axis 1 is v
_SIDE_NAMES = {
    (1, 0): "v_dn-v_B",
    (1, 1): "v_A-v_up",
    (0, 0): "v_dn-v_A",
    (0, 1): "v_B-v_up",
}


def _circle_contact(center: Point, pose: SquarePose, tol: float) -> tuple[CircleContact, str]:
    u, v = pose.local(center)
    s = pose.s
    ou = max(-u, 0.0, u - s)
    ov = max(-v, 0.0, v - s)
    iu = 0 if u < 0.5 * s else 1
    iv = 0 if v < 0.5 * s else 1
    if ou > tol and ov > tol:
        return CircleContact.CORNER, _VERTEX_NAMES[(iu, iv)]
    if ou > tol:
        # centre faces the side u = iu*s; the tangent foot is (iu*s, v)
        if v <= tol or v >= s - tol:
            return CircleContact.CORNER_WITH_TANGENCY, _VERTEX_NAMES[(iu, iv)]
        return CircleContact.SIDE_TANGENT, _SIDE_NAMES[(0, iu)]
    if ov > tol:
        if u <= tol or u >= s - tol:
            return CircleContact.CORNER_WITH_TANGENCY, _VERTEX_NAMES[(iu, iv)]
        return CircleContact.SIDE_TANGENT, _SIDE_NAMES[(1, iv)]
    return CircleContact.NONE, ""


def _named_hint(line, c1, c1f, cr, crf):
    if line is LineContact.SIDE_ON_LINE:
        return "#1-3"
    if c1 is CircleContact.CORNER and cr is CircleContact.CORNER:
        if c1f == "v_A" and crf == "v_up":
            return "#6"
        if c1f == "v_up" and crf == "v_B":
            return "#19"
    if (c1 is CircleContact.CORNER_WITH_TANGENCY and c1f == "v_A"
            and cr is CircleContact.CORNER_WITH_TANGENCY and crf == "v_B"):
        return "#9"
    c1_side = c1 is CircleContact.SIDE_TANGENT and c1f == "v_A-v_up"
    cr_side = cr is CircleContact.SIDE_TANGENT and crf == "v_B-v_up"
    if c1_side and cr_side:
        return "#10"
    if cr_side and c1 is CircleContact.CORNER and c1f == "v_A":
        return "#7-8"
    if c1_side and cr is CircleContact.CORNER and crf == "v_B":
        return "#12-14"
    return None


def default_tol(scene: Scene) -> float:
    return 1e-9 * scene.scale


def classify(scene: Scene, pose: SquarePose, tol: Optional[float] = None) -> ContactProfile:
    """Describe how an inscribed square touches L, C1 and Cr."""
    if tol is None:
        tol = default_tol(scene)
    gaps = clearances(scene, pose)
    if any(abs(g) > tol for g in gaps):
        raise NotInscribed(f"clearances {gaps} exceed tolerance {tol}")
    if pose.v_B[1] <= tol or pose.v_A[1] <= tol:
        line = LineContact.SIDE_ON_LINE
    else:
        line = LineContact.CORNER_ON_LINE
    c1, c1f = _circle_contact(scene.center1, pose, tol)
    cr, crf = _circle_contact(scene.center_r, pose, tol)
    return ContactProfile(line, c1, cr, c1f, crf, _named_hint(line, c1, c1f, cr, crf))
