"""Finite-difference oracles for the pivot formulas, shared by several test modules."""

import math

import numpy as np

from morikawa import geometry


def _intersect(p1, d1, p2, d2):
    m = np.array([[d1[0], -d2[0]], [d1[1], -d2[1]]])
    t, _ = np.linalg.solve(m, np.subtract(p2, p1))
    return np.add(p1, t * np.asarray(d1))


def _j_segment(ell, phi, beta):
    # x-axis endpoint and unit direction towards the endpoint on L_phi
    gamma = math.pi - phi - beta
    x0 = ell * math.sin(gamma) / math.sin(phi)
    return np.array([x0, 0.0]), np.array([-math.cos(beta), math.sin(beta)])


def fd_pivot_b(ell, phi, beta, h=1e-6):
    p1, d1 = _j_segment(ell, phi, beta - h)
    p2, d2 = _j_segment(ell, phi, beta + h)
    pivot = _intersect(p1, d1, p2, d2)
    x0, _ = _j_segment(ell, phi, beta)
    return float(np.linalg.norm(pivot - x0))


def _k_line(ell, phi, beta):
    # K lines pass through the J pivot; pivot_balance is checked on its own against fd_pivot_b
    x0, d = _j_segment(ell, phi, beta)
    b, _ = geometry.pivot_balance(ell, phi, beta)
    return x0 + b * d, np.array([d[1], -d[0]])


def fd_pivot_y(ell, phi, beta, h=1e-6):
    p1, d1 = _k_line(ell, phi, beta - h)
    p2, d2 = _k_line(ell, phi, beta + h)
    return float(_intersect(p1, d1, p2, d2)[1])


def random_pivot_triples(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        ell = rng.uniform(0.2, 3.0)
        phi = rng.uniform(0.15, math.pi / 2 - 0.15)
        lo, hi = math.pi / 2 - phi, math.pi / 2
        beta = rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo))
        out.append((ell, phi, beta))
    return out
