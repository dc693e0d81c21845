"""Acceptance suite: one PASS/FAIL line per criterion, each at its stated tolerance."""

import math
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from morikawa import algebra, galois, geometry, minimize
from morikawa.algebra import Poly, UniPoly
from oracles import fd_pivot_b, fd_pivot_y, random_pivot_triples

SQRT2 = math.sqrt(2.0)


def report(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
    assert ok, detail


def test_criterion_1_two_path_agreement(capsys):
    worst_err, worst_time = 0.0, 0.0
    for r in (1.0, 1.21, 2.0, 4.0, 7.29, 16.0):
        t0 = time.perf_counter()
        _, bf = geometry.brute_force_mu(geometry.Scene(r), 2000)
        mm = minimize.minimize_mu(r).mu
        worst_time = max(worst_time, time.perf_counter() - t0)
        worst_err = max(worst_err, abs(bf - mm))
    ok = worst_err <= 1e-8 and worst_time < 2.0
    report(capsys, 1, "brute force vs minimizer", ok, f"max diff {worst_err:.2e}, slowest r {worst_time:.2f}s")


def test_criterion_2_spot_values(capsys):
    e1 = abs(minimize.z(1.0, 1.0) - SQRT2)
    e2 = abs(minimize.z(1.0, 1.0 - 1.0 / SQRT2) - math.sqrt(2.0 - SQRT2))
    s = geometry.inscribed_square(geometry.Scene(1.0), math.pi / 4).s
    e3 = abs(s - (SQRT2 - 1.0))
    e4 = abs(s - geometry.bound_M(1.0))
    ok = e1 <= 1e-12 and e2 <= 1e-12 and e3 <= 1e-10 and e4 <= 1e-12
    report(capsys, 2, "closed-form spot values", ok, f"errors {e1:.1e}, {e2:.1e}, {e3:.1e}, {e4:.1e}")


def test_criterion_3_degree_ten_certificate(capsys):
    p = algebra.build_p()
    b = algebra.coeff_polys()
    x6 = (b["D"] ** 2 - b["E"] * b["B"] * b["G"]).coefficients("x").get(6)
    residuals = []
    for r in (Fraction(1), Fraction(9, 4), Fraction(4), Fraction(16)):
        t0 = Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))
        up = algebra.specialize(p, t0)
        residuals.append(algebra.scaled_residual(up, minimize.x_m(float(r))))
    ok = p.degree("x") == 10 and x6 is None and max(residuals) <= 1e-7
    report(capsys, 3, "degree-10 polynomial and root certificate", ok,
           f"deg_x {p.degree('x')}, x^6 term {'absent' if x6 is None else x6}, max residual {max(residuals):.1e}")


def test_criterion_4_h_identity(capsys):
    h = algebra.build_h()
    exact = algebra.evaluate(h, 1, 1, 2)
    scale = float(h.max_abs_coeff())
    res = [abs(algebra.evaluate(h, Fraction(k), minimize.xi(k), minimize.lambda_fn(k))) / scale
           for k in (1.0, 1.5, 2.0, 3.0)]
    ok = exact == 0 and max(res) <= 1e-7
    report(capsys, 4, "h identity along the minimizer", ok, f"h(1,1,2) = {exact}, max residual {max(res):.1e}")


def test_criterion_5_unimodality(capsys):
    import numpy as np

    changes = {}
    for r in (1.0, 1.5, 2.0, 4.0, 9.0):
        xs = np.linspace(minimize.X_LO, minimize.X_HI, 10_002)[1:-1]
        zs = np.array([minimize.z(r, float(x)) for x in xs])
        d = np.sign(np.diff(zs))
        d = d[d != 0]
        changes[r] = int(np.count_nonzero(d[1:] != d[:-1]))
    ok = all(c == 1 for c in changes.values())
    report(capsys, 5, "unimodality of z", ok, f"sign changes {changes}")


def test_criterion_6_pivot_formulas(capsys):
    worst = 0.0
    for ell, phi, beta in random_pivot_triples(100, 2024):
        b, _ = geometry.pivot_balance(ell, phi, beta)
        worst = max(worst, abs(b - fd_pivot_b(ell, phi, beta)) / abs(b))
        y = geometry.pivot_y(ell, phi, beta)
        worst = max(worst, abs(y - fd_pivot_y(ell, phi, beta)) / abs(y))
    report(capsys, 6, "pivot formulas vs finite differences", worst <= 1e-4, f"max relative error {worst:.1e}")


def test_criterion_7_galois_evidence(capsys):
    t0 = time.perf_counter()
    hist = galois.sample_cycle_types(2, 500, seed=0)
    rep = galois.s10_evidence(hist)
    elapsed = time.perf_counter() - t0
    freq10 = hist.frequency(lambda p: p == (10,))
    ok = (rep.irreducible_witness and rep.large_prime_cycle_witness and rep.odd_witness
          and 0.06 <= freq10 <= 0.14 and elapsed < 10.0 and rep.verdict)
    report(capsys, 7, "cycle-type evidence at k0=2", ok,
           f"(10) freq {freq10:.3f}, witnesses {rep.irreducible_witness}/{rep.large_prime_cycle_witness}/"
           f"{rep.odd_witness}, {elapsed:.2f}s")


def test_criterion_8_resultant_kernel(capsys):
    lin = all(algebra.resultant(UniPoly([-u, 1]), UniPoly([-v, 1])) == v - u
              for u, v in ((0, 1), (3, -2), (Fraction(1, 2), Fraction(5, 7))))
    a = UniPoly([2, 0, -3, 1])
    self_zero = algebra.resultant(a, a) == 0
    nine = algebra.resultant(UniPoly([-1, 0, 1]), UniPoly([-4, 0, 1])) == 9
    rng = random.Random(8)

    def rp():
        cs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(2, 4))]
        cs[-1] = cs[-1] or Fraction(1)
        return UniPoly(cs)

    mult = all(algebra.resultant(A * B, C) == algebra.resultant(A, C) * algebra.resultant(B, C)
               for A, B, C in ((rp(), rp(), rp()) for _ in range(100)))
    chain = algebra.resultant_chain_check(2, UniPoly([1], "y")) == 1
    ok = lin and self_zero and nine and mult and chain
    report(capsys, 8, "resultant kernel", ok,
           f"linear {lin}, Res(a,a)=0 {self_zero}, Res=9 {nine}, multiplicative {mult}, chain {chain}")


def test_criterion_9_specialization_coefficients(capsys):
    b = algebra.coeff_polys()
    hand = {
        "D": UniPoly([-2, 15, -15, 4]),
        "G": UniPoly([0, 8, -20, 8]),
        "H": UniPoly([4, -20, 33, -12]),
    }
    got = {k: algebra.specialize(b[k], 1) for k in hand}
    ok = all(got[k] == hand[k] for k in hand)
    report(capsys, 9, "t=1 coefficients of D, G, H", ok, ", ".join(f"{k} {'ok' if got[k] == hand[k] else got[k]}" for k in hand))
