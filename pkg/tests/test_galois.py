import itertools
import json
from collections import Counter
from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf

from morikawa import galois
from morikawa.errors import DomainError, EmptyHistogram
from morikawa.galois import CycleTypeHistogram

X = sp.symbols("x")
PHI10 = [1, -1, 1, -1, 1]  # x^4 - x^3 + x^2 - x + 1, ascending


@pytest.fixture(scope="module")
def f2():
    return galois.specialize_integer(2)


@pytest.fixture(scope="module")
def hist2():
    return galois.sample_cycle_types(2, 500, seed=0)


# -- brute-force factorisation oracle over tiny fields --------------------------


def _polymod(a, b, p):
    # remainder of a by monic b, descending lists
    a = list(a)
    while len(a) >= len(b):
        c = a[0] % p
        if c:
            for i in range(len(b)):
                a[i] = (a[i] - c * b[i]) % p
        a.pop(0)
    return a


def _polydiv(a, b, p):
    a = list(a)
    q = []
    while len(a) >= len(b):
        c = a[0] % p
        q.append(c)
        for i in range(len(b)):
            a[i] = (a[i] - c * b[i]) % p
        a.pop(0)
    return q, a


def brute_factor_degrees(f_asc, p):
    """Factor degrees of a squarefree f mod p by trial division with every monic polynomial."""
    f = [c % p for c in reversed(f_asc)]
    inv = pow(f[0], -1, p)
    f = [c * inv % p for c in f]
    degrees = []
    while len(f) > 1:
        n = len(f) - 1
        found = None
        for d in range(1, n // 2 + 1):
            for tail in itertools.product(range(p), repeat=d):
                g = [1, *tail]
                if not any(_polymod(f, g, p)):
                    found = g
                    break
            if found:
                break
        if found is None:
            degrees.append(n)
            break
        degrees.append(len(found) - 1)
        f, _ = _polydiv(f, found, p)
    return tuple(sorted(degrees, reverse=True))


# -- integer model ------------------------------------------------------------


def test_specialize_integer_k1():
    f = galois.specialize_integer(1)
    assert len(f) == 11 and galois.content(f) == 1
    assert f == [32, -384, 2336, -8412, 18350, -24903, 21469, -11784, 4000, -768, 64]


@pytest.mark.parametrize("k0", [2, 3, Fraction(3, 2), "5/4"])
def test_specialize_integer_degree_and_content(k0):
    f = galois.specialize_integer(k0)
    assert len(f) == 11 and f[-1] > 0 and galois.content(f) == 1


def test_specialize_integer_domain():
    with pytest.raises(DomainError):
        galois.specialize_integer(Fraction(1, 2))


def test_k1_not_squarefree_over_q():
    # documents why k0 = 1 yields only skipped primes
    f = sp.Poly(list(reversed(galois.specialize_integer(1))), X)
    assert sp.degree(sp.gcd(f, f.diff(X))) >= 1


def test_k2_k3_irreducible_over_q():
    for k0 in (2, 3):
        f = sp.Poly(list(reversed(galois.specialize_integer(k0))), X)
        assert f.is_irreducible


# -- cycle types ----------------------------------------------------------------


def test_cycle_type_small_examples():
    assert galois.cycle_type_mod([1, 0, 1], 3) == (2,)
    assert galois.cycle_type_mod([-1, 0, 1], 7) == (1, 1)
    assert galois.cycle_type_mod([1, 0, 3], 3) is None  # leading coefficient vanishes
    assert galois.cycle_type_mod([1, 2, 1], 5) is None  # (x + 1)^2


@pytest.mark.parametrize("p", [5, 7, 11])
def test_cycle_type_matches_brute_force(p):
    import random

    rng = random.Random(p)
    checked = 0
    while checked < 25:
        n = rng.randint(2, 8 if p == 11 else 10)
        f = [rng.randint(-20, 20) for _ in range(n)] + [rng.choice([1, 2, 3, 4])]
        got = galois.cycle_type_mod(f, p)
        if got is None:
            continue
        assert got == brute_factor_degrees(f, p), f
        assert sum(got) == n
        checked += 1


def test_k2_at_small_primes_matches_brute_force(f2):
    for p in (5, 7, 11, 13):
        got = galois.cycle_type_mod(f2, p)
        if got is not None:
            assert got == brute_factor_degrees(f2, p)


def test_k2_first_good_prime_above_million_matches_sympy(f2):
    p = galois.next_prime(10**6)
    while galois.cycle_type_mod(f2, p) is None:
        p = galois.next_prime(p + 1)
    _, factors = gf_factor_sqf([c % p for c in reversed(f2)], p, ZZ)
    ref = tuple(sorted((len(g) - 1 for g in factors), reverse=True))
    assert galois.cycle_type_mod(f2, p) == ref


# -- primes -----------------------------------------------------------------------


def test_is_prime_against_sympy():
    for n in list(range(0, 2000)) + [2**31 - 1, 10**6 + 3, 561, 1105, 25326001, 3215031751]:
        assert galois.is_prime(n) == sp.isprime(n), n


def test_seeded_primes():
    start = galois.seeded_start(0)
    assert 10**4 <= start < 10**4 + 10**6
    ps = galois.primes_from(start, 5)
    assert ps == sorted(ps) and all(sp.isprime(p) for p in ps) and ps[0] >= start
    assert galois.seeded_start(0) == start and galois.seeded_start(1) != start


# -- histograms ------------------------------------------------------------------


def test_prime_count_one(f2):
    h = galois.sample_cycle_types(2, 1, seed=3)
    assert h.examined == 1 and h.good + h.skipped == 1
    with pytest.raises(DomainError):
        galois.sample_cycle_types(2, 0)


def test_histogram_bookkeeping(hist2):
    assert hist2.good + hist2.skipped == hist2.examined == 500
    assert all(sum(p) == 10 for p in hist2.counts)
    assert hist2.k0 == "2"


def test_merge_equals_combined_run(f2):
    ps = galois.primes_from(50_000, 120)
    a = galois.histogram_for_primes(f2, ps[:70], k0=Fraction(2))
    b = galois.histogram_for_primes(f2, ps[70:], k0=Fraction(2))
    whole = galois.histogram_for_primes(f2, ps, k0=Fraction(2))
    assert a.merge(b) == whole == b.merge(a)


def test_determinism_across_workers():
    serial = galois.sample_cycle_types(3, 80, seed=9)
    parallel = galois.sample_cycle_types(3, 80, seed=9, workers=2)
    assert serial == parallel
    assert galois.sample_cycle_types(3, 80, seed=9) == serial


def test_statistical_bands(hist2):
    assert hist2.good >= 500
    assert 0.06 <= hist2.frequency(lambda p: p == (10,)) <= 0.14
    assert 0.10 <= hist2.frequency(lambda p: 7 in p) <= 0.19


@pytest.mark.parametrize("k0", [
    pytest.param(1, marks=pytest.mark.xfail(strict=True, reason="p(1, x) has repeated roots; every prime is ramified")),
    2,
    3,
])
def test_skip_rate(k0):
    h = galois.sample_cycle_types(k0, 200, seed=1)
    assert h.skipped < 0.05 * h.examined


# -- evidence -------------------------------------------------------------------


def test_evidence_examples():
    h = CycleTypeHistogram(Counter({(10,): 1, (7, 2, 1): 1}))
    rep = galois.s10_evidence(h)
    assert rep.irreducible_witness and rep.large_prime_cycle_witness and rep.odd_witness and rep.verdict
    h = CycleTypeHistogram(Counter({(1,) * 10: 5}))
    rep = galois.s10_evidence(h)
    assert not (rep.irreducible_witness or rep.large_prime_cycle_witness or rep.odd_witness or rep.verdict)


def test_evidence_empty():
    with pytest.raises(EmptyHistogram):
        galois.s10_evidence(CycleTypeHistogram(skipped=4))


def test_jordan_primes_and_parity():
    assert galois.jordan_primes(10) == [7]
    assert galois.jordan_primes(4) == []
    assert galois.is_odd((10,)) and galois.is_odd((2, 1, 1)) and not galois.is_odd((2, 2))


def test_pipeline_verdict_k2(hist2):
    rep = galois.s10_evidence(hist2)
    assert rep.verdict
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"k0", "primes", "skipped", "patterns", "witnesses", "verdict"}
    assert doc["k0"] == "2" and doc["primes"] == 500
    assert sum(doc["patterns"].values()) + doc["skipped"] == 500


def test_cyclotomic_control():
    ps = galois.primes_from(10_007, 300)
    h = galois.histogram_for_primes(PHI10, ps)
    h = CycleTypeHistogram(h.counts, h.skipped, degree=4)
    assert h.good > 0
    assert all(3 not in p for p in h.counts)
    assert set(h.counts) <= {(4,), (2, 2), (1, 1, 1, 1)}
    assert not galois.symmetric_evidence(h).verdict
    # even a full S4-looking sample gets no verdict at degree 4
    s4 = CycleTypeHistogram(Counter({(4,): 1, (3, 1): 1, (2, 1, 1): 1}), degree=4)
    assert not galois.symmetric_evidence(s4).verdict
