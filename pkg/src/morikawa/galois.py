"""Frobenius cycle-type statistics for integer specialisations of p.

By Dedekind's theorem the factor-degree pattern of a polynomial modulo an
unramified prime is the cycle type of a Frobenius element of its Galois
group, and by Chebotarev each cycle type appears with the frequency of its
conjugacy class.  Sampling many primes therefore gives evidence (not a proof)
about the group.  Polynomials over GF(q) are plain lists of ints, lowest
degree first, trimmed so the last entry is nonzero.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import algebra
from .errors import DegreeDrop, DomainError, EmptyHistogram

IntPoly = list  # dense integer coefficients, lowest degree first

PRIME_FLOOR = 10_000
PRIME_CAP = 2**31
SEED_SPAN = 1_000_000


# -- integer model of p(k0, x) -------------------------------------------------


def primitive_part(coeffs: Sequence[Fraction]) -> IntPoly:
    """Scale to a primitive integer polynomial with positive leading coefficient."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        raise DomainError("zero polynomial has no primitive part")
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def content(f: Sequence[int]) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, c)
    return g


def specialize_integer(k0, degree: int = 10) -> IntPoly:
    """Primitive integer multiple of p(k0, x)."""
    k0 = algebra.as_rational(k0)
    if k0 < 1:
        raise DomainError(f"k0 must be >= 1, got {k0}")
    up = algebra.specialize(algebra.build_p(), k0)
    if up.degree != degree:
        raise DegreeDrop(f"p(k0, x) has degree {up.degree} at k0 = {k0}")
    return primitive_part(up.coeffs)


# -- arithmetic in GF(q)[x] ---------------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(f, q):
    return _trim([c % q for c in f])


def _monic(f, q):
    inv = pow(f[-1], -1, q)
    return [c * inv % q for c in f]


def _rem(a, m, q):
    """a mod m for monic m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            off = i - dm
            for j in range(dm):
                a[off + j] = (a[off + j] - c * m[j]) % q
        a[i] = 0
    return _trim(a[:dm])


def _mulmod(a, b, m, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _rem([c % q for c in out], m, q)


def _powmod(a, e, m, q):
    result = [1]
    base = _rem(a, m, q)
    while e:
        if e & 1:
            result = _mulmod(result, base, m, q)
        e >>= 1
        if e:
            base = _mulmod(base, base, m, q)
    return result


def _gcd(a, b, q):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, _rem(a, _monic(b, q), q)
    return _monic(a, q) if a else a


def _divexact(a, b, q):
    """a / b for monic b dividing a."""
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % q
        out[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % q
    return _trim(out)


def _derivative(f, q):
    return _trim([(i * c) % q for i, c in enumerate(f)][1:])


def _frobenius_matrix(f, q):
    # rows: x^(i*q) mod f for i < deg f
    n = len(f) - 1
    xq = _powmod([0, 1], q, f, q)
    rows = [[1]]
    for _ in range(1, n):
        rows.append(_mulmod(rows[-1], xq, f, q))
    return rows


def _apply_frobenius(h, rows, n, q):
    # h(x)^q = h(x^q) because coefficients lie in GF(q)
    out = [0] * n
    for c, row in zip(h, rows):
        if c:
            for j, v in enumerate(row):
                out[j] += c * v
    return _trim([v % q for v in out])


def distinct_degree_degrees(f, q) -> list[int]:
    """Degrees of the irreducible factors of a monic squarefree f over GF(q)."""
    f = list(f)
    degrees: list[int] = []
    rows = _frobenius_matrix(f, q)
    h = _rem([0, 1], f, q)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _apply_frobenius(h, rows, len(f) - 1, q)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % q
        g = _gcd(f, _trim(diff), q)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            f = _divexact(f, g, q)
            if len(f) - 1 >= 2 * (d + 1):
                rows = _frobenius_matrix(f, q)
                h = _rem(h, f, q)
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return degrees


def cycle_type_mod(f: Sequence[int], prime: int) -> Optional[tuple[int, ...]]:
    """Factor-degree pattern of ``f`` mod ``prime``, sorted descending.

    Returns ``None`` (a skip) when the prime divides the leading coefficient or
    the reduction is not squarefree.
    """
    if f[-1] % prime == 0:
        return None
    fp = _monic(_reduce(f, prime), prime)
    if len(fp) <= 2:
        return (len(fp) - 1,) if len(fp) == 2 else ()
    if len(_gcd(fp, _derivative(fp, prime), prime)) > 1:
        return None
    return tuple(sorted(distinct_degree_degrees(fp, prime), reverse=True))


# -- primes -------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def primes_from(start: int, count: int) -> list[int]:
    out = []
    p = start - 1
    for _ in range(count):
        p = next_prime(p + 1)
        out.append(p)
    if out and out[-1] >= PRIME_CAP:
        raise DomainError("prime sequence exceeds 2^31")
    return out


def seeded_start(seed: int) -> int:
    return PRIME_FLOOR + random.Random(seed).randrange(SEED_SPAN)


# -- histograms -----------------------------------------------------------------------


def pattern_key(pattern: Sequence[int]) -> str:
    return "+".join(str(d) for d in pattern)


@dataclass
class CycleTypeHistogram:
    counts: Counter = field(default_factory=Counter)
    skipped: int = 0
    degree: int = 10
    k0: Optional[str] = None

    @property
    def good(self) -> int:
        return sum(self.counts.values())

    @property
    def examined(self) -> int:
        return self.good + self.skipped

    def add(self, pattern: Optional[tuple[int, ...]]) -> None:
        if pattern is None:
            self.skipped += 1
        else:
            self.counts[tuple(pattern)] += 1

    def merge(self, other: "CycleTypeHistogram") -> "CycleTypeHistogram":
        if self.degree != other.degree:
            raise ValueError("cannot merge histograms of different degree")
        k0 = self.k0 if self.k0 == other.k0 else None
        return CycleTypeHistogram(self.counts + other.counts, self.skipped + other.skipped,
                                  self.degree, k0)

    def frequency(self, predicate) -> float:
        if not self.good:
            return 0.0
        return sum(n for pat, n in self.counts.items() if predicate(pat)) / self.good

    def patterns(self) -> dict[str, int]:
        return {pattern_key(p): n for p, n in sorted(self.counts.items(), reverse=True)}


def _cycle_type_job(args):
    f, prime = args
    return cycle_type_mod(f, prime)


def histogram_for_primes(f: Sequence[int], primes: Iterable[int], *, k0=None,
                         workers: int = 1) -> CycleTypeHistogram:
    f = list(f)
    primes = list(primes)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_cycle_type_job, [(f, p) for p in primes], chunksize=16))
    else:
        results = [cycle_type_mod(f, p) for p in primes]
    hist = CycleTypeHistogram(degree=len(f) - 1, k0=None if k0 is None else str(k0))
    for pat in results:
        hist.add(pat)
    return hist


def sample_cycle_types(k0, prime_count: int, seed: int = 0, *, workers: int = 1) -> CycleTypeHistogram:
    """Cycle types of p(k0, x) modulo ``prime_count`` consecutive primes.

    The primes start at a seed-dependent offset above 10^4; skipped primes are
    counted in ``skipped`` and are part of ``prime_count``.
    """
    if prime_count < 1:
        raise DomainError("prime_count must be >= 1")
    k0 = algebra.as_rational(k0)
    f = specialize_integer(k0)
    primes = primes_from(seeded_start(seed), prime_count)
    return histogram_for_primes(f, primes, k0=k0, workers=workers)


# -- evidence -------------------------------------------------------------------------


@dataclass(frozen=True)
class EvidenceReport:
    k0: Optional[str]
    degree: int
    primes: int
    skipped: int
    patterns: dict
    irreducible_witness: bool
    large_prime_cycle_witness: bool
    odd_witness: bool
    verdict: bool
    note: str = "Dedekind/Chebotarev sampling evidence, not a proof"

    def to_dict(self) -> dict:
        return {
            "k0": self.k0,
            "degree": self.degree,
            "primes": self.primes,
            "skipped": self.skipped,
            "patterns": self.patterns,
            "witnesses": {
                "irreducible": self.irreducible_witness,
                "large_prime_cycle": self.large_prime_cycle_witness,
                "odd": self.odd_witness,
            },
            "verdict": self.verdict,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def jordan_primes(n: int) -> list[int]:
    """Primes q with n/2 < q <= n - 3; a q-cycle in a primitive group forces A_n."""
    return [q for q in range(2, n - 2) if 2 * q > n and is_prime(q)]


def is_odd(pattern: Sequence[int]) -> bool:
    return sum(1 for d in pattern if d % 2 == 0) % 2 == 1


def symmetric_evidence(hist: CycleTypeHistogram) -> EvidenceReport:
    """Witnesses that the sampled Frobenius classes generate the full symmetric group.

    An n-cycle proves irreducibility over Q, hence transitivity.  A part equal
    to a prime q with n/2 < q <= n - 3 gives a q-cycle after a suitable power;
    such a cycle cannot preserve a nontrivial block system, so the group is
    primitive and contains A_n by Jordan's theorem.  An odd permutation then
    excludes A_n.
    """
    if not hist.counts:
        raise EmptyHistogram("histogram has no cycle types")
    n = hist.degree
    jp = set(jordan_primes(n))
    irreducible = any(p == (n,) for p in hist.counts)
    large = any(any(d in jp for d in p) for p in hist.counts)
    odd = any(is_odd(p) for p in hist.counts)
    return EvidenceReport(
        k0=hist.k0, degree=n, primes=hist.examined, skipped=hist.skipped,
        patterns=hist.patterns(), irreducible_witness=irreducible,
        large_prime_cycle_witness=large, odd_witness=odd,
        verdict=irreducible and large and odd,
    )


def s10_evidence(hist: CycleTypeHistogram) -> EvidenceReport:
    if hist.counts and hist.degree != 10:
        raise DomainError(f"expected a degree-10 histogram, got degree {hist.degree}")
    return symmetric_evidence(hist)
