"""Exact rational polynomial algebra for the degree-10 certificate.

Polynomials are sparse maps from exponent tuples to :class:`fractions.Fraction`.
The bivariate ring uses variables ``(t, x)`` with ``t = sqrt(r)``; the
trivariate ring uses ``(k, x, y)``.  Univariate results live in the dense
:class:`UniPoly`.
"""

from __future__ import annotations

import functools
import json
import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence, Union

from .errors import DegenerateInput, DomainError

Rational = Fraction
Scalar = Union[int, Fraction]

BIVAR_VARS = ("t", "x")
TRIVAR_VARS = ("k", "x", "y")


def _is_exact(v) -> bool:
    return isinstance(v, (int, _RationalABC)) and not isinstance(v, bool)


def as_rational(v) -> Fraction:
    """Exact conversion; floats are converted bit-for-bit, strings parsed as ``a/b`` or decimals."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {v!r}") from exc
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError(f"not a finite number: {v!r}")
        return Fraction(v)
    return Fraction(v)


class Poly:
    """Immutable sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("vars", "_terms")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None, vars: Sequence[str] = BIVAR_VARS):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(i) for i in e)
            if len(e) != n or any(i < 0 for i in e):
                raise ValueError(f"bad exponent {e} for variables {self.vars}")
            c = as_rational(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean

    @classmethod
    def const(cls, c: Scalar, vars: Sequence[str] = BIVAR_VARS) -> "Poly":
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] = BIVAR_VARS) -> "Poly":
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if sum(e) != 1:
            raise ValueError(f"{name!r} is not one of {vars}")
        return cls({e: 1}, vars)

    # -- container protocol ---------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self._terms == other._terms
        if _is_exact(other):
            return self == Poly.const(other, self.vars)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "Poly(0)"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(f"{v}^{i}" if i > 1 else v for v, i in zip(self.vars, e) if i)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if _is_exact(other):
            return Poly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ------------------------------------------------------------
    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not one of {self.vars}") from None

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = self._index(var)
        return max(e[i] for e in self._terms)

    def coefficients(self, var: str) -> dict[int, "Poly"]:
        """Coefficients with respect to ``var``, as polynomials in the other variables."""
        i = self._index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self._terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: Poly(t, rest) for d, t in sorted(buckets.items())}

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self._terms.values()), default=Fraction(0))

    def subs(self, var: str, value: Scalar) -> "Poly":
        """Exact substitution ``var = value``; the variable is removed."""
        i = self._index(var)
        value = as_rational(value)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict = {}
        for e, c in self._terms.items():
            key = e[:i] + e[i + 1:]
            out[key] = out.get(key, 0) + c * value ** e[i]
        return Poly(out, rest)

    def __call__(self, *point):
        return evaluate(self, *point)

    # -- serialisation --------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"e": list(e), "n": str(c.numerator), "d": str(c.denominator)}
                      for e, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Poly":
        terms = {tuple(t["e"]): Fraction(int(t["n"]), int(t["d"])) for t in data["terms"]}
        return cls(terms, data["vars"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        return cls.from_dict(json.loads(text))


BivarPoly = Poly
TrivarPoly = Poly


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Scalar], var: str = "x"):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __add__(self, other):
        other = _as_unipoly(other, self.var)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([p + q for p, q in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-_as_unipoly(other, self.var))

    def __mul__(self, other):
        other = _as_unipoly(other, self.var)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, exactly-rounded for floats."""
        if _is_exact(x):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        return float(self(as_rational(float(x))))

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=Fraction(0))

    def to_dict(self) -> dict:
        return {
            "vars": [self.var],
            "terms": [{"e": [i], "n": str(c.numerator), "d": str(c.denominator)}
                      for i, c in enumerate(self.coeffs) if c],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "UniPoly":
        (var,) = data["vars"]
        n = max((t["e"][0] for t in data["terms"]), default=-1) + 1
        cs = [Fraction(0)] * n
        for t in data["terms"]:
            cs[t["e"][0]] = Fraction(int(t["n"]), int(t["d"]))
        return cls(cs, var)


def _as_unipoly(v, var):
    if isinstance(v, UniPoly):
        return v
    return UniPoly([v], var)


def to_unipoly(poly: Poly) -> UniPoly:
    if len(poly.vars) != 1:
        raise ValueError(f"expected a univariate polynomial, got variables {poly.vars}")
    n = poly.degree() + 1
    cs = [Fraction(0)] * max(n, 0)
    for (i,), c in poly.items():
        cs[i] = c
    return UniPoly(cs, poly.vars[0])


def evaluate(poly, *point):
    """Evaluate a polynomial at a point.

    Rational points give an exact :class:`Fraction`.  If any coordinate is a
    float, all coordinates are converted to rationals exactly, the value is
    computed exactly and rounded once to float.
    """
    if isinstance(poly, UniPoly):
        if len(point) != 1:
            raise ValueError("univariate polynomial takes one argument")
        return poly(point[0])
    if len(point) != len(poly.vars):
        raise ValueError(f"expected {len(poly.vars)} coordinates, got {len(point)}")
    exact = all(_is_exact(v) for v in point)
    pt = [as_rational(v) for v in point]
    total = Fraction(0)
    for e, c in poly.items():
        term = c
        for v, i in zip(pt, e):
            if i:
                term *= v ** i
        total += term
    return total if exact else float(total)


def specialize(poly: Poly, t0: Scalar) -> UniPoly:
    """Substitute the first variable of a bivariate polynomial exactly."""
    if len(poly.vars) != 2:
        raise ValueError(f"specialize expects a bivariate polynomial, got {poly.vars}")
    return to_unipoly(poly.subs(poly.vars[0], t0))


def scaled_residual(up: UniPoly, x) -> float:
    """``|up(x)| / max |coefficient|`` with exact evaluation at ``x``."""
    return float(abs(up(as_rational(x))) / up.max_abs_coeff())


# -- the certificate polynomials ------------------------------------------------


@functools.lru_cache(maxsize=None)
def coeff_polys() -> dict[str, Poly]:
    """The seven building blocks E, F, C, B, D, G, H in (t, x)."""
    t = Poly.var("t")
    x = Poly.var("x")
    E = -2 * x + 4 * t
    F = (4 * t - 2) * x + t**4 - 4 * t**2
    C = (6 * t - 3) * x + t**4 - 2 * t**3 - 3 * t**2
    B = -(x**2) + 2 * x
    D = 4 * x**3 - (2 * t**2 + 6 * t + 7) * x**2 + (2 * t**3 + 3 * t**2 + 10 * t) * x - 2 * t**3
    G = 8 * x**3 + (-4 * t**2 - 16) * x**2 + (4 * t**3 - 2 * t**2 + 6) * x - 4 * t**3 + 8 * t**2 - 4 * t
    H = ((4 * t**2 - 16 * t) * x**3 + (-(t**4) + 4 * t**3 - 10 * t**2 + 40 * t) * x**2
         + (2 * t**4 - 8 * t**3 + 4 * t**2 - 20 * t + 2) * x + 4 * t**2)
    return {"E": E, "F": F, "C": C, "B": B, "D": D, "G": G, "H": H}


@functools.lru_cache(maxsize=None)
def build_p() -> Poly:
    """Degree-10 polynomial in x (coefficients in t) vanishing at the minimiser."""
    q = coeff_polys()
    E, F, C, B, D, G, H = (q[k] for k in "EFCBDGH")
    left = E * H + F * G - 2 * C * D
    right = C**2 * B + D**2 - E * B * G - F * H
    return B * left**2 - right**2


def leading_coefficient_p() -> Poly:
    """Coefficient of x^10 in p, as a polynomial in t."""
    p = build_p()
    return p.coefficients("x")[p.degree("x")]


@functools.lru_cache(maxsize=None)
def build_h() -> Poly:
    """Polynomial h(k, x, y) vanishing at y = z(k^2, x)^2 and degree 4 in y."""
    k = Poly.var("k", TRIVAR_VARS)
    x = Poly.var("x", TRIVAR_VARS)
    y = Poly.var("y", TRIVAR_VARS)
    c1 = k**2 - x
    c2 = k**4
    c3 = 2 * k - x
    c4 = 2 * x - x**2
    w = y - x**2 - c1**2 - c2 + c3**2 + c4
    first = w**2 + 4 * c3**2 * c4 - 4 * c1**2 * c2 + 4 * c1**2 * c3**2 + 4 * c1**2 * c4
    second = 8 * c1**2 * c3 + 4 * c3 * w
    return first**2 - c4 * second**2


# -- resultants -----------------------------------------------------------------


def _clear_denominators(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in cs], den


def bareiss_det(m: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(a: Sequence, b: Sequence) -> list[list]:
    """Sylvester matrix with ``a``'s rows first, coefficients in ascending order.

    ``a`` and ``b`` are coefficient lists, lowest degree first; their lengths
    fix the formal degrees.
    """
    m = len(a) - 1
    n = len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        row[i:i + m + 1] = a
        rows.append(row)
    for j in range(m):
        row = [0] * size
        row[j:j + n + 1] = b
        rows.append(row)
    return rows


def _resultant_coeffs(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    ai, da = _clear_denominators(a)
    bi, db = _clear_denominators(b)
    m, n = len(a) - 1, len(b) - 1
    det = bareiss_det(sylvester_matrix(ai, bi))
    return Fraction(det, da**n * db**m)


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Res(a, b) as the determinant of :func:`sylvester_matrix`.

    With ascending coefficient rows this equals ``lc(b)^m lc(a)^n prod(beta - alpha)``
    over roots alpha of a and beta of b, e.g. ``Res(x - u, x - v) = v - u``.
    """
    if a.is_zero() or b.is_zero():
        raise DegenerateInput("resultant of a zero polynomial")
    return _resultant_coeffs(a.coeffs, b.coeffs)


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction], var: str = "x") -> UniPoly:
    """Exact Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UniPoly([coef[-1]], var) if n else UniPoly([], var)
    for i in range(n - 2, -1, -1):
        out = out * UniPoly([-xs[i], 1], var) + coef[i]
    return out


def resultant_y(hk: Poly, q: UniPoly) -> UniPoly:
    """Res_y(hk(x, y), q(y)) as an exact polynomial in x.

    Computed by evaluating at integer x and interpolating; the degree in x is
    at most ``deg_y(q) * deg_x(hk)``.
    """
    if q.is_zero() or hk.is_zero():
        raise DegenerateInput("resultant of a zero polynomial")
    if hk.vars != ("x", "y"):
        raise ValueError(f"expected a polynomial in (x, y), got {hk.vars}")
    by_y = hk.coefficients("y")
    dy = max(by_y)
    ycoef = [to_unipoly(by_y[d]) if d in by_y else UniPoly([]) for d in range(dy + 1)]
    bound = q.degree * max(hk.degree("x"), 0)
    xs = [Fraction(i) for i in range(bound + 1)]
    ys = [_resultant_coeffs([c(x0) for c in ycoef], q.coeffs) for x0 in xs]
    return interpolate(xs, ys)


def resultant_chain_check(k0: Scalar, q_spec: UniPoly) -> Fraction:
    """g(k0) = Res_x(Res_y(h(k0, x, y), q_spec(y)), p(k0, x)).

    A nonzero value shows that ``q_spec`` cannot annihilate the squared minimal
    side at ``k0`` along the algebraic branch carried by p and h.
    """
    k0 = as_rational(k0)
    if k0 < 1:
        raise DomainError(f"k0 must be >= 1, got {k0}")
    if q_spec.is_zero():
        raise DegenerateInput("q_spec is the zero polynomial")
    f = chain_f(k0, q_spec)
    if f.is_zero():
        return Fraction(0)
    return resultant(f, specialize(build_p(), k0))


def chain_f(k0: Scalar, q_spec: UniPoly) -> UniPoly:
    """f(k0, x) = Res_y(h(k0, x, y), q_spec(y))."""
    hk = build_h().subs("k", as_rational(k0))
    return resultant_y(hk, q_spec)
