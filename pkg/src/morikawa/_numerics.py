"""Small bracketing routines used by the geometry and minimize modules."""

import math

from .errors import ConvergenceError

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect_root(f, lo, hi, rtol=1e-13, max_iter=400):
    """Root of ``f`` on ``[lo, hi]`` by plain bisection.

    ``f(lo)`` and ``f(hi)`` must have opposite signs (zero counts as either).
    Stops when the bracket is narrower than ``rtol * max(1, |lo|, |hi|)``.
    Returns the midpoint of the final bracket.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ConvergenceError(f"root not bracketed on [{lo!r}, {hi!r}]: f = {flo!r}, {fhi!r}")
    lo_positive = flo > 0.0
    for _ in range(max_iter):
        if hi - lo <= rtol * max(1.0, abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(f"bisection did not converge in {max_iter} steps")
    return 0.5 * (lo + hi)


def golden_section(f, a, b, tol=1e-12, max_iter=500):
    """Minimise a unimodal ``f`` on ``[a, b]``.

    Returns ``(x, f(x), iterations)``.
    """
    if b < a:
        a, b = b, a
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc = f(c)
    fd = f(d)
    it = 0
    while b - a > tol and it < max_iter:
        it += 1
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc, it
    return d, fd, it
