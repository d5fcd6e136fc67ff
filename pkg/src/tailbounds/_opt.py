"""One-dimensional minimization helpers: coarse grid scan plus golden-section polish.

All searches here are deterministic. Objectives are assumed continuous; the
grid stage guards against local minima, the golden stage sharpens the best
bracket.
"""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_min(f, lo, hi, rel_tol=1e-12, max_iter=200):
    """Golden-section minimum of ``f`` on [lo, hi].

    Returns ``(x, f(x))``. Requires lo <= hi; the bracket is shrunk until its
    width drops below ``rel_tol * max(1, |lo|, |hi|)``.
    """
    if hi < lo:
        lo, hi = hi, lo
    a, b = lo, hi
    h = b - a
    tol = rel_tol * max(1.0, abs(lo), abs(hi))
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd


def grid_then_golden(f, grid, values=None, rel_tol=1e-12):
    """Minimize ``f`` over the bracket around the best point of ``grid``.

    ``values`` may carry precomputed ``f(grid)``; otherwise f is evaluated
    pointwise. The golden polish runs on [grid[i-1], grid[i+1]] around the
    grid argmin i. Returns ``(x, fx)``.
    """
    n = len(grid)
    if n == 0:
        raise ValueError("empty grid")
    if values is None:
        values = [f(g) for g in grid]
    best = min(range(n), key=lambda i: values[i])
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, n - 1)]
    x, fx = golden_min(f, lo, hi, rel_tol=rel_tol)
    if values[best] < fx:
        return grid[best], values[best]
    return x, fx
