"""Log-concave hulls and linear envelopes of discrete survival functions.

The hull of a step survival B is the minimal function B0 >= B whose negative
logarithm is convex. On the knots this is the lower convex hull of the points
(x_i, -log B(x_i)), which a single monotone-chain sweep produces in O(m);
between knots it is the log-linear interpolation, 1 left of the first knot and
0 strictly right of the last.
"""

import math
from dataclasses import dataclass

import numpy as np

from .distributions import poisson_log_survival

__all__ = [
    "LogLinearHull",
    "log_concave_hull",
    "eval_hull",
    "log_eval_hull",
    "linear_envelope_eval",
    "is_log_concave_discrete",
    "poisson_hull_eval",
    "poisson_hull_log_eval",
]

# Absolute slack on -log values for convexity comparisons; collinear knots are
# kept on the hull (evaluation is identical either way).
_CONVEXITY_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class LogLinearHull:
    """Convex knot sequence ``(knots, neg_log)`` with ``neg_log = -log B0``."""

    knots: np.ndarray
    neg_log: np.ndarray

    def __post_init__(self):
        knots = np.ascontiguousarray(self.knots, dtype=np.float64)
        neg_log = np.ascontiguousarray(self.neg_log, dtype=np.float64)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "neg_log", neg_log)
        if knots.ndim != 1 or knots.shape != neg_log.shape or knots.size == 0:
            raise ValueError("knots and neg_log must be matching nonempty 1-D arrays")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("hull knots must be strictly increasing")
        if neg_log[0] != 0.0:
            raise ValueError("hull must start where the survival equals 1")
        if not np.all(np.isfinite(neg_log)):
            raise ValueError("hull values must be finite")
        if knots.size > 2:
            slopes = np.diff(neg_log) / np.diff(knots)
            if np.any(np.diff(slopes) < -_CONVEXITY_SLACK):
                raise ValueError("hull slopes must be nondecreasing")

    @property
    def values(self):
        return np.exp(-self.neg_log)


def log_concave_hull(S):
    """Lower convex hull of ``(knot, -log B(knot))`` by a monotone-chain sweep.

    The point set is already sorted by x, so one pass suffices: a point is
    popped while it sits above the chord of its neighbours by more than the
    convexity slack.
    """
    xs = S.knots
    ys = -S.log_values
    keep_x = [xs[0]]
    keep_y = [ys[0]]
    for x, y in zip(xs[1:], ys[1:]):
        while len(keep_x) >= 2:
            ox, oy = keep_x[-2], keep_y[-2]
            ax, ay = keep_x[-1], keep_y[-1]
            cross = (ax - ox) * (y - oy) - (ay - oy) * (x - ox)
            # cross = -(distance of the middle point above chord) * (x - ox)
            if cross < -_CONVEXITY_SLACK * (x - ox):
                keep_x.pop()
                keep_y.pop()
            else:
                break
        keep_x.append(x)
        keep_y.append(y)
    return LogLinearHull(np.array(keep_x), np.array(keep_y))


def log_eval_hull(h, x):
    """log B0(x): 0 left of the first knot, -inf strictly right of the last."""
    x = np.asarray(x, dtype=np.float64)
    y = np.interp(x, h.knots, h.neg_log)
    out = np.where(x > h.knots[-1], np.inf, y)
    out = np.where(x < h.knots[0], 0.0, out)
    if x.ndim == 0:
        return -float(out)
    return -out


def eval_hull(h, x):
    """B0(x) = exp of the piecewise-linear interpolation of -log B0."""
    logv = log_eval_hull(h, x)
    if np.ndim(logv) == 0:
        return math.exp(logv) if logv != -math.inf else 0.0
    with np.errstate(over="ignore"):
        return np.exp(logv)


def linear_envelope_eval(S, x):
    """Straight-line interpolation of B between adjacent jump points.

    Equals B at the knots, 1 left of the first knot, 0 strictly right of the
    last. Always >= the log-linear hull.
    """
    x = np.asarray(x, dtype=np.float64)
    vals = S.values
    out = np.interp(x, S.knots, vals)
    out = np.where(x > S.knots[-1], 0.0, out)
    out = np.where(x < S.knots[0], 1.0, out)
    if x.ndim == 0:
        return float(out)
    return out


def is_log_concave_discrete(S, slack=1e-12):
    """Whether every knot of ``S`` lies on its own lower convex hull.

    This is discrete log-concavity: -log B restricted to the jump points is
    convex (equivalently B(x_i)^2 >= B(x_{i-1}) B(x_{i+1}) on equally spaced
    knots).
    """
    h = log_concave_hull(S)
    hull_y = np.interp(S.knots, h.knots, h.neg_log)
    return bool(np.all((-S.log_values) - hull_y <= slack))


def poisson_hull_log_eval(lam, y):
    """log of the Poisson(lam) hull survival at a real point ``y``.

    The discrete Poisson survival is log-concave, so the hull is the
    log-linear interpolation between consecutive integers; it never vanishes
    (infinite support). Returns 0 for y <= 0.
    """
    if y <= 0.0:
        return 0.0
    k0 = math.floor(y)
    if y == k0:
        return poisson_log_survival(lam, int(k0))
    t = y - k0
    lo = poisson_log_survival(lam, int(k0))
    hi = poisson_log_survival(lam, int(k0) + 1)
    return (1.0 - t) * lo + t * hi


def poisson_hull_eval(lam, y):
    """Poisson(lam) hull survival at ``y``; evaluated lazily per query."""
    return math.exp(poisson_hull_log_eval(lam, y))
