"""Brute-force and Monte Carlo verification of the bound machinery.

Every extremal claim behind the bounds gets a computational check at desk
scale: exact tail enumeration over small martingale trees, worst-case
searches against the theorem bounds, the n = 1 worst-constant search, Schur
and convex-domination property runs, convolution log-concavity, product-bound
optimality, the hull-necessity ratio, and the Poisson limit step. The single
most important property: no search, enumeration, or Monte Carlo run (within
its standard-error slack) may ever exceed an applicable bound.
"""

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    DiscreteDist,
    TwoPointDist,
    binomial_log_survival,
    convolve,
    iid_sum_dist,
    poisson_survival,
    two_point_from_range,
    two_point_from_variance,
    _logsumexp,
)
from .bounds import (
    MartingaleConditions,
    hoeffding_H,
    tail_bound_range,
    tail_bound_variance,
)

__all__ = [
    "VerificationError",
    "TreeNode",
    "MartingaleTree",
    "SearchReport",
    "iid_tree",
    "exact_tail",
    "exact_tail_many",
    "worst_case_search",
    "c1_search",
    "schur_check",
    "convex_domination_check",
    "convolution_log_concavity_check",
    "hoeffding_optimality_sequence",
    "hull_necessity_ratio",
    "poisson_limit_check",
    "monte_carlo_tail",
    "iid_grid_sampler",
    "random_centered_dist_in_range",
    "random_centered_dist_bounded",
    "ceil_safe",
]

_MAX_LEAVES = 1_000_000


class VerificationError(RuntimeError):
    """A claimed property failed a computational check."""


def ceil_safe(y, slack=1e-9):
    """Smallest integer >= y, forgiving float noise just above an integer."""
    return math.ceil(y - slack)


@dataclass(frozen=True, eq=False)
class TreeNode:
    """Conditional law of the next difference given the history at this node."""

    values: np.ndarray
    probs: np.ndarray
    children: tuple | None = None

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        if values.shape != probs.shape or values.ndim != 1 or values.size == 0:
            raise ValueError("values and probs must be matching nonempty 1-D arrays")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("probs must be nonnegative and sum to 1")
        scale = max(1.0, float(np.max(np.abs(values))))
        if abs(float(values @ probs)) > 1e-12 * scale:
            raise ValueError("conditional mean must vanish (martingale differences)")
        if self.children is not None and len(self.children) != values.size:
            raise ValueError("need one child per support point")

    @property
    def second_moment(self):
        return float((self.values**2) @ self.probs)


@dataclass(frozen=True, eq=False)
class MartingaleTree:
    """Depth-n tree of conditional difference laws, optionally condition-tagged."""

    root: TreeNode
    depth: int
    condition: MartingaleConditions | None = None

    def __post_init__(self):
        leaves = self._validate(self.root, 1, {})
        if leaves > _MAX_LEAVES:
            raise ValueError(f"tree has {leaves} leaves, over the {_MAX_LEAVES} limit")

    def _validate(self, node, level, seen):
        # iid trees share node objects; validate each (node, level) pair once
        key = (id(node), level)
        if key in seen:
            return seen[key]
        self._check_condition(node, level)
        if node.children is None:
            if level != self.depth:
                raise ValueError("all leaves must sit at the stated depth")
            count = node.values.size
        else:
            if level >= self.depth:
                raise ValueError("tree deeper than stated depth")
            count = sum(self._validate(child, level + 1, seen) for child in node.children)
        seen[key] = count
        return count

    def _check_condition(self, node, level):
        cond = self.condition
        if cond is None:
            return
        k = level - 1
        tol = 1e-12
        if cond.variant == "one_sided_variance":
            if np.any(node.values > cond.b * (1 + tol) + tol):
                raise ValueError(f"difference above b at depth {level}")
            if node.second_moment > cond.sigma2s[k] * (1 + tol) + tol:
                raise ValueError(f"conditional variance above cap at depth {level}")
        elif cond.variant == "range":
            p = cond.ps[k]
            if np.any(node.values < -p - tol) or np.any(node.values > 1 - p + tol):
                raise ValueError(f"difference outside [-p, 1-p] at depth {level}")
        elif cond.variant == "symmetric":
            if np.any(np.abs(node.values) > cond.bs[k] * (1 + tol) + tol):
                raise ValueError(f"|difference| above cap at depth {level}")


def iid_tree(d, n, condition=None):
    """Tree for a sum of n iid copies of a two-point or discrete law."""
    if isinstance(d, TwoPointDist):
        d = DiscreteDist.from_two_point(d)
    node = TreeNode(d.support, d.probs)
    for _ in range(n - 1):
        node = TreeNode(d.support, d.probs, children=(node,) * d.support.size)
    return MartingaleTree(root=node, depth=n, condition=condition)


def _paths(tree):
    """All leaf path sums with their log-probabilities."""
    sums = []
    logps = []
    with np.errstate(divide="ignore"):
        stack = [(tree.root, 0.0, 0.0)]
        while stack:
            node, acc, logp = stack.pop()
            logs = logp + np.log(node.probs)
            vals = acc + node.values
            if node.children is None:
                sums.append(vals)
                logps.append(logs)
            else:
                for child, v, lp in zip(node.children, vals, logs):
                    stack.append((child, v, lp))
    return np.concatenate(sums), np.concatenate(logps)


def exact_tail_many(tree, xs):
    """Exact P{M_n >= x} for each threshold, one path enumeration."""
    sums, logps = _paths(tree)
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    out = np.empty(xs.shape)
    for i, x in enumerate(xs):
        sel = logps[sums >= x]
        out[i] = math.exp(_logsumexp(sel)) if sel.size else 0.0
    return out


def exact_tail(tree, x):
    """Exact P{M_n >= x} by leaf-path enumeration in log space."""
    return float(exact_tail_many(tree, [x])[0])


# --- worst-case search ---------------------------------------------------------


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a worst-case tail search against a theorem bound."""

    best_tail: float
    bound_value: float
    params: dict
    evaluations: int

    @property
    def ratio(self):
        return self.best_tail / self.bound_value if self.bound_value > 0 else math.inf


def _range_node(p, su, sv):
    u = -p * su
    v = (1.0 - p) * sv
    q_hi = -u / (v - u)
    return np.array([u, v]), np.array([1.0 - q_hi, q_hi])


def _variance_node(sigma2, b, ss, sh):
    s2 = sigma2 * ss
    h = b * sh
    p_hi = s2 / (h * h + s2)
    return np.array([-s2 / h, h]), np.array([1.0 - p_hi, p_hi])


def _tree_tail_from_params(cond, params, x):
    """Tail of the two-point tree encoded by scale parameters in (0, 1]^2 per node.

    Node i at depth k uses params[2i], params[2i+1]; nodes are laid out
    breadth-first (1, 2, 4 per level for binary branching).
    """
    n = cond.n
    make = _range_node if cond.variant == "range" else _variance_node

    def build(level, index):
        k = level - 1
        i = (2**k - 1) + index
        if cond.variant == "range":
            vals, probs = make(cond.ps[k], params[2 * i], params[2 * i + 1])
        else:
            vals, probs = make(cond.sigma2s[k], cond.b, params[2 * i], params[2 * i + 1])
        if level == n:
            return vals, probs, None
        lo = build(level + 1, 2 * index)
        hi = build(level + 1, 2 * index + 1)
        return vals, probs, (lo, hi)

    def tail(node, acc):
        vals, probs, children = node
        total = 0.0
        for j in range(2):
            s = acc + vals[j]
            if children is None:
                if s >= x:
                    total += probs[j]
            else:
                total += probs[j] * tail(children[j], s)
        return total

    return tail(build(1, 0), 0.0)


def _params_to_tree(cond, params):
    n = cond.n

    def build(level, index):
        k = level - 1
        i = (2**k - 1) + index
        if cond.variant == "range":
            vals, probs = _range_node(cond.ps[k], params[2 * i], params[2 * i + 1])
        else:
            vals, probs = _variance_node(cond.sigma2s[k], cond.b, params[2 * i], params[2 * i + 1])
        if level == n:
            return TreeNode(vals, probs)
        return TreeNode(vals, probs, children=(build(level + 1, 2 * index), build(level + 1, 2 * index + 1)))

    return MartingaleTree(root=build(1, 0), depth=n, condition=cond)


def worst_case_search(cond, x, budget=6000, seed=0, restarts=6):
    """Maximize the exact tail over two-point-conditional trees of depth n <= 3.

    Conditional laws are restricted to two atoms (the n = 1 extremal laws are
    two-point; the restriction is kept explicit for n >= 2). Grid-seeded
    coordinate ascent with random restarts; the report never exceeds the
    applicable theorem bound.
    """
    if cond.variant not in ("range", "one_sided_variance"):
        raise ValueError("search supports the range and one_sided_variance conditions")
    n = cond.n
    if n > 3:
        raise ValueError("worst-case search is limited to n <= 3")
    n_nodes = 2**n - 1
    dim = 2 * n_nodes
    rng = np.random.default_rng(seed)
    evals = 0

    def objective(params):
        nonlocal evals
        evals += 1
        return _tree_tail_from_params(cond, params, x)

    # seeded starts: full-scale atoms, plus upper atoms placed so path sums
    # hit the threshold exactly (the n = 1 extremal laws have this shape)
    starts = [np.ones(dim)]
    for m in range(1, n + 1):
        params = np.ones(dim)
        for i in range(n_nodes):
            level = int(math.floor(math.log2(i + 1)))
            top = (1.0 - cond.ps[level]) if cond.variant == "range" else cond.b
            frac = x / m / top
            if 0.0 < frac <= 1.0:
                params[2 * i + 1] = frac
        starts.append(params)
    for _ in range(restarts):
        starts.append(rng.uniform(0.05, 1.0, dim))

    scan = np.linspace(1e-6, 1.0, 65)
    best_val = -1.0
    best_params = None
    for start in starts:
        params = np.clip(start, 1e-6, 1.0)
        current = objective(params)
        improved = True
        while improved and evals < budget:
            improved = False
            for d in range(dim):
                trial = params.copy()
                vals = []
                for v in scan:
                    trial[d] = v
                    vals.append(objective(trial))
                j = int(np.argmax(vals))
                if vals[j] > current + 1e-15:
                    params[d] = scan[j]
                    current = vals[j]
                    improved = True
                if evals >= budget:
                    break
        if current > best_val:
            best_val = current
            best_params = params.copy()

    if cond.variant == "range":
        bound = tail_bound_range(cond, x).value
    else:
        bound = tail_bound_variance(cond, x).value
    report = SearchReport(
        best_tail=best_val,
        bound_value=bound,
        params={"scales": best_params.tolist(), "x": x},
        evaluations=evals,
    )
    if report.ratio > 1.0 + 1e-9:
        raise VerificationError(
            f"search tail {best_val} exceeds bound {bound} (ratio {report.ratio})"
        )
    return report


# --- the n = 1 worst constant ---------------------------------------------------


def _c1_ratio(sigma2, x):
    """Exact n=1 tail sup over the hull of the single atom eps(sigma2, 1)."""
    neg_log_hull = (x + sigma2) / (1.0 + sigma2) * np.log((1.0 + sigma2) / sigma2)
    return sigma2 / (x * x + sigma2) * np.exp(neg_log_hull)


def c1_search(sigma2_lo=1e-4, sigma2_hi=1e4, grid_shape=(400, 400), refine_rounds=60):
    """Supremum of the n = 1 ratio: extremal tail over bound-hull value.

    The ratio sigma^2/(x^2 + sigma^2) / B0(x) is scanned over a log grid in
    sigma^2 and x in (0, 1], then polished by alternating golden-section
    ascent. The ratio tends to 1 at both sigma^2 extremes, so the supremum is
    interior and the domain truncation is safe.
    """
    ls = np.linspace(math.log(sigma2_lo), math.log(sigma2_hi), grid_shape[0])
    xs = np.linspace(1e-6, 1.0, grid_shape[1])
    ratios = _c1_ratio(np.exp(ls)[:, None], xs[None, :])
    i, j = np.unravel_index(np.argmax(ratios), ratios.shape)
    s2 = math.exp(ls[i])
    x = xs[j]
    best = float(ratios[i, j])

    phi = (math.sqrt(5.0) - 1.0) / 2.0

    def line_max(f, lo, hi):
        a, b = lo, hi
        for _ in range(refine_rounds):
            c = b - phi * (b - a)
            d = a + phi * (b - a)
            if f(c) > f(d):
                b = d
            else:
                a = c
        m = 0.5 * (a + b)
        return m, f(m)

    ds = ls[1] - ls[0]
    dx = xs[1] - xs[0]
    for _ in range(8):
        l0 = math.log(s2)
        l_new, _ = line_max(lambda t: _c1_ratio(math.exp(t), x), l0 - ds, l0 + ds)
        s2 = math.exp(l_new)
        x_new, val = line_max(
            lambda t: _c1_ratio(s2, t), max(x - dx, 1e-9), min(x + dx, 1.0)
        )
        x = x_new
        best = max(best, val)
    return best


# --- majorization and convex domination ----------------------------------------


def _theta_dist(x_k):
    """The atom theta(x_k, 1): {-x_k, 1} with P{1} = x_k/(1 + x_k); x_k = 0 degenerates."""
    if x_k == 0.0:
        return DiscreteDist.point_mass(0.0)
    return DiscreteDist.from_two_point(two_point_from_variance(x_k, 1.0))


def schur_check(xs, t, slack=1e-10):
    """Spreading the per-step variances can only lower E(sum - t)_+^2.

    Builds the non-iid sum T_n of atoms theta(x_k, 1), the iid sum S_n at the
    mean parameter, and compares the exact expectations. Equality holds when
    all x_k agree.
    """
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size > 8:
        raise ValueError("limited to n <= 8 (exact enumeration)")
    if np.any(xs < 0.0):
        raise ValueError("parameters must be nonnegative")
    T = _theta_dist(xs[0])
    for x_k in xs[1:]:
        T = convolve(T, _theta_dist(x_k))
    a = float(np.mean(xs))
    if a == 0.0:
        S = DiscreteDist.point_mass(0.0)
    else:
        S = iid_sum_dist(two_point_from_variance(a, 1.0), xs.size)

    def e_plus_sq(d):
        return float(d.probs @ np.clip(d.support - t, 0.0, None) ** 2)

    return e_plus_sq(T) <= e_plus_sq(S) + slack


def _plus_power_expectations(d, ts, s):
    diffs = np.clip(d.support[None, :] - np.asarray(ts)[:, None], 0.0, None)
    return diffs**s @ d.probs


def convex_domination_check(family, X, params, slack=1e-10):
    """Domination of E f(X) by the matching extremal two-point atom.

    family ``"convex"``: X centered on [a, b], comparison xi(a, b), tested on
    the hinge functions (z - t)_+ over a t grid. family ``"moment"``: X <= b
    with E X^2 <= sigma2, comparison theta(sigma2, b). family ``"symmetric"``:
    same conditions, symmetric comparison theta(a^2, a) with a = max{sigma, b}.
    The moment families are tested on (z - t)_+^s for s in {2, 2.5, 3} and on
    exp(h z). Precondition violations raise; the check returns whether every
    test function is dominated.
    """
    scale = max(1.0, float(np.max(np.abs(X.support))))
    if abs(X.mean) > 1e-12 * scale:
        raise ValueError("X must be centered")
    if family == "convex":
        a, b = params["a"], params["b"]
        if not (a < 0.0 < b):
            raise ValueError("need a < 0 < b")
        if np.any(X.support < a - 1e-12) or np.any(X.support > b + 1e-12):
            raise ValueError("support must lie inside [a, b]")
        atom = DiscreteDist.from_two_point(two_point_from_range(a, b))
        width = b - a
        ts = np.linspace(a - 0.5 * width, b + 0.25 * width, 41)
        return bool(
            np.all(
                _plus_power_expectations(X, ts, 1.0)
                <= _plus_power_expectations(atom, ts, 1.0) + slack
            )
        )
    if family in ("moment", "symmetric"):
        sigma2, b = params["sigma2"], params["b"]
        if not (sigma2 > 0.0 and b > 0.0):
            raise ValueError("need sigma2 > 0 and b > 0")
        if np.any(X.support > b + 1e-12):
            raise ValueError("support must lie below b")
        if float(X.probs @ X.support**2) > sigma2 * (1 + 1e-12) + 1e-15:
            raise ValueError("second moment above sigma2")
        if family == "moment":
            atom = DiscreteDist.from_two_point(two_point_from_variance(sigma2, b))
        else:
            a_star = max(math.sqrt(sigma2), b)
            atom = DiscreteDist.from_two_point(two_point_from_variance(a_star * a_star, a_star))
        lo = min(float(X.support[0]), float(atom.support[0]))
        hi = max(float(X.support[-1]), float(atom.support[-1]))
        width = max(hi - lo, 1e-6)
        ts = np.linspace(lo - 0.5 * width, hi + 0.25 * width, 21)
        for s in (2.0, 2.5, 3.0):
            if np.any(
                _plus_power_expectations(X, ts, s)
                > _plus_power_expectations(atom, ts, s) + slack
            ):
                return False
        for h in (0.1, 0.5, 1.0, 2.0, 4.0):
            if float(X.probs @ np.exp(h * X.support)) > float(
                atom.probs @ np.exp(h * atom.support)
            ) * (1 + 1e-12) + slack:
                return False
        return True
    raise ValueError(f"unknown family {family!r}")


# --- log-concavity of convolutions ----------------------------------------------


def _is_log_concave_seq(p, rel_tol=1e-12):
    p = np.asarray(p, dtype=np.float64)
    pos = np.nonzero(p > 0)[0]
    if pos.size == 0:
        return False
    if np.any(p[pos[0] : pos[-1] + 1] <= 0):
        return False  # interior zero breaks log-concavity
    q = p[pos[0] : pos[-1] + 1]
    return bool(np.all(q[1:-1] ** 2 >= q[:-2] * q[2:] * (1 - rel_tol)))


def convolution_log_concavity_check(p, q, rel_tol=1e-12):
    """Convolving log-concave integer sequences preserves log-concavity.

    Both inputs must already be log-concave (that is the lemma's hypothesis);
    the check passes when the convolution and the suffix-sum sequences are
    log-concave within the relative tolerance.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("sequences must be nonnegative")
    if not (_is_log_concave_seq(p, rel_tol) and _is_log_concave_seq(q, rel_tol)):
        raise ValueError("inputs must be log-concave sequences")
    conv = np.convolve(p, q)
    tails = np.cumsum(conv[::-1])[::-1]
    tails_p = np.cumsum(p[::-1])[::-1]
    return (
        _is_log_concave_seq(conv, rel_tol)
        and _is_log_concave_seq(tails, rel_tol)
        and _is_log_concave_seq(tails_p, rel_tol)
    )


# --- optimality of the product bound ---------------------------------------------


def hoeffding_optimality_sequence(p, z, n_list):
    """Normalized log binomial tails against the product-bound exponent.

    Returns ``(g, -f)`` with ``g[i] = (1/n_i) log P{Bin(n_i, p) >= z n_i}``
    and f the large-deviation rate. Checks that every g stays below -f, that
    the gap |g + f| shrinks along n_list (to under 1e-2 once n reaches 1e5),
    and that exp(-f) reproduces the Hoeffding kernel H(z; p) to 1e-12.
    """
    if not 0.0 < p < z < 1.0:
        raise ValueError(f"need 0 < p < z < 1, got p={p}, z={z}")
    f = z * math.log(z / p) + (1.0 - z) * math.log((1.0 - z) / (1.0 - p))
    if abs(math.exp(-f) - hoeffding_H(z, p)) > 1e-12 * hoeffding_H(z, p):
        raise VerificationError("rate function does not reproduce the product kernel")
    gs = []
    for n in n_list:
        n = int(n)
        k = ceil_safe(z * n)
        gs.append(binomial_log_survival(n, p, k) / n)
    gs = np.array(gs)
    if np.any(gs > -f + 1e-12):
        raise VerificationError("a finite-n tail exceeded the product bound")
    gaps = np.abs(gs + f)
    if np.any(np.diff(gaps) >= 0):
        raise VerificationError("tail gaps are not decreasing along n_list")
    if max(n_list) >= 10**5 and gaps[int(np.argmax(n_list))] >= 1e-2:
        raise VerificationError(f"gap at n={max(n_list)} is {gaps[-1]}, expected < 1e-2")
    return gs, -f


def hull_necessity_ratio(sigma2):
    """Ratio P{X >= 0} / P{eps >= 0} for X = 0 against eps(sigma2, 1).

    Equals (1 + sigma2)/sigma2 and blows up as sigma2 -> 0: the raw survival
    cannot replace its hull in the bounds.
    """
    if not sigma2 > 0.0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    return (1.0 + sigma2) / sigma2


# --- the Poisson limit step -------------------------------------------------------


def poisson_limit_check(n, sigma2_total, b, m_list, x):
    """Gap between padded-sum binomial tails and their Poisson limit.

    Padding the martingale with m zero differences turns the comparison sum
    into a Binomial(n+m, lambda/(n+m+lambda)) tail at the transformed
    threshold (lambda + x/b)/(1 + lambda/(n+m)); as m grows this converges to
    the Poisson(lambda) tail at lambda + x/b. Returns the gaps and checks
    they decrease, ending below 5e-3 once m reaches 1e4.
    """
    lam = sigma2_total / (b * b)
    target = poisson_survival(lam, ceil_safe(lam + x / b))
    gaps = []
    for m in m_list:
        total = int(n) + int(m)
        p = lam / (total + lam)
        tau = (lam + x / b) / (1.0 + lam / total)
        value = math.exp(binomial_log_survival(total, p, ceil_safe(tau)))
        gaps.append(abs(value - target))
    gaps = np.array(gaps)
    if np.any(np.diff(gaps) >= 0):
        raise VerificationError(f"gaps {gaps.tolist()} are not decreasing")
    if max(m_list) >= 10**4 and gaps[int(np.argmax(m_list))] >= 5e-3:
        raise VerificationError(f"final gap {gaps[-1]} is not below 5e-3")
    return gaps


# --- Monte Carlo ------------------------------------------------------------------


def monte_carlo_tail(sampler, trials, x, seed, chunk=100_000):
    """Empirical P{M_n >= x} with its binomial standard error.

    ``sampler(rng, size)`` must return ``size`` independent martingale sums;
    the run is deterministic given the seed.
    """
    trials = int(trials)
    if trials < 10**4:
        raise ValueError("need at least 1e4 trials")
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        sums = sampler(rng, size)
        hits += int(np.count_nonzero(sums >= x))
        done += size
    p_hat = hits / trials
    se = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return p_hat, se


def iid_grid_sampler(values, n, probs=None):
    """Sampler of sums of n iid draws from a finite grid (uniform by default)."""
    values = np.asarray(values, dtype=np.float64)
    n = int(n)

    def sampler(rng, size):
        if probs is None:
            idx = rng.integers(0, values.size, size=(size, n))
        else:
            idx = rng.choice(values.size, size=(size, n), p=probs)
        return values[idx].sum(axis=1)

    return sampler


# --- random instance generators ----------------------------------------------------


def _random_simplex_points(rng, lo, hi, max_points):
    k = int(rng.integers(2, max_points + 1))
    pts = np.sort(rng.uniform(lo, hi, k))
    # keep points apart so the support stays valid after centering
    keep = np.concatenate(([True], np.diff(pts) > 1e-6 * max(1.0, abs(lo), abs(hi))))
    pts = pts[keep]
    probs = rng.dirichlet(np.ones(pts.size))
    return pts, probs


def random_centered_dist_in_range(rng, a, b, max_points=7):
    """Random mean-zero law supported inside [a, b] (a < 0 < b).

    Points and flat-simplex probabilities are drawn, the mean is shifted out,
    and the support is shrunk back into the box, so the precondition holds
    exactly.
    """
    pts, probs = _random_simplex_points(rng, a, b, max_points)
    shifted = pts - float(probs @ pts)
    c = 1.0
    if shifted[-1] > 0:
        c = min(c, b / shifted[-1])
    if shifted[0] < 0:
        c = min(c, a / shifted[0])
    return DiscreteDist.from_probs(shifted * c, probs)


def random_centered_dist_bounded(rng, sigma2, b, max_points=7):
    """Random mean-zero law with support below b and second moment below sigma2."""
    pts, probs = _random_simplex_points(rng, -3.0 * b, b, max_points)
    shifted = pts - float(probs @ pts)
    c = 1.0
    if shifted[-1] > 0:
        c = min(c, b / shifted[-1])
    second = float(probs @ shifted**2)
    if second > 0:
        c = min(c, math.sqrt(sigma2 / second))
    return DiscreteDist.from_probs(shifted * c, probs)
