"""Log-concave hulls of discrete survival functions.

The hull B0 is the minimal function above B whose negative logarithm is
convex. For binomial survivals every knot lies on the hull, so B0 is just a
log-linear interpolation; a scaled sum of two Bernoulli variables shows the
opposite: one knot falls strictly inside the hull, and the raw survival is
not log-concave.
"""

import numpy as np

from tailbounds import (
    DiscreteDist,
    eval_hull,
    is_log_concave_discrete,
    linear_envelope_eval,
    iid_sum_survival,
    log_concave_hull,
    poisson_hull_eval,
    two_point_from_range,
)

print("=== a log-concave case: six fair half-coins ===")
S = iid_sum_survival(two_point_from_range(-0.5, 0.5), 6)
h = log_concave_hull(S)
print(f"source knots: {S.knots.size}, hull knots: {h.knots.size} (all retained)")
print(f"log-concave as a discrete survival: {is_log_concave_discrete(S)}")

print("\nbetween knots, geometric vs arithmetic interpolation:")
print("x        B(x)        hull B0(x)   envelope Bd(x)")
for x in np.linspace(-1.0, 2.0, 7):
    print(
        f"{x:+.2f}   {S.eval(x):.6f}    {eval_hull(h, x):.6f}     "
        f"{linear_envelope_eval(S, x):.6f}"
    )

print("\n=== a non-log-concave case: eps1 + 0.1 * eps2, P{eps=1} = 0.01 ===")
p, a = 0.01, 0.1
S2 = DiscreteDist.from_probs(
    [0.0, a, 1.0, 1.0 + a],
    [(1 - p) ** 2, (1 - p) * p, p * (1 - p), p * p],
).survival()
h2 = log_concave_hull(S2)
print(f"log-concave: {is_log_concave_discrete(S2)}")
print(f"source knots: {S2.knots.tolist()}")
print(f"hull knots:   {h2.knots.tolist()}  (the knot at {a} was dropped)")
print(f"at x = {a}: B = {S2.eval(a):.6f} but the hull must sit at "
      f"B0 = {eval_hull(h2, a):.6f} = p^a to stay log-concave")
print(f"the criterion: p^a = {p**a:.6f} > 2p - p^2 = {2*p - p*p:.6f}")

print("\n=== the Poisson hull is evaluated lazily, knot list never built ===")
for y in (0.0, 1.0, 1.5, 2.0, 7.25):
    print(f"lam=1, y={y:<5}: B0(y) = {poisson_hull_eval(1.0, y):.8f}")
