"""Centered two-point atoms and their exact sums.

Every bound in this library compares a martingale against a sum of iid
two-point atoms. This script builds the atoms, sums them exactly in log
space, and checks the reference Poisson and Gaussian tails.
"""

from tailbounds import (
    gaussian_survival,
    iid_sum_survival,
    poisson_log_survival,
    poisson_survival,
    two_point_from_range,
    two_point_from_variance,
)

print("=== atoms from a variance budget ===")
for sigma2, b in ((1.0, 1.0), (0.25, 1.0), (0.21, 0.7)):
    d = two_point_from_variance(sigma2, b)
    print(
        f"sigma2={sigma2:<5} b={b}: atoms {{{d.v_lo:+.4f}, {d.v_hi:+.4f}}}, "
        f"P{{upper}}={d.p_hi:.4f}, mean={d.mean:+.1e}, var={d.variance:.4f}"
    )

print("\n=== atoms from a support range ===")
for a, b in ((-1.0, 1.0), (-0.3, 0.7)):
    d = two_point_from_range(a, b)
    print(f"[{a}, {b}]: P{{upper}}={d.p_hi:.4f}, variance={d.variance:.4f} (= -a*b)")

print("\n=== the survival staircase of an iid sum ===")
S = iid_sum_survival(two_point_from_range(-0.5, 0.5), 6)
print("knot      P{S >= knot}")
for x, v in zip(S.knots, S.values):
    print(f"{x:+.2f}     {v:.10f}")

print("\nthe same tail, twenty fair coins deep:")
S20 = iid_sum_survival(two_point_from_range(-1.0, 1.0), 20)
print(f"P{{S20 >= 20}} = {S20.eval(20.0):.6e}  (2^-20 = {2.0**-20:.6e})")

print("\n=== reference tails ===")
print(f"Poisson(1):  P{{eta >= 2}} = {poisson_survival(1.0, 2):.10f}  (1 - 2/e)")
print(f"Poisson(5):  P{{eta >= 5}} = {poisson_survival(5.0, 5):.10f}")
print(f"Gaussian:    P{{Z >= 1}}   = {gaussian_survival(1.0):.10f}")
print(f"deep tail stays finite in log space: log P{{eta(1) >= 200}} = "
      f"{poisson_log_survival(1.0, 200):.2f}")
