"""Scaled relative graph of the Ebers-Moll transistor.

Samples the SRG of the NPN transistor, compares the widest sampled angle
with the analytic bound pi/2 + atan(alpha_r), and shows the two
semimonotone certificates that follow from the angle bound.

    python demos/transistor_srg.py [n_pairs]
"""
import math
import sys

import numpy as np

from srgc import (
    AngleBound,
    EbersMollTransistor,
    LeakyTransistor,
    angle_to_semimonotone,
    comonotone_from_angle,
    falsify_membership,
    region_angle_bounded,
    region_semimonotone,
    sample_srg,
    srg_of_pairs,
    transistor_semimonotone,
)

n_pairs = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000

npn = EbersMollTransistor(110 / 111, 10 / 11)
theta = npn.angle.theta
print(f"transistor {npn!r}")
print(f"analytic angle bound: {theta:.10f} rad = {math.degrees(theta):.4f} deg (3pi/4 = 135 deg)")

# %% random pairs from the graph: every point must lie in the cone
cloud = sample_srg(npn, n_pairs, seed=0)
print(f"\nsampled {n_pairs} pairs -> {cloud.points.size} SRG points")
print(f"  widest sampled angle: {cloud.max_angle():.10f} rad")
print(f"  points outside the cone: {len(falsify_membership(cloud, region_angle_bounded(theta)))}")
mods = np.abs(cloud.points)
print(f"  modulus quantiles (5/50/95%): {np.percentile(mods, [5, 50, 95]).round(4)}")

# %% the bound is attained: voltage step on one port, current step on the other
x, u, y, v = npn.tight_pairs(np.random.default_rng(1), 200)
tight = srg_of_pairs(x, u, y, v)
print(f"\ntight pairs reach {tight.max_angle():.10f} rad (gap {theta - tight.max_angle():.1e})")

# %% angle bound -> semimonotone classes
print("\nangle <= 3pi/4 gives (1/(8 rho), rho)-semimonotone for every rho < 0:")
for rho in (-0.01, -0.5, -10.0):
    p = transistor_semimonotone(rho)
    ok = angle_to_semimonotone(AngleBound(3 * math.pi / 4), 0.0, p)
    inside = region_semimonotone(p).contains_array(cloud.points, tol=1e-9).all()
    print(f"  rho={rho:>6}: mu={p.mu:.4g}  certificate {'holds' if ok else 'fails'}, "
          f"sampled cloud {'inside' if inside else 'OUTSIDE'} the region")

# %% leakage makes the element comonotone
for r in (10.0, 100.0):
    lt = LeakyTransistor(npn, r)
    p = comonotone_from_angle(AngleBound(3 * math.pi / 4), 1 / r)
    bad = falsify_membership(sample_srg(lt, n_pairs // 4, seed=2), region_semimonotone(lt.params))
    print(f"\nleakage r={r:g}: comonotone with rho={p.rho:.6g} (r(1 - sqrt2)/2), "
          f"{len(bad)} sampled violations")
