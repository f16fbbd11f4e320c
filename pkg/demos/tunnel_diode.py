"""A tunnel diode and its inverse as semimonotone operators.

The diode is piecewise linear with slopes 1/r1, -1/r2, 1/r1.  Its SRG is a
real interval, which places it in a (mu, rho)-semimonotone class; the
inverse swaps mu and rho.  The inverse is multivalued, yet its resolvent is
single valued once gamma > 1/r2.

    python demos/tunnel_diode.py
"""
import numpy as np

from srgc import (
    StepsizeTooSmall,
    TunnelDiode,
    TunnelDiodeInverse,
    falsify_membership,
    region_semimonotone,
    sample_srg,
    tunnel_params,
)

d = TunnelDiode(100.0, 900.0, 5.0)
inv = TunnelDiodeInverse(d)
p = tunnel_params(d)
print(f"{d!r}: ({p.mu}, {p.rho})-semimonotone")
print(f"inverse: ({inv.params.mu}, {inv.params.rho})-semimonotone")

# %% characteristic at a few voltages
for x in (-8.0, -5.0, 0.0, 5.0, 8.0):
    print(f"  T({x:+.1f} V) = {d(x) * 1e3 + 0.0:+8.3f} mA")

# %% sampled SRG: real, between the two slopes
cloud = sample_srg(d, 5000, seed=0)
pts = cloud.points
print(f"\nSRG samples: real part in [{pts.real.min():.6f}, {pts.real.max():.6f}], "
      f"max |imag| {np.abs(pts.imag).max():.1e}")
print(f"  region {region_semimonotone(p)}")
print(f"  violations: {len(falsify_membership(cloud, region_semimonotone(p)))}")

# %% currents in the negative-resistance band have three voltages
for i in (0.02, -0.001):
    print(f"preimages of {i * 1e3:+.1f} mA: {np.round(d.preimages(i), 4)}")

# %% resolvent of the inverse
gamma = 1 / 180
print(f"\nresolvent of gamma*T^-1 with gamma = 1/180:")
for w in (-0.05, 0.0, 0.031, 0.1):
    pv, x = inv.resolvent_branch(gamma, w)
    print(f"  w={w:+.3f}: p={pv:+.6f} A at branch voltage x={x:+.4f} V")
try:
    inv.resolvent(1 / 1000, 0.0)
except StepsizeTooSmall as exc:
    print(f"gamma = 1/1000 is rejected: {exc}")
