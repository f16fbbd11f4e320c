"""Admissible stepsizes for the three shipped configurations.

Prints the proximal-point floor, the monotone Chambolle-Pock window and the
semimonotone window, then checks each shipped configuration against the
window that applies to it.

    python demos/stepsize_windows.py
"""
import numpy as np

from srgc import cpa_window_monotone, cpa_window_semi, ppa_stepsize_floor
from srgc.config import DEFAULT_CONFIGS, default_config
from srgc.experiments import check_stepsizes

for r in (10.0, 100.0):
    print(f"proximal point on the leaky transistor, r={r:g}: gamma > {ppa_stepsize_floor(r):.6f}")

mono = cpa_window_monotone(30.0, 100.0)
print(f"\nmonotone resistors, sigma=30, r=100: tau > {mono.tau_floor:.5f}")
for tau in (100.0, 300.0, 700.0, 2000.0):
    print(f"  tau={tau:>6g}: gamma < {1 / tau:.6f}, lambda < {mono.lambda_ceiling(tau):.4f}")

semi = cpa_window_semi(100.0)
lo, hi = semi.gamma_interval
print(f"\nsemimonotone resistors, r=100: gamma in ({lo:.7f}, {hi:.7f})")
for g in np.linspace(lo, hi, 6)[1:-1]:
    t_lo, t_hi = semi.tau_interval(g)
    tau = 0.5 * (t_lo + t_hi)
    print(f"  gamma={g:.5f}: tau in ({t_lo:.2f}, {t_hi:.2f}), at tau={tau:.1f} lambda < "
          f"{semi.lambda_ceiling(g, tau):.4f}")

for experiment, name in DEFAULT_CONFIGS.items():
    rep = check_stepsizes(default_config(experiment))
    print(f"\n{name} ({experiment}): {rep.window} -> {'PASS' if rep.passed else 'FAIL'}")
    for line in rep.lines:
        print(f"  {line}")
