"""The three circuit experiments as quasi-static sweeps.

1. leaky-ppa: invert the leaky transistor for a rotating target current.
2. amplifier: common-emitter amplifier with linear resistors.
3. tunnel-amplifier: the collector resistor replaced by an inverse tunnel
   diode, driven across its negative-resistance band.

Each sweep is run cold and warm started.  Pass a directory to also write
the sweep CSVs.

    python demos/quasi_static_sweeps.py [outdir]
"""
import pathlib
import sys
import time
from dataclasses import replace

import numpy as np

from srgc.config import default_config
from srgc.experiments import EXPERIMENTS, run_experiment

outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else None
if outdir is not None:
    outdir.mkdir(parents=True, exist_ok=True)

for experiment in EXPERIMENTS:
    cfg = default_config(experiment)
    print(f"== {experiment} ({cfg.solver.method}, gamma={cfg.solver.gamma:.6g})")
    for warm in (False, True):
        c = replace(cfg, solver=replace(cfg.solver, warm_start=warm))
        t0 = time.perf_counter()
        res = run_experiment(c, experiment)
        dt = time.perf_counter() - t0
        it = res.iterations
        print(f"  {'warm' if warm else 'cold'}: {it.size} samples, all converged: {res.all_converged}, "
              f"iterations median {np.median(it):g} max {it.max()} total {it.sum()} ({dt:.2f} s)")
    for name in res.columns():
        vals = res.observables[name]
        print(f"    {name:>8}: [{vals.min():+.5g}, {vals.max():+.5g}]")
    if experiment == "tunnel-amplifier":
        x = res.observables["v_tunnel"]
        vbar = cfg.tunnel.vbar
        neg = np.abs(x) < vbar
        print(f"    negative-resistance band visited at {neg.mean():.0%} of the samples")
    if outdir is not None:
        path = outdir / f"{experiment}.csv"
        res.to_csv(path)
        print(f"    wrote {path}")
