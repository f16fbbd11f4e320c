"""``srgc`` command-line front end.

Exit codes: 0 success, 1 solver failure or FAIL verdict, 2 config error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .config import dump_config, default_config, load_config
from .errors import ConfigError, DomainError
from .circuits import solve_problem
from .experiments import (
    ELEMENT_NAMES,
    EXPERIMENTS,
    build_element,
    check_stepsizes,
    problem_family,
    run_experiment,
    solver_config,
)
from .srg import falsify_membership, region_angle_bounded, region_semimonotone, sample_srg

__all__ = ["main", "cmd_srg_sample", "cmd_check_stepsizes", "cmd_solve"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


def _load(path, fallback: str | None):
    return default_config(fallback) if path is None else load_config(path)


def _emit(cfg, out) -> int:
    text = dump_config(cfg)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_srg_sample(config, element: str, n: int = 10_000, seed: int = 0, out=None) -> int:
    """Sample the SRG of ``element`` and report it against the declared classes."""
    cfg = _load(config, None)
    el = build_element(cfg, element)
    if n < 1:
        raise ConfigError("--n must be at least 1")
    cloud = sample_srg(el, n, seed)
    if out is not None:
        cloud.to_csv(out)
    finite = cloud.points[np.isfinite(cloud.points)]
    print(f"element: {el!r}")
    print(f"pairs: {n}  points: {cloud.points.size}  includes_infinity: {str(cloud.includes_infinity).lower()}")
    ang = cloud.max_angle()
    print(f"max angle: {ang:.10f} rad ({math.degrees(ang):.6f} deg)")
    mod = float(np.abs(finite).max()) if finite.size else 0.0
    print(f"max finite modulus: {mod:.10g}")
    if finite.size:
        print(f"real part range: [{finite.real.min():.10g}, {finite.real.max():.10g}]  "
              f"max |imag|: {np.abs(finite.imag).max():.3g}")
    verdict = EXIT_OK
    checks = []
    if el.params is not None:
        checks.append((f"({el.params.mu:.6g}, {el.params.rho:.6g})-semimonotone [{el.params.provenance}]",
                       region_semimonotone(el.params)))
    if el.angle is not None:
        checks.append((f"angle bound {el.angle.theta:.10f} rad ({el.angle.degrees:.6f} deg) [{el.angle.provenance}]",
                       region_angle_bounded(el.angle.theta)))
    for label, region in checks:
        bad = falsify_membership(cloud, region)
        print(f"declared {label}: {len(bad)} violating points")
        if bad:
            verdict = EXIT_FAIL
    return verdict


def cmd_check_stepsizes(config) -> int:
    cfg = _load(config, "amplifier")
    rep = check_stepsizes(cfg)
    print(f"window: {rep.window}")
    for line in rep.lines:
        print(f"  {line}")
    print("PASS" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_solve(config, experiment: str, out=None, n=None, trace=None, dump_iterates=False) -> int:
    cfg = _load(config, experiment)
    res = run_experiment(cfg, experiment, n)
    if out is not None:
        res.to_csv(out)
    it = res.iterations
    n_ok = sum(1 for s in res.status if s.value == "Converged")
    print(f"experiment: {experiment}  samples: {it.size}  converged: {n_ok}/{it.size}")
    print(f"iterations: total {int(it.sum())}  median {float(np.median(it)):g}  max {int(it.max())}")
    for name in res.columns():
        vals = res.observables[name]
        print(f"  {name}: [{vals.min():.6g}, {vals.max():.6g}]")
    if trace is not None:
        worst = int(np.argmax(it))
        trc = res.traces[worst]
        if dump_iterates:
            # re-solve the slowest sample with the same start, keeping iterates
            x0 = res.solutions[worst - 1] if cfg.solver.warm_start and worst > 0 else None
            if x0 is not None and not res.traces[worst - 1].converged:
                x0 = None
            problem = problem_family(cfg, experiment)(float(res.t[worst]))
            trc = solve_problem(problem, solver_config(cfg), x0=x0, keep_history=True)
        trc.to_csv(trace, dump_iterates=dump_iterates)
        print(f"trace of sample t={res.t[worst]:.6g} ({trc.iterations} iterations) written to {trace}")
    fail = res.first_failure()
    if fail is not None:
        print(f"solver failure: first failing sample t={fail[0]:.10g} status {fail[1]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="run configuration (default: shipped config)")
    common.add_argument("--out", metavar="PATH", help="CSV output path")
    common.add_argument("--seed", type=int, default=0, metavar="N", help="sampling seed")
    common.add_argument("--n", type=int, default=None, metavar="N",
                        help="number of SRG pairs (srg-sample) or time samples (solve)")
    common.add_argument("--emit-default-config", action="store_true",
                        help="write the default configuration to --out (or stdout) and exit")

    p = argparse.ArgumentParser(prog="srgc", description="SRG analysis and splitting solvers for circuits")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("srg-sample", parents=[common], help="sample and export an element's SRG")
    s.add_argument("element", choices=ELEMENT_NAMES)
    sub.add_parser("check-stepsizes", parents=[common], help="validate (gamma, tau, lambda)")
    s = sub.add_parser("solve", parents=[common], help="run a quasi-static sweep")
    s.add_argument("experiment", choices=EXPERIMENTS)
    s.add_argument("--trace", metavar="PATH", help="write the trace of the slowest sample")
    s.add_argument("--dump-iterates", action="store_true", help="add iterate columns to --trace")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.emit_default_config:
            return _emit(default_config(getattr(args, "experiment", None)), args.out)
        if args.command == "srg-sample":
            return cmd_srg_sample(args.config, args.element, 10_000 if args.n is None else args.n,
                                  args.seed, args.out)
        if args.command == "check-stepsizes":
            return cmd_check_stepsizes(args.config)
        if args.dump_iterates and args.trace is None:
            raise ConfigError("--dump-iterates needs --trace PATH")
        return cmd_solve(args.config, args.experiment, args.out, args.n, args.trace, args.dump_iterates)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
