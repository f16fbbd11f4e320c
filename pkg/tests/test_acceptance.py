"""Acceptance criteria, one check per criterion.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every check
prints a single ``criterion N: PASS/FAIL`` line, collected again in the
terminal summary.  Run the file directly to get the same lines without
pytest.
"""
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))
from oracles import leaky_resolvent_oracle, tunnel_inverse_resolvent_oracle  # noqa: E402

from srgc import (  # noqa: E402
    AngleBound,
    ClosedDisk,
    ComplementOfOpenDisk,
    EbersMollTransistor,
    HalfPlane,
    LeakyTransistor,
    SemimonotoneParams,
    TunnelDiode,
    TunnelDiodeInverse,
    angle_semimonotone_slack,
    angle_to_semimonotone,
    cpa_window_monotone,
    cpa_window_semi,
    falsify_membership,
    invert_params,
    invert_points,
    leaky_resolvent,
    region_semimonotone,
    region_transform,
    sample_region,
    sample_srg,
    shift_params,
    srg_of_pairs,
    transistor_angle,
    tunnel_inverse_resolvent,
    tunnel_params,
)
from srgc.config import default_config  # noqa: E402
from srgc.experiments import check_stepsizes, run_experiment  # noqa: E402
from srgc.operators import class_status  # noqa: E402

ALPHA_R, ALPHA_F = 110 / 111, 10 / 11


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_1():
    def run():
        p = tunnel_params(TunnelDiode(100.0, 900.0, 5.0))
        q = invert_params(p)
        return p, q
    (p, q), dt = _timed(run)
    want_p, want_q = (Fraction(-1, 800), Fraction(225, 2)), (Fraction(900, 8), Fraction(-1, 800))
    err = max(abs(Fraction(a) - b) for a, b in zip((p.mu, p.rho, q.mu, q.rho), want_p + want_q))
    # compare against the nearest doubles: the exact rationals are not all representable
    ok = (p.mu, p.rho) == (-1 / 800, 225 / 2) and (q.mu, q.rho) == (900 / 8, -1 / 800) and dt < 1.0
    return ok, f"params=({p.mu!r}, {p.rho!r}) inverse=({q.mu!r}, {q.rho!r}) max |err|={float(err):.1e} time={dt:.3f}s"


def criterion_2():
    def run():
        npn = EbersMollTransistor(ALPHA_R, ALPHA_F)
        theta = transistor_angle(npn).theta
        cloud = sample_srg(npn, 100_000, seed=0)
        x, u, y, v = npn.tight_pairs(np.random.default_rng(0), 1000)
        tight = srg_of_pairs(x, u, y, v).max_angle()
        return theta, cloud.max_angle(), tight
    (theta, sampled, tight), dt = _timed(run)
    expected = math.pi / 2 + math.atan(110 / 111)
    ok = (abs(theta - expected) <= 1e-15 and theta < 3 * math.pi / 4 and sampled <= theta + 1e-9
          and theta - tight <= 1e-2 and dt < 10.0)
    return ok, (f"theta={theta:.10f} rad ({math.degrees(theta):.4f} deg) sampled max={sampled:.10f} "
                f"excess={sampled - theta:.1e} tight gap={theta - tight:.1e} time={dt:.2f}s")


def criterion_3():
    slacks = []
    passed = True
    for rho in (-0.01, -0.5, -10.0):
        p = SemimonotoneParams(1 / (8 * rho), rho)
        passed &= angle_to_semimonotone(AngleBound(3 * math.pi / 4), 0.0, p)
        slacks.append(angle_semimonotone_slack(AngleBound(3 * math.pi / 4), 0.0, p))
    worst = max(abs(s) for s in slacks)
    return passed and worst <= 1e-12, f"max |slack|={worst:.1e} over rho in (-0.01, -0.5, -10)"


def _sweep_summary(experiment):
    res, dt = _timed(lambda: run_experiment(default_config(experiment), experiment))
    it = res.iterations
    return res, dt, it, (f"converged={int(sum(s.value == 'Converged' for s in res.status))}/{it.size} "
                         f"iters median={float(np.median(it)):g} min={int(it.min())} max={int(it.max())}")


def criterion_4():
    res, dt, it, summary = _sweep_summary("leaky-ppa")
    med = float(np.median(it))
    ok = res.all_converged and it.size == 200 and it.max() <= 100 and 10 <= med <= 60 and dt < 5.0
    return ok, f"{summary} time={dt:.2f}s"


def criterion_5():
    res, dt, it, summary = _sweep_summary("amplifier")
    o = res.observables
    v = np.concatenate([o["v1"], o["v2"]])
    ok = (res.all_converged and it.size == 500 and v.max() <= 1e-10
          and o["i_C"].min() >= -0.07 and o["i_C"].max() <= 0.04
          and v.min() >= -2.5 and v.max() <= 0.1
          and it.min() >= 50 and it.max() <= 5000 and dt < 30.0)
    return ok, (f"{summary} i_C in [{o['i_C'].min():.4f}, {o['i_C'].max():.4f}] "
                f"v in [{v.min():.4f}, {v.max():.2e}] time={dt:.2f}s")


def criterion_6():
    res, dt, it, summary = _sweep_summary("tunnel-amplifier")
    x = res.observables["v_tunnel"]
    vbar = default_config("tunnel-amplifier").tunnel.vbar
    side = np.sign(np.abs(x) - vbar)
    side = side[side != 0]
    crossings = int(np.count_nonzero(np.diff(side)))
    ok = (res.all_converged and x.min() >= -6.0 and x.max() <= -3.8 and crossings >= 2
          and it.min() >= 20 and it.max() <= 2000 and dt < 30.0)
    return ok, (f"{summary} v_tunnel in [{x.min():.4f}, {x.max():.4f}] |x|=vbar crossings={crossings} "
                f"time={dt:.2f}s")


def criterion_7():
    mono = cpa_window_monotone(30.0, 100.0)
    semi = cpa_window_semi(100.0)
    lo, hi = semi.gamma_interval
    ceil = semi.lambda_ceiling(1 / 180, 160.0)
    r5 = check_stepsizes(default_config("amplifier"))
    r7 = check_stepsizes(default_config("tunnel-amplifier"))
    # independent evaluation of the printed formulas in exact arithmetic where possible
    tau_ref = -30 * 100 * (1 - math.sqrt(2)) / (100 * (1 - math.sqrt(2)) + 60)
    ceil_ref = float(2 * (1 - Fraction(1) / (6 * 100 * Fraction(1, 180)) - Fraction(9 * 100, 10 * 160)))
    ok = (abs(mono.tau_floor - 66.88) <= 0.01 and abs(mono.tau_floor - tau_ref) < 1e-12
          and abs(lo - 0.0020420) <= 1e-6 and abs(hi - 0.0090687) <= 1e-6
          and abs(ceil - 0.275) <= 1e-3 and abs(ceil - ceil_ref) < 1e-12
          and r5.passed and r5.window == "cpa-monotone" and r7.passed and r7.window == "cpa-semimonotone")
    return ok, (f"tau_floor={mono.tau_floor:.5f} gamma window=({lo:.7f}, {hi:.7f}) lambda ceiling={ceil:.6f} "
                f"fig5 {r5.window} {'PASS' if r5.passed else 'FAIL'} "
                f"fig7 {r7.window} {'PASS' if r7.passed else 'FAIL'}")


def criterion_8():
    def run():
        rng = np.random.default_rng(2024)
        npn = EbersMollTransistor(ALPHA_R, ALPHA_F)
        worst_leaky = 0.0
        for r in (10.0, 100.0):
            lt = LeakyTransistor(npn, r)
            # any gamma > 0 is admissible for the leaky resolvent
            for gamma in 10.0 ** rng.uniform(-3, 2, 5):
                w = rng.uniform(-10, 10, size=(100, 2))
                ref = leaky_resolvent_oracle(ALPHA_R, ALPHA_F, r, gamma, w)
                got = np.array([leaky_resolvent(lt, gamma, wk) for wk in w])
                worst_leaky = max(worst_leaky, float(np.abs(got - ref).max()))
        d = TunnelDiode(100.0, 900.0, 5.0)
        worst_tunnel = 0.0
        # the inverse resolvent needs gamma > 1/r2
        for gamma in rng.uniform(1.5 / 900, 0.1, 10):
            w = rng.uniform(-0.2, 0.2, 100)
            p_ref, _ = tunnel_inverse_resolvent_oracle(100, 900, 5, gamma, w)
            got = np.array([tunnel_inverse_resolvent(d, gamma, wk) for wk in w])
            worst_tunnel = max(worst_tunnel, float(np.abs(got - p_ref).max()))
        return worst_leaky, worst_tunnel
    (wl, wt), dt = _timed(run)
    ok = wl <= 1e-6 and wt <= 1e-6 and dt < 10.0
    return ok, f"leaky max err={wl:.1e} (1000 inputs) tunnel-inverse max err={wt:.1e} (1000 inputs) time={dt:.2f}s"


def _random_nontrivial(rng):
    while True:
        p = SemimonotoneParams(*rng.uniform(-3, 3, size=2))
        if class_status(p).value == "nontrivial":
            return p


def _shift_ok(region, shifted, alpha):
    if isinstance(region, (ClosedDisk, ComplementOfOpenDisk)):
        return (abs(shifted.center - (region.center + alpha)) <= 1e-10
                and abs(shifted.radius - region.radius) <= 1e-10)
    if isinstance(region, HalfPlane):
        return abs(shifted.mu - (region.mu + alpha)) <= 1e-10
    return False


def criterion_9():
    rng = np.random.default_rng(9)
    shift_fail = 0
    for _ in range(100):
        p = _random_nontrivial(rng)
        # keep 1 + 2*rho*alpha > 0 so the shifted class is defined
        alpha = rng.uniform(-2, 2)
        while not 1 + 2 * p.rho * alpha > 0.05:
            alpha = rng.uniform(-2, 2)
        region = region_semimonotone(p)
        moved = region_transform(region, "shift", alpha)
        if not (_shift_ok(region, moved, alpha) and moved.isclose(region_semimonotone(shift_params(p, alpha)),
                                                                  tol=1e-10)):
            shift_fail += 1
    dual_bad = 0
    n_dual = 0
    while n_dual < 10_000:
        p = _random_nontrivial(rng)
        z = sample_region(region_semimonotone(p), 1000, rng)
        from srgc import SRGCloud
        w = invert_points(SRGCloud(z)).points
        dual_bad += int(np.count_nonzero(~region_semimonotone(invert_params(p)).contains_array(w, tol=1e-9)))
        n_dual += z.size
    tunnel = TunnelDiode(100.0, 900.0, 5.0)
    cloud = sample_srg(tunnel, 10_000, seed=0)
    tunnel_bad = len(falsify_membership(cloud, region_semimonotone(tunnel_params(tunnel))))
    inv = TunnelDiodeInverse(tunnel)
    inv_bad = len(falsify_membership(sample_srg(inv, 10_000, seed=1), region_semimonotone(inv.params)))
    ok = shift_fail == 0 and dual_bad == 0 and tunnel_bad == 0 and inv_bad == 0
    return ok, (f"shift failures={shift_fail}/100 inversion violations={dual_bad}/{n_dual} "
                f"tunnel disk violations={tunnel_bad} inverse violations={inv_bad}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def test_acceptance_1(acceptance_report):
    assert acceptance_report(1, *criterion_1())


def test_acceptance_2(acceptance_report):
    assert acceptance_report(2, *criterion_2())


def test_acceptance_3(acceptance_report):
    assert acceptance_report(3, *criterion_3())


def test_acceptance_4(acceptance_report):
    assert acceptance_report(4, *criterion_4())


def test_acceptance_5(acceptance_report):
    assert acceptance_report(5, *criterion_5())


def test_acceptance_6(acceptance_report):
    assert acceptance_report(6, *criterion_6())


def test_acceptance_7(acceptance_report):
    assert acceptance_report(7, *criterion_7())


def test_acceptance_8(acceptance_report):
    assert acceptance_report(8, *criterion_8())


def test_acceptance_9(acceptance_report):
    assert acceptance_report(9, *criterion_9())


if __name__ == "__main__":
    failed = 0
    for k, check in enumerate(CRITERIA, start=1):
        ok, detail = check()
        failed += not ok
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
