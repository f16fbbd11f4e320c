import math

import numpy as np
import pytest
from oracles import leaky_resolvent_oracle, tunnel_eval_oracle, tunnel_inverse_resolvent_oracle

from srgc import (
    AffineShift,
    AngleBound,
    DomainError,
    EbersMollTransistor,
    GraphPair,
    IdealDiode,
    LeakyTransistor,
    LinearResistor,
    ProductElement,
    SemimonotoneParams,
    StepsizeTooSmall,
    TunnelDiode,
    TunnelDiodeInverse,
    angle_to_semimonotone,
    ebers_moll_eval,
    ideal_diode_eval,
    ideal_diode_resolvent,
    incremental_angle,
    leaky_resolvent,
    region_semimonotone,
    sample_srg,
    semimonotone_pair_check,
    slope_to_params,
    srg_of_pairs,
    transistor_angle,
    transistor_semimonotone,
    tunnel_eval,
    tunnel_inverse_resolvent,
    tunnel_params,
)

ALPHA_R, ALPHA_F = 110 / 111, 10 / 11


@pytest.fixture
def npn():
    return EbersMollTransistor(ALPHA_R, ALPHA_F)


@pytest.fixture
def tunnel():
    return TunnelDiode(100.0, 900.0, 5.0)


# --------------------------------------------------------------------------- diode and resistor


def test_ideal_diode_eval():
    assert ideal_diode_eval(-1.0).lo == 0.0 == ideal_diode_eval(-1.0).hi
    assert ideal_diode_eval(0.0).hi == math.inf
    assert ideal_diode_eval(1e-12).is_empty


@pytest.mark.parametrize("gamma", [1e-3, 1.0, 50.0])
def test_ideal_diode_resolvent(gamma):
    d = IdealDiode()
    for w in (-3.0, 0.0, 2.5):
        v = ideal_diode_resolvent(gamma, w)
        assert v == min(w, 0.0)
        assert d.residual(gamma, [w], [v]) == 0.0


def test_linear_resistor():
    r = LinearResistor(30.0)
    assert r.resolvent(0.01, np.array([1.3]))[0] == pytest.approx(1.3 / 1.3)
    assert r.params == SemimonotoneParams(30.0, 0.0)
    with pytest.raises(DomainError):
        LinearResistor(math.inf)


def test_slope_to_params_resistor_and_examples():
    assert tuple(slope_to_params(2.0, 2.0)) == (1.0, 0.25)
    with pytest.raises(DomainError):
        slope_to_params(-2.0, 1.0)


# --------------------------------------------------------------------------- tunnel diode


def test_tunnel_eval_matches_table(tunnel):
    x = np.linspace(-30, 30, 1201)
    assert np.allclose(tunnel_eval(tunnel, x), tunnel_eval_oracle(100, 900, 5, x), atol=1e-13)
    assert tunnel_eval(tunnel, 5.0) == pytest.approx(-5 / 900)
    assert tunnel_eval(tunnel, -5.0) == pytest.approx(5 / 900)


def test_tunnel_params_exact(tunnel):
    p = tunnel_params(tunnel)
    assert (p.mu, p.rho) == (-1 / 800, 225 / 2)
    assert tuple(p.inverse()) == (900 / 8, -1 / 800)
    assert p.provenance == "proved"
    assert tuple(slope_to_params(-1 / 900, 1 / 100)) == pytest.approx((p.mu, p.rho), rel=1e-14)


def test_tunnel_validation():
    with pytest.raises(DomainError):
        TunnelDiode(900.0, 100.0, 5.0)
    with pytest.raises(DomainError):
        TunnelDiode(100.0, 900.0, 0.0)


def test_tunnel_resolvent(tunnel):
    rng = np.random.default_rng(0)
    for gamma in (1.0, 100.0, 899.0):
        for w in rng.uniform(-40, 40, 200):
            v = tunnel.resolvent(gamma, w)
            assert tunnel.residual(gamma, [w], v) < 1e-12
    with pytest.raises(StepsizeTooSmall):
        tunnel.resolvent(900.0, 1.0)


def test_tunnel_inverse_resolvent_oracle(tunnel):
    rng = np.random.default_rng(11)
    w = rng.uniform(-0.2, 0.2, 300)
    for gamma in (0.002, 1 / 180, 0.05):
        p_ref, x_ref = tunnel_inverse_resolvent_oracle(100, 900, 5, gamma, w)
        inv = TunnelDiodeInverse(tunnel)
        for k in range(w.size):
            p, x = inv.resolvent_branch(gamma, w[k])
            assert p == pytest.approx(p_ref[k], abs=1e-9)
            assert x == pytest.approx(x_ref[k], abs=1e-6)
            assert p == tunnel_inverse_resolvent(tunnel, gamma, w[k])
            assert inv.residual(gamma, [w[k]], [p]) < 1e-10


def test_tunnel_inverse_needs_large_gamma(tunnel):
    with pytest.raises(StepsizeTooSmall):
        tunnel_inverse_resolvent(tunnel, 1 / 900, 0.0)


def test_tunnel_inverse_graph_and_class(tunnel):
    inv = TunnelDiodeInverse(tunnel)
    assert inv.multivalued and tuple(inv.params) == (112.5, -1 / 800)
    x, u = inv.sample_graph(np.random.default_rng(0), 100)
    assert max(inv.distance(a, b) for a, b in zip(x, u)) < 1e-12
    # three voltages for currents inside the negative-resistance band, one outside
    assert len(tunnel.preimages(0.1)) == 1
    assert len(tunnel.preimages(-0.001)) == 3
    cloud = sample_srg(inv, 5000, seed=1)
    region = region_semimonotone(inv.params)
    assert region.contains_array(cloud.points, tol=1e-9).all()


# --------------------------------------------------------------------------- Ebers-Moll transistor


def test_ebers_moll_eval(npn):
    s = ebers_moll_eval(npn, [-1.0, -2.0])
    assert not s.is_empty and np.allclose(s.element(0.0, 0.0), 0.0)
    s = ebers_moll_eval(npn, [0.0, -2.0])
    assert np.allclose(s.element(1.0, 0.0), [1.0, -ALPHA_F])
    with pytest.raises(DomainError):
        s.element(0.0, 1.0)
    assert ebers_moll_eval(npn, [0.1, -1.0]).is_empty


def test_transistor_validation():
    with pytest.raises(DomainError):
        EbersMollTransistor(1.0, 0.5)
    with pytest.raises(DomainError):
        EbersMollTransistor(0.5, -0.1)


def test_transistor_angle_value(npn):
    theta = transistor_angle(npn)
    assert theta.theta == pytest.approx(math.pi / 2 + math.atan(ALPHA_R), abs=1e-15)
    assert theta.theta < 3 * math.pi / 4 and theta.provenance == "proved"
    assert theta.degrees == pytest.approx(134.7407, abs=1e-4)


def test_transistor_sample_within_angle(npn):
    cloud = sample_srg(npn, 20000, seed=4)
    assert cloud.max_angle() <= npn.angle.theta + 1e-9
    x, u = npn.sample_graph(np.random.default_rng(0), 200)
    assert max(npn.distance(a, b) for a, b in zip(x, u)) < 1e-12


@pytest.mark.parametrize("alpha_r,alpha_f", [(ALPHA_R, ALPHA_F), (ALPHA_F, ALPHA_R), (0.5, 0.5), (0.0, 0.9)])
def test_transistor_tight_pairs(alpha_r, alpha_f):
    t = EbersMollTransistor(alpha_r, alpha_f)
    x, u, y, v = t.tight_pairs(np.random.default_rng(0), 200)
    for pts in ((x, u), (y, v)):
        assert max(t.distance(a, b) for a, b in zip(*pts)) < 1e-12
    cloud = srg_of_pairs(x, u, y, v)
    assert t.angle.theta - 1e-2 < cloud.max_angle() <= t.angle.theta + 1e-9


def test_angle_attained_configuration_mirrors():
    # with alpha_f < alpha_r, a voltage step on port 2 with a current step on port 1
    # only reaches pi/2 + atan(alpha_f); the mirrored configuration reaches the bound
    t = EbersMollTransistor(ALPHA_R, ALPHA_F)
    m = t.matrix
    ang_21 = incremental_angle([0.0, 0.0], m @ [1.0, 0.0], [0.0, -1.0], [0.0, 0.0])
    ang_12 = incremental_angle([0.0, 0.0], m @ [0.0, 1.0], [-1.0, 0.0], [0.0, 0.0])
    assert ang_21 == pytest.approx(math.pi / 2 + math.atan(ALPHA_F))
    assert ang_12 == pytest.approx(math.pi / 2 + math.atan(ALPHA_R))


@pytest.mark.parametrize("rho", [-0.01, -0.5, -10.0])
def test_transistor_semimonotone(rho, npn):
    p = transistor_semimonotone(rho)
    assert p.mu == pytest.approx(1 / (8 * rho)) and p.rho == rho
    assert angle_to_semimonotone(AngleBound(3 * math.pi / 4), 0.0, p)
    x, u = npn.sample_graph(np.random.default_rng(1), 400)
    pairs = [GraphPair(a, b) for a, b in zip(x, u)]
    assert all(semimonotone_pair_check(pairs[k], pairs[k + 1], p, tol=1e-9) for k in range(0, 399, 2))


@pytest.mark.parametrize("r", [10.0, 100.0])
def test_leaky_resolvent_oracle(npn, r):
    lt = LeakyTransistor(npn, r)
    rng = np.random.default_rng(int(r))
    for gamma in (1e-3, 0.1, 10.0, 100.0):
        w = rng.uniform(-10, 10, size=(100, 2))
        ref = leaky_resolvent_oracle(ALPHA_R, ALPHA_F, r, gamma, w)
        got = np.array([leaky_resolvent(lt, gamma, wk) for wk in w])
        assert np.abs(got - ref).max() < 1e-9
        assert max(lt.residual(gamma, wk, gk) for wk, gk in zip(w, got)) < 1e-9


def test_plain_transistor_resolvent(npn):
    rng = np.random.default_rng(2)
    for w in rng.uniform(-5, 5, size=(100, 2)):
        v = npn.resolvent(0.5, w)
        assert np.all(v <= 0.0)
        assert npn.residual(0.5, w, v) < 1e-10


def test_leaky_transistor_class(npn):
    lt = LeakyTransistor(npn, 10.0)
    assert lt.params.mu == 0.0
    assert lt.params.rho == pytest.approx(10.0 * (1 - math.sqrt(2)) / 2)
    cloud = sample_srg(lt, 20000, seed=9)
    assert region_semimonotone(lt.params).contains_array(cloud.points, tol=1e-9).all()
    with pytest.raises(DomainError):
        LeakyTransistor(npn, 0.0)


def test_leaky_resolvent_with_currents(npn):
    lt = LeakyTransistor(npn, 10.0)
    v, u = lt.resolvent_with_currents(2.0, [3.0, -1.0])
    assert np.all(u >= 0) and np.all(v <= 0) and np.all(u * v == 0)
    assert np.allclose((1 + 2.0 / 10.0) * v + 2.0 * npn.matrix @ u, [3.0, -1.0])


# --------------------------------------------------------------------------- composition


def test_product_and_shift(tunnel):
    prod = ProductElement(TunnelDiodeInverse(tunnel), LinearResistor(30.0))
    assert prod.dim == 2 and prod.multivalued
    w = np.array([0.01, 2.0])
    out = prod.resolvent(0.01, w)
    assert out[1] == pytest.approx(2.0 / 1.3)
    assert prod.residual(0.01, w, out) < 1e-12
    sh = AffineShift(LinearResistor(2.0), [1.0])
    # zero of 2x + 1 is x = -1/2, a fixed point of the resolvent
    assert sh.resolvent(0.3, np.array([-0.5]))[0] == pytest.approx(-0.5)
    assert sh.distance([1.0], [3.0]) == 0.0
    with pytest.raises(DomainError):
        AffineShift(LinearResistor(1.0), [1.0, 2.0])
