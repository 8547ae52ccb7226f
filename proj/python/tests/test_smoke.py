import math

import numpy as np
import pytest

import reebkit as rk


def test_sphere_reeb_field_is_2iz():
    s3 = rk.standard_sphere(1)
    for x in rk.random_points(s3, 50, seed=3):
        expected = 2.0 * np.array([-x[1], x[0], -x[3], x[2]])
        assert np.allclose(rk.reeb_field(s3, x), expected, atol=1e-8)
        assert rk.contact_defect(s3, x) == pytest.approx(0.5, abs=1e-9)
        alpha, kernel = rk.reeb_residuals(s3, x)
        assert alpha <= 1e-10 and kernel <= 1e-10


def test_torus_defect_and_reeb_field():
    t3 = rk.torus3(2)
    assert t3.is_torus
    x = np.array([0.3, 1.1, 0.7])
    assert rk.contact_defect(t3, x) == pytest.approx(2.0, rel=1e-12)
    assert np.allclose(rk.reeb_field(t3, x), [math.cos(1.4), -math.sin(1.4), 0.0], atol=1e-8)


def test_degenerate_form_raises():
    with pytest.raises(rk.DegeneracyError):
        rk.reeb_field(rk.degenerate_torus(), np.array([0.1, 0.2, 0.3]))


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError):
        rk.standard_sphere(0)
    with pytest.raises(ValueError):
        rk.weighted_sphere([1.0, -1.0])


def test_volumes():
    v = rk.volume(rk.standard_sphere(1), samples=20000)
    assert abs(v.value - math.pi**2) <= 3 * v.std_error + 1e-12 * math.pi**2
    assert v.method == "monte-carlo"
    t = rk.volume(rk.torus3(1))
    assert t.value == pytest.approx((2 * math.pi) ** 3, rel=1e-13)
    assert t.std_error == 0.0


def test_python_integrand_on_torus():
    r = rk.integrate(rk.torus3(1), lambda x: math.cos(x[2]) ** 2, nodes=8)
    assert r.value == pytest.approx(0.5 * (2 * math.pi) ** 3, rel=1e-12)


def test_invariant_polynomial_of_constants():
    t3 = rk.torus3(1)
    r = rk.invariant_polynomial(t3, [lambda x: 2.0, lambda x: 2.0], nodes=6)
    assert r.value == pytest.approx(4 * (2 * math.pi) ** 3, rel=1e-12)


def test_hopf_flow_returns_at_pi():
    s3 = rk.standard_sphere(1)
    traj = rk.reeb_flow(s3, np.array([0.6, 0.0, 0.0, 0.8]), 10.0)
    assert len(traj) == traj.points.shape[0] == traj.times.shape[0]
    t, d = rk.min_return(s3, traj, 1.0)
    assert t == pytest.approx(math.pi, abs=1e-6)
    assert d <= 1e-6
    avg = rk.birkhoff_average(traj, lambda x: x[0] ** 2 + x[1] ** 2)
    assert avg[-1] == pytest.approx(0.36, abs=1e-6)
    assert rk.strictness(s3, 1.0, 5) <= 1e-7


def test_toric_pullback_matches_closed_form():
    t3 = rk.torus3(1)
    A = np.array([0.6, -0.3])
    r = rk.pullback(t3, "shift", [A, A], nodes=25)
    assert r.value == pytest.approx(rk.toric_closed_form(1, 2, 0.6, -0.3), rel=1e-10)
    assert rk.toric_closed_form(1, 2, 1.0, 0.0) == pytest.approx(4 * math.pi**3, rel=1e-14)
    assert rk.wallis_c(1) == pytest.approx(math.pi)


def test_moment_and_positivity_on_sphere():
    s3 = rk.standard_sphere(1)
    iI = 1j * np.eye(2)
    x = rk.random_points(s3, 1, seed=9)[0]
    assert rk.moment(s3, "unitary", x, iI) == pytest.approx(0.5, rel=1e-14)
    result, certified = rk.positivity(s3, "unitary", iI, 1)
    assert certified
    assert abs(result.value - math.pi**2 / 4) <= 3 * result.std_error + 1e-12
    with pytest.raises(ValueError):
        rk.moment(s3, "shift", x, np.array([1.0, 0.0]))


def test_hopf_prequantization():
    f = rk.fiber_integration(1.0, 20)
    assert f["dispersion"] <= 1e-3
    assert abs(f["C"] - math.pi) <= 3 * f["std_error"]
    e = rk.euler_number(1.0)
    assert e["normalized"] == pytest.approx(1.0, abs=1e-3)
    assert e["raw"] == pytest.approx(0.5, abs=1e-12)
    assert e["warnings"]
