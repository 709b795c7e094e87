import math

import pytest

import khessian


def test_sigma():
    assert khessian.sigma([1.0, 2.0, 3.0], 2) == pytest.approx(11.0)
    assert khessian.sigma_all([1.0, 2.0, 3.0]) == pytest.approx([1.0, 6.0, 11.0, 6.0])
    assert khessian.newton_maclaurin_gap([1.0, 2.0, 3.0], 1, 2) >= 0.0


def test_property_suite():
    r = khessian.property_suite(5, 100)
    assert r["ok"]
    assert r["samples"] == 100


def test_radial_F():
    spec = khessian.ProblemSpec(5, 2, 2.0)
    sol = khessian.RadialSolution(5, 2, 1.0)
    area = 8.0 * math.pi**2 / 3.0
    for t in (-0.9, -0.5, -0.1):
        assert sol.F(t, spec) == pytest.approx(0.5 * area, rel=1e-10)
    assert spec.limit(sol.rho) == pytest.approx(0.5 * area, rel=1e-10)
    assert khessian.ProblemSpec(5, 2).a == 2.0


def test_invalid_spec():
    with pytest.raises(khessian.KHessianError):
        khessian.ProblemSpec(4, 2, 1.0)


def test_solve_and_certify():
    spec = khessian.ProblemSpec(3, 1, 1.0)
    sphere = khessian.solve_exterior(khessian.RevolutionBody.sphere(3, 1.0, 32), spec, 64, 32)
    assert sphere.shape == (65, 33)
    assert sphere.value(0, 0) == pytest.approx(-1.0)
    assert khessian.certify_ball(sphere, spec)["verdict"] == "certified-ball"

    body = khessian.RevolutionBody.spheroid(3, 1.5, 1.0, 64)
    fine = khessian.solve_exterior(body, spec, 64, 32)
    coarse = khessian.solve_exterior(body, spec, 32, 16)
    audit = khessian.monotonicity_audit(fine, coarse, spec)
    assert audit["monotone"] and audit["strict"]
    assert audit["rows"][0]["t"] == -1.0
    names = [e["name"] for e in khessian.inequality_ledger(fine, spec)]
    assert "gradient-quermass" in names
    assert khessian.certify_ball(fine, spec)["verdict"] == "certified-not-overdetermined"
