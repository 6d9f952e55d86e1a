"""Smoke tests for the _mgvi extension module."""

import numpy as np
import pytest

import mgvi


def test_soft_threshold():
    out = mgvi.soft_threshold(np.array([3.0, -0.5, 0.0]), 1.0)
    np.testing.assert_allclose(out, [2.0, 0.0, 0.0])


def test_spectral_norm_estimate():
    M = np.diag([3.0, 1.0])
    assert mgvi.spectral_norm_estimate(M) == pytest.approx(3.0, rel=1e-8)


def test_generate_lasso_instance_is_seeded():
    a = mgvi.generate_lasso_instance(30, 40, seed=5)
    b = mgvi.generate_lasso_instance(30, 40, seed=5)
    np.testing.assert_array_equal(a["A"], b["A"])
    np.testing.assert_array_equal(a["b"], a["A"] @ a["x_true"])
    assert int((a["x_true"] != 0).sum()) == 10  # capped spike pattern at n=40


def test_one_dimensional_oracle_all_solvers():
    A = np.array([[1.0]])
    b = np.array([3.0])
    for solver in ("ista", "gem", "pga-a1", "pga-a2", "pga-b1", "pga-b2"):
        r = mgvi.solve_lasso(A, b, 1.0, solver=solver)
        assert r["status"] == "converged", solver
        assert r["x"][0] == pytest.approx(2.0, abs=1e-5), solver


def test_lasso_solvers_agree():
    inst = mgvi.generate_lasso_instance(16, 20, seed=3)
    ref = mgvi.solve_lasso(inst["A"], inst["b"], 1.0, solver="ista", tol=1e-10)
    for solver in ("gem", "pga-a1", "pga-a2", "pga-b1", "pga-b2"):
        r = mgvi.solve_lasso(inst["A"], inst["b"], 1.0, solver=solver, tol=1e-8)
        assert r["status"] == "converged"
        np.testing.assert_allclose(r["x"], ref["x"], atol=1e-5)


def test_basis_pursuit_recovers_support():
    inst = mgvi.generate_lasso_instance(30, 40, seed=8)
    for solver in ("gem", "pga-a1", "pga-b1", "adlpmm"):
        r = mgvi.solve_basis_pursuit(inst["A"], inst["b"], solver=solver)
        assert r["status"] == "converged", solver
        assert r["constraint_violation_inf"] < 1e-4
        assert mgvi.support_recovered(r["x"], inst["x_true"]), solver


def test_lanes_do_not_change_the_result():
    inst = mgvi.generate_lasso_instance(20, 26, seed=9)
    r1 = mgvi.solve_basis_pursuit(inst["A"], inst["b"], solver="gem", lanes=1)
    r3 = mgvi.solve_basis_pursuit(inst["A"], inst["b"], solver="gem", lanes=3)
    np.testing.assert_array_equal(r1["x"], r3["x"])
    assert r1["iterations"] == r3["iterations"]


def test_bad_solver_name_raises():
    with pytest.raises(ValueError):
        mgvi.solve_lasso(np.eye(2), np.ones(2), 1.0, solver="nope")
