import numpy as np
import pytest
from scipy.linalg import expm

from poincare_ext.group import (
    AlgebraElement,
    CoadjointPoint,
    GroupElement,
    ModelParams,
    ad_matrix,
    adjoint_matrix,
    bracket,
    casimir_pairing,
    coadjoint_action,
    compose,
    exp_map,
    identity,
    inverse,
    log_map,
    structural_report,
    structure_constants,
)

P = ModelParams()


def rand_g(rng, box=2.0):
    return GroupElement(*rng.uniform(-box, box, size=4))


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(B=0.0)
    with pytest.raises(ValueError):
        ModelParams(hbar=-1.0)


def test_bracket_table():
    e = [AlgebraElement(tuple(1.0 if i == k else 0.0 for i in range(4)))
         for k in range(4)]
    p0, p1, j, i = e
    assert bracket(p0, j, P).v == (0.0, 1.0, 0.0, 0.0)
    assert bracket(p1, j, P).v == (1.0, 0.0, 0.0, 0.0)
    assert bracket(p0, p1, P).v == (0.0, 0.0, 0.0, -P.B)
    assert bracket(i, j, P).v == (0.0, 0.0, 0.0, 0.0)
    assert bracket(i, p0, P).v == (0.0, 0.0, 0.0, 0.0)


def test_jacobi_identity():
    rng = np.random.default_rng(0)
    for _ in range(30):
        x, y, z = (AlgebraElement(tuple(rng.uniform(-2, 2, 4)))
                   for _ in range(3))
        total = np.array(bracket(x, bracket(y, z, P), P).v) \
            + np.array(bracket(y, bracket(z, x, P), P).v) \
            + np.array(bracket(z, bracket(x, y, P), P).v)
        assert np.max(np.abs(total)) < 1e-12


def test_associativity_and_inverse():
    rng = np.random.default_rng(1)
    for _ in range(50):
        g1, g2, g3 = rand_g(rng), rand_g(rng), rand_g(rng)
        lhs = compose(compose(g3, g2, P), g1, P)
        rhs = compose(g3, compose(g2, g1, P), P)
        assert np.max(np.abs(lhs.array - rhs.array)) < 1e-12
        gi = inverse(g1, P)
        assert np.max(np.abs(compose(g1, gi, P).array)) < 1e-12
        assert np.max(np.abs(compose(gi, g1, P).array)) < 1e-12


def test_exp_log_roundtrip():
    rng = np.random.default_rng(2)
    for _ in range(20):
        x = AlgebraElement(tuple(rng.uniform(-1.5, 1.5, 4)))
        g = exp_map(x, P)
        y = log_map(g, P)
        assert np.max(np.abs(np.array(y.v) - np.array(x.v))) < 1e-8
    for _ in range(10):
        g = rand_g(rng)
        back = exp_map(log_map(g, P), P)
        assert np.max(np.abs(back.array - g.array)) < 1e-8


def test_exp_closed_forms():
    # pure translations/center exponentiate to themselves
    g = exp_map(AlgebraElement((0.4, -0.7, 0.0, 1.2)), P)
    assert np.max(np.abs(g.array - np.array([0.4, -0.7, 0.0, 1.2]))) < 1e-12
    g = exp_map(AlgebraElement((0.0, 0.0, 0.9, 0.0)), P)
    assert np.max(np.abs(g.array - np.array([0.0, 0.0, 0.9, 0.0]))) < 1e-12


def test_adjoint_is_homomorphism():
    rng = np.random.default_rng(3)
    for _ in range(30):
        g1, g2 = rand_g(rng), rand_g(rng)
        lhs = adjoint_matrix(compose(g2, g1, P), P)
        rhs = adjoint_matrix(g2, P) @ adjoint_matrix(g1, P)
        assert np.max(np.abs(lhs - rhs)) < 1e-11


def test_adjoint_of_exponential():
    rng = np.random.default_rng(4)
    for _ in range(20):
        x = AlgebraElement(tuple(rng.uniform(-1.5, 1.5, 4)))
        lhs = adjoint_matrix(exp_map(x, P), P)
        rhs = expm(ad_matrix(x, P))
        assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_adjoint_intertwines_bracket():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = rand_g(rng)
        x = AlgebraElement(tuple(rng.uniform(-2, 2, 4)))
        y = AlgebraElement(tuple(rng.uniform(-2, 2, 4)))
        A = adjoint_matrix(g, P)
        lhs = A @ bracket(x, y, P).array
        rhs = bracket(AlgebraElement(tuple(A @ x.array)),
                      AlgebraElement(tuple(A @ y.array)), P).array
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_coadjoint_is_right_action_dual():
    rng = np.random.default_rng(6)
    for _ in range(20):
        g1, g2 = rand_g(rng), rand_g(rng)
        z = CoadjointPoint(tuple(rng.uniform(-2, 2, 4)))
        lhs = coadjoint_action(compose(g2, g1, P), z, P)
        rhs = coadjoint_action(g2, coadjoint_action(g1, z, P), P)
        assert np.max(np.abs(np.array(lhs.u) - np.array(rhs.u))) < 1e-10


def test_coadjoint_invariants():
    rng = np.random.default_rng(7)
    for _ in range(200):
        z = CoadjointPoint(tuple(rng.uniform(-3, 3, 4)))
        g = rand_g(rng)
        moved = coadjoint_action(g, z, P)
        assert abs(moved.u[3] - z.u[3]) < 1e-12
        c0, c1 = casimir_pairing(z, P), casimir_pairing(moved, P)
        assert abs(c1 - c0) <= 1e-12 * max(1.0, abs(c0))


def test_structure_constants_antisymmetry():
    c = structure_constants(P)
    assert np.max(np.abs(c + np.swapaxes(c, 1, 2))) == 0.0


def test_structural_report():
    rep = structural_report(P, samples=300, seed=11)
    assert rep["central_series_dims"][-1] == 3
    assert rep["derived_series_dims"][-1] == 0
    assert rep["max_imag_eigenvalue"] <= 1e-10
    assert rep["max_abs_trace"] <= 1e-12
    # not nilpotent: generic ad matrices carry nonzero real eigenvalues
    assert rep["has_nonzero_real_eigenvalue"]


def test_identity_element():
    g = identity()
    rng = np.random.default_rng(8)
    h = rand_g(rng)
    assert compose(g, h, P) == h
    assert compose(h, g, P) == h
