import numpy as np
import pytest

from poincare_ext import quantization as qz
from poincare_ext.group import (
    AlgebraElement,
    GroupElement,
    ModelParams,
    bracket,
    casimir_pairing,
)
from poincare_ext.irreps import default_probes
from poincare_ext.orbits import classify

P = ModelParams()
M = 1.0


def basis_el(k):
    return AlgebraElement(tuple(1.0 if i == k else 0.0 for i in range(4)))


def test_phase_point_bijection():
    rng = np.random.default_rng(0)
    for _ in range(50):
        s = qz.PhasePoint(*rng.uniform(-5, 5, 2))
        q0, q1 = s.lightcone(P)
        back = qz.PhasePoint.from_lightcone(q0, q1, P)
        assert abs(back.q - s.q) < 1e-14 and abs(back.p - s.p) < 1e-14


def test_comoment_values_at_origin():
    u = qz.comoments(qz.PhasePoint(0.0, 0.0), P, M)
    assert u.u == (0.0, 0.0, M * M / (2.0 * P.B), -1.0)


def test_comoment_identities():
    rng = np.random.default_rng(1)
    for _ in range(100):
        s = qz.PhasePoint(*rng.uniform(-3, 3, 2))
        u = qz.comoments(s, P, M)
        assert u.u[3] == -1.0
        assert abs(casimir_pairing(u, P) - M * M) < 1e-12


def test_comoments_are_lie_homomorphism():
    us = qz.comoment_observables(P, M)
    for a in range(4):
        for b in range(4):
            pb = qz.poisson_bracket(us[a], us[b], P)
            coeffs = bracket(basis_el(a), basis_el(b), P).v
            target = sum((c * us[k] for k, c in enumerate(coeffs)),
                         qz.PolynomialObservable({}))
            diff = pb - target
            worst = max((abs(v) for _, v in diff.coeffs), default=0.0)
            assert worst < 1e-14, (a, b)


def test_bracket_orientation():
    q = qz.PolynomialObservable({(1, 0): 1.0})
    p = qz.PolynomialObservable({(0, 1): 1.0})
    pb = qz.poisson_bracket(q, p, P)
    # orientation fixed by the comoment homomorphism: {q, p} = -1
    assert pb[(0, 0)] == -1.0
    # light-cone coordinate brackets: {q^0, q^1} = 1/B
    q0 = qz.PolynomialObservable({(0, 1): -1.0 / P.B})
    q1 = qz.PolynomialObservable({(1, 0): -1.0, (0, 1): -1.0 / P.B})
    pb = qz.poisson_bracket(q0, q1, P)
    assert pb[(0, 0)] == 1.0 / P.B and pb.degree == 0


def test_momentum_map_labels():
    z = qz.momentum_map(qz.PhasePoint(0.0, 0.0), P, M)
    assert z.u == (0.0, 0.0, M * M / (2.0 * P.B * P.hbar), -1.0 / P.hbar)
    rng = np.random.default_rng(2)
    for _ in range(20):
        s = qz.PhasePoint(*rng.uniform(-3, 3, 2))
        assert classify(qz.momentum_map(s, P, M), P).tag == "CaseA"


def test_pullback_of_orbit_form():
    rng = np.random.default_rng(3)
    for _ in range(10):
        s = qz.PhasePoint(*rng.uniform(-2, 2, 2))
        assert qz.pullback_residual(s, P, M) < 1e-6


def test_degree_gate_total():
    with pytest.raises(qz.NoGoError):
        qz.PolynomialObservable({(2, 1): 1.0})
    with pytest.raises(qz.NoGoError):
        qz.parse_poly("q^2p")
    with pytest.raises(qz.NoGoError):
        qz.parse_poly("p^3")


def test_parse_poly():
    f = qz.parse_poly("q^2 + 2qp - 0.5")
    assert f[(2, 0)] == 1.0 and f[(1, 1)] == 2.0 and f[(0, 0)] == -0.5
    g = qz.parse_poly("-q + 3.5p^2")
    assert g[(1, 0)] == -1.0 and g[(0, 2)] == 3.5
    with pytest.raises(ValueError):
        qz.parse_poly("q**2")


def test_quantize_generator_table():
    h = P.hbar
    op = qz.quantize(qz.parse_poly("q"), P)
    assert op.m_coeffs == (0.0, 1.0, 0.0) and not any(op.n_coeffs) and not op.s2
    op = qz.quantize(qz.parse_poly("p"), P)
    assert op.n_coeffs[0] == -1j * h and not any(op.m_coeffs)
    op = qz.quantize(qz.parse_poly("p^2"), P)
    assert op.s2 == -h * h
    op = qz.quantize(qz.parse_poly("qp"), P)
    assert op.n_coeffs[1] == -1j * h and op.m_coeffs[0] == -0.5j * h
    # the constant comoment quantizes to minus the identity
    op = qz.quantize(qz.comoment_observables(P, M)[3], P)
    assert op.m_coeffs == (-1.0, 0.0, 0.0)


def test_quantize_linearity():
    f = qz.parse_poly("q^2+2qp")
    g = qz.parse_poly("p-3")
    lhs = qz.quantize(f + (2.0 * g), P)
    rhs = qz.quantize(f, P) + qz.quantize((2.0 * g), P)
    assert lhs == rhs


def test_hermiticity_of_quantized_observables():
    probes = default_probes(3)
    for text in ("1", "q", "p", "q^2", "qp", "p^2"):
        op = qz.quantize(qz.parse_poly(text), P)
        assert qz.hermiticity_residual(op, probes[:2]) < 1e-9, text


def test_dirac_condition():
    probes = default_probes(3)
    assert qz.verify_dirac(P, M, probes) < 1e-9
    assert qz.verify_dirac(P, M, probes, z3=+1.0 / P.hbar) > 0.1


def test_covariance():
    probes = default_probes(2)
    u2 = qz.comoment_observables(P, M)[2]
    assert qz.verify_covariance(GroupElement(0, 0, 0, 0), u2, P, M, probes) < 1e-14
    g = GroupElement(0.5, -0.3, 0.0, 0.0)
    f = qz.PolynomialObservable({(0, 1): 1.0})
    assert qz.verify_covariance(g, f, P, M, probes) < 1e-9
    g = GroupElement(0.0, 0.0, 0.8, 0.2)
    assert qz.verify_covariance(g, u2, P, M, probes) < 1e-8


def test_covariance_suite():
    assert qz.covariance_suite(P, M, trials=21, seed=4) < 1e-8


def test_u2_offset_keeps_homomorphism():
    us = qz.comoment_observables(P, M, u2_offset=2.5)
    pb = qz.poisson_bracket(us[0], us[2], P)
    coeffs = bracket(basis_el(0), basis_el(2), P).v
    target = sum((c * us[k] for k, c in enumerate(coeffs)),
                 qz.PolynomialObservable({}))
    diff = pb - target
    assert max((abs(v) for _, v in diff.coeffs), default=0.0) < 1e-14
