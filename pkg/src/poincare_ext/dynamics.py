"""Uniformly accelerated relativistic particle: classical and quantum.

Classical layer: trajectories q1(tau), linearly growing kinematical
momentum ptilde(tau) = ptilde0 + B (tau - tau0), proper time.

Quantum layer: the split Hamiltonian H0 + V(tau) with H0 = -B qhat -
phat, its delta-normalized eigenfunctions <x|E>, the closed-form
spectral amplitude transport c_E(tau), eigenstate evolution with its
unimodular phase, transition probabilities, and the total-energy
expectation.

The closed form is validated against two independent oracles: exact
position-space propagation along characteristics (a), and high-order
integration of the spectral transport equation (b).  The oracle aborts
if (a) and (b) disagree beyond 1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp

from .group import ModelParams
from .quantization import PolynomialObservable, QuantOperator, quantize
from .wavefunctions import WaveFunction, integrate_vec

__all__ = [
    "ClassicalState",
    "SpectralAmplitude",
    "OracleError",
    "gaussian_spectral",
    "classical_trajectory",
    "proper_time",
    "kinematical_momentum",
    "relativistic_energy",
    "velocity",
    "h0_eigenfunction",
    "h0_operator",
    "potential_operator",
    "total_energy_operator",
    "c_closed_form",
    "evolve_eigenstate",
    "transition_probability",
    "expectation_total_energy",
    "oracle_propagate",
    "default_e_grid",
    "spectral_norm",
    "expectation_from_grid",
]


class OracleError(RuntimeError):
    """The two independent propagation oracles disagree."""


@dataclass(frozen=True)
class ClassicalState:
    """Initial data of the uniformly accelerated particle."""

    q1_0: float = 0.0
    ptilde_0: float = 0.0
    tau0: float = 0.0
    m: float = 1.0
    params: ModelParams = field(default_factory=ModelParams)

    def __post_init__(self):
        if self.m <= 0.0:
            raise ValueError("mass must be positive")


def kinematical_momentum(cs: ClassicalState, tau: float) -> float:
    return cs.ptilde_0 + cs.params.B * (tau - cs.tau0)


def relativistic_energy(cs: ClassicalState, tau: float) -> float:
    pt = kinematical_momentum(cs, tau)
    return math.hypot(cs.m, pt)


def velocity(cs: ClassicalState, tau: float) -> float:
    return kinematical_momentum(cs, tau) / relativistic_energy(cs, tau)


def classical_trajectory(cs: ClassicalState, tau: float):
    """(q0, q1, ptilde) at time tau; q0 is the time coordinate itself."""
    B = cs.params.B
    q1 = cs.q1_0 - relativistic_energy(cs, cs.tau0) / B \
        + relativistic_energy(cs, tau) / B
    return tau, q1, kinematical_momentum(cs, tau)


def proper_time(cs: ClassicalState, tau: float) -> float:
    return (cs.m / cs.params.B) * math.asinh(kinematical_momentum(cs, tau) / cs.m)


# ---------------------------------------------------------------------------
# operators


def h0_operator(params: ModelParams) -> QuantOperator:
    """H0 = -B qhat - phat; classically the comoment u0 = B q1."""
    return quantize(PolynomialObservable({(1, 0): -params.B, (0, 1): -1.0}),
                    params)


def potential_operator(cs: ClassicalState, tau: float) -> QuantOperator:
    v = velocity(cs, tau)
    return quantize(PolynomialObservable({(0, 1): v}), cs.params)


def total_energy_operator(cs: ClassicalState, tau: float) -> QuantOperator:
    """E(tau) - H0/2; commutes with H0, so its eigenstates are shared."""
    p = cs.params
    return quantize(PolynomialObservable(
        {(0, 0): relativistic_energy(cs, tau),
         (1, 0): p.B / 2.0, (0, 1): 0.5}), p)


def h0_eigenfunction(E: float, params: ModelParams,
                     width: float = 6.0) -> WaveFunction:
    """<x|E> = (2 pi hbar)^(-1/2) exp[-(i/hbar)(E x + B x^2 / 2)].

    Not square-integrable; the width hint only scopes windowed
    quadrature against genuinely normalizable partners.
    """
    h, B = params.hbar, params.B
    amp = 1.0 / math.sqrt(2.0 * math.pi * h)

    def closure(k):
        def f(x):
            phase = np.exp(-1j * (E * x + 0.5 * B * x * x) / h)
            if k == 0:
                return amp * phase
            d1 = -1j * (E + B * x) / h
            if k == 1:
                return amp * d1 * phase
            return amp * (d1 * d1 - 1j * B / h) * phase
        return f

    return WaveFunction(closure(0), (closure(1), closure(2)),
                        0.0, width, "generic")


# ---------------------------------------------------------------------------
# spectral amplitudes


@dataclass(frozen=True)
class SpectralAmplitude:
    """Spectral profile c_E as a closure, with a (center, width) hint."""

    fn: callable
    center: float = 0.0
    width: float = 1.0

    def __call__(self, E):
        return self.fn(np.asarray(E, dtype=float))

    def l2_norm_sq(self) -> float:
        val = integrate_vec(lambda E: np.abs(self.fn(E)) ** 2,
                            self.center - 12 * self.width,
                            self.center + 12 * self.width)
        return float(np.real(val))


def gaussian_spectral(E0: float, sigma: float) -> SpectralAmplitude:
    amp = (2.0 * math.pi * sigma * sigma) ** -0.25
    return SpectralAmplitude(
        lambda E: amp * np.exp(-((E - E0) ** 2) / (4.0 * sigma * sigma)),
        E0, sigma)


def _deltas(cs: ClassicalState, tau: float):
    dE = relativistic_energy(cs, tau) - relativistic_energy(cs, cs.tau0)
    dtp = proper_time(cs, tau) - proper_time(cs, cs.tau0)
    return dE, dtp, tau - cs.tau0


def c_closed_form(cs: ClassicalState, E, tau: float, c0) -> complex:
    """Transport-with-phase solution of the spectral evolution equations."""
    h, B = cs.params.hbar, cs.params.B
    dE, dtp, dtau = _deltas(cs, tau)
    E = np.asarray(E, dtype=float)
    phase1 = np.exp(1j * ((E - dE) ** 2 - E ** 2) / (2.0 * B * h))
    phase2 = np.exp(-1j / h * (-cs.ptilde_0 * dE / (2.0 * B)
                               - cs.m * dtp / 2.0
                               + relativistic_energy(cs, tau) * dtau / 2.0))
    out = phase1 * phase2 * c0(E - dE)
    return complex(out) if out.ndim == 0 else out


def evolve_eigenstate(cs: ClassicalState, E: float, tau: float):
    """(phase, E_final) for a system prepared in the eigenstate of H0 at E.

    The state at tau is phase * |E_final> with E_final = E + Delta E and
    a product of three unimodular factors.
    """
    h, B = cs.params.hbar, cs.params.B
    dE, dtp, dtau = _deltas(cs, tau)
    f1 = np.exp(1j * (E ** 2 - (E + dE) ** 2) / (2.0 * B * h))
    f2 = np.exp(1j * (E + dE) * dtau / h)
    f3 = np.exp(-1j / h * (-cs.ptilde_0 * dE / (2.0 * B) - cs.m * dtp / 2.0
                           + relativistic_energy(cs, tau) * dtau / 2.0))
    return complex(f1 * f2 * f3), E + dE


def transition_probability(cs: ClassicalState, e_prime: float, E: float,
                           tau: float) -> int:
    """Density-normalized transition indicator: 1 iff E' = E + Delta E."""
    _, e_final = evolve_eigenstate(cs, E, tau)
    return int(abs(e_prime - e_final) <= 1e-10 * (1.0 + abs(E)))


def expectation_total_energy(cs: ClassicalState, E: float, tau: float) -> float:
    return 0.5 * (relativistic_energy(cs, tau)
                  + relativistic_energy(cs, cs.tau0)) - 0.5 * E


def total_energy_minimum(cs: ClassicalState, E: float):
    """(tau*, value) of the expectation minimum."""
    tau_star = cs.tau0 - cs.ptilde_0 / cs.params.B
    value = 0.5 * cs.m + 0.5 * relativistic_energy(cs, cs.tau0) - 0.5 * E
    return tau_star, value


# ---------------------------------------------------------------------------
# independent propagation oracles


def default_e_grid(cs: ClassicalState, c0: SpectralAmplitude, tau: float,
                   n: int = 400):
    dE, _, _ = _deltas(cs, tau)
    center = c0.center + dE
    half = 10.0 * c0.width
    return np.linspace(center - half, center + half, n)


def _position_packet(cs: ClassicalState, c0: SpectralAmplitude, tau: float):
    """Oracle (a): exact transport of the position-space packet.

    The generator is affine in position and momentum, so the packet
    moves rigidly along x with drift integral X(tau) and acquires a
    phase linear in x; both integrals are one-dimensional quadratures.
    """
    p = cs.params
    h, B = p.hbar, p.B
    E0, sigma = c0.center, c0.width
    dtau = tau - cs.tau0

    X, _ = quad(lambda s: 1.0 - velocity(cs, s), cs.tau0, tau,
                epsabs=1e-13, epsrel=1e-13)
    I2, _ = quad(lambda s: (1.0 - velocity(cs, s)) * (s - cs.tau0),
                 cs.tau0, tau, epsabs=1e-13, epsrel=1e-13)

    amp = (2.0 * math.pi * sigma * sigma) ** -0.25 \
        * (2.0 * math.pi * h) ** -0.5 * 2.0 * sigma * math.sqrt(math.pi)

    def psi0(x):
        return amp * np.exp(-(sigma * x / h) ** 2
                            - 1j * (E0 * x + 0.5 * B * x * x) / h)

    def psi(x):
        return psi0(x - X) * np.exp(-1j * B / h * (x * dtau - I2))

    x_width = h / sigma
    return psi, X, x_width


def _project_oracle_a(cs: ClassicalState, c0: SpectralAmplitude, tau: float,
                      e_grid):
    p = cs.params
    h, B = p.hbar, p.B
    psi, X, w = _position_packet(cs, c0, tau)
    dtau = tau - cs.tau0
    lo, hi = X - 14.0 * w, X + 14.0 * w

    def project(n_panels):
        nodes, weights = np.polynomial.legendre.leggauss(32)
        edges = np.linspace(lo, hi, n_panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1] - edges[0])
        x = (mid[:, None] + half * nodes[None, :]).ravel()
        wts = np.broadcast_to(half * weights, (n_panels, 32)).ravel()
        # <E|psi> with the conjugate eigenfunction phase
        kern = np.exp(1j * (np.outer(e_grid, x) + 0.5 * B * x * x) / h) \
            / math.sqrt(2.0 * math.pi * h)
        return kern @ (wts * psi(x))

    prev = project(64)
    cur = project(128)
    if np.max(np.abs(cur - prev)) > 1e-10:
        cur, prev = project(256), cur
        if np.max(np.abs(cur - prev)) > 1e-10:
            raise OracleError("position-space projection did not converge")
    return np.exp(-1j * e_grid * dtau / h) * cur


def _transport_oracle_b(cs: ClassicalState, c0: SpectralAmplitude, tau: float,
                        e_grid):
    """Oracle (b): spectral transport equation along characteristics.

    Along E(s) = E - Delta_E(tau) + Delta_E(s) the coupled amplitude
    equations reduce to dc/ds = -(i v(s)/hbar)(E(s) + B (s - tau0)) c.
    """
    p = cs.params
    h, B = p.hbar, p.B
    dE_final, _, _ = _deltas(cs, tau)
    e0 = relativistic_energy(cs, cs.tau0)

    def rhs(s, y):
        c = y[:len(e_grid)] + 1j * y[len(e_grid):]
        e_s = e_grid - dE_final + (relativistic_energy(cs, s) - e0)
        dc = -1j * velocity(cs, s) / h * (e_s + B * (s - cs.tau0)) * c
        return np.concatenate([dc.real, dc.imag])

    c_init = np.asarray(c0(e_grid - dE_final), dtype=complex)
    y0 = np.concatenate([c_init.real, c_init.imag])
    sol = solve_ivp(rhs, (cs.tau0, tau), y0, method="DOP853",
                    rtol=1e-12, atol=1e-14, dense_output=False)
    if not sol.success:
        raise OracleError(f"transport integration failed: {sol.message}")
    y = sol.y[:, -1]
    return y[:len(e_grid)] + 1j * y[len(e_grid):]


def oracle_propagate(cs: ClassicalState, c0: SpectralAmplitude, tau: float,
                     e_grid=None, tol: float = 1e-8):
    """Dual-oracle spectral amplitudes on an E-grid.

    Both methods must agree pointwise to tol, else OracleError; returns
    (e_grid, c) with c the position-space-oracle values.
    """
    if e_grid is None:
        e_grid = default_e_grid(cs, c0, tau)
    c_a = _project_oracle_a(cs, c0, tau, e_grid)
    c_b = _transport_oracle_b(cs, c0, tau, e_grid)
    gap = float(np.max(np.abs(c_a - c_b)))
    if gap > tol:
        raise OracleError(f"oracle disagreement {gap:.3e} exceeds {tol:.1e}")
    return np.asarray(e_grid), c_a


def spectral_norm(e_grid, c) -> float:
    return float(np.sqrt(np.trapezoid(np.abs(c) ** 2, e_grid)))


def expectation_from_grid(cs: ClassicalState, tau: float, e_grid, c) -> float:
    """<total energy> from grid amplitudes: E(tau) - <H0>/2."""
    w = np.abs(c) ** 2
    mean_e = float(np.trapezoid(e_grid * w, e_grid) / np.trapezoid(w, e_grid))
    return relativistic_energy(cs, tau) - 0.5 * mean_e
