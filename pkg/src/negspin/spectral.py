"""Free-particle Hamiltonians, their spectra, and eigenstate expectations.

Two 4x4 momentum-space Hamiltonians share the anticommuting-matrix basis:

* ``dirac``:  c alpha.p + m0 c^2 beta, eigenvalues +-sqrt(c^2 p^2 + m0^2 c^4)
* ``nonrel``: c alpha.p + m0 c^2 beta + i beta gamma5 (alpha.p)^2 / (2 m0),
  eigenvalues +-(m0 c^2 + p^2 / 2 m0), i.e. a nonrelativistic dispersion on
  both the positive and the negative branch.

Each eigenvalue is doubly degenerate; within a degenerate pair eigenvectors
are labeled by helicity (projection of spin on the momentum direction), or by
spin-z when the momentum vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import (
    CheckReport,
    DiracBasis,
    I2,
    PAULI,
    dirac_representation,
    entry,
)
from .matrix_core import hermitian_eig, kron

__all__ = [
    "EigenSolution",
    "EnergyEigenstate",
    "ExpectationReport",
    "LabeledEigenstates",
    "PhysicalParams",
    "closed_form_energies",
    "correspondence_check",
    "dirac_hamiltonian",
    "expectation_report",
    "free_spectrum",
    "helicity_eigenstates",
    "lorentz_transform",
    "nonrel_hamiltonian",
]

HAMILTONIANS = ("dirac", "nonrel")


@dataclass(frozen=True)
class PhysicalParams:
    """Unit system: rest mass, light speed, reduced Planck constant, charge.

    The defaults are the natural units used throughout the tests
    (m0 = c = hbar = 1, q = -1).  q keeps its sign.
    """

    m0: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    q: float = -1.0

    def __post_init__(self):
        if not (self.m0 > 0 and self.c > 0 and self.hbar > 0):
            raise ValueError("m0, c and hbar must all be positive")


def _as_momentum(p) -> np.ndarray:
    v = np.asarray(p, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"momentum must be a 3-vector, got shape {v.shape}")
    return v


def _alpha_dot(p: np.ndarray, basis: DiracBasis) -> np.ndarray:
    return p[0] * basis.alpha[0] + p[1] * basis.alpha[1] + p[2] * basis.alpha[2]


def dirac_hamiltonian(p, params: PhysicalParams = PhysicalParams()) -> np.ndarray:
    """c alpha.p + m0 c^2 beta at numeric momentum p."""
    p = _as_momentum(p)
    b = dirac_representation()
    return params.c * _alpha_dot(p, b) + params.m0 * params.c**2 * b.beta


def nonrel_hamiltonian(p, params: PhysicalParams = PhysicalParams()) -> np.ndarray:
    """c alpha.p + m0 c^2 beta + i beta gamma5 (alpha.p)^2 / (2 m0)."""
    p = _as_momentum(p)
    b = dirac_representation()
    ap = _alpha_dot(p, b)
    return (
        params.c * ap
        + params.m0 * params.c**2 * b.beta
        + b.i_beta_gamma5 @ ap @ ap / (2.0 * params.m0)
    )


def _hamiltonian(p, params: PhysicalParams, which: str) -> np.ndarray:
    if which == "dirac":
        return dirac_hamiltonian(p, params)
    if which == "nonrel":
        return nonrel_hamiltonian(p, params)
    raise ValueError(f"unknown hamiltonian {which!r}; expected one of {HAMILTONIANS}")


def closed_form_energies(p_mag: float, params: PhysicalParams, which: str) -> tuple[float, float]:
    """(negative, positive) branch energies at momentum magnitude |p|."""
    if which == "dirac":
        e = float(np.hypot(params.c * p_mag, params.m0 * params.c**2))
    elif which == "nonrel":
        e = params.m0 * params.c**2 + p_mag**2 / (2.0 * params.m0)
    else:
        raise ValueError(f"unknown hamiltonian {which!r}; expected one of {HAMILTONIANS}")
    return (-e, e)


@dataclass(frozen=True, eq=False)
class EigenSolution:
    """Ascending eigenvalues, eigenvector columns, and branch signs."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    branches: tuple[int, int, int, int]
    which: str


def free_spectrum(p, params: PhysicalParams = PhysicalParams(), which: str = "nonrel") -> EigenSolution:
    """Diagonalize the chosen Hamiltonian; branch = sign of eigenvalue."""
    dec = hermitian_eig(_hamiltonian(p, params, which))
    branches = tuple(1 if e > 0 else -1 for e in dec.eigenvalues)
    return EigenSolution(
        eigenvalues=dec.eigenvalues,
        eigenvectors=dec.eigenvectors,
        branches=branches,
        which=which,
    )


@dataclass(frozen=True, eq=False)
class EnergyEigenstate:
    energy: float
    helicity: int
    spinor: np.ndarray


@dataclass(frozen=True, eq=False)
class LabeledEigenstates:
    """Four eigenstates sorted by (energy, label).

    ``label_kind`` is "helicity" for p != 0 and "spin_z" at p = 0, where
    helicity is undefined and the spin projection on z labels the pair.
    """

    states: tuple[EnergyEigenstate, ...]
    label_kind: str


def helicity_eigenstates(p, params: PhysicalParams = PhysicalParams(), which: str = "nonrel") -> LabeledEigenstates:
    """Simultaneous eigenstates of the Hamiltonian and the spin projector.

    Within each doubly degenerate energy eigenspace the spin projector
    (Sigma.p_hat, or Sigma_z at p = 0) is diagonalized in the subspace, so
    the returned spinors never depend on how the backend oriented the
    degenerate pair.
    """
    p = _as_momentum(p)
    sol = free_spectrum(p, params, which)
    p_mag = float(np.linalg.norm(p))
    if p_mag > 0.0:
        direction = p / p_mag
        kind = "helicity"
    else:
        direction = np.array([0.0, 0.0, 1.0])
        kind = "spin_z"
    spin_op = kron(I2, sum(direction[i] * PAULI[i] for i in range(3)))

    states = []
    for lo, hi in ((0, 2), (2, 4)):
        block = sol.eigenvectors[:, lo:hi]
        proj = block.conj().T @ spin_op @ block
        labels, rot = np.linalg.eigh(proj)
        rotated = block @ rot
        for j in range(hi - lo):
            label = int(round(labels[j].real))
            if abs(labels[j].real - label) > 1e-9 or label not in (-1, 1):
                raise RuntimeError(
                    f"spin label did not quantize to +-1: {labels[j]!r}"
                )
            spinor = rotated[:, j].copy()
            spinor.setflags(write=False)
            states.append(
                EnergyEigenstate(
                    energy=float(sol.eigenvalues[lo + j]),
                    helicity=label,
                    spinor=spinor,
                )
            )
    states.sort(key=lambda s: (s.energy, s.helicity))
    return LabeledEigenstates(states=tuple(states), label_kind=kind)


@dataclass(frozen=True, eq=False)
class ExpectationReport:
    """Explicit spinor expectations on one labeled eigenstate."""

    energy: float
    branch: int
    helicity: int
    mean_alpha: np.ndarray
    mean_beta: float
    mean_i_beta_gamma5: float


def _select_state(labeled: LabeledEigenstates, branch: int, helicity: int) -> EnergyEigenstate:
    for s in labeled.states:
        if (1 if s.energy > 0 else -1) == branch and s.helicity == helicity:
            return s
    raise ValueError(f"no state with branch {branch} and helicity {helicity}")


def expectation_report(
    p,
    params: PhysicalParams = PhysicalParams(),
    which: str = "nonrel",
    branch: int = 1,
    helicity: int = 1,
) -> ExpectationReport:
    """<alpha_i>, <beta>, <i beta gamma5> computed from the spinor itself.

    On an energy eigenstate the anticommutators {H, O} pin these to
    <alpha> = c p / E and <beta> = m0 c^2 / E for both Hamiltonians, plus
    <i beta gamma5> = p^2 / (2 m0 E) for ``nonrel`` (it vanishes for
    ``dirac``).  The function reports the raw spinor values; the identities
    are asserted by the callers and the test suite.
    """
    if branch not in (-1, 1) or helicity not in (-1, 1):
        raise ValueError("branch and helicity must each be +1 or -1")
    labeled = helicity_eigenstates(p, params, which)
    state = _select_state(labeled, branch, helicity)
    b = dirac_representation()
    psi = state.spinor
    mean_alpha = np.array(
        [float((psi.conj() @ (b.alpha[i] @ psi)).real) for i in range(3)]
    )
    mean_alpha.setflags(write=False)
    return ExpectationReport(
        energy=state.energy,
        branch=branch,
        helicity=helicity,
        mean_alpha=mean_alpha,
        mean_beta=float((psi.conj() @ (b.beta @ psi)).real),
        mean_i_beta_gamma5=float((psi.conj() @ (b.i_beta_gamma5 @ psi)).real),
    )


def lorentz_transform(
    e_prime: float,
    p_prime,
    velocity,
    params: PhysicalParams = PhysicalParams(),
) -> tuple[float, np.ndarray]:
    """Boost an (energy, momentum) pair by a frame velocity.

    The momentum line is applied first, then the energy line
    ``E = v.p + E' / gamma``; both hold for negative E' unchanged.
    """
    p_prime = _as_momentum(p_prime)
    v = np.asarray(velocity, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"velocity must be a 3-vector, got shape {v.shape}")
    v2 = float(v @ v)
    c2 = params.c**2
    if v2 >= c2:
        raise ValueError(f"superluminal frame velocity: |v|^2 = {v2} >= c^2 = {c2}")
    gamma = 1.0 / np.sqrt(1.0 - v2 / c2)
    if v2 > 0.0:
        parallel = (gamma - 1.0) * v * float(p_prime @ v) / v2
    else:
        parallel = np.zeros(3)
    p = p_prime + parallel + gamma * v * e_prime / c2
    e = float(v @ p) + e_prime / gamma
    return e, p


def correspondence_check(
    p,
    params: PhysicalParams = PhysicalParams(),
    branch: int = 1,
) -> CheckReport:
    """E = v.p + m0 c^2 / gamma with v := <c alpha>, 1/gamma := <beta>.

    Both expectations come from explicit Dirac eigenstates of the requested
    branch (one check per helicity label), so the identity is exercised on
    the negative branch exactly as written, with no sign adjustments.
    """
    p = _as_momentum(p)
    labeled = helicity_eigenstates(p, params, which="dirac")
    b = dirac_representation()
    entries = []
    for hel in (-1, 1):
        state = _select_state(labeled, branch, hel)
        psi = state.spinor
        v = np.array(
            [params.c * float((psi.conj() @ (b.alpha[i] @ psi)).real) for i in range(3)]
        )
        inv_gamma = float((psi.conj() @ (b.beta @ psi)).real)
        rhs = float(v @ p) + params.m0 * params.c**2 * inv_gamma
        resid = abs(state.energy - rhs) / abs(state.energy)
        entries.append(entry(f"correspondence_helicity_{hel:+d}", resid, 1e-10))
    return CheckReport(entries=tuple(entries))
