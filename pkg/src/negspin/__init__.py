"""Operator algebra, spectra and dynamics for a spin-1/2 wave equation
carrying a negative-energy branch."""

__version__ = "0.1.0"

from .clifford import CheckEntry, CheckReport, DiracBasis, dirac_representation
from .spectral import (
    PhysicalParams,
    correspondence_check,
    dirac_hamiltonian,
    expectation_report,
    free_spectrum,
    helicity_eigenstates,
    lorentz_transform,
    nonrel_hamiltonian,
)

__all__ = [
    "CheckEntry",
    "CheckReport",
    "DiracBasis",
    "PhysicalParams",
    "__version__",
    "correspondence_check",
    "dirac_hamiltonian",
    "dirac_representation",
    "expectation_report",
    "free_spectrum",
    "helicity_eigenstates",
    "lorentz_transform",
    "nonrel_hamiltonian",
]
