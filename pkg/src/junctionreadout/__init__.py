"""Simulation toolkit for junction-coupled transmon readout.

The package covers the full chain from circuit Hamiltonian to readout figures
of merit: operator construction, exact diagonalization with branch labeling,
Purcell-decay analysis, Lindblad / quantum-jump / heterodyne-stochastic time
evolution, IQ-plane state discrimination, and derivative-free pulse
optimization.  Units are GHz for energies (E/h) and ns for times throughout.
"""

from .hamiltonian import CircuitParams, DriveConfig, build_static, drive_operator, interaction_terms
from .operators import OperatorSet, TruncationSpec, build_operator_set, embed, phi_zpf
from .spectrum import (
    BranchTable,
    KerrReport,
    assign_branches,
    balanced_j,
    bare_dressed_overlap,
    branch_table,
    chi_of_n,
    critical_photon_number,
    kerr_report,
    matrix_element_ratio,
    self_kerr,
)

__version__ = "0.1.0"
