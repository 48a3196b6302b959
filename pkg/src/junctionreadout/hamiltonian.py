"""Static Hamiltonian of the junction-coupled transmon-resonator circuit.

The joint Hamiltonian, with every energy expressed as a linear frequency in
GHz, is

    H = 4 E_C (n_t - n_g)^2 - E_J cos(phi_t) + f_r a^dag a
        - E_Jc cos(phi_t - phi_r) + J n_t n_r

and the coupling junction term is expanded as

    cos(phi_t - phi_r) = cos(phi_t) cos(phi_r) + sin(phi_t) sin(phi_r).

The gate charge n_g sits entirely on the transmon charge term.  The matrix is
assembled sparse (it is banded in charge; the resonator blocks are dense only
through the projected cos/sin of the phase).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from .operators import OperatorSet, TruncationSpec, build_operator_set

__all__ = [
    "CircuitParams",
    "DriveConfig",
    "build_static",
    "interaction_terms",
    "drive_operator",
    "transmon_hamiltonian",
    "transmon_eigensystem",
]


@dataclass(frozen=True)
class CircuitParams:
    """Circuit energies and rates, all linear frequencies in GHz (E/h).

    Parameters
    ----------
    e_c : float
        Transmon charging energy E_C/h.
    e_j : float
        Transmon Josephson energy E_J/h.
    e_jc : float
        Coupling-junction Josephson energy E_Jc/h.
    j : float
        Charge-charge coupling J/h.
    n_g : float
        Dimensionless gate charge on the transmon island.
    f_r : float
        Bare resonator frequency omega_r / 2 pi.
    z_r : float
        Resonator characteristic impedance in ohms.
    kappa : float
        Resonator decay rate kappa / 2 pi.
    """

    e_c: float
    e_j: float
    f_r: float
    z_r: float
    e_jc: float = 0.0
    j: float = 0.0
    n_g: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        if self.e_c <= 0:
            raise ValueError(f"e_c must be positive, got {self.e_c}")
        if self.e_j + self.e_jc <= 0:
            raise ValueError("total Josephson energy e_j + e_jc must be positive")
        if self.f_r <= 0:
            raise ValueError(f"f_r must be positive, got {self.f_r}")
        if self.z_r <= 0:
            raise ValueError(f"z_r must be positive, got {self.z_r}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")

    @classmethod
    def from_total_ej(cls, e_c: float, e_j_total: float, e_jc: float, **kwargs) -> "CircuitParams":
        """Alternative parameterization holding E_J,total = E_J + E_Jc fixed."""
        return cls(e_c=e_c, e_j=e_j_total - e_jc, e_jc=e_jc, **kwargs)

    @property
    def e_j_total(self) -> float:
        return self.e_j + self.e_jc

    def with_(self, **kwargs) -> "CircuitParams":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class DriveConfig:
    """Resonator drive settings.

    ``f_d`` is the drive carrier (and demodulation) frequency in GHz.  The
    time-dependent Hamiltonian is

        H(t) = H_static + eps(t) cos(2 pi f_d t) * D,    D = -i (a - a^dag),

    where ``eps(t)`` is the pulse envelope in GHz.  In the frame rotating at
    ``f_d`` this reduces to the usual envelope drive with amplitude eps/2, so
    a constant envelope eps fills a resonant resonator to (eps/kappa)^2
    photons.
    """

    f_d: float
    pulse: object = None  # PulseSpec; kept loose to avoid a circular import

    def __post_init__(self):
        if self.f_d <= 0:
            raise ValueError(f"f_d must be positive, got {self.f_d}")


def _charge_term(params: CircuitParams, ops: OperatorSet) -> np.ndarray:
    n_shift = ops.n_t - params.n_g * np.eye(ops.n_t.shape[0])
    return 4.0 * params.e_c * (n_shift @ n_shift)


def transmon_hamiltonian(params: CircuitParams, spec: TruncationSpec,
                         e_j_override: float | None = None) -> np.ndarray:
    """Bare transmon Hamiltonian 4 E_C (n - n_g)^2 - E_J cos(phi), dense."""
    ops = build_operator_set(spec, params.z_r, params.n_g)
    e_j = params.e_j if e_j_override is None else e_j_override
    return _charge_term(params, ops) - e_j * ops.cos_phi_t


def transmon_eigensystem(params: CircuitParams, spec: TruncationSpec,
                         e_j_override: float | None = None):
    """Eigenvalues and eigenvectors of the bare transmon, ascending."""
    return np.linalg.eigh(transmon_hamiltonian(params, spec, e_j_override))


def build_static(params: CircuitParams, spec: TruncationSpec,
                 ops: OperatorSet | None = None) -> sp.csr_matrix:
    """Assemble the static joint Hamiltonian, sparse CSR, in GHz.

    The result is Hermitian to machine precision and ordered transmon (x)
    resonator.
    """
    if ops is None:
        ops = build_operator_set(spec, params.z_r, params.n_g)
    ident_r = sp.identity(spec.n_fock, format="csr")
    n_phot = sp.csr_matrix(ops.a.conj().T @ ops.a)

    h_t = sp.csr_matrix(_charge_term(params, ops) - params.e_j * ops.cos_phi_t)
    h = sp.kron(h_t, ident_r, format="csr")
    h = h + sp.kron(sp.identity(spec.dim_transmon, format="csr"),
                    params.f_r * n_phot, format="csr")
    if params.e_jc != 0.0:
        h = h - params.e_jc * sp.kron(sp.csr_matrix(ops.cos_phi_t),
                                      sp.csr_matrix(ops.cos_phi_r), format="csr")
        h = h - params.e_jc * sp.kron(sp.csr_matrix(ops.sin_phi_t),
                                      sp.csr_matrix(ops.sin_phi_r), format="csr")
    if params.j != 0.0:
        h = h + params.j * sp.kron(sp.csr_matrix(ops.n_t),
                                   sp.csr_matrix(ops.n_r), format="csr")
    h.eliminate_zeros()
    return h


def interaction_terms(params: CircuitParams, spec: TruncationSpec,
                      ops: OperatorSet | None = None) -> dict:
    """The three coupling terms, each on the joint space.

    Returns a dict with keys ``coscos`` (-E_Jc cos cos), ``sinsin``
    (-E_Jc sin sin) and ``charge`` (J n_t n_r); their sum plus the bare
    transmon and resonator terms reproduces :func:`build_static` exactly.
    """
    if ops is None:
        ops = build_operator_set(spec, params.z_r, params.n_g)
    coscos = -params.e_jc * np.kron(ops.cos_phi_t, ops.cos_phi_r)
    sinsin = -params.e_jc * np.kron(ops.sin_phi_t, ops.sin_phi_r)
    charge = params.j * np.kron(ops.n_t, ops.n_r)
    return {"coscos": coscos, "sinsin": sinsin, "charge": charge}


def drive_operator(spec: TruncationSpec) -> sp.csr_matrix:
    """Hermitian drive operator -i (a - a^dag) embedded on the joint space."""
    a = sp.csr_matrix(
        np.diag(np.sqrt(np.arange(1, spec.n_fock, dtype=float)), 1).astype(complex)
    )
    d = -1j * (a - a.conj().T)
    return sp.kron(sp.identity(spec.dim_transmon, format="csr"), d, format="csr")
