"""Elementary operators for the transmon (charge basis) and the readout resonator (Fock basis).

Conventions used throughout the package:

* Transmon charge states run from -N to +N, so the transmon dimension is
  ``2 N + 1``.  The displacement convention is ``exp(i phi_t)|n> = |n+1>``,
  which fixes the signs of ``sin phi_t`` everywhere downstream.
* The resonator phase operator is ``phi_r = phi_zpf (a + a^dag)`` and the
  resonator charge operator is ``n_r = i n_zpf (a^dag - a)`` with
  ``phi_zpf * n_zpf = 1/2`` so that ``[phi_r, n_r] = i``.
* All energies are linear frequencies in GHz (E/h), all times are in ns.
  Propagators multiply by 2*pi internally.
* Joint-space embeddings are ordered transmon (x) resonator, i.e. the joint
  index is ``i_t * n_fock + n_r``.

Matrix functions of the resonator phase (``cos phi_r``, ``sin phi_r``) are
evaluated by spectral decomposition on an enlarged Fock space and then
projected back onto the retained levels, which keeps the truncation error of
the retained block both small and measurable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.constants as _const

__all__ = [
    "RESISTANCE_QUANTUM",
    "TruncationSpec",
    "OperatorSet",
    "phi_zpf",
    "transmon_operators",
    "resonator_operators",
    "embed",
]

# Superconducting resistance quantum h/(4 e^2), in ohms.
RESISTANCE_QUANTUM = _const.h / (4.0 * _const.e**2)


@dataclass(frozen=True)
class TruncationSpec:
    """Hilbert-space truncation settings.

    Parameters
    ----------
    n_charge : int
        Transmon charge cutoff N; charge states run -N..+N (dimension 2N+1).
    n_fock : int
        Number of retained resonator Fock levels.
    n_fock_buffer : int
        Extra Fock levels used only while evaluating matrix functions of the
        resonator phase; discarded after projection.
    """

    n_charge: int = 15
    n_fock: int = 30
    n_fock_buffer: int = 20

    def __post_init__(self):
        if self.n_charge < 5:
            raise ValueError(f"n_charge must be >= 5, got {self.n_charge}")
        if self.n_fock < 2:
            raise ValueError(f"n_fock must be >= 2, got {self.n_fock}")
        if self.n_fock_buffer < 0:
            raise ValueError(f"n_fock_buffer must be >= 0, got {self.n_fock_buffer}")

    @property
    def dim_transmon(self) -> int:
        return 2 * self.n_charge + 1

    @property
    def dim_joint(self) -> int:
        return self.dim_transmon * self.n_fock

    def refined(self, factor: float = 1.5) -> "TruncationSpec":
        """Return a spec with both cutoffs enlarged; used by convergence checks."""
        return TruncationSpec(
            n_charge=int(np.ceil(self.n_charge * factor)),
            n_fock=int(np.ceil(self.n_fock * factor)),
            n_fock_buffer=self.n_fock_buffer,
        )


@dataclass(frozen=True)
class OperatorSet:
    """Single-subsystem operators plus the resonator zero-point scales.

    ``n_t``, ``cos_phi_t`` and ``sin_phi_t`` act on the transmon charge basis;
    ``a``, ``n_r``, ``phi_r``, ``cos_phi_r``, ``sin_phi_r`` act on the retained
    resonator Fock space.  ``phi_zpfr`` is in radians, ``n_zpfr`` dimensionless.
    """

    n_t: np.ndarray
    cos_phi_t: np.ndarray
    sin_phi_t: np.ndarray
    a: np.ndarray
    n_r: np.ndarray
    phi_r: np.ndarray
    cos_phi_r: np.ndarray
    sin_phi_r: np.ndarray
    phi_zpfr: float
    n_zpfr: float


def phi_zpf(z_r: float) -> float:
    """Resonator phase zero-point fluctuation sqrt(pi Z_r / R_Q), in radians.

    Parameters
    ----------
    z_r : float
        Resonator characteristic impedance in ohms; must be positive.
    """
    if z_r <= 0:
        raise ValueError(f"resonator impedance must be positive, got {z_r}")
    return float(np.sqrt(np.pi * z_r / RESISTANCE_QUANTUM))


def transmon_operators(spec: TruncationSpec, n_g: float = 0.0):
    """Charge-basis transmon operators.

    Returns
    -------
    n_t, cos_phi_t, sin_phi_t : ndarray
        Cooper-pair number (diagonal -N..N), and the two quadratures of the
        junction phase with ``exp(i phi_t)|n> = |n+1>``.  The gate charge is
        not baked into the operators; it enters during Hamiltonian assembly.
    """
    del n_g  # stored by the caller, kept in the signature for symmetry
    dim = spec.dim_transmon
    n_t = np.diag(np.arange(-spec.n_charge, spec.n_charge + 1, dtype=float))
    shift_up = np.eye(dim, k=-1)  # <n+1| e^{i phi} |n> = 1
    cos_phi_t = 0.5 * (shift_up + shift_up.T) + 0j
    sin_phi_t = (-0.5j) * shift_up + (0.5j) * shift_up.T
    return n_t.astype(complex), cos_phi_t, sin_phi_t


def _lowering(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def _projected_trig(n_fock: int, n_buffer: int, pz: float):
    """cos/sin of the phase on ``n_fock + n_buffer`` levels, projected back."""
    a_buf = _lowering(n_fock + n_buffer)
    phi_buf = pz * (a_buf + a_buf.conj().T)
    w, v = np.linalg.eigh(phi_buf)
    keep = slice(0, n_fock)
    cos_r = ((v * np.cos(w)) @ v.conj().T)[keep, keep].copy()
    sin_r = ((v * np.sin(w)) @ v.conj().T)[keep, keep].copy()
    return cos_r, sin_r


def resonator_operators(spec: TruncationSpec, z_r: float, buffer_tol: float = 1e-10):
    """Fock-basis resonator operators on the retained ``n_fock`` levels.

    ``cos_phi_r`` and ``sin_phi_r`` are computed by diagonalizing the phase
    operator on ``n_fock + n_fock_buffer`` levels, applying cos/sin to its
    eigenvalues, and projecting the result back onto the retained block.

    Raises
    ------
    ValueError
        If the retained blocks move by more than ``buffer_tol`` when the
        buffer is enlarged (buffer too small for the requested impedance).
    """
    pz = phi_zpf(z_r)
    nz = 1.0 / (2.0 * pz)
    cos_r, sin_r = _projected_trig(spec.n_fock, spec.n_fock_buffer, pz)
    cos_ref, sin_ref = _projected_trig(spec.n_fock, spec.n_fock_buffer + 20, pz)
    drift = max(np.max(np.abs(cos_r - cos_ref)), np.max(np.abs(sin_r - sin_ref)))
    if drift > buffer_tol:
        raise ValueError(
            f"projected cos/sin of the resonator phase move by {drift:.2e} when "
            f"the buffer is enlarged; increase n_fock_buffer "
            f"(currently {spec.n_fock_buffer})"
        )

    a = _lowering(spec.n_fock)
    phi_r = pz * (a + a.conj().T)
    n_r = 1j * nz * (a.conj().T - a)
    return a, n_r, phi_r, cos_r, sin_r, pz, nz


def build_operator_set(spec: TruncationSpec, z_r: float, n_g: float = 0.0) -> OperatorSet:
    """Construct the full operator set for one circuit."""
    n_t, cos_t, sin_t = transmon_operators(spec, n_g)
    a, n_r, phi_r, cos_r, sin_r, pz, nz = resonator_operators(spec, z_r)
    return OperatorSet(
        n_t=n_t, cos_phi_t=cos_t, sin_phi_t=sin_t,
        a=a, n_r=n_r, phi_r=phi_r, cos_phi_r=cos_r, sin_phi_r=sin_r,
        phi_zpfr=pz, n_zpfr=nz,
    )


def embed(op: np.ndarray, subsystem: str, spec: TruncationSpec) -> np.ndarray:
    """Embed a single-subsystem operator on the joint space.

    The ordering is transmon (x) resonator: ``embed(A, "transmon") = A kron I``
    and ``embed(B, "resonator") = I kron B``.
    """
    op = np.asarray(op)
    if subsystem == "transmon":
        if op.shape != (spec.dim_transmon, spec.dim_transmon):
            raise ValueError(
                f"transmon operator has shape {op.shape}, expected "
                f"({spec.dim_transmon}, {spec.dim_transmon})"
            )
        return np.kron(op, np.eye(spec.n_fock))
    if subsystem == "resonator":
        if op.shape != (spec.n_fock, spec.n_fock):
            raise ValueError(
                f"resonator operator has shape {op.shape}, expected "
                f"({spec.n_fock}, {spec.n_fock})"
            )
        return np.kron(np.eye(spec.dim_transmon), op)
    raise ValueError(f"unknown subsystem {subsystem!r}")
