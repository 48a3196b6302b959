"""Exact diagonalization, branch labeling, and static spectral diagnostics.

Branch labeling follows the recursive photon-ladder construction: each branch
``i_t`` is seeded with the eigenvector maximizing the overlap with the bare
product state ``|i_t, 0_r>``, and extended photon by photon with the
unassigned eigenvector maximizing ``|<lambda| a^dag |i_t, n_r>_dressed|^2``.
A ladder step where a second eigenvector competes for the continuation marks
a resonance between branches; the hybridization fraction of each step is
recorded and thresholded to detect branch swaps (ionization).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .hamiltonian import CircuitParams, build_static, transmon_eigensystem
from .operators import TruncationSpec, build_operator_set, phi_zpf

__all__ = [
    "BranchTable",
    "KerrReport",
    "CriticalPhoton",
    "assign_branches",
    "branch_table",
    "critical_photon_number",
    "balanced_j",
    "chi_of_n",
    "self_kerr",
    "matrix_element_ratio",
    "bare_dressed_overlap",
    "dressed_frequencies",
    "kerr_report",
]

# Two ladder candidates closer than this are an ambiguous (degenerate)
# assignment; the lower-energy one is taken and the step is flagged.
TIE_TOLERANCE = 1e-6

# Ladder hybridization fraction above which a step counts as a branch swap.
# Well-separated branches sit below 1e-2; resonant anticrossings reach 0.05-0.5.
SWAP_THRESHOLD = 0.03


@dataclass
class BranchTable:
    """Dressed eigenstates labeled by (transmon level, photon number).

    Attributes
    ----------
    labels : dict
        Map (i_t, n_r) -> eigenindex into ``eigenvalues`` / ``eigenvectors``.
    energies : ndarray, shape (max_branch, max_photon + 1)
        Branch energies in GHz.
    hybridization : ndarray, shape (max_branch, max_photon + 1)
        Fraction ov2/(ov1+ov2) of the two best ladder-continuation overlaps
        at each step (0 for n_r = 0 seeds).
    ambiguous : list of (i_t, n_r)
        Steps where the top two candidates were degenerate within the tie
        tolerance.
    """

    labels: dict
    energies: np.ndarray
    hybridization: np.ndarray
    ambiguous: list
    max_branch: int
    max_photon: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    bare_transmon_states: np.ndarray
    params: CircuitParams
    spec: TruncationSpec

    def energy(self, i_t: int, n_r: int) -> float:
        self._check_label(i_t, n_r)
        return float(self.energies[i_t, n_r])

    def state(self, i_t: int, n_r: int) -> np.ndarray:
        self._check_label(i_t, n_r)
        return self.eigenvectors[:, self.labels[(i_t, n_r)]]

    def _check_label(self, i_t: int, n_r: int):
        if (i_t, n_r) not in self.labels:
            raise KeyError(
                f"branch point (i_t={i_t}, n_r={n_r}) is not labeled; table "
                f"covers {self.max_branch} branches x {self.max_photon + 1} photons"
            )

    def to_json(self) -> str:
        payload = {
            "schema_version": 1,
            "max_branch": self.max_branch,
            "max_photon": self.max_photon,
            "labels": {f"{i},{n}": int(idx) for (i, n), idx in self.labels.items()},
            "energies_ghz": self.energies.tolist(),
            "hybridization": self.hybridization.tolist(),
            "ambiguous": [list(x) for x in self.ambiguous],
            "params": self.params.__dict__,
            "truncation": self.spec.__dict__,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


@dataclass(frozen=True)
class CriticalPhoton:
    """Critical photon number for one computational level."""

    n_crit: int
    ionized: bool  # False means no swap found up to max_photon


@dataclass
class KerrReport:
    """Static readout diagnostics extracted from one branch table."""

    chi_z_of_n: np.ndarray          # GHz, index = photon number
    k_r: float                      # GHz
    n_crit_per_level: dict          # level -> CriticalPhoton
    lamb_shifted_f_r: dict          # qubit level -> GHz
    omega_q_bar: float              # GHz, dressed qubit frequency
    balanced_j_value: float | None  # GHz, when applicable

    def to_json(self) -> str:
        payload = {
            "schema_version": 1,
            "chi_z_of_n_ghz": self.chi_z_of_n.tolist(),
            "k_r_ghz": self.k_r,
            "n_crit_per_level": {
                str(k): {"n_crit": v.n_crit, "ionized": v.ionized}
                for k, v in self.n_crit_per_level.items()
            },
            "lamb_shifted_f_r_ghz": {str(k): v for k, v in self.lamb_shifted_f_r.items()},
            "omega_q_bar_ghz": self.omega_q_bar,
            "balanced_j_ghz": self.balanced_j_value,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def assign_branches(h, params: CircuitParams, spec: TruncationSpec,
                    i_t_max: int, n_r_max: int) -> BranchTable:
    """Label eigenstates of ``h`` by recursive photon-ladder overlaps.

    Parameters
    ----------
    h : array or sparse matrix
        Joint Hamiltonian from :func:`~junctionreadout.hamiltonian.build_static`.
    i_t_max : int
        Number of transmon branches to track.
    n_r_max : int
        Highest photon label per branch.
    """
    if i_t_max * (n_r_max + 1) > spec.dim_joint:
        raise ValueError("requested more branch labels than the Hilbert space holds")
    h = h.toarray() if sp.issparse(h) else np.asarray(h)
    evals, evecs = np.linalg.eigh(h)

    _, vt = transmon_eigensystem(params, spec)
    a = np.diag(np.sqrt(np.arange(1, spec.n_fock, dtype=float)), 1).astype(complex)
    # ladder overlaps <lambda| a^dag |mu> for every eigenpair, built once
    v3 = evecs.reshape(spec.dim_transmon, spec.n_fock, -1)
    adag_v = np.einsum("fg,tgm->tfm", a.conj().T, v3).reshape(spec.dim_joint, -1)
    ladder = evecs.conj().T @ adag_v
    del adag_v, v3

    labels: dict = {}
    ambiguous: list = []
    assigned = np.zeros(spec.dim_joint, dtype=bool)
    energies = np.full((i_t_max, n_r_max + 1), np.nan)
    hyb = np.zeros((i_t_max, n_r_max + 1))

    fock0 = np.zeros(spec.n_fock)
    fock0[0] = 1.0
    for i in range(i_t_max):
        bare = np.kron(vt[:, i], fock0)
        ov = np.abs(evecs.conj().T @ bare) ** 2
        ov[assigned] = -1.0
        lam = _pick(ov, evals, ambiguous, (i, 0))
        labels[(i, 0)] = lam
        assigned[lam] = True
        energies[i, 0] = evals[lam]

    for n in range(n_r_max):
        for i in range(i_t_max):
            ov = np.abs(ladder[:, labels[(i, n)]]) ** 2
            ov[assigned] = -1.0
            lam = _pick(ov, evals, ambiguous, (i, n + 1))
            top2 = np.partition(ov, -2)[-2:]
            labels[(i, n + 1)] = lam
            assigned[lam] = True
            energies[i, n + 1] = evals[lam]
            total = top2[0] + top2[1]
            hyb[i, n + 1] = top2[0] / total if total > 0 else 0.0

    return BranchTable(
        labels=labels, energies=energies, hybridization=hyb,
        ambiguous=ambiguous, max_branch=i_t_max, max_photon=n_r_max,
        eigenvalues=evals, eigenvectors=evecs, bare_transmon_states=vt,
        params=params, spec=spec,
    )


def _pick(ov: np.ndarray, evals: np.ndarray, ambiguous: list, key) -> int:
    """Best candidate; on a near-tie take the lower-energy one and flag it."""
    order = np.argsort(ov)[::-1]
    best, second = order[0], order[1]
    if ov[best] - ov[second] < TIE_TOLERANCE and ov[second] > 0:
        ambiguous.append(key)
        if evals[second] < evals[best]:
            best = second
    return int(best)


def branch_table(params: CircuitParams, spec: TruncationSpec,
                 i_t_max: int = 6, n_r_max: int | None = None) -> BranchTable:
    """Convenience wrapper: build H, diagonalize, and label branches."""
    if n_r_max is None:
        n_r_max = spec.n_fock - max(10, spec.n_fock // 5)
    h = build_static(params, spec)
    return assign_branches(h, params, spec, i_t_max, n_r_max)


def critical_photon_number(table: BranchTable, computational_levels=(0, 1),
                           swap_threshold: float = SWAP_THRESHOLD) -> dict:
    """First photon number at which each computational branch swaps.

    A swap is a ladder step whose hybridization fraction reaches
    ``swap_threshold``: the branch continuation is contested by an eigenstate
    belonging to another (higher-excited) branch.  Branches with no such step
    report ``n_crit = max_photon`` with ``ionized=False``.
    """
    out = {}
    for j in computational_levels:
        if j >= table.max_branch:
            raise KeyError(f"branch {j} not present in table")
        hits = np.nonzero(table.hybridization[j] >= swap_threshold)[0]
        if hits.size:
            out[j] = CriticalPhoton(n_crit=int(hits[0]), ionized=True)
        else:
            out[j] = CriticalPhoton(n_crit=table.max_photon, ionized=False)
    return out


def balanced_j(params: CircuitParams, spec: TruncationSpec) -> float:
    """Closed-form charge coupling J* canceling the 0<->1 coupling element.

    Solves  -E_Jc <1_t|sin phi_t|0_t><0_r|sin phi_r|1_r>
            + J <1_t|n_t|0_t><0_r|n_r|1_r> = 0  for J.

    The transmon matrix elements are evaluated for the junction-shunted
    transmon, i.e. with Josephson energy E_J + E_Jc <cos phi_r>_vac where
    <cos phi_r>_vac = exp(-phi_zpf^2 / 2): the coupling junction contributes
    its vacuum-averaged cosine to the transmon potential, and this choice
    reproduces the Purcell-decay minimum of the full model.  The result is
    linear in J, so no root finding is involved.
    """
    if params.e_jc <= 0:
        return 0.0
    pz = phi_zpf(params.z_r)
    e_j_eff = params.e_j + params.e_jc * np.exp(-pz**2 / 2.0)
    _, vt = transmon_eigensystem(params, spec, e_j_override=e_j_eff)
    ops = build_operator_set(spec, params.z_r, params.n_g)
    sin_t = vt[:, 1].conj() @ (ops.sin_phi_t @ vt[:, 0])
    n_t = vt[:, 1].conj() @ (ops.n_t @ vt[:, 0])
    sin_r = ops.sin_phi_r[0, 1]
    n_r = ops.n_r[0, 1]
    denom = n_t * n_r
    if abs(denom) < 1e-12:
        raise ValueError(
            "vanishing 0<->1 charge matrix element; truncation is pathological"
        )
    jstar = params.e_jc * sin_t * sin_r / denom
    if abs(jstar.imag) > 1e-9 * max(abs(jstar.real), 1e-30):
        raise ValueError(f"balanced J came out non-real: {jstar}")
    return float(jstar.real)


def chi_of_n(table: BranchTable, n_r: int) -> float:
    """Photon-number-dependent cross-Kerr shift at n_r photons, in GHz.

    chi_z(n) = (E(1, n+1) - E(1, n) - E(0, n+1) + E(0, n)) / 2.
    """
    e = table.energy
    return (e(1, n_r + 1) - e(1, n_r) - e(0, n_r + 1) + e(0, n_r)) / 2.0


def self_kerr(table: BranchTable) -> float:
    """Resonator self-Kerr: second difference on the ground branch, GHz."""
    e = table.energy
    return e(0, 2) - 2.0 * e(0, 1) + e(0, 0)


def bare_dressed_overlap(table: BranchTable, i_t: int, n_r: int) -> float:
    """Squared overlap between the dressed state (i_t, n_r) and its bare twin."""
    fock = np.zeros(table.spec.n_fock)
    fock[n_r] = 1.0
    bare = np.kron(table.bare_transmon_states[:, i_t], fock)
    return float(np.abs(np.vdot(bare, table.state(i_t, n_r))) ** 2)


def matrix_element_ratio(table: BranchTable, n_r: int) -> float:
    """Residual 0<->1 coupling element relative to the uncancelled one.

    ratio = |<0, n+1| (-E_Jc sin sin + J n n) |1, n>| /
            |<0, n+1| (-E_Jc sin sin)         |1, n>|

    with J taken from the table's circuit parameters and both elements
    evaluated between dressed states of the full Hamiltonian.
    """
    params, spec = table.params, table.spec
    ops = build_operator_set(spec, params.z_r, params.n_g)
    bra = table.state(0, n_r + 1)
    ket = table.state(1, n_r)
    sin_part = -params.e_jc * _kron_apply(ops.sin_phi_t, ops.sin_phi_r, ket, spec)
    charge_part = params.j * _kron_apply(ops.n_t, ops.n_r, ket, spec)
    denom = np.vdot(bra, sin_part)
    if abs(denom) < 1e-14:
        raise ValueError(f"uncancelled coupling element vanishes at n_r={n_r}")
    return float(abs(np.vdot(bra, sin_part + charge_part)) / abs(denom))


def _kron_apply(op_t: np.ndarray, op_r: np.ndarray, vec: np.ndarray,
                spec: TruncationSpec) -> np.ndarray:
    """(op_t kron op_r) @ vec without forming the joint matrix."""
    m = vec.reshape(spec.dim_transmon, spec.n_fock)
    return (op_t @ m @ op_r.T).reshape(-1)


def dressed_frequencies(table: BranchTable) -> tuple[float, dict]:
    """Dressed qubit frequency and Lamb-shifted resonator frequency per level.

    omega_q_bar = E(1,0) - E(0,0);  f_r_bar[i] = E(i,1) - E(i,0).
    """
    e = table.energy
    omega_q = e(1, 0) - e(0, 0)
    f_r_bar = {i: e(i, 1) - e(i, 0) for i in (0, 1) if i < table.max_branch}
    return omega_q, f_r_bar


def kerr_report(table: BranchTable, n_max: int | None = None,
                balanced_j_value: float | None = None,
                swap_threshold: float = SWAP_THRESHOLD) -> KerrReport:
    """Assemble the standard diagnostics from a branch table."""
    if n_max is None:
        n_max = table.max_photon - 1
    chi = np.array([chi_of_n(table, n) for n in range(n_max)])
    omega_q, f_r_bar = dressed_frequencies(table)
    return KerrReport(
        chi_z_of_n=chi,
        k_r=self_kerr(table),
        n_crit_per_level=critical_photon_number(table, swap_threshold=swap_threshold),
        lamb_shifted_f_r=f_r_bar,
        omega_q_bar=omega_q,
        balanced_j_value=balanced_j_value,
    )
