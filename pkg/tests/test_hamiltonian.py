import numpy as np
import pytest
import scipy.sparse as sp

from junctionreadout.hamiltonian import (
    CircuitParams,
    DriveConfig,
    build_static,
    drive_operator,
    interaction_terms,
    transmon_eigensystem,
)
from junctionreadout.operators import TruncationSpec, build_operator_set

SPEC = TruncationSpec(n_charge=8, n_fock=8, n_fock_buffer=12)
PARAMS = CircuitParams(e_c=0.3, e_j=7.0, e_jc=8.0, j=0.117, n_g=0.0,
                       f_r=9.375, z_r=40.0, kappa=0.02)


class TestCircuitParams:
    def test_total_ej_parameterization(self):
        p = CircuitParams.from_total_ej(e_c=0.3, e_j_total=15.0, e_jc=8.0,
                                        f_r=9.375, z_r=40.0)
        assert p.e_j == pytest.approx(7.0)
        assert p.e_j_total == pytest.approx(15.0)

    @pytest.mark.parametrize("bad", [
        dict(e_c=0.0, e_j=10, f_r=9, z_r=40),
        dict(e_c=0.3, e_j=-1.0, e_jc=0.5, f_r=9, z_r=40),
        dict(e_c=0.3, e_j=10, f_r=0.0, z_r=40),
        dict(e_c=0.3, e_j=10, f_r=9, z_r=-2),
        dict(e_c=0.3, e_j=10, f_r=9, z_r=40, kappa=-0.1),
    ])
    def test_invalid_rejected(self, bad):
        with pytest.raises(ValueError):
            CircuitParams(**bad)

    def test_drive_config_checks_frequency(self):
        with pytest.raises(ValueError):
            DriveConfig(f_d=0.0)


class TestBuildStatic:
    def test_hermitian(self):
        h = build_static(PARAMS, SPEC).toarray()
        scale = np.linalg.norm(h)
        assert np.max(np.abs(h - h.conj().T)) < 1e-12 * scale

    def test_sparse_output(self):
        h = build_static(PARAMS, SPEC)
        assert sp.issparse(h)
        assert h.nnz < np.prod(h.shape)

    def test_decoupled_spectrum_is_product(self):
        p = PARAMS.with_(e_jc=0.0, j=0.0)
        h = build_static(p, SPEC).toarray()
        w = np.linalg.eigvalsh(h)
        wt, _ = transmon_eigensystem(p, SPEC)
        wr = p.f_r * np.arange(SPEC.n_fock)
        product = np.sort((wt[:, None] + wr[None, :]).ravel())
        assert np.allclose(w, product, atol=1e-10)

    def test_decoupled_transmon_gap_matches_standalone(self):
        p = PARAMS.with_(e_jc=0.0, j=0.0)
        h = build_static(p, SPEC).toarray()
        w = np.sort(np.linalg.eigvalsh(h))
        wt, _ = transmon_eigensystem(p, SPEC)
        gap_joint = w[1] - w[0]  # lowest excitation is the qubit here? no: f_r=9.375 > gap
        gap_t = wt[1] - wt[0]
        assert min(gap_joint, p.f_r) == pytest.approx(min(gap_t, p.f_r), abs=1e-10)
        # the transmon gap itself appears in the joint spectrum
        assert np.min(np.abs((w - w[0]) - gap_t)) < 1e-10

    def test_gate_charge_translation_invariance(self):
        # charge-translation oracle: diagonalize both and compare
        spec = TruncationSpec(n_charge=12, n_fock=5, n_fock_buffer=10)
        pa = PARAMS.with_(n_g=0.2)
        pb = PARAMS.with_(n_g=1.2)
        wa = np.linalg.eigvalsh(build_static(pa, spec).toarray())
        wb = np.linalg.eigvalsh(build_static(pb, spec).toarray())
        assert np.allclose(wa[:30], wb[:30], atol=1e-6)

    def test_gate_charge_sign_symmetry(self):
        pa = PARAMS.with_(n_g=0.3)
        pb = PARAMS.with_(n_g=-0.3)
        wa = np.linalg.eigvalsh(build_static(pa, SPEC).toarray())
        wb = np.linalg.eigvalsh(build_static(pb, SPEC).toarray())
        assert np.allclose(wa, wb, atol=1e-9)


class TestInteractionTerms:
    def test_sum_identity(self):
        terms = interaction_terms(PARAMS, SPEC)
        bare = build_static(PARAMS.with_(e_jc=0.0, j=0.0), SPEC).toarray()
        # bare build drops the e_jc cos-cos part entirely, so rebuild by hand
        full = build_static(PARAMS, SPEC).toarray()
        total = bare + terms["coscos"] + terms["sinsin"] + terms["charge"]
        # bare uses e_j only; full has the same bare terms
        assert np.allclose(total, full, atol=1e-12)

    def test_coscos_parity_element_vanishes(self):
        terms = interaction_terms(PARAMS, SPEC)
        bra = _bare_state(PARAMS, SPEC, 1, 0)
        ket = _bare_state(PARAMS, SPEC, 0, 1)
        assert abs(bra.conj() @ terms["coscos"] @ ket) < 1e-12

    def test_balanced_coupling_cancels_01_element(self):
        from junctionreadout.spectrum import balanced_j
        jstar = balanced_j(PARAMS, SPEC)
        p = PARAMS.with_(j=jstar)
        terms = interaction_terms(p, SPEC)
        # the cancellation is defined for the junction-shunted transmon states
        import junctionreadout.operators as ops_mod
        pz = ops_mod.phi_zpf(p.z_r)
        e_j_eff = p.e_j + p.e_jc * np.exp(-pz**2 / 2)
        bra = _bare_state(p, SPEC, 1, 0, e_j_override=e_j_eff)
        ket = _bare_state(p, SPEC, 0, 1, e_j_override=e_j_eff)
        h_int = terms["coscos"] + terms["sinsin"] + terms["charge"]
        assert abs(bra.conj() @ h_int @ ket) < 1e-10


class TestDriveOperator:
    def test_hermitian(self):
        d = drive_operator(SPEC).toarray()
        assert np.allclose(d, d.conj().T)

    def test_vacuum_matrix_element_sign(self):
        d = drive_operator(SPEC).toarray()
        # <0_r| D |1_r> = -i <0|a|1> = -i on every transmon block
        blk = d[:SPEC.n_fock, :SPEC.n_fock]
        assert blk[0, 1] == pytest.approx(-1j)
        assert blk[1, 0] == pytest.approx(+1j)


def _bare_state(params, spec, i_t, n_r, e_j_override=None):
    _, vt = transmon_eigensystem(params, spec, e_j_override=e_j_override)
    fock = np.zeros(spec.n_fock)
    fock[n_r] = 1.0
    return np.kron(vt[:, i_t], fock)
