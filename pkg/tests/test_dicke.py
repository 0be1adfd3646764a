import math

import numpy as np
import pytest
import scipy.sparse as sparse

from nonclassicality import (
    DickeConfig,
    build_hamiltonian,
    field_moments,
    ground_state,
)


def total_excitation_operator(cfg):
    """a^dag a + S_z + N/2 on the same atom-major basis layout."""
    atoms = sparse.diags(np.arange(cfg.n_atoms + 1, dtype=float))
    field = sparse.diags(np.arange(cfg.fock_dim, dtype=float))
    return sparse.kron(atoms, sparse.identity(cfg.fock_dim)) + sparse.kron(
        sparse.identity(cfg.n_atoms + 1), field
    )


class TestBuildHamiltonian:
    def test_decoupled_limit_is_diagonal(self):
        cfg = DickeConfig(n_atoms=5, fock_dim=7, g=0.0)
        op = build_hamiltonian(cfg)
        diff = op.matrix - sparse.diags(op.matrix.diagonal())
        assert diff.nnz == 0
        assert op.matrix.diagonal().min() == -cfg.omega_eg * cfg.n_atoms / 2.0
        assert op.matrix.diagonal().argmin() == 0  # (m=0, n=0)

    def test_single_atom_ground_energy_below_threshold(self):
        # One atom reduces to the two-level ladder; for g < g_c the decoupled
        # state |g, 0> with energy -omega_eg / 2 stays lowest (the one-photon
        # sector's lowest level is 1/2 - g).
        for g in (0.2, 0.6, 0.9):
            cfg = DickeConfig(n_atoms=1, fock_dim=10, g=g)
            result = ground_state(build_hamiltonian(cfg), method="dense")
            assert math.isclose(result.energy, -0.5, rel_tol=0, abs_tol=1e-12)

    def test_entry_count_scaling(self):
        cfg = DickeConfig(n_atoms=6, fock_dim=9, g=0.7)
        op = build_hamiltonian(cfg)
        per_row = np.diff(op.matrix.indptr)
        assert per_row.max() <= 5
        assert op.matrix.nnz <= 5 * cfg.dim

    def test_counter_rotating_entry_count(self):
        cfg = DickeConfig(n_atoms=6, fock_dim=9, g=0.7, counter_rotating=True)
        per_row = np.diff(build_hamiltonian(cfg).matrix.indptr)
        assert per_row.max() <= 7

    def test_hermitian(self):
        for counter in (False, True):
            cfg = DickeConfig(n_atoms=4, fock_dim=6, g=1.3, counter_rotating=counter)
            assert build_hamiltonian(cfg).is_hermitian()

    def test_entries_sorted_triplets(self):
        cfg = DickeConfig(n_atoms=2, fock_dim=3, g=0.5)
        entries = build_hamiltonian(cfg).entries
        assert entries == sorted(entries)
        assert all(isinstance(i, int) and isinstance(x, float) for i, _, x in entries)

    def test_excitation_number_exactly_conserved_without_counter_terms(self):
        cfg = DickeConfig(n_atoms=5, fock_dim=8, g=1.1)
        h = build_hamiltonian(cfg).matrix
        k = total_excitation_operator(cfg)
        commutator = (h @ k - k @ h).tocsr()
        assert commutator.nnz == 0 or np.abs(commutator.data).max() == 0.0

    def test_counter_terms_break_conservation(self):
        cfg = DickeConfig(n_atoms=5, fock_dim=8, g=1.1, counter_rotating=True)
        h = build_hamiltonian(cfg).matrix
        k = total_excitation_operator(cfg)
        commutator = (h @ k - k @ h).tocsr()
        commutator.eliminate_zeros()
        assert commutator.nnz > 0


class TestGroundState:
    def test_decoupled_ground_state(self):
        cfg = DickeConfig(n_atoms=6, fock_dim=8, g=0.0)
        result = ground_state(build_hamiltonian(cfg), method="dense")
        assert result.energy == pytest.approx(-3.0, abs=1e-12)
        expected = np.zeros(cfg.dim)
        expected[0] = 1.0
        np.testing.assert_allclose(np.abs(result.vector), expected, atol=1e-12)
        assert result.converged and not result.degenerate

    @pytest.mark.parametrize("g_factor", [0.5, 1.0, 1.8])
    def test_iterative_matches_dense(self, g_factor):
        cfg = DickeConfig(n_atoms=4, fock_dim=12, g=g_factor)
        op = build_hamiltonian(cfg)
        dense = ground_state(op, method="dense")
        iterative = ground_state(op, tol=1e-10, method="iterative")
        assert iterative.converged
        assert abs(iterative.energy - dense.energy) < 1e-9
        assert iterative.residual <= 1e-10
        assert iterative.iterations > 0

    def test_variational_bound(self):
        for g in np.linspace(0.0, 2.0, 9):
            cfg = DickeConfig(n_atoms=8, fock_dim=30, g=float(g))
            result = ground_state(build_hamiltonian(cfg), method="dense")
            assert result.energy <= -cfg.omega_eg * cfg.n_atoms / 2.0 + 1e-12

    def test_superradiant_excitation_ratio(self):
        def mean_photon(g):
            cfg = DickeConfig(n_atoms=8, fock_dim=40, g=g)
            result = ground_state(build_hamiltonian(cfg), method="dense")
            return field_moments(result, cfg).photon_number

        assert mean_photon(2.0) / max(mean_photon(0.5), 1e-3) > 10.0

    def test_below_threshold_stays_unexcited(self):
        for g in (0.2, 0.5, 0.8):
            cfg = DickeConfig(n_atoms=8, fock_dim=30, g=g)
            result = ground_state(build_hamiltonian(cfg), method="dense")
            assert field_moments(result, cfg).photon_number < 0.1

    def test_nonconvergence_reported(self):
        cfg = DickeConfig(n_atoms=6, fock_dim=30, g=1.0)
        result = ground_state(
            build_hamiltonian(cfg), tol=1e-12, max_iter=1, method="iterative"
        )
        assert not result.converged

    def test_non_hermitian_rejected(self):
        from nonclassicality import SparseOperator

        bad = SparseOperator(
            dim=2, matrix=sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
        )
        with pytest.raises(ValueError):
            ground_state(bad)

    def test_gauge_fixed_sign(self):
        cfg = DickeConfig(n_atoms=3, fock_dim=9, g=1.4)
        result = ground_state(build_hamiltonian(cfg), method="dense")
        assert result.vector[np.argmax(np.abs(result.vector))] > 0.0

    def test_degenerate_pair_detected_and_mixable(self):
        # Counter-rotating well above threshold: parity doublet.
        cfg = DickeConfig(n_atoms=8, fock_dim=40, g=2.0, counter_rotating=True)
        op = build_hamiltonian(cfg)
        plain = ground_state(op, method="dense")
        assert plain.degenerate
        mixed = ground_state(op, method="dense", mix_degenerate=True)
        assert abs(np.linalg.norm(mixed.vector) - 1.0) < 1e-12
        assert mixed.residual < 1e-8


class TestFieldMoments:
    def test_decoupled_vacuum_moments(self):
        cfg = DickeConfig(n_atoms=4, fock_dim=8, g=0.0)
        m = field_moments(ground_state(build_hamiltonian(cfg), method="dense"), cfg)
        assert m.mean_a == 0.0 and m.a_squared == 0.0 and m.photon_number == 0.0

    def test_definite_excitation_sector_has_no_field_phase(self):
        # The excitation-conserving model's eigenstates carry no <a> or <a^2>.
        cfg = DickeConfig(n_atoms=4, fock_dim=14, g=3.0)
        result = ground_state(build_hamiltonian(cfg), method="dense")
        assert not result.degenerate
        m = field_moments(result, cfg)
        assert abs(m.mean_a) < 1e-10
        assert abs(m.a_squared) < 1e-10
        assert m.photon_number > 1.0

    def test_counter_rotating_generates_second_moment(self):
        cfg = DickeConfig(n_atoms=8, fock_dim=40, g=1.5, counter_rotating=True)
        result = ground_state(build_hamiltonian(cfg), method="dense")
        m = field_moments(result, cfg)
        assert abs(m.a_squared) > 1.0


class TestDickeConfig:
    def test_g_critical_derived(self):
        cfg = DickeConfig(n_atoms=2, fock_dim=4, omega=2.0, omega_eg=0.5)
        assert cfg.g_critical == 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            DickeConfig(n_atoms=0, fock_dim=4)
        with pytest.raises(ValueError):
            DickeConfig(n_atoms=2, fock_dim=1)
        with pytest.raises(ValueError):
            DickeConfig(n_atoms=2, fock_dim=4, g=-0.1)
