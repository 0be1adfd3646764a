"""Collective atoms-field Hamiltonian, its ground state, and the field moments.

N identical two-level atoms couple to one field mode.  Because the atoms are
identical they stay on the symmetric ladder |m>, m = 0..N excited atoms, so
the joint basis |m> (x) |n> has dimension (N+1) * fock_dim rather than
2^N * fock_dim.  The ground state is found by sparse Lanczos iteration (dense
diagonalization below a size threshold, and on request), and the field's
moments feed the nonclassicality measure.

In units hbar = 1:

    H = omega a^dag a + omega_eg S_z + (g / sqrt(N)) (S_+ a + S_- a^dag)

plus the counter-rotating pair (g / sqrt(N)) (S_+ a^dag + S_- a) when
enabled.  The excitation-conserving form keeps <a^2> = 0 in nondegenerate
eigenstates, so a nonzero measure requires either the counter-rotating terms
or explicit mixing of a degenerate ground pair; both are exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse
import scipy.sparse.linalg as sparse_linalg

from .moments import SingleModeMoments

#: Largest dimension solved by dense diagonalization when method="auto".
DENSE_CUTOFF = 512

#: Ground pairs closer than this in energy are reported as degenerate.
DEGENERACY_TOL = 1e-10

_HERMITICITY_TOL = 1e-14


@dataclass(frozen=True)
class DickeConfig:
    """System sizes, frequencies and coupling; g_critical is always derived."""

    n_atoms: int
    fock_dim: int
    omega: float = 1.0
    omega_eg: float = 1.0
    g: float = 0.0
    counter_rotating: bool = False

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError(f"n_atoms must be >= 1, got {self.n_atoms}")
        if self.fock_dim < 2:
            raise ValueError(f"fock_dim must be >= 2, got {self.fock_dim}")
        if self.omega <= 0.0 or self.omega_eg <= 0.0:
            raise ValueError("omega and omega_eg must be > 0")
        if self.g < 0.0:
            raise ValueError(f"coupling must be >= 0, got {self.g}")

    @property
    def g_critical(self) -> float:
        return math.sqrt(self.omega * self.omega_eg)

    @property
    def dim(self) -> int:
        return (self.n_atoms + 1) * self.fock_dim


@dataclass(frozen=True)
class SparseOperator:
    """Hermitian operator in compressed sparse row form (all entries real)."""

    dim: int
    matrix: sparse.csr_matrix

    def __post_init__(self):
        if self.matrix.shape != (self.dim, self.dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match dim {self.dim}"
            )

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        """Sorted (row, column, value) triplets of the stored nonzeros."""
        coo = self.matrix.tocoo()
        triplets = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        return [(int(i), int(j), float(x)) for i, j, x in triplets]

    def is_hermitian(self, tol: float = _HERMITICITY_TOL) -> bool:
        diff = self.matrix - self.matrix.T
        return diff.nnz == 0 or float(np.abs(diff.data).max()) <= tol


@dataclass(frozen=True)
class GroundStateResult:
    """Lowest eigenpair plus solver diagnostics.

    ``iterations`` counts operator applications for the iterative path and is
    0 for dense solves.  ``degenerate`` is set when the two lowest values sit
    within DEGENERACY_TOL of each other.
    """

    energy: float
    vector: np.ndarray
    residual: float
    iterations: int
    converged: bool
    degenerate: bool


def _basis_index(m: int, n: int, fock_dim: int) -> int:
    # Atom-major layout: |m> (x) |n>  ->  m * fock_dim + n.
    return m * fock_dim + n


def build_hamiltonian(cfg: DickeConfig) -> SparseOperator:
    """Assemble H on the symmetric-ladder (x) Fock basis.

    Ladder amplitudes: S_+|m> = sqrt((N - m)(m + 1)) |m+1> and S_z|m> =
    (m - N/2)|m>, with a|n> = sqrt(n)|n-1>.  Without counter-rotating terms
    each row holds at most 5 nonzeros (diagonal plus two coupling pairs).
    """
    n_atoms, fock_dim = cfg.n_atoms, cfg.fock_dim
    coupling = cfg.g / math.sqrt(n_atoms)
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []

    def add_pair(i: int, j: int, value: float) -> None:
        rows.extend((i, j))
        cols.extend((j, i))
        vals.extend((value, value))

    for m in range(n_atoms + 1):
        s_z = m - n_atoms / 2.0
        raise_amp = math.sqrt((n_atoms - m) * (m + 1)) if m < n_atoms else 0.0
        for n in range(fock_dim):
            i = _basis_index(m, n, fock_dim)
            rows.append(i)
            cols.append(i)
            vals.append(cfg.omega * n + cfg.omega_eg * s_z)
            if m < n_atoms and n >= 1:  # S_+ a and its conjugate
                add_pair(
                    _basis_index(m + 1, n - 1, fock_dim), i,
                    coupling * raise_amp * math.sqrt(n),
                )
            if cfg.counter_rotating and m < n_atoms and n + 1 < fock_dim:
                add_pair(  # S_+ a^dag and its conjugate
                    _basis_index(m + 1, n + 1, fock_dim), i,
                    coupling * raise_amp * math.sqrt(n + 1),
                )
    matrix = sparse.csr_matrix(
        sparse.coo_matrix((vals, (rows, cols)), shape=(cfg.dim, cfg.dim))
    )
    return SparseOperator(dim=cfg.dim, matrix=matrix)


def _fix_gauge(vector: np.ndarray) -> np.ndarray:
    # Deterministic global sign: largest-magnitude coefficient made positive.
    pivot = int(np.argmax(np.abs(vector)))
    return -vector if vector[pivot] < 0.0 else vector


def _lowest_pair_dense(matrix: sparse.csr_matrix):
    energies, vectors = np.linalg.eigh(matrix.toarray())
    return energies[:2], vectors[:, :2]


def _lowest_pair_lanczos(matrix: sparse.csr_matrix, tol: float, max_iter: int):
    dim = matrix.shape[0]
    matvecs = [0]

    def matvec(x):
        matvecs[0] += 1
        return matrix @ x

    operator = sparse_linalg.LinearOperator((dim, dim), matvec=matvec, dtype=float)
    v0 = np.full(dim, 1.0 / math.sqrt(dim))
    ncv = min(dim, 40)
    # ARPACK's tolerance is relative to the Ritz value, so the requested
    # absolute residual is divided by the matrix norm.  It is additionally
    # floored at 1e-11: a loosely converged run can return a correct ground
    # value next to a wrong-order second value, silently skipping the
    # quasi-degenerate partner the degeneracy flag exists to detect.
    norm_1 = float(np.abs(matrix).sum(axis=0).max())
    arpack_tol = min(tol / max(1.0, norm_1), 1e-11)
    try:
        energies, vectors = sparse_linalg.eigsh(
            operator, k=2, which="SA", v0=v0, tol=arpack_tol,
            maxiter=max_iter, ncv=ncv,
        )
    except sparse_linalg.ArpackNoConvergence as exc:
        if exc.eigenvalues is not None and len(exc.eigenvalues) > 0:
            order = np.argsort(exc.eigenvalues)
            return exc.eigenvalues[order], exc.eigenvectors[:, order], matvecs[0], False
        return None, None, matvecs[0], False
    order = np.argsort(energies)
    return energies[order], vectors[:, order], matvecs[0], True


def ground_state(
    operator: SparseOperator,
    tol: float = 1e-10,
    max_iter: int = 100_000,
    method: str = "auto",
    mix_degenerate: bool = False,
) -> GroundStateResult:
    """Lowest eigenpair of a Hermitian sparse operator.

    method: "auto" uses dense diagonalization up to DENSE_CUTOFF and Lanczos
    (ARPACK, deterministic uniform positive start vector) above it;
    "dense" and "iterative" force the respective path.

    The two lowest values are always computed so near-degenerate ground
    spaces are detected rather than silently resolved.  By default the
    converged Ritz vector is returned as-is; ``mix_degenerate=True`` instead
    returns the equal-weight sum of the two vectors when they are degenerate,
    emulating symmetry-broken numerics.  The global sign is fixed by making
    the largest-magnitude coefficient positive.
    """
    if method not in ("auto", "dense", "iterative"):
        raise ValueError(f"unknown method {method!r}")
    if not operator.is_hermitian(tol=1e-12):
        raise ValueError("operator is not Hermitian")
    matrix = operator.matrix
    use_dense = method == "dense" or (method == "auto" and operator.dim <= DENSE_CUTOFF)
    if use_dense:
        energies, vectors = _lowest_pair_dense(matrix)
        iterations, converged = 0, True
    else:
        energies, vectors, iterations, converged = _lowest_pair_lanczos(
            matrix, tol, max_iter
        )
        if energies is None:
            nan_vec = np.full(operator.dim, np.nan)
            return GroundStateResult(
                energy=math.nan, vector=nan_vec, residual=math.inf,
                iterations=iterations, converged=False, degenerate=False,
            )

    energy = float(energies[0])
    gap = float(energies[1] - energies[0]) if len(energies) > 1 else math.inf
    degenerate = gap < DEGENERACY_TOL
    vector = _fix_gauge(vectors[:, 0])
    if mix_degenerate and degenerate:
        pair = _fix_gauge(vectors[:, 0]) + _fix_gauge(vectors[:, 1])
        vector = _fix_gauge(pair / np.linalg.norm(pair))
    residual = float(np.linalg.norm(matrix @ vector - energy * vector))
    if converged and residual > tol:
        converged = False
    return GroundStateResult(
        energy=energy,
        vector=vector,
        residual=residual,
        iterations=iterations,
        converged=converged,
        degenerate=degenerate,
    )


def field_moments(result: GroundStateResult, cfg: DickeConfig) -> SingleModeMoments:
    """<a>, <a^2>, <a^dag a> of the field factor of a ground-state vector."""
    psi = result.vector.reshape(cfg.n_atoms + 1, cfg.fock_dim)
    root_n = np.sqrt(np.arange(1, cfg.fock_dim))
    a_psi = np.zeros_like(psi)
    a_psi[:, :-1] = root_n[None, :] * psi[:, 1:]
    aa_psi = np.zeros_like(psi)
    aa_psi[:, :-1] = root_n[None, :] * a_psi[:, 1:]
    return SingleModeMoments(
        mean_a=complex(np.vdot(psi, a_psi)),
        a_squared=complex(np.vdot(psi, aa_psi)),
        photon_number=float(np.vdot(a_psi, a_psi).real),
    )
