"""Beam-splitter output covariance matrix and the entanglement criteria on it.

A single mode with centered moments (v e^{i theta}, n) entering one port of a
beam splitter (vacuum at the other) produces a two-mode Gaussian covariance
matrix V = [[A, C], [C^T, B]].  This module builds those 2x2 blocks, computes
the partial-transpose symplectic eigenvalues eta-+ and the logarithmic
negativity, and evaluates the auxiliary separability quantities: the Simon
determinant combination lambda_simon, the variance-sum quantity lambda_dgcz
with its optimal gain, the simple second-moment condition v > n, and the
first-moment condition |<a>|^2 > <a^dag a>.

Quadratures are x = (a^dag + a)/sqrt(2), p = i (a^dag - a)/sqrt(2), so the
vacuum covariance matrix is I/2 and separability of the partial transpose
reads 2 eta^- >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moments import (
    TWO_PI,
    CenteredMoments,
    SingleModeMoments,
    UnphysicalMomentsError,
    center,
    validate_physical,
)

#: Transmission amplitude of the balanced (50:50) splitter.
BALANCED_T = math.sqrt(0.5)

#: 2x2 symplectic unit used in the Simon combination.
J = np.array([[0.0, 1.0], [-1.0, 0.0]])

# Pure states sit exactly on the degeneracy sigma^2 = 4 det V; floating-point
# noise must not produce complex eigenvalues.
CLAMP_TOL = 1e-10

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class BeamSplitterParams:
    """Transmission t, reflection r and phase phi with t^2 + r^2 = 1."""

    t: float
    r: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        if self.t < 0.0 or self.r < 0.0:
            raise ValueError(f"t and r must be >= 0, got t={self.t}, r={self.r}")
        if abs(self.t * self.t + self.r * self.r - 1.0) > _SYMMETRY_TOL:
            raise ValueError(f"t^2 + r^2 must equal 1, got {self.t**2 + self.r**2}")

    @classmethod
    def from_transmission(cls, t: float, phi: float = 0.0) -> "BeamSplitterParams":
        """Build parameters from t alone, with r = sqrt(1 - t^2)."""
        return cls(t=t, r=math.sqrt(max(0.0, 1.0 - float(t) ** 2)), phi=phi)

    @classmethod
    def balanced(cls, phi: float = 0.0) -> "BeamSplitterParams":
        return cls(t=BALANCED_T, r=BALANCED_T, phi=phi)


@dataclass(frozen=True)
class CovarianceBlocks:
    """The 2x2 blocks of the two-mode covariance matrix [[A, C], [C^T, B]].

    A and B are symmetric; C is stored unsymmetrized and enters the assembled
    matrix as C in the upper-right and C^T in the lower-left block.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in ("A", "B", "C"):
            block = np.array(getattr(self, name), dtype=float)
            if block.shape != (2, 2):
                raise ValueError(f"block {name} must be 2x2, got {block.shape}")
            block.setflags(write=False)
            object.__setattr__(self, name, block)
        for name in ("A", "B"):
            block = getattr(self, name)
            if abs(block[0, 1] - block[1, 0]) > _SYMMETRY_TOL:
                raise ValueError(f"block {name} must be symmetric")

    @property
    def V(self) -> np.ndarray:
        """The assembled 4x4 covariance matrix."""
        return np.block([[self.A, self.C], [self.C.T, self.B]])


@dataclass(frozen=True)
class NonclassicalityReport:
    """Every criterion evaluated at one beam-splitter setting."""

    eta_minus: float
    eta_plus: float
    E_N: float
    lambda_simon: float
    lambda_dgcz: float
    dgcz_simple: bool
    hz: bool
    best_t: float
    best_phi: float


def _block_entries(v, theta, n, t, phi, r=None):
    """Entries of A, B, C for centered input (v, theta, n) at splitter (t, phi).

    All arguments broadcast; r defaults to sqrt(1 - t^2).  Output order:
    (a11, a12, a22, b11, b12, b22, c11, c12, c21, c22).
    """
    t2 = np.multiply(t, t)
    r2 = np.multiply(r, r) if r is not None else 1.0 - t2
    tr = np.sqrt(t2 * r2)
    ca, sa = np.cos(theta + 2.0 * phi), np.sin(theta + 2.0 * phi)
    cb, sb = np.cos(theta), np.sin(theta)
    cc, sc = np.cos(theta + phi), np.sin(theta + phi)
    cp, sp = np.cos(phi), np.sin(phi)
    a11 = t2 * (ca * v + n) + 0.5
    a12 = t2 * v * sa
    a22 = t2 * (-ca * v + n) + 0.5
    b11 = r2 * (cb * v + n) + 0.5
    b12 = r2 * v * sb
    b22 = r2 * (-cb * v + n) + 0.5
    c11 = -tr * (cc * v + cp * n)
    c12 = tr * (-sc * v + sp * n)
    c21 = -tr * (sc * v + sp * n)
    c22 = tr * (cc * v - cp * n)
    return a11, a12, a22, b11, b12, b22, c11, c12, c21, c22


def _invariants(a11, a12, a22, b11, b12, b22, c11, c12, c21, c22):
    """det A, det B, det C, tr(A J C J B J C^T J) and det V from block entries.

    Uses the block identity det V = det A det B + (det C)^2 - tr(AJCJBJC^TJ),
    valid for any symmetric A, B.
    """
    det_a = a11 * a22 - a12 * a12
    det_b = b11 * b22 - b12 * b12
    det_c = c11 * c22 - c12 * c21
    trace = (
        a11 * (b11 * c22 * c22 - 2.0 * b12 * c21 * c22 + b22 * c21 * c21)
        + a22 * (b11 * c12 * c12 - 2.0 * b12 * c11 * c12 + b22 * c11 * c11)
        + 2.0
        * a12
        * (b12 * (c11 * c22 + c12 * c21) - b11 * c12 * c22 - b22 * c11 * c21)
    )
    det_v = det_a * det_b + det_c * det_c - trace
    return det_a, det_b, det_c, trace, det_v


def eta_minus_sq(v, theta, n, t, phi):
    """Vectorized (eta^-)^2 of the partial transpose; broadcasts all arguments.

    Inputs are assumed physical; the discriminant is clamped at zero so pure
    states on the degeneracy do not generate complex values.
    """
    inv = _invariants(*_block_entries(v, theta, n, t, phi))
    det_a, det_b, det_c, _, det_v = inv
    sigma = det_a + det_b - 2.0 * det_c
    disc = np.maximum(sigma * sigma - 4.0 * det_v, 0.0)
    return np.maximum(0.5 * (sigma - np.sqrt(disc)), 0.0)


def log_negativity_from_eta_sq(eta_sq):
    """E_N = max(0, -ln 2 eta^-) from (eta^-)^2, vectorized."""
    with np.errstate(divide="ignore"):
        return np.maximum(0.0, -0.5 * np.log(np.maximum(4.0 * eta_sq, 1e-300))) + 0.0


def covariance_from_input(
    c: CenteredMoments, bs: BeamSplitterParams
) -> CovarianceBlocks:
    """Two-mode output covariance blocks for a centered input state.

    With <a^2> = v e^{i theta} and <a^dag a> = n at the fed port and vacuum at
    the idle port, the transformed mode operators a1 = t e^{i phi} a1 + r a2,
    a2 = -r a1 + t e^{-i phi} a2 give

        A11 = t^2 [cos(theta + 2 phi) v + n] + 1/2,   A12 = t^2 v sin(theta + 2 phi),
        B   = same with r^2 and phase theta,
        C   = t r [[-(cos(theta+phi) v + cos(phi) n),  -sin(theta+phi) v + sin(phi) n],
                   [-(sin(theta+phi) v + sin(phi) n),   cos(theta+phi) v - cos(phi) n]].

    Raises UnphysicalMomentsError for inputs failing validate_physical.
    """
    if not validate_physical(c):
        raise UnphysicalMomentsError(f"unphysical centered moments: v={c.v}, n={c.n}")
    a11, a12, a22, b11, b12, b22, c11, c12, c21, c22 = _block_entries(
        c.v, c.theta, c.n, bs.t, bs.phi, r=bs.r
    )
    return CovarianceBlocks(
        A=np.array([[a11, a12], [a12, a22]]),
        B=np.array([[b11, b12], [b12, b22]]),
        C=np.array([[c11, c12], [c21, c22]]),
    )


def _entries_from_blocks(blocks: CovarianceBlocks):
    A, B, C = blocks.A, blocks.B, blocks.C
    return (
        A[0, 0], A[0, 1], A[1, 1],
        B[0, 0], B[0, 1], B[1, 1],
        C[0, 0], C[0, 1], C[1, 0], C[1, 1],
    )


def symplectic_eta(blocks: CovarianceBlocks) -> tuple[float, float]:
    """Symplectic eigenvalues (eta^-, eta^+) of the partially transposed V.

    eta^{+-} = [ (sigma +- sqrt(sigma^2 - 4 det V)) / 2 ]^{1/2} with
    sigma = det A + det B - 2 det C.  A discriminant or det V below -1e-10
    signals an unphysical matrix and raises; smaller excursions are clamped.
    """
    det_a, det_b, det_c, _, det_v = _invariants(*_entries_from_blocks(blocks))
    if det_v < -CLAMP_TOL:
        raise UnphysicalMomentsError(f"covariance matrix has det V = {det_v} < 0")
    sigma = det_a + det_b - 2.0 * det_c
    disc = sigma * sigma - 4.0 * det_v
    if disc < -CLAMP_TOL:
        raise UnphysicalMomentsError(
            f"negative symplectic discriminant {disc} beyond tolerance"
        )
    disc = max(disc, 0.0)
    root = math.sqrt(disc)
    eta_minus = math.sqrt(max(0.5 * (sigma - root), 0.0))
    eta_plus = math.sqrt(0.5 * (sigma + root))
    return eta_minus, eta_plus


def log_negativity(eta_minus: float) -> float:
    """E_N = max(0, -ln(2 eta^-))."""
    if eta_minus <= 0.0:
        raise ValueError(f"eta_minus must be > 0, got {eta_minus}")
    return max(0.0, -math.log(2.0 * eta_minus))


def simon_lambda(blocks: CovarianceBlocks) -> float:
    """Simon combination; a negative value certifies two-mode entanglement.

    lambda = det A det B + (1/4 - |det C|)^2 - tr(A J C J B J C^T J)
             - (det A + det B) / 4.

    This is a yes/no condition, not a measure.
    """
    det_a, det_b, det_c, trace, _ = _invariants(*_entries_from_blocks(blocks))
    return (
        det_a * det_b
        + (0.25 - abs(det_c)) ** 2
        - trace
        - 0.25 * (det_a + det_b)
    )


def dgcz_lambda(c: CenteredMoments, bs: BeamSplitterParams) -> float:
    """Variance-sum separability quantity at its optimal gain; negative means entangled.

    The output moments are <a1^dag a1> = t^2 n, <a2^dag a2> = r^2 n and
    <a1 a2> = <a2 a1> = -t r e^{i phi} v e^{i theta}.  With the gain magnitude
    |c*|^2 = (<a2^dag a2> / <a1^dag a1>)^{1/2} and sign(c) opposite to
    Re{<a1 a2> + <a2 a1>}, the quantity is

        2 |c*|^2 <a1^dag a1> + (2 / |c*|^2) <a2^dag a2>
        + 2 sign(c) Re{<a1 a2> + <a2 a1>}.

    Degenerate splitters (t = 0 or r = 0) leave one output empty and no gain
    can be formed; the quantity is defined as 0 there (no decision possible).
    """
    n1 = bs.t * bs.t * c.n
    n2 = bs.r * bs.r * c.n
    if n1 <= 0.0 or n2 <= 0.0:
        return 0.0
    re_cross = 2.0 * (-bs.t * bs.r * c.v * math.cos(bs.phi + c.theta))
    gain_sq = math.sqrt(n2 / n1)
    sign_c = -1.0 if re_cross > 0.0 else 1.0
    return 2.0 * gain_sq * n1 + 2.0 / gain_sq * n2 + 2.0 * sign_c * re_cross


def dgcz_simple(c: CenteredMoments) -> bool:
    """Simple nonclassicality condition on centered moments: |<a^2>| > <a^dag a>."""
    return c.v > c.n


def hz_condition(m: SingleModeMoments) -> bool:
    """First-moment condition |<a>|^2 > <a^dag a>, on raw (uncentered) moments."""
    return abs(m.mean_a) ** 2 > m.photon_number


def build_report(m: SingleModeMoments, bs: BeamSplitterParams) -> NonclassicalityReport:
    """Evaluate every criterion for the given moments at a fixed splitter setting."""
    c = center(m)
    blocks = covariance_from_input(c, bs)
    eta_m, eta_p = symplectic_eta(blocks)
    return NonclassicalityReport(
        eta_minus=eta_m,
        eta_plus=eta_p,
        E_N=log_negativity(eta_m),
        lambda_simon=simon_lambda(blocks),
        lambda_dgcz=dgcz_lambda(c, bs),
        dgcz_simple=dgcz_simple(c),
        hz=hz_condition(m),
        best_t=bs.t,
        best_phi=bs.phi,
    )
