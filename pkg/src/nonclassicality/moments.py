"""Single-mode bosonic moment data: validation, centering, squeezed-coherent family.

Every criterion in this package consumes a mode through the pair
(<a^2>, <a^dag a>), optionally after subtracting first moments.  This module
owns the containers for those numbers and the physicality checks that guard
the downstream Gaussian formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Physicality tolerance: double-precision headroom above eigensolver noise.
PHYSICALITY_EPS = 1e-9

# Centered |<a^2>| below this is treated as exactly zero when assigning a phase.
ZERO_MAGNITUDE_CUTOFF = 1e-14


class UnphysicalMomentsError(ValueError):
    """Raised for moment combinations no quantum state can produce."""


def _physicality_slack(v: float, n: float) -> float:
    # Absolute at order-one scales; relative above, because cosh/sinh products
    # at large squeezing carry rounding noise proportional to their magnitude.
    return PHYSICALITY_EPS * max(1.0, n * (n + 1.0), v * v)


def _is_physical(v: float, n: float) -> bool:
    return n >= -PHYSICALITY_EPS and v * v <= n * (n + 1.0) + _physicality_slack(v, n)


@dataclass(frozen=True)
class SingleModeMoments:
    """First and second moments <a>, <a^2>, <a^dag a> of one bosonic mode.

    After subtracting first moments, with v = |<a^2> - <a>^2| and
    n = <a^dag a> - |<a>|^2, every quantum state satisfies n >= 0 and
    v^2 <= n (n + 1) (Cauchy-Schwarz on the centered operators).
    Construction rejects violations beyond the physicality tolerance.
    """

    mean_a: complex
    a_squared: complex
    photon_number: float

    def __post_init__(self):
        object.__setattr__(self, "mean_a", complex(self.mean_a))
        object.__setattr__(self, "a_squared", complex(self.a_squared))
        object.__setattr__(self, "photon_number", float(self.photon_number))
        if self.photon_number < 0.0:
            raise UnphysicalMomentsError(
                f"photon number must be >= 0, got {self.photon_number}"
            )
        d2 = self.a_squared - self.mean_a * self.mean_a
        n = self.photon_number - abs(self.mean_a) ** 2
        if not _is_physical(abs(d2), n):
            raise UnphysicalMomentsError(
                f"centered moments violate v^2 <= n(n+1): v={abs(d2)}, n={n}"
            )


@dataclass(frozen=True)
class CenteredMoments:
    """Centered second moments in polar form.

    v and theta are the magnitude and phase of <a^2> - <a>^2, n is the
    centered occupation <a^dag a> - |<a>|^2.  Physicality is deliberately not
    enforced here so that :func:`validate_physical` can act as a predicate;
    operations consuming these values reject unphysical instances themselves.
    """

    v: float
    theta: float
    n: float

    def __post_init__(self):
        if self.v < 0.0:
            raise ValueError(f"v is a magnitude and must be >= 0, got {self.v}")
        theta = 0.0 if self.v < ZERO_MAGNITUDE_CUTOFF else self.theta % TWO_PI
        object.__setattr__(self, "v", float(self.v))
        object.__setattr__(self, "theta", float(theta))
        object.__setattr__(self, "n", float(self.n))

    def a_squared(self) -> complex:
        """Centered <a^2> as a complex number, v * exp(i theta)."""
        return self.v * cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class SqueezedCoherentParams:
    """Displacement alpha and complex squeezing strength * exp(i angle).

    The state is S(beta) D(alpha) |0> with beta = strength * exp(i angle),
    D(alpha) = exp(alpha a^dag - alpha* a) and the squeeze operator
    S(beta) = exp[(beta* a^2 - beta a^dag^2) / 2], so that
    S^dag a S = cosh(strength) a - exp(i angle) sinh(strength) a^dag.
    """

    alpha: complex
    strength: float
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "strength", float(self.strength))
        object.__setattr__(self, "angle", float(self.angle))
        if self.strength < 0.0:
            raise ValueError(f"squeezing strength must be >= 0, got {self.strength}")


def squeezed_coherent_moments(params: SqueezedCoherentParams) -> SingleModeMoments:
    """Moments of the squeezed coherent state S(beta) D(alpha) |0>.

    With C = cosh r, S = sinh r, r = strength and theta = angle:

        <a>        = C alpha - S e^{i theta} alpha*
        <a^2>      = C^2 alpha^2 + S^2 e^{2i theta} alpha*^2
                     - C S e^{i theta} (2 |alpha|^2 + 1)
        <a^dag a>  = C^2 |alpha|^2 + S^2 (1 + |alpha|^2)
                     - C S (e^{i theta} alpha*^2 + e^{-i theta} alpha^2)

    The sum of the first two terms in <a^2> is required by the alpha -> 0
    limit (squeezed vacuum has <a^2> = -C S e^{i theta}).
    """
    alpha = params.alpha
    c = math.cosh(params.strength)
    s = math.sinh(params.strength)
    ph = cmath.exp(1j * params.angle)
    ac = alpha.conjugate()
    mean_a = c * alpha - s * ph * ac
    a_squared = (
        c * c * alpha * alpha
        + s * s * ph * ph * ac * ac
        - c * s * ph * (2.0 * abs(alpha) ** 2 + 1.0)
    )
    photon_number = (
        c * c * abs(alpha) ** 2
        + s * s * (1.0 + abs(alpha) ** 2)
        - c * s * (ph * ac * ac + ph.conjugate() * alpha * alpha).real
    )
    return SingleModeMoments(mean_a, a_squared, photon_number)


def center(m: SingleModeMoments) -> CenteredMoments:
    """Subtract first moments: v e^{i theta} = <a^2> - <a>^2, n = <a^dag a> - |<a>|^2.

    Raises UnphysicalMomentsError if the centered values violate the
    Cauchy-Schwarz bound beyond tolerance.  A centered occupation within
    tolerance below zero is clamped to zero.
    """
    d2 = m.a_squared - m.mean_a * m.mean_a
    n = m.photon_number - abs(m.mean_a) ** 2
    v = abs(d2)
    if not _is_physical(v, n):
        raise UnphysicalMomentsError(
            f"centered moments violate v^2 <= n(n+1): v={v}, n={n}"
        )
    theta = 0.0 if v < ZERO_MAGNITUDE_CUTOFF else cmath.phase(d2) % TWO_PI
    return CenteredMoments(v=v, theta=theta, n=max(n, 0.0))


def validate_physical(c: CenteredMoments) -> bool:
    """True iff (v, n) could come from a quantum state, within tolerance."""
    return _is_physical(c.v, c.n)
