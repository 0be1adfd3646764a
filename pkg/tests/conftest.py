import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


def random_physical_centered(rng: np.random.Generator, n_max: float = 3.0):
    """Draw (v, theta, n) with v^2 <= n(n+1) guaranteed by construction."""
    n = rng.uniform(0.0, n_max)
    v = rng.uniform(0.0, 1.0) * np.sqrt(n * (n + 1.0))
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return v, theta, n
