import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from antichain import SingularFunctionSpec, SurfaceSpec

settings.register_profile(
    "suite",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def salem_default() -> SingularFunctionSpec:
    return SingularFunctionSpec()  # salem, lam = 1/4, depth 52


@pytest.fixture
def identity_f() -> SingularFunctionSpec:
    """lam = 1/2 collapses the recursion to the identity; explicitly allowed
    as a non-singular fixture so surface geometry is exactly predictable."""
    return SingularFunctionSpec(lam=0.5, allow_non_singular=True)


@pytest.fixture
def surface_n3(salem_default) -> SurfaceSpec:
    return SurfaceSpec(n=3, f=salem_default)


@pytest.fixture
def surface_n2(salem_default) -> SurfaceSpec:
    return SurfaceSpec(n=2, f=salem_default)


@pytest.fixture
def identity_n2(identity_f) -> SurfaceSpec:
    return SurfaceSpec(n=2, f=identity_f)


@pytest.fixture
def identity_n3(identity_f) -> SurfaceSpec:
    return SurfaceSpec(n=3, f=identity_f)


def seeded_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def salem_recursive(x: float, lam: float, depth: int = 160) -> float:
    """Independent oracle: evaluate the self-affine recursion directly.

    Terminates exactly on dyadic rationals; otherwise the tail is bounded
    by max(lam, 1-lam)**depth.
    """
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if depth == 0:
        return 0.0
    if x < 0.5:
        return lam * salem_recursive(2.0 * x, lam, depth - 1)
    return lam + (1.0 - lam) * salem_recursive(2.0 * x - 1.0, lam, depth - 1)
