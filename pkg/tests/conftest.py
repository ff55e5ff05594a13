import numpy as np
import pytest

from glasslab.disorder import DisorderSpec, DisorderTensor
from glasslab.hamiltonian import Model, build_model, random_sphere_point
from glasslab.mixture import MixtureSpec


def model_from_arrays(arrays, gammas=None):
    """Model with hand-written coefficient arrays, one per order."""
    gammas = gammas or {p: 1.0 for p in arrays}
    N = next(iter(arrays.values())).shape[0]
    spec = DisorderSpec()
    tensors = {
        p: DisorderTensor(order=p, dim=N, coeffs=np.asarray(a, dtype=float).ravel(), seed=0, spec=spec)
        for p, a in arrays.items()
    }
    return Model(mixture=MixtureSpec(gammas), N=N, tensors=tensors, disorder=spec, seed=0)


@pytest.fixture
def mixed_model():
    return build_model(MixtureSpec({2: 1.0, 3: 1.0}), 12, DisorderSpec("gaussian"), seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def point(N, rho, rng):
    return random_sphere_point(N, rng, rho=rho)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
