import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glasslab.disorder import DisorderSpec
from glasslab.hamiltonian import (
    build_model,
    directional_derivative,
    energy,
    euclidean_hessian,
    gradient,
    local_derivatives,
    north_pole,
    projected_hessian,
    projector,
    random_sphere_point,
    regularity_report,
    tangent_basis,
    truncate,
)
from glasslab.mixture import MixtureSpec

from conftest import model_from_arrays


def _unit(rng, N):
    v = rng.standard_normal(N)
    return v / np.linalg.norm(v)


def test_energy_at_origin(mixed_model):
    assert energy(mixed_model, np.zeros(12)) == 0.0


def test_two_spin_energy_against_double_loop(rng):
    N = 20
    m = build_model(MixtureSpec.pure(2), N, seed=4)
    J = m.tensors[2].array
    x = random_sphere_point(N, rng, rho=0.7)
    oracle = 0.0
    for i in range(N):
        for j in range(N):
            oracle += J[i, j] * x[i] * x[j]
    oracle /= math.sqrt(N)
    assert energy(m, x) == pytest.approx(oracle, rel=1e-10)


def test_three_spin_all_ones():
    m = model_from_arrays({3: np.ones((3, 3, 3))})
    assert energy(m, np.ones(3)) == pytest.approx(9.0)


def test_three_spin_against_triple_loop(rng):
    N = 6
    m = build_model(MixtureSpec.pure(3), N, seed=2)
    J = m.tensors[3].array
    x = random_sphere_point(N, rng, rho=0.9)
    oracle = sum(
        J[i, j, k] * x[i] * x[j] * x[k] for i in range(N) for j in range(N) for k in range(N)
    ) / N
    assert energy(m, x) == pytest.approx(oracle, rel=1e-12)


def test_gradient_matches_central_differences(rng):
    N = 15
    m = build_model(MixtureSpec({2: 1.0, 3: 0.7}), N, seed=8)
    x = random_sphere_point(N, rng, rho=0.5)
    h = 1e-5
    fd = np.array(
        [(energy(m, x + h * e) - energy(m, x - h * e)) / (2 * h) for e in np.eye(N)]
    )
    g = gradient(m, x)
    assert np.max(np.abs(g - fd)) <= 1e-6 * np.max(np.abs(g))
    for j in (0, 7, 14):
        assert directional_derivative(m, x, np.eye(N)[j], 1) == pytest.approx(g[j], rel=1e-10, abs=1e-12)
    np.testing.assert_allclose(local_derivatives(m, x).gradient, g, rtol=1e-12, atol=1e-12)


def test_second_directional_two_spin(rng):
    N = 9
    m = build_model(MixtureSpec.pure(2), N, seed=1)
    J = m.tensors[2].array
    v = _unit(rng, N)
    expected = v @ (J + J.T) @ v / math.sqrt(N)
    for rho in (0.0, 0.3, 1.0):
        x = random_sphere_point(N, rng, rho=rho) if rho else np.zeros(N)
        assert directional_derivative(m, x, v, 2) == pytest.approx(expected, rel=1e-12)


def test_third_directional_two_spin_vanishes(rng):
    m = build_model(MixtureSpec.pure(2), 7, seed=1)
    assert directional_derivative(m, random_sphere_point(7, rng), _unit(rng, 7), 3) == 0.0


def test_third_directional_against_finite_differences(rng):
    N = 8
    m = build_model(MixtureSpec({2: 1.0, 3: 1.0, 4: 0.5}), N, seed=6)
    x = random_sphere_point(N, rng, rho=0.4)
    v = _unit(rng, N)
    h = 1e-2
    f = lambda t: energy(m, x + t * v)
    fd3 = (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h**3)
    assert directional_derivative(m, x, v, 3) == pytest.approx(fd3, rel=1e-3)


def test_directional_requires_unit_vector(mixed_model):
    with pytest.raises(ValueError):
        directional_derivative(mixed_model, np.zeros(12), np.ones(12), 1)
    with pytest.raises(ValueError):
        directional_derivative(mixed_model, np.zeros(12), np.eye(12)[0], 4)


def test_two_spin_hessian_closed_form(rng):
    N = 10
    m = build_model(MixtureSpec.pure(2), N, seed=2)
    J = m.tensors[2].array
    for x in (np.zeros(N), random_sphere_point(N, rng)):
        np.testing.assert_allclose(euclidean_hessian(m, x), (J + J.T) / math.sqrt(N), rtol=0, atol=1e-14)


def test_hessian_matches_second_differences(mixed_model, rng):
    N = 12
    m = mixed_model
    x = random_sphere_point(N, rng, rho=0.5)
    h = 1e-4
    E = np.eye(N)
    fd = np.empty((N, N))
    for j in range(N):
        for k in range(N):
            fd[j, k] = (
                energy(m, x + h * E[j] + h * E[k])
                - energy(m, x + h * E[j] - h * E[k])
                - energy(m, x - h * E[j] + h * E[k])
                + energy(m, x - h * E[j] - h * E[k])
            ) / (4 * h * h)
    H = euclidean_hessian(m, x)
    assert np.max(np.abs(H - fd)) <= 1e-5 * np.max(np.abs(H))


def test_three_spin_hessian_at_origin_is_zero():
    m = build_model(MixtureSpec.pure(3), 5, seed=0)
    assert not np.any(euclidean_hessian(m, np.zeros(5)))


def test_hessian_invariants(mixed_model, rng):
    x = random_sphere_point(12, rng, rho=0.8)
    H = euclidean_hessian(mixed_model, x)
    assert np.array_equal(H, H.T)
    v = _unit(rng, 12)
    assert directional_derivative(mixed_model, x, v, 2) == pytest.approx(v @ H @ v, rel=1e-10)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_euler_identities_for_pure_models(p, rng):
    # H is p-homogeneous: grad . x = p H and Hess x = (p - 1) grad
    N = 6
    m = build_model(MixtureSpec.pure(p), N, seed=p)
    x = random_sphere_point(N, rng, rho=0.6)
    d = local_derivatives(m, x)
    assert d.gradient @ x == pytest.approx(p * d.energy, rel=1e-10)
    np.testing.assert_allclose(d.hessian @ x, (p - 1) * d.gradient, rtol=1e-10, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.floats(0.0, 1.0), st.integers(0, 10**6))
def test_homogeneity(p, t, seed):
    N = 5
    m = build_model(MixtureSpec.pure(p), N, seed=seed % 17)
    x = random_sphere_point(N, np.random.default_rng(seed), rho=0.9)
    assert energy(m, t * x) == pytest.approx(t**p * energy(m, x), rel=1e-10, abs=1e-12)


def test_point_outside_ball_rejected(mixed_model):
    with pytest.raises(ValueError):
        energy(mixed_model, np.full(12, 1.1))
    with pytest.raises(ValueError):
        energy(mixed_model, np.zeros(11))


def test_projected_at_north_pole(mixed_model):
    x = north_pole(12)
    H = euclidean_hessian(mixed_model, x)
    expected = H.copy()
    expected[-1, :] = 0
    expected[:, -1] = 0
    np.testing.assert_allclose(projected_hessian(mixed_model, x), expected, atol=1e-14)


def test_projected_annihilates_x(mixed_model, rng):
    x = random_sphere_point(12, rng, rho=0.6)
    M = projected_hessian(mixed_model, x)
    scale = np.linalg.norm(euclidean_hessian(mixed_model, x), 2)
    assert np.max(np.abs(M @ x)) <= 1e-10 * scale * np.linalg.norm(x)
    assert np.array_equal(M, M.T)


def test_projector_idempotent(rng):
    x = random_sphere_point(10, rng)
    P = projector(x)
    assert np.max(np.abs(P @ P - P)) <= 1e-12


def test_projected_zero_mode(mixed_model, rng):
    x = random_sphere_point(12, rng, rho=0.3)
    M = projected_hessian(mixed_model, x)
    w, V = np.linalg.eigh(M)
    scale = 1 + np.linalg.norm(euclidean_hessian(mixed_model, x), 2)
    i = int(np.argmin(np.abs(w)))
    assert abs(w[i]) <= 1e-9 * scale
    assert abs(V[:, i] @ x) / np.linalg.norm(x) >= 1 - 1e-8


def test_projected_interlaces_euclidean(rng):
    N = 10
    m = build_model(MixtureSpec({2: 1.0, 3: 1.0}), N, seed=11)
    x = random_sphere_point(N, rng, rho=0.7)
    lam_e = np.linalg.eigvalsh(euclidean_hessian(m, x))
    B = tangent_basis(x)
    lam = np.linalg.eigvalsh(B.T @ euclidean_hessian(m, x) @ B)
    tol = 1e-12 * np.abs(lam_e).max()
    assert np.all(lam_e[:-1] <= lam + tol)
    assert np.all(lam <= lam_e[1:] + tol)
    # the projected spectrum is the tangent spectrum plus the zero mode
    full = np.sort(np.linalg.eigvalsh(projected_hessian(m, x)))
    np.testing.assert_allclose(np.sort(np.append(lam, 0.0)), full, atol=1e-12)


def test_tangent_basis_orthonormal(rng):
    for x in (random_sphere_point(7, rng), north_pole(7), -north_pole(7)):
        B = tangent_basis(x)
        np.testing.assert_allclose(B.T @ B, np.eye(6), atol=1e-14)
        assert np.max(np.abs(B.T @ x)) <= 1e-13


def test_projected_undefined_at_origin(mixed_model):
    with pytest.raises(ValueError):
        projected_hessian(mixed_model, np.zeros(12))


def test_truncate(rng):
    m = build_model(MixtureSpec({2: 1.0, 3: 1.0}), 10, seed=5)
    x = random_sphere_point(10, rng, rho=0.8)
    same = truncate(m, 3)
    np.testing.assert_array_equal(np.linalg.eigvalsh(euclidean_hessian(same, x)), np.linalg.eigvalsh(euclidean_hessian(m, x)))
    t2 = truncate(m, 2)
    assert t2.tensors[2] is m.tensors[2]
    assert truncate(truncate(m, 3), 2).mixture == t2.mixture
    assert set(truncate(truncate(m, 3), 2).tensors) == set(t2.tensors) == {2}
    # Weyl: sorted spectra move by at most |gamma_3 Hess H^(3)|_op
    full = np.linalg.eigvalsh(euclidean_hessian(m, x))
    part = np.linalg.eigvalsh(euclidean_hessian(t2, x))
    only3 = build_model(MixtureSpec.pure(3), 10, seed=5)
    bound = np.linalg.norm(euclidean_hessian(only3, x), 2)
    assert np.max(np.abs(full - part)) <= bound + 1e-12
    with pytest.raises(ValueError):
        truncate(m, 4)


def test_regularity_two_spin_zero_statistics():
    m = build_model(MixtureSpec.pure(2), 20, seed=0)
    r = regularity_report(m, n_points=3, n_dirs=2, seed=1)
    assert r.directional[3] == 0.0
    assert r.hessian_lipschitz == 0.0
    assert r.directional[1] > 0 and r.directional[2] > 0


def test_regularity_stable_under_doubling():
    mix = MixtureSpec({2: 1.0, 3: 1.0})
    a = regularity_report(build_model(mix, 50, seed=1), n_points=3, n_dirs=3, seed=2)
    b = regularity_report(build_model(mix, 100, seed=1), n_points=3, n_dirs=3, seed=2)
    for i in (1, 2, 3):
        assert np.isfinite(a.directional[i]) and np.isfinite(b.directional[i])
        assert 0.5 <= a.directional[i] / b.directional[i] <= 2.0
    assert 0.5 <= a.hessian_lipschitz / b.hessian_lipschitz <= 2.0


def test_model_rejects_mismatched_tensors():
    m = build_model(MixtureSpec({2: 1.0}), 4, seed=0)
    from glasslab.hamiltonian import Model

    with pytest.raises(ValueError):
        Model(mixture=MixtureSpec({2: 1.0, 3: 1.0}), N=4, tensors=m.tensors, disorder=DisorderSpec(), seed=0)


def test_tangent_restrict_and_lift_match_explicit_basis(mixed_model, rng):
    from glasslab.hamiltonian import tangent_lift, tangent_restrict

    x = random_sphere_point(12, rng, rho=0.4)
    H = euclidean_hessian(mixed_model, x)
    B = tangent_basis(x)
    np.testing.assert_allclose(tangent_restrict(H, x), B.T @ H @ B, atol=1e-13)
    y = rng.standard_normal(11)
    np.testing.assert_allclose(tangent_lift(y, x), B @ y, atol=1e-14)
