import numpy as np
import pytest

from kernelim import (
    LaplacianKind,
    convolve,
    diffusion_kernel,
    eigendecompose,
    gft,
    kernel_matrix,
    laplacian,
)
from kernelim.errors import NotSymmetricError

from helpers import random_connected_graph

SQ2 = np.sqrt(2.0)


def test_diagonal_matrix():
    s = eigendecompose(np.diag([3.0, 5.0]))
    assert np.allclose(s.eigenvalues, [3.0, 5.0])
    assert np.allclose(s.eigenvectors, np.eye(2))  # sign rule makes this exact


def test_two_node_hand_decomposition(two_node_spectrum):
    s = two_node_spectrum
    assert np.allclose(s.eigenvalues, [0.0, 2.0], atol=1e-12)
    assert np.allclose(s.eigenvectors[:, 0], [1 / SQ2, 1 / SQ2])
    assert np.allclose(s.eigenvectors[:, 1], [1 / SQ2, -1 / SQ2])


def test_path3_eigenvalues(path3_spectrum):
    assert np.allclose(path3_spectrum.eigenvalues, [0.0, 1.0, 3.0], atol=1e-12)


def test_non_symmetric_rejected():
    with pytest.raises(NotSymmetricError):
        eigendecompose(np.array([[0.0, 1.0], [0.5, 0.0]]))
    with pytest.raises(NotSymmetricError):
        eigendecompose(np.zeros((2, 3)))


def test_spectrum_invariants_random():
    rng = np.random.default_rng(2)
    for _ in range(10):
        g = random_connected_graph(rng, int(rng.integers(3, 40)))
        lap = laplacian(g)
        s = eigendecompose(lap)
        u = s.eigenvectors
        assert np.abs(u.T @ u - np.eye(g.n)).max() <= 1e-9
        assert np.abs((u * s.eigenvalues) @ u.T - lap).max() <= 1e-8 * max(1.0, np.abs(lap).max())
        assert np.all(np.diff(s.eigenvalues) >= -1e-12)


def test_eigendecompose_deterministic():
    rng = np.random.default_rng(3)
    g = random_connected_graph(rng, 25)
    lap = laplacian(g, LaplacianKind.NORMALIZED)
    s1, s2 = eigendecompose(lap), eigendecompose(lap)
    assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
    assert np.array_equal(s1.eigenvectors, s2.eigenvectors)


def test_gft_first_mode(two_node_spectrum):
    u1 = two_node_spectrum.eigenvectors[:, 0]
    assert np.allclose(gft(two_node_spectrum, u1), [1.0, 0.0], atol=1e-12)


def test_gft_round_trip():
    rng = np.random.default_rng(4)
    g = random_connected_graph(rng, 20)
    s = eigendecompose(laplacian(g))
    x = rng.normal(size=20)
    back = gft(s, gft(s, x), direction="inverse")
    assert np.abs(back - x).max() <= 1e-10


def test_gft_delta_gives_vertex_row(path3_spectrum):
    delta = np.array([0.0, 1.0, 0.0])
    assert np.allclose(gft(path3_spectrum, delta), path3_spectrum.eigenvectors[1])


def test_gft_parseval():
    rng = np.random.default_rng(6)
    g = random_connected_graph(rng, 30)
    s = eigendecompose(laplacian(g))
    for _ in range(5):
        x = rng.normal(size=30)
        assert abs(np.linalg.norm(x) - np.linalg.norm(gft(s, x))) <= 1e-10


def test_gft_validation(path3_spectrum):
    with pytest.raises(ValueError):
        gft(path3_spectrum, np.ones(2))
    with pytest.raises(ValueError):
        gft(path3_spectrum, np.ones(3), direction="sideways")


def test_convolve_identity_filter():
    rng = np.random.default_rng(7)
    g = random_connected_graph(rng, 15)
    s = eigendecompose(laplacian(g))
    y = s.eigenvectors @ np.ones(15)  # all-ones Fourier coefficients
    x = rng.normal(size=15)
    assert np.abs(convolve(s, y, x) - x).max() <= 1e-10


def test_convolve_delta_is_kernel_column(path3_spectrum):
    kern = diffusion_kernel(path3_spectrum, 0.7)
    f = gft(path3_spectrum, kern.coefficients, direction="inverse")
    full = kernel_matrix(path3_spectrum, kern)
    for w in range(3):
        delta = np.zeros(3)
        delta[w] = 1.0
        assert np.abs(convolve(path3_spectrum, delta, f) - full[:, w]).max() <= 1e-10


def test_convolve_zero_signal(path3_spectrum):
    y = np.ones(3)
    assert np.allclose(convolve(path3_spectrum, y, np.zeros(3)), 0.0)


def test_convolve_dimension_mismatch(path3_spectrum):
    with pytest.raises(ValueError):
        convolve(path3_spectrum, np.ones(2), np.ones(3))
    with pytest.raises(ValueError):
        convolve(path3_spectrum, np.ones(3), np.ones(4))


def test_convolve_unit_signal_symmetry():
    rng = np.random.default_rng(8)
    g = random_connected_graph(rng, 12)
    s = eigendecompose(laplacian(g))
    f = rng.normal(size=12)
    out = np.zeros((12, 12))
    for v in range(12):
        delta = np.zeros(12)
        delta[v] = 1.0
        out[:, v] = convolve(s, delta, f)
    assert np.abs(out - out.T).max() <= 1e-9
