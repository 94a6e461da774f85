import numpy as np
import pytest

from privnet import linalg
from privnet.linalg import (
    NoConvergenceError,
    NotHermitianError,
    StructureMismatchError,
    TensorStructure,
    herm_eig,
    herm_eigvals,
    is_psd,
    kron,
    partial_trace,
    partial_transpose,
    singular_values,
    trace_norm,
)


def _random_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2.0


def _random_complex(shape, rng):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_herm_eig_matches_lapack_on_random_matrices():
    rng = np.random.default_rng(11)
    for trial in range(30):
        n = int(rng.integers(2, 41))
        m = _random_hermitian(n, rng)
        w, v = herm_eig(m)
        ref = np.sort(np.linalg.eigvalsh(m))[::-1]
        assert np.max(np.abs(w - ref)) < 1e-10 * max(1.0, np.max(np.abs(ref)))
        # eigenvector columns reconstruct the matrix and are orthonormal
        assert np.max(np.abs((v * w) @ v.conj().T - m)) < 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-12


def test_herm_eig_returns_descending_real_eigenvalues():
    rng = np.random.default_rng(3)
    w, _ = herm_eig(_random_hermitian(17, rng))
    assert w.dtype == np.float64
    assert np.all(np.diff(w) <= 0)


def test_herm_eig_diagonal_identity_and_zero():
    w, v = herm_eig(np.diag([3.0, -1.0, 2.0]).astype(complex))
    assert np.allclose(w, [3.0, 2.0, -1.0])
    assert abs(abs(v[0, 0]) - 1.0) < 1e-12  # eigenvector of eigenvalue 3 is e_0
    w, _ = herm_eig(np.eye(5, dtype=complex))
    assert np.allclose(w, 1.0)
    w, _ = herm_eig(np.zeros((4, 4), dtype=complex))
    assert np.allclose(w, 0.0)


def test_herm_eig_one_by_one():
    w, v = herm_eig(np.array([[2.5]], dtype=complex))
    assert w[0] == 2.5 and v[0, 0] == 1.0


def test_herm_eig_tiny_pivot_no_overflow():
    # A near-diagonal matrix drives the rotation parameter tau to ~1e199;
    # the hypot form must not overflow and the tiny coupling must not move
    # the spectrum at double precision.
    from privnet import _kernels

    m = np.array([[0.0, 1e-200], [1e-200, 1.0]], dtype=complex)
    with np.errstate(over="raise"):
        w = herm_eigvals(m)
        a = m.copy()
        v = np.eye(2, dtype=complex)
        assert _kernels.jacobi_sweeps_numpy(a, v, 1e-250, 50) >= 0
    assert np.allclose(sorted(w), [0.0, 1.0], atol=1e-15)
    assert np.allclose(sorted(np.diagonal(a).real), [0.0, 1.0], atol=1e-15)


def test_herm_eig_degenerate_spectrum():
    # projector with a 3-fold degenerate unit eigenvalue
    rng = np.random.default_rng(8)
    q, _ = np.linalg.qr(_random_complex((6, 6), rng))
    p = q[:, :3] @ q[:, :3].conj().T
    w, v = herm_eig(p)
    assert np.allclose(np.sort(w), [0, 0, 0, 1, 1, 1], atol=1e-11)
    assert np.max(np.abs((v * w) @ v.conj().T - p)) < 1e-11


def test_herm_eig_rejects_non_hermitian():
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(NotHermitianError):
        herm_eig(m)


def test_herm_eig_rejects_non_square():
    with pytest.raises(ValueError):
        herm_eig(np.zeros((2, 3), dtype=complex))


def test_herm_eig_sweep_budget_raises():
    rng = np.random.default_rng(5)
    with pytest.raises(NoConvergenceError):
        herm_eig(_random_hermitian(12, rng), max_sweeps=0)


def test_herm_eigvals_only():
    rng = np.random.default_rng(21)
    m = _random_hermitian(9, rng)
    assert np.allclose(herm_eigvals(m), herm_eig(m)[0])


def test_singular_values_match_numpy_svd():
    rng = np.random.default_rng(14)
    for shape in [(5, 5), (7, 3), (3, 7), (1, 4), (6, 1)]:
        m = _random_complex(shape, rng)
        ref = np.linalg.svd(m, compute_uv=False)
        got = singular_values(m)
        assert got.shape == ref.shape
        assert np.max(np.abs(got - ref)) < 1e-9
        assert np.all(np.diff(got) <= 1e-12)


def test_trace_norm_matches_svd_sum():
    rng = np.random.default_rng(15)
    for _ in range(20):
        m = _random_complex((8, 8), rng)
        assert abs(trace_norm(m) - np.linalg.svd(m, compute_uv=False).sum()) < 1e-9


def test_trace_norm_hermitian_uses_eigenvalue_route_exactly():
    # difference of two densities is Hermitian and rank-deficient; the
    # eigenvalue route keeps full precision where the Gram-matrix route
    # would amplify noise by a square root
    rng = np.random.default_rng(16)
    g = _random_complex((12, 6), rng)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    assert trace_norm(rho - rho) == 0.0
    sigma = np.roll(np.diag(np.diag(rho)), 0)  # same trace, different state
    sigma = sigma / np.trace(sigma).real
    d = rho - sigma
    ref = np.sum(np.abs(np.linalg.eigvalsh(d)))
    assert abs(trace_norm(d) - ref) < 1e-12


def test_trace_norm_of_unitary_is_dimension():
    rng = np.random.default_rng(17)
    q, _ = np.linalg.qr(_random_complex((9, 9), rng))
    assert abs(trace_norm(q) - 9.0) < 1e-9


def test_is_psd():
    rng = np.random.default_rng(18)
    g = _random_complex((6, 6), rng)
    assert is_psd(g @ g.conj().T)
    assert not is_psd(np.diag([1.0, -1e-6]).astype(complex))
    assert is_psd(np.diag([1.0, -1e-12]).astype(complex))  # inside tolerance


def test_kron_matches_numpy():
    rng = np.random.default_rng(19)
    a = _random_complex((3, 3), rng)
    b = _random_complex((4, 4), rng)
    assert np.array_equal(kron(a, b), np.kron(a, b))


def test_tensor_structure_validation():
    assert TensorStructure((2, 3, 4)).dim == 24
    with pytest.raises(ValueError):
        TensorStructure(())
    with pytest.raises(ValueError):
        TensorStructure((2, 0))
    with pytest.raises(ValueError):
        TensorStructure((2.5,))


def test_partial_trace_of_product_state():
    rng = np.random.default_rng(20)
    ga = _random_complex((3, 3), rng)
    gb = _random_complex((4, 4), rng)
    rho_a = ga @ ga.conj().T
    rho_a /= np.trace(rho_a).real
    rho_b = gb @ gb.conj().T
    rho_b /= np.trace(rho_b).real
    rho = np.kron(rho_a, rho_b)
    assert np.max(np.abs(partial_trace(rho, (3, 4), keep=(0,)) - rho_a)) < 1e-12
    assert np.max(np.abs(partial_trace(rho, (3, 4), keep=(1,)) - rho_b)) < 1e-12


def test_partial_trace_three_factors_and_trace_preservation():
    rng = np.random.default_rng(22)
    m = _random_complex((24, 24), rng)
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    red = partial_trace(rho, (2, 3, 4), keep=(0, 2))
    assert red.shape == (8, 8)
    assert abs(np.trace(red).real - 1.0) < 1e-12
    # keeping everything is the identity
    assert np.max(np.abs(partial_trace(rho, (2, 3, 4), keep=(0, 1, 2)) - rho)) < 1e-15


def test_partial_trace_keep_order_and_errors():
    rho = np.eye(6, dtype=complex) / 6.0
    with pytest.raises(StructureMismatchError):
        partial_trace(rho, (2, 2), keep=(0,))
    with pytest.raises(ValueError):
        partial_trace(rho, (2, 3), keep=(2,))
    # empty keep degenerates to the full trace as a 1x1 matrix
    full = partial_trace(rho, (2, 3), keep=())
    assert full.shape == (1, 1) and abs(full[0, 0] - 1.0) < 1e-15


def test_partial_transpose_of_product_state_transposes_factor():
    rng = np.random.default_rng(23)
    a = _random_complex((2, 2), rng)
    b = _random_complex((5, 5), rng)
    rho = np.kron(a, b)
    pt = partial_transpose(rho, (2, 5), transposed=(1,))
    assert np.max(np.abs(pt - np.kron(a, b.T))) < 1e-15


def test_partial_transpose_is_involutive_and_trace_preserving():
    rng = np.random.default_rng(24)
    m = _random_complex((12, 12), rng)
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    pt = partial_transpose(rho, (3, 4), (0,))
    assert abs(np.trace(pt).real - 1.0) < 1e-12
    assert np.max(np.abs(partial_transpose(pt, (3, 4), (0,)) - rho)) == 0.0
    assert np.max(np.abs(pt - pt.conj().T)) < 1e-15  # stays Hermitian


def test_partial_transpose_detects_entanglement_of_bell_state():
    d = 3
    phi = np.zeros((d * d, 1), dtype=complex)
    for i in range(d):
        phi[i * d + i] = 1.0 / np.sqrt(d)
    rho = phi @ phi.conj().T
    pt = partial_transpose(rho, (d, d), (1,))
    assert not is_psd(pt)
    assert abs(trace_norm(pt) - d) < 1e-9  # negativity of the maximally entangled state


def test_partial_transpose_full_and_empty_sets():
    rng = np.random.default_rng(25)
    m = _random_complex((6, 6), rng)
    assert np.array_equal(partial_transpose(m, (2, 3), ()), m)
    assert np.max(np.abs(partial_transpose(m, (2, 3), (0, 1)) - m.T)) == 0.0


def test_partial_transpose_errors():
    m = np.eye(6, dtype=complex)
    with pytest.raises(StructureMismatchError):
        partial_transpose(m, (2, 2), (0,))
    with pytest.raises(ValueError):
        partial_transpose(m, (2, 3), (5,))


def test_structure_accepts_plain_sequences():
    rho = np.eye(4, dtype=complex) / 4.0
    a = partial_trace(rho, TensorStructure((2, 2)), keep=(0,))
    b = partial_trace(rho, [2, 2], keep=(0,))
    assert np.array_equal(a, b)


def test_max_dim_guard(monkeypatch):
    monkeypatch.setattr(linalg, "MAX_DIM", 8)
    with pytest.raises(ValueError):
        herm_eig(np.zeros((9, 9), dtype=complex))
