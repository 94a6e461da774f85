import json

import numpy as np
import pytest

from privnet import states
from privnet.linalg import is_psd, partial_transpose, trace_norm
from privnet.states import (
    KeyShieldFlags,
    KeyShieldState,
    NotDensityError,
    NotUnitaryError,
    PrivateStateSpec,
    ZeroBlockError,
    apply_fact1,
    block,
    check_density,
    conditional_shield,
    diag_key,
    key_attack,
    key_pair_projector,
    load_state,
    max_entangled,
    privacy_squeeze_pair,
    private_state,
    random_density,
    random_private_state,
    random_separable,
    random_unitary,
    rebuild_from_witness,
    save_state,
    shield_pt,
    state_pt,
    swap_pbit,
)


def _swap_matrix(d):
    f = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def test_swap_pbit_is_a_density_with_expected_blocks():
    for d_s in (2, 3):
        omega = swap_pbit(d_s)
        check_density(omega.matrix)
        assert omega.d_k == 2 and omega.d_s == d_s
        assert omega.flags.private_by_construction
        assert omega.flags.irreducible_by_construction
        assert omega.flags.shields_separable_by_construction
        ds2 = d_s * d_s
        # X_00 = sigma/2 = I/(2 ds^2); corner block X_01 = F/(2 ds^2)
        assert np.allclose(block(omega, 0, 0, 0, 0), np.eye(ds2) / (2 * ds2))
        assert np.allclose(block(omega, 0, 0, 1, 1), _swap_matrix(d_s) / (2 * ds2))
        # key-off-diagonal sectors vanish
        assert np.allclose(block(omega, 0, 1, 0, 1), 0.0)
        assert np.allclose(block(omega, 1, 0, 0, 1), 0.0)


def test_private_state_assembles_twisted_blocks():
    rng = np.random.default_rng(31)
    d_k, d_s = 3, 2
    ds2 = d_s * d_s
    us = tuple(random_unitary(ds2, rng) for _ in range(d_k))
    sigma = random_density(ds2, rng)
    gamma = private_state(PrivateStateSpec(d_k, d_s, us, sigma))
    check_density(gamma.matrix)
    assert gamma.flags.private_by_construction
    assert not gamma.flags.irreducible_by_construction
    for i in range(d_k):
        for j in range(d_k):
            expect = us[i] @ sigma @ us[j].conj().T / d_k
            assert np.max(np.abs(block(gamma, i, i, j, j) - expect)) < 1e-14
    # all other key blocks vanish
    assert np.max(np.abs(block(gamma, 0, 1, 0, 1))) == 0.0
    assert np.max(np.abs(block(gamma, 0, 1, 1, 0))) == 0.0


def test_private_state_validation_errors():
    eye4 = np.eye(4, dtype=complex)
    sigma = np.eye(4, dtype=complex) / 4.0
    with pytest.raises(NotUnitaryError):
        private_state(PrivateStateSpec(2, 2, (eye4, 2.0 * eye4), sigma))
    with pytest.raises(NotDensityError):
        private_state(PrivateStateSpec(2, 2, (eye4, eye4), np.eye(4, dtype=complex)))
    with pytest.raises(ValueError):
        private_state(PrivateStateSpec(2, 2, (eye4,), sigma))  # wrong count
    with pytest.raises(ValueError):
        private_state(PrivateStateSpec(1, 2, (eye4,), sigma))  # key dim too small


def test_max_entangled():
    for d in (2, 3):
        psi = max_entangled(d)
        check_density(psi.matrix)
        assert psi.d_k == d and psi.d_s == 1
        assert psi.flags.private_by_construction
        for i in range(d):
            for j in range(d):
                assert abs(psi.matrix[i * d + i, j * d + j] - 1.0 / d) < 1e-15


def test_block_matches_manual_slicing():
    gamma = random_private_state(2, 2, 5)
    ds2 = 4
    i, j, k, l = 1, 0, 0, 1
    rows = slice((i * 2 + j) * ds2, (i * 2 + j + 1) * ds2)
    cols = slice((k * 2 + l) * ds2, (k * 2 + l + 1) * ds2)
    assert np.array_equal(block(gamma, i, j, k, l), gamma.matrix[rows, cols])
    with pytest.raises(IndexError):
        block(gamma, 0, 0, 0, 2)


def test_key_attack_dephases_key_blocks():
    gamma = random_private_state(2, 3, 7)
    attacked = key_attack(gamma)
    check_density(attacked.matrix)
    assert not attacked.flags.private_by_construction
    # diagonal key blocks survive, everything else is wiped
    for i in range(2):
        for j in range(2):
            assert np.array_equal(block(attacked, i, j, i, j), block(gamma, i, j, i, j))
            if i != j:
                assert np.max(np.abs(block(attacked, i, i, j, j))) == 0.0
    assert np.array_equal(diag_key(gamma).matrix, attacked.matrix)
    # dephasing is idempotent
    assert np.array_equal(key_attack(attacked).matrix, attacked.matrix)


def test_conditional_shield_recovers_twisted_sigma():
    rng = np.random.default_rng(41)
    d_k, d_s = 2, 2
    us = tuple(random_unitary(4, rng) for _ in range(d_k))
    sigma = random_density(4, rng)
    gamma = private_state(PrivateStateSpec(d_k, d_s, us, sigma))
    for i in range(d_k):
        got = conditional_shield(gamma, i)
        expect = us[i] @ sigma @ us[i].conj().T
        assert np.max(np.abs(got - expect)) < 1e-12


def test_conditional_shield_zero_block_raises():
    # all weight on key outcome (1,1): the (0,0) block is exactly zero
    rho = np.zeros((16, 16), dtype=complex)
    rho[12:16, 12:16] = random_density(4, 3)
    state = KeyShieldState(rho, 2, 2)
    with pytest.raises(ZeroBlockError):
        conditional_shield(state, 0)
    assert is_psd(conditional_shield(state, 1))


def test_state_pt_and_shield_pt_consistency():
    gamma = random_private_state(2, 2, 9)
    pt = state_pt(gamma)
    direct = partial_transpose(gamma.matrix, gamma.structure, (1, 3))
    assert np.array_equal(pt, direct)
    x = block(gamma, 0, 0, 1, 1)
    assert np.array_equal(shield_pt(x, 2), partial_transpose(x, (2, 2), (1,)))


def test_privacy_squeeze_pair_of_swap_pbit():
    m = privacy_squeeze_pair(swap_pbit(2), 0, 1)
    assert m.shape == (2, 2)
    assert abs(m[0, 1] - 0.25) < 1e-12
    assert abs(m[1, 0] - 0.25) < 1e-12
    assert abs(m[0, 0]) < 1e-15 and abs(m[1, 1]) < 1e-15


def test_key_pair_projector_is_diagonal_with_expected_rank():
    p2 = key_pair_projector(0, 1, 2, 2)
    assert np.array_equal(p2, np.diag(np.diag(p2)))
    assert int(np.trace(p2).real) == 2 * 4  # two key corners, ds^2 each
    p1 = key_pair_projector(1, None, 2, 2)
    assert int(np.trace(p1).real) == 4
    assert np.array_equal(p1 @ p1, p1)


def test_apply_fact1_is_projection():
    rho = random_density(16, 13)
    state = KeyShieldState(rho, 2, 2)
    pp = apply_fact1(state, 0, 1)
    p = key_pair_projector(0, 1, 2, 2)
    assert np.max(np.abs(pp - p @ rho @ p)) < 1e-14
    again = apply_fact1(KeyShieldState(pp, 2, 2), 0, 1)
    assert np.array_equal(again, pp)
    single = apply_fact1(state, 1)
    p1 = key_pair_projector(1, None, 2, 2)
    assert np.max(np.abs(single - p1 @ rho @ p1)) < 1e-14


def test_random_unitary_properties_and_determinism():
    u1 = random_unitary(5, 17)
    u2 = random_unitary(5, 17)
    u3 = random_unitary(5, 18)
    assert np.array_equal(u1, u2)
    assert not np.array_equal(u1, u3)
    assert np.max(np.abs(u1 @ u1.conj().T - np.eye(5))) < 1e-12


def test_random_density_and_separable_are_densities():
    rho = random_density(6, 23)
    check_density(rho)
    sep = random_separable(3, 4, terms=5, seed=23)
    check_density(sep)
    # separable across the declared split: PT stays PSD
    assert is_psd(partial_transpose(sep, (3, 4), (1,)))


def test_random_private_state_carries_witness():
    gamma = random_private_state(2, 2, 29)
    assert gamma.witness is not None
    assert np.array_equal(rebuild_from_witness(gamma), gamma.matrix)
    again = random_private_state(2, 2, 29)
    assert np.array_equal(gamma.matrix, again.matrix)


def test_check_density_rejects_bad_inputs():
    with pytest.raises(NotDensityError):
        check_density(np.eye(3, dtype=complex))  # trace 3
    with pytest.raises(NotDensityError):
        check_density(np.diag([1.5, -0.5]).astype(complex))  # negative eigenvalue
    m = np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex)
    with pytest.raises(NotDensityError):
        check_density(m)  # not Hermitian


def test_serialization_roundtrip(tmp_path):
    gamma = random_private_state(2, 3, 37)
    path = tmp_path / "state.json"
    save_state(gamma, path)
    loaded = load_state(path)
    assert np.array_equal(loaded.matrix, gamma.matrix)
    assert loaded.d_k == gamma.d_k and loaded.d_s == gamma.d_s
    assert loaded.flags == gamma.flags
    assert loaded.witness is None  # twisting data is not serialized
    # the file is plain JSON with explicit re/im pairs
    data = json.loads(path.read_text())
    assert set(data) >= {"d_k", "d_s", "flags", "matrix"}


def test_from_json_dict_rejects_malformed_payloads():
    gamma = swap_pbit(2)
    data = states.to_json_dict(gamma)
    broken = dict(data)
    del broken["matrix"]
    with pytest.raises(ValueError):
        states.from_json_dict(broken)
    broken = dict(data)
    broken["d_k"] = 3  # dims no longer match the matrix
    with pytest.raises(ValueError):
        states.from_json_dict(broken)


def test_flags_roundtrip():
    f = KeyShieldFlags(private_by_construction=True)
    assert KeyShieldFlags.from_dict(f.to_dict()) == f
