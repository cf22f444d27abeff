import itertools
import math

import numpy as np
import pytest
import scipy.linalg
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from belldisc import bellzoo as bz
from belldisc.qcore import (
    UsageError,
    ValidationError,
    basis_ket,
    eigh,
    fidelity_with_pure,
    partial_trace,
    partial_transpose,
    permute_qubits,
    projector,
    relative_entropy,
    tensor,
    von_neumann_entropy,
)
from conftest import random_density, random_ket, seeds


# --- brute-force oracles, written index by index -------------------------

def bits(index, n):
    return [(index >> (n - 1 - q)) & 1 for q in range(n)]


def index_of(b):
    return int("".join(map(str, b)), 2) if b else 0


def oracle_partial_trace(rho, keep):
    n = int(math.log2(rho.shape[0]))
    out = np.zeros((2 ** len(keep), 2 ** len(keep)), dtype=complex)
    for r in range(2**n):
        for c in range(2**n):
            br, bc = bits(r, n), bits(c, n)
            if any(br[q] != bc[q] for q in range(n) if q not in keep):
                continue
            out[index_of([br[q] for q in keep]), index_of([bc[q] for q in keep])] += rho[r, c]
    return out


def oracle_permute(rho, perm):
    n = len(perm)
    out = np.zeros_like(rho)
    for r in range(2**n):
        for c in range(2**n):
            br, bc = bits(r, n), bits(c, n)
            nr, nc = [0] * n, [0] * n
            for k in range(n):
                nr[perm[k]], nc[perm[k]] = br[k], bc[k]
            out[index_of(nr), index_of(nc)] = rho[r, c]
    return out


def oracle_partial_transpose(rho, qubits):
    n = int(math.log2(rho.shape[0]))
    out = np.zeros_like(rho)
    for r in range(2**n):
        for c in range(2**n):
            br, bc = bits(r, n), bits(c, n)
            for q in qubits:
                br[q], bc[q] = bc[q], br[q]
            out[index_of(br), index_of(bc)] = rho[r, c]
    return out


# --- tensor / projector ----------------------------------------------------

def test_tensor_basis():
    psi = tensor([basis_ket("0"), basis_ket("0")])
    assert psi[0] == 1 and np.count_nonzero(psi) == 1


def test_tensor_bell_pair_amplitudes():
    psi = tensor([bz.bell(1), bz.bell(1)])
    expected = np.zeros(16)
    for b in ("0000", "0011", "1100", "1111"):
        expected[int(b, 2)] = 0.5
    np.testing.assert_allclose(psi, expected, atol=1e-15)


def test_tensor_identity_matrices():
    np.testing.assert_allclose(tensor([np.eye(2) / 2, np.eye(2) / 2]), np.eye(4) / 4)


def test_tensor_leftmost_is_most_significant():
    assert np.argmax(np.abs(tensor([basis_ket("1"), basis_ket("0")]))) == 0b10


def test_tensor_errors():
    with pytest.raises(UsageError):
        tensor([])
    with pytest.raises(UsageError):
        tensor([basis_ket("0"), np.eye(2)])


def test_projector_examples():
    np.testing.assert_allclose(projector(basis_ket("0")), np.diag([1, 0]))
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(projector(bz.bell(1)), expected, atol=1e-15)


def test_projector_rejects_unnormalized():
    with pytest.raises(ValidationError):
        projector(np.array([1.0, 1.0]))


@given(seeds)
def test_projector_idempotent(seed):
    p = projector(random_ket(np.random.default_rng(seed), 3))
    assert np.max(np.abs(p @ p - p)) <= 1e-12
    assert abs(np.trace(p) - 1) <= 1e-12


# --- partial trace -----------------------------------------------------------

def test_partial_trace_bell_marginal():
    np.testing.assert_allclose(partial_trace(projector(bz.bell(1)), [0]), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_smolin_ab():
    rho = bz.smolin()
    np.testing.assert_allclose(partial_trace(rho, [0, 1]), oracle_partial_trace(rho, [0, 1]))
    np.testing.assert_allclose(partial_trace(rho, [0, 1]), np.eye(4) / 4, atol=1e-15)


def test_partial_trace_keep_all(rng):
    rho = random_density(rng, 3)
    np.testing.assert_allclose(partial_trace(rho, [0, 1, 2]), rho)


@pytest.mark.parametrize("keep", [[0], [2], [1, 3], [3, 1], [2, 0, 3]])
def test_partial_trace_matches_oracle(rng, keep):
    rho = random_density(rng, 4)
    np.testing.assert_allclose(partial_trace(rho, keep), oracle_partial_trace(rho, keep), atol=1e-14)


def test_partial_trace_errors():
    with pytest.raises(UsageError):
        partial_trace(np.eye(4) / 4, [2])
    with pytest.raises(UsageError):
        partial_trace(np.eye(4) / 4, [])


@given(seeds)
def test_partial_trace_of_product(seed):
    rng = np.random.default_rng(seed)
    r1, r2 = random_density(rng, 2), random_density(rng, 1)
    assert np.max(np.abs(partial_trace(tensor([r1, r2]), [0, 1]) - r1)) <= 1e-12


# --- permutations --------------------------------------------------------------

def test_permute_identity(rng):
    rho = random_density(rng, 3)
    np.testing.assert_array_equal(permute_qubits(rho, [0, 1, 2]), rho)


def test_permute_basis_ket():
    np.testing.assert_array_equal(permute_qubits(basis_ket("01"), [1, 0]), basis_ket("10"))


def test_permute_smolin_bc_swap_exact():
    rho = bz.smolin()
    assert np.max(np.abs(permute_qubits(rho, [0, 2, 1, 3]) - rho)) <= 1e-12


@pytest.mark.parametrize("perm", list(itertools.permutations(range(4)))[::5])
def test_permute_matches_oracle(rng, perm):
    rho = random_density(rng, 4)
    np.testing.assert_allclose(permute_qubits(rho, perm), oracle_permute(rho, perm))


def test_permute_ket_consistent_with_matrix(rng):
    psi = random_ket(rng, 4)
    perm = [2, 0, 3, 1]
    np.testing.assert_allclose(projector(permute_qubits(psi, perm)),
                               permute_qubits(projector(psi), perm), atol=1e-15)


def test_permute_rejects_non_bijection():
    with pytest.raises(UsageError):
        permute_qubits(np.eye(4) / 4, [0, 0])


@settings(max_examples=40)
@given(seeds, st.permutations(range(4)))
def test_permute_preserves_spectrum_and_entropy(seed, perm):
    rho = random_density(np.random.default_rng(seed), 4)
    moved = permute_qubits(rho, perm)
    np.testing.assert_allclose(eigh(moved).eigenvalues, eigh(rho).eigenvalues, atol=1e-10)
    assert abs(von_neumann_entropy(moved) - von_neumann_entropy(rho)) <= 1e-10
    assert abs(np.trace(moved) - 1) <= 1e-12


# --- partial transpose -----------------------------------------------------------

def test_partial_transpose_product_stays_psd(rng):
    ra, rb = random_density(rng, 1), random_density(rng, 1)
    pt = partial_transpose(tensor([ra, rb]), [1])
    np.testing.assert_allclose(pt, np.kron(ra, rb.T))
    assert eigh(pt).eigenvalues[-1] >= -1e-12


def test_partial_transpose_bell_spectrum():
    lam = eigh(partial_transpose(projector(bz.bell(1)), [1])).eigenvalues
    np.testing.assert_allclose(lam, [0.5, 0.5, 0.5, -0.5], atol=1e-14)


@pytest.mark.parametrize("qubits", [[0], [3], [1, 2], [0, 2, 3]])
def test_partial_transpose_matches_oracle_and_involution(rng, qubits):
    rho = random_density(rng, 4)
    pt = partial_transpose(rho, qubits)
    np.testing.assert_allclose(pt, oracle_partial_transpose(rho, qubits))
    np.testing.assert_array_equal(partial_transpose(pt, qubits), rho)
    assert np.max(np.abs(pt - pt.conj().T)) <= 1e-15
    assert abs(np.trace(pt) - 1) <= 1e-12


def test_partial_transpose_bad_index():
    with pytest.raises(UsageError):
        partial_transpose(np.eye(4) / 4, [2])


# --- eigh / entropies ---------------------------------------------------------------

def test_eigh_examples():
    np.testing.assert_allclose(eigh(np.diag([0.3, 0.7])).eigenvalues, [0.7, 0.3])
    np.testing.assert_allclose(eigh(projector(bz.bell(1))).eigenvalues, [1, 0, 0, 0], atol=1e-15)
    lam = eigh(bz.rho3((1, 2, 3))).eigenvalues
    np.testing.assert_allclose(lam, [1 / 3] * 3 + [0] * 13, atol=1e-14)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        eigh(np.array([[0, 1], [0, 0]]))


@given(seeds)
def test_eigh_reconstruction(seed):
    h = random_density(np.random.default_rng(seed), 3) - 0.1 * np.eye(8)
    lam, v = eigh(h)
    assert np.all(np.diff(lam) <= 0)
    assert np.max(np.abs(v @ np.diag(lam) @ v.conj().T - h)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(8))) <= 1e-10


def test_entropy_examples():
    assert von_neumann_entropy(projector(bz.bell(3))) == pytest.approx(0, abs=1e-12)
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2, abs=1e-12)
    assert von_neumann_entropy(bz.rho3((1, 2, 3))) == pytest.approx(1.584962500721, abs=1e-11)


def test_entropy_range(rng):
    for n in (1, 2, 3):
        s = von_neumann_entropy(random_density(rng, n))
        assert 0 <= s <= n


def test_relative_entropy_examples():
    rho = bz.rho3((1, 2, 3))
    assert relative_entropy(rho, rho) == pytest.approx(0, abs=1e-12)
    assert relative_entropy(rho, bz.smolin()) == pytest.approx(0.415037499279, abs=1e-9)
    assert relative_entropy(projector(basis_ket("0")), projector(basis_ket("1"))) == math.inf
    assert relative_entropy(bz.rho2(), bz.smolin()) == pytest.approx(1, abs=1e-9)


def test_relative_entropy_reverse_direction_is_infinite():
    # smolin has rank 4, rho3 rank 3
    assert relative_entropy(bz.smolin(), bz.rho3((1, 2, 3))) == math.inf


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(UsageError):
        relative_entropy(np.eye(2) / 2, np.eye(4) / 4)


@settings(max_examples=50)
@given(st.lists(st.floats(0.01, 1), min_size=8, max_size=8),
       st.lists(st.floats(0.01, 1), min_size=8, max_size=8), seeds)
def test_relative_entropy_commuting_matches_classical(p, q, seed):
    p, q = np.array(p) / sum(p), np.array(q) / sum(q)
    u = scipy.stats.unitary_group.rvs(8, random_state=seed)
    sigma = u @ np.diag(p) @ u.conj().T
    rho = u @ np.diag(q) @ u.conj().T
    classical = float(np.sum(p * (np.log2(p) - np.log2(q))))
    assert abs(relative_entropy(sigma, rho) - classical) <= 1e-10


@settings(max_examples=30)
@given(seeds)
def test_relative_entropy_matches_logm(seed):
    rng = np.random.default_rng(seed)
    sigma, rho = random_density(rng, 2), random_density(rng, 2)
    ln2 = math.log(2)
    expected = np.trace(sigma @ (scipy.linalg.logm(sigma) - scipy.linalg.logm(rho))).real / ln2
    got = relative_entropy(sigma, rho)
    assert got == pytest.approx(expected, abs=1e-9)
    assert got >= 0


def test_relative_entropy_zero_iff_equal(rng):
    for _ in range(20):
        sigma, rho = random_density(rng, 2), random_density(rng, 2)
        assert relative_entropy(sigma, rho) > 1e-9
    p = np.linspace(0.1, 0.4, 4)
    d = np.diag(p / p.sum())
    assert relative_entropy(d, d) == pytest.approx(0, abs=1e-12)


def test_density_validation():
    with pytest.raises(ValidationError):
        von_neumann_entropy(np.eye(2))
    with pytest.raises(ValidationError):
        von_neumann_entropy(np.diag([1.5, -0.5]))


def test_fidelity_examples():
    b1 = bz.bell(1)
    assert fidelity_with_pure(projector(b1), b1) == pytest.approx(1, abs=1e-12)
    assert fidelity_with_pure(np.eye(4) / 4, b1) == pytest.approx(0.25, abs=1e-12)
    assert fidelity_with_pure(projector(bz.bell(2)), b1) == pytest.approx(0, abs=1e-12)
    with pytest.raises(UsageError):
        fidelity_with_pure(np.eye(2) / 2, b1)
