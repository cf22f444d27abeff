"""Dense small-dimension quantum linear algebra on qubit registers.

States are plain numpy arrays: a ket is a complex vector of length ``2**n``,
a density matrix a ``2**n x 2**n`` complex array. Qubit 0 is the most
significant bit of the computational-basis index, so ``tensor`` reads left
to right.
"""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

# eigenvalues at or below this are treated as exact zeros
SUPPORT_TOL = 1e-12
# squared weight of a sigma eigenvector allowed outside the support of rho
LEAKAGE_TOL = 1e-10


class UsageError(ValueError):
    """Bad arguments: wrong shapes, indices or labels."""


class ValidationError(ValueError):
    """A value violates a state invariant (norm, trace, hermiticity, ...)."""


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def n_qubits(state: np.ndarray) -> int:
    """Number of qubits of a ket or square matrix, checking the power-of-two size."""
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise UsageError(f"dimension {dim} is not a power of two >= 2")
    if state.ndim == 2 and state.shape != (dim, dim):
        raise UsageError(f"matrix of shape {state.shape} is not square")
    if state.ndim not in (1, 2):
        raise UsageError("expected a vector or a square matrix")
    return n


def ket(amplitudes: Sequence[complex] | np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Return ``amplitudes`` as a complex ket, raising if it is not normalized."""
    psi = np.asarray(amplitudes, dtype=complex)
    if psi.ndim != 1:
        raise UsageError("a ket must be one-dimensional")
    n_qubits(psi)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"ket norm {norm!r} differs from 1")
    return psi


def basis_ket(bits: str) -> np.ndarray:
    """Computational basis ket, e.g. ``basis_ket("01")`` is |01>."""
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int(bits, 2)] = 1.0
    return psi


def check_density(rho: np.ndarray, herm_tol: float = 1e-12, trace_tol: float = 1e-12,
                  psd_tol: float = 1e-10) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2:
        raise UsageError("a density matrix must be two-dimensional")
    n_qubits(rho)
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        raise ValidationError("matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValidationError(f"trace {tr!r} differs from 1")
    lam_min = np.linalg.eigvalsh(_hermitize(rho))[0]
    if lam_min < -psd_tol:
        raise ValidationError(f"minimum eigenvalue {lam_min!r} is negative")
    return rho


def _hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def tensor(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of kets or of density matrices, leftmost factor most significant."""
    if len(factors) == 0:
        raise UsageError("tensor needs at least one factor")
    arrays = [np.asarray(f, dtype=complex) for f in factors]
    kinds = {a.ndim for a in arrays}
    if len(kinds) != 1 or kinds.pop() not in (1, 2):
        raise UsageError("factors must be all kets or all matrices")
    out = arrays[0]
    for a in arrays[1:]:
        out = np.kron(out, a)
    return out


def projector(psi: np.ndarray) -> np.ndarray:
    """Rank-one density matrix |psi><psi|."""
    psi = ket(psi, tol=1e-9)
    return np.outer(psi, psi.conj())


def _check_qubits(qubits: Sequence[int], n: int) -> list[int]:
    qubits = [int(q) for q in qubits]
    for q in qubits:
        if not 0 <= q < n:
            raise UsageError(f"qubit index {q} out of range for {n} qubits")
    if len(set(qubits)) != len(qubits):
        raise UsageError(f"repeated qubit index in {qubits}")
    return qubits


def partial_trace(rho: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on the ``keep`` qubits, in the order given."""
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho)
    keep = _check_qubits(keep, n)
    if not keep:
        raise UsageError("keep must be nonempty")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # bring kept row axes, kept column axes, then traced pairs to the end
    order = keep + [q + n for q in keep] + traced + [q + n for q in traced]
    t = t.transpose(order)
    k, m = 2 ** len(keep), 2 ** len(traced)
    t = t.reshape(k, k, m, m)
    return np.einsum("ijkk->ij", t)


def _invert(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p] = k
    return inv


def permute_qubits(state: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Relabel qubits so that qubit ``k`` moves to position ``perm[k]``."""
    state = np.asarray(state, dtype=complex)
    n = n_qubits(state)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise UsageError(f"{perm} is not a permutation of {n} qubits")
    inv = _invert(perm)
    if state.ndim == 1:
        return state.reshape([2] * n).transpose(inv).reshape(2**n)
    axes = inv + [q + n for q in inv]
    return state.reshape([2] * (2 * n)).transpose(axes).reshape(2**n, 2**n)


def partial_transpose(rho: np.ndarray, transposed_qubits: Sequence[int]) -> np.ndarray:
    """Transpose only the tensor factors listed in ``transposed_qubits``."""
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho)
    qubits = _check_qubits(transposed_qubits, n)
    axes = list(range(2 * n))
    for q in qubits:
        axes[q], axes[q + n] = axes[q + n], axes[q]
    return rho.reshape([2] * (2 * n)).transpose(axes).reshape(2**n, 2**n)


def eigh(h: np.ndarray, tol: float = 1e-9) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues in descending order."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise UsageError("eigh needs a square matrix")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > tol:
        raise ValidationError("matrix is not Hermitian")
    lam, vecs = np.linalg.eigh(_hermitize(h))
    return Spectrum(lam[::-1].copy(), vecs[:, ::-1].copy())


def _xlog2x(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    mask = p > SUPPORT_TOL
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits, with 0 log 0 = 0."""
    rho = check_density(rho)
    lam = eigh(rho).eigenvalues
    s = -float(np.sum(_xlog2x(lam)))
    return max(s, 0.0)


def relative_entropy(sigma: np.ndarray, rho: np.ndarray) -> float:
    """tr sigma (log2 sigma - log2 rho) in bits; ``math.inf`` off the support of rho."""
    sigma = check_density(sigma)
    rho = check_density(rho)
    if sigma.shape != rho.shape:
        raise UsageError(f"dimension mismatch: {sigma.shape} vs {rho.shape}")
    lam, v = eigh(sigma)
    mu, w = eigh(rho)
    on_s = lam > SUPPORT_TOL
    on_r = mu > SUPPORT_TOL
    v, lam = v[:, on_s], lam[on_s]
    w, mu = w[:, on_r], mu[on_r]
    # |<v_i|w_j>|^2 for sigma eigenvectors against rho's support
    overlap = np.abs(v.conj().T @ w) ** 2
    leakage = 1.0 - overlap.sum(axis=1)
    if np.any(leakage > LEAKAGE_TOL):
        return math.inf
    s_log_s = float(np.sum(lam * np.log2(lam)))
    s_log_r = float(lam @ overlap @ np.log2(mu))
    return s_log_s - s_log_r


def fidelity_with_pure(rho: np.ndarray, target: np.ndarray) -> float:
    """<target|rho|target>."""
    rho = np.asarray(rho, dtype=complex)
    target = ket(target, tol=1e-9)
    if rho.shape != (target.size, target.size):
        raise UsageError(f"dimension mismatch: {rho.shape} vs ket of length {target.size}")
    return float(np.real(np.vdot(target, rho @ target)))
