"""Bell states, Pauli operators, the four-party mixtures and party cuts.

Parties A, B, C, D sit on qubits 0, 1, 2, 3. Bell labels 1..4 carry a
(phase, parity) bit pair: 1 = (0,0), 2 = (1,0), 3 = (0,1), 4 = (1,1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .qcore import UsageError, ValidationError, basis_ket, projector, tensor

PARTIES = ("A", "B", "C", "D")

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

_S = 1 / np.sqrt(2)
_BELL = {
    1: np.array([_S, 0, 0, _S], dtype=complex),
    2: np.array([_S, 0, 0, -_S], dtype=complex),
    3: np.array([0, _S, _S, 0], dtype=complex),
    4: np.array([0, _S, -_S, 0], dtype=complex),
}


@dataclass(frozen=True)
class BellLabel:
    index: int

    def __post_init__(self):
        if self.index not in (1, 2, 3, 4):
            raise UsageError(f"Bell label must be 1..4, got {self.index!r}")

    @property
    def phase_bit(self) -> int:
        return (self.index - 1) & 1

    @property
    def parity_bit(self) -> int:
        return (self.index - 1) >> 1

    @classmethod
    def from_bits(cls, phase: int, parity: int) -> "BellLabel":
        return cls(1 + (phase & 1) + 2 * (parity & 1))


LabelLike = Union[BellLabel, int]


def as_label(label: LabelLike) -> BellLabel:
    if isinstance(label, BellLabel):
        return label
    if isinstance(label, (bool, np.bool_)) or not isinstance(label, (int, np.integer)):
        raise UsageError(f"Bell label must be an integer 1..4, got {label!r}")
    return BellLabel(int(label))


def bell(label: LabelLike) -> np.ndarray:
    """Two-qubit Bell ket |B_label>."""
    return _BELL[as_label(label).index].copy()


def rel_pauli(i: LabelLike, j: LabelLike) -> np.ndarray:
    """Single-qubit Pauli P with (I (x) P)|B_i> equal to |B_j> up to a global phase."""
    li, lj = as_label(i), as_label(j)
    d_phase = li.phase_bit ^ lj.phase_bit
    d_parity = li.parity_bit ^ lj.parity_bit
    return np.linalg.matrix_power(Z, d_phase) @ np.linalg.matrix_power(X, d_parity)


def relative_phase(i: LabelLike, j: LabelLike) -> complex:
    """The unit scalar c with (I (x) rel_pauli(i, j))|B_i> = c |B_j>."""
    moved = np.kron(I2, rel_pauli(i, j)) @ bell(i)
    return complex(np.vdot(bell(j), moved))


@dataclass(frozen=True)
class AbPair:
    """Amplitudes of a|00> + b|11>, with |a|^2 + |b|^2 = 1."""

    a: complex
    b: complex

    def __post_init__(self):
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")


def smolin() -> np.ndarray:
    """1/4 sum_i P[|B_i>_AB |B_i>_CD]."""
    return sum(projector(tensor([bell(i), bell(i)])) for i in range(1, 5)) / 4


def rho3(triple: Iterable[LabelLike]) -> np.ndarray:
    """Equal mixture of |B_i>_AB |B_i>_CD over three distinct labels."""
    labels = [as_label(t) for t in triple]
    if len(labels) != 3 or len(set(labels)) != 3:
        raise UsageError(f"need three distinct Bell labels, got {[l.index for l in labels]}")
    return sum(projector(tensor([bell(l), bell(l)])) for l in labels) / 3


def rho2(pair: Iterable[LabelLike] = (1, 2)) -> np.ndarray:
    labels = [as_label(t) for t in pair]
    if len(labels) != 2 or len(set(labels)) != 2:
        raise UsageError("need two distinct Bell labels")
    return sum(projector(tensor([bell(l), bell(l)])) for l in labels) / 2


def rho2prime_ab_vectors(ab: AbPair) -> tuple[np.ndarray, np.ndarray]:
    """a|00> + b|11> and b*|00> - a*|11>; orthogonal for every valid pair."""
    a, b = complex(ab.a), complex(ab.b)
    return (a * basis_ket("00") + b * basis_ket("11"),
            np.conj(b) * basis_ket("00") - np.conj(a) * basis_ket("11"))


def rho2prime_components(ab: AbPair) -> tuple[np.ndarray, np.ndarray]:
    """The two orthogonal four-qubit kets mixed in rho2prime."""
    first_ab, second_ab = rho2prime_ab_vectors(ab)
    return tensor([first_ab, bell(1)]), tensor([second_ab, bell(2)])


def rho2prime(ab: AbPair) -> np.ndarray:
    """1/2 P[(a|00> + b|11>)_AB |B_1>_CD] + 1/2 P[(b*|00> - a*|11>)_AB |B_2>_CD]."""
    if not isinstance(ab, AbPair):
        ab = AbPair(*ab)
    first, second = rho2prime_components(ab)
    return (projector(first) + projector(second)) / 2


@dataclass(frozen=True)
class Cut:
    left: tuple[str, ...]
    right: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        both = self.left + self.right
        if not self.left or not self.right:
            raise UsageError("both sides of a cut must be nonempty")
        if any(p not in PARTIES for p in both):
            raise UsageError(f"unknown party in cut {both}")
        if len(set(both)) != len(both):
            raise UsageError(f"cut sides overlap: {self}")

    @classmethod
    def parse(cls, text: str) -> "Cut":
        parts = text.strip().upper().split(":")
        if len(parts) != 2:
            raise UsageError(f"cut must look like 'AC:BD', got {text!r}")
        return cls(tuple(parts[0]), tuple(parts[1]))

    def __str__(self) -> str:
        return "".join(self.left) + ":" + "".join(self.right)

    @property
    def parties(self) -> tuple[str, ...]:
        return self.left + self.right

    def qubits(self, side: str = "right") -> list[int]:
        group = self.right if side == "right" else self.left
        return [PARTIES.index(p) for p in group]


AB_CD = Cut(("A", "B"), ("C", "D"))
AC_BD = Cut(("A", "C"), ("B", "D"))
AD_BC = Cut(("A", "D"), ("B", "C"))
TWO_TWO_CUTS = (AB_CD, AC_BD, AD_BC)


def as_cut(cut: Cut | str) -> Cut:
    return cut if isinstance(cut, Cut) else Cut.parse(cut)


def cut_permutation(cut: Cut | str) -> list[int]:
    """perm[k] = position of qubit k once the cut's left group is moved to the front."""
    cut = as_cut(cut)
    if set(cut.parties) != set(PARTIES):
        raise UsageError(f"cut {cut} does not cover all four parties")
    order = cut.parties
    return [order.index(p) for p in PARTIES]


def ab_grid() -> list[AbPair]:
    """25 normalized (a, b) pairs: five mixing angles times five phases.

    Includes a = 1, b = 0 and a = b = 1/sqrt(2).
    """
    angles = (0.0, np.pi / 8, np.pi / 4, 3 * np.pi / 8, 5 * np.pi / 12)
    phases = (0.0, np.pi / 4, np.pi / 2, 2 * np.pi / 3, 3 * np.pi / 2)
    out = []
    for t in angles:
        for ph in phases:
            a = np.exp(-1j * ph / 3) * np.cos(t)
            b = np.exp(1j * ph) * np.sin(t)
            out.append(AbPair(complex(a), complex(b)))
    return out


def all_triples() -> list[tuple[int, int, int]]:
    return list(itertools.combinations(range(1, 5), 3))
