"""Exact simulation of local-measurement protocols on small qubit registers.

A protocol is a schedule: given the classical outcome log so far, it names
the next local projective measurement (or stops). Every outcome branch is
enumerated with its exact probability, so "with certainty" claims are
checked as probability sums rather than by sampling. Seeded sampling of the
enumerated branches is available for demonstration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from . import bellzoo as bz
from .qcore import (
    UsageError,
    ValidationError,
    fidelity_with_pure,
    ket,
    partial_trace,
    permute_qubits,
    projector,
    tensor,
)

# branches below this probability are dropped from transcripts
PRUNE_TOL = 1e-14

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)
Z_BASIS = (KET0, KET1)
X_BASIS = (PLUS, MINUS)


@dataclass(frozen=True)
class LocalMeasurement:
    """Projective measurement of ``party`` on its ``qubits`` in an orthonormal basis."""

    party: str
    qubits: tuple[int, ...]
    basis: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        vecs = tuple(np.asarray(v, dtype=complex) for v in self.basis)
        object.__setattr__(self, "basis", vecs)
        dim = 2 ** len(self.qubits)
        if len(vecs) != dim or any(v.shape != (dim,) for v in vecs):
            raise ValidationError(f"basis for {self.party} must have {dim} vectors of length {dim}")
        gram = np.array([[np.vdot(u, v) for v in vecs] for u in vecs])
        if np.max(np.abs(gram - np.eye(dim))) > 1e-12:
            raise ValidationError(f"basis for {self.party} is not orthonormal")


@dataclass(frozen=True)
class Step:
    party: str
    measurement: str
    outcome: int
    probability: float


@dataclass(frozen=True)
class Branch:
    prepared: int
    steps: tuple[Step, ...]
    probability: float
    verdict: int

    @property
    def outcomes(self) -> tuple[int, ...]:
        return tuple(s.outcome for s in self.steps)

    @property
    def correct(self) -> bool:
        return self.verdict == self.prepared


@dataclass(frozen=True)
class Transcript:
    protocol: str
    branches: tuple[Branch, ...]
    notes: str = ""

    @property
    def prepared(self) -> tuple[int, ...]:
        return tuple(sorted({b.prepared for b in self.branches}))

    def total_probability(self, prepared: Optional[int] = None) -> float:
        return float(sum(b.probability for b in self.branches
                         if prepared is None or b.prepared == prepared))

    @property
    def success_probability(self) -> float:
        """Worst case over prepared states of the probability of a correct verdict."""
        return min(
            float(sum(b.probability for b in self.branches if b.prepared == p and b.correct))
            for p in self.prepared
        )

    @property
    def verdict(self) -> Optional[int]:
        verdicts = {b.verdict for b in self.branches}
        return verdicts.pop() if len(verdicts) == 1 else None

    def summary(self) -> dict:
        return {
            "protocol": self.protocol,
            "prepared": list(self.prepared),
            "n_branches": len(self.branches),
            "success_probability": self.success_probability,
            "total_probability": {str(p): self.total_probability(p) for p in self.prepared},
            "branches": [
                {
                    "prepared": b.prepared,
                    "steps": [[s.party, s.measurement, s.outcome, s.probability] for s in b.steps],
                    "probability": b.probability,
                    "verdict": b.verdict,
                }
                for b in self.branches
            ],
            "notes": self.notes,
        }


Schedule = Callable[[tuple[int, ...]], Optional[LocalMeasurement]]


def _project(psi: np.ndarray, qubits: Sequence[int], vec: np.ndarray) -> np.ndarray:
    """(|v><v| on ``qubits``) psi, unnormalized."""
    n = int(np.log2(psi.size))
    front = list(qubits) + [q for q in range(n) if q not in qubits]
    perm = [0] * n
    for pos, q in enumerate(front):
        perm[q] = pos
    moved = permute_qubits(psi, perm).reshape(vec.size, -1)
    rest = vec.conj() @ moved
    collapsed = np.outer(vec, rest).reshape(-1)
    # position k of the moved register holds original qubit front[k]
    return permute_qubits(collapsed, front)


def enumerate_branches(psi: np.ndarray, schedule: Schedule,
                       log: tuple[int, ...] = (), steps: tuple[Step, ...] = (),
                       prob: float = 1.0) -> list[tuple[tuple[Step, ...], float, np.ndarray]]:
    """All outcome branches of ``schedule`` on pure state ``psi``.

    Returns (steps, joint probability, normalized post-measurement state)
    triples. The outcome log passed to the schedule is the only memory
    shared between steps.
    """
    m = schedule(log)
    if m is None:
        return [(steps, prob, psi)]
    out = []
    for k, vec in enumerate(m.basis):
        post = _project(psi, m.qubits, vec)
        p = float(np.real(np.vdot(post, post)))
        if prob * p <= PRUNE_TOL:
            continue
        step = Step(m.party, m.name, k, p)
        out.extend(enumerate_branches(post / np.sqrt(p), schedule, log + (k,),
                                      steps + (step,), prob * p))
    return out


def _basis_name(basis) -> str:
    return "Z" if basis is Z_BASIS else "X"


def discriminate_two_bell(i: bz.LabelLike, j: bz.LabelLike) -> Transcript:
    """One-copy LOCC discrimination of two distinct Bell states.

    Differing parity bits are read from Z-basis correlations, otherwise the
    phase bits differ and X-basis correlations are used.
    """
    li, lj = bz.as_label(i), bz.as_label(j)
    if li == lj:
        raise UsageError("the two Bell labels must differ")
    use_z = li.parity_bit != lj.parity_bit
    basis = Z_BASIS if use_z else X_BASIS
    name = _basis_name(basis)

    def schedule(log):
        if len(log) == 0:
            return LocalMeasurement("A", (0,), basis, name)
        if len(log) == 1:
            return LocalMeasurement("B", (1,), basis, name)
        return None

    def decide(log):
        bit = int(log[0] != log[1])
        for lab in (li, lj):
            if (lab.parity_bit if use_z else lab.phase_bit) == bit:
                return lab.index
        return 0

    branches = []
    for lab in (li, lj):
        for steps, p, _ in enumerate_branches(bz.bell(lab), schedule):
            branches.append(Branch(lab.index, steps, p, decide(tuple(s.outcome for s in steps))))
    rule = "parity bit from Z outcomes" if use_z else "phase bit from X outcomes"
    return Transcript(f"two-bell {li.index},{lj.index}", tuple(branches),
                      f"{rule}; equal outcomes mean bit 0")


def discriminate_four_bell_two_copies(label: bz.LabelLike) -> Transcript:
    """Identify |B_label> from two copies: Z(x)Z on copy 1, X(x)X on copy 2.

    Qubits are ordered (A1, B1, A2, B2).
    """
    lab = bz.as_label(label)
    plan = [
        LocalMeasurement("A", (0,), Z_BASIS, "Z copy1"),
        LocalMeasurement("B", (1,), Z_BASIS, "Z copy1"),
        LocalMeasurement("A", (2,), X_BASIS, "X copy2"),
        LocalMeasurement("B", (3,), X_BASIS, "X copy2"),
    ]

    def schedule(log):
        return plan[len(log)] if len(log) < len(plan) else None

    def decide(log):
        parity = int(log[0] != log[1])
        phase = int(log[2] != log[3])
        return bz.BellLabel.from_bits(phase, parity).index

    psi = tensor([bz.bell(lab), bz.bell(lab)])
    branches = tuple(
        Branch(lab.index, steps, p, decide(tuple(s.outcome for s in steps)))
        for steps, p, _ in enumerate_branches(psi, schedule)
    )
    return Transcript(f"two-copy {lab.index}", branches, "parity bit from copy 1, phase bit from copy 2")


class UnlockResult(NamedTuple):
    transcript: Transcript
    cd_state: np.ndarray

    @property
    def fidelity(self) -> float:
        return fidelity_with_pure(self.cd_state, bz.bell(1))


def _bob_unlock_basis(ab: bz.AbPair, alice_outcome: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = complex(ab.a), complex(ab.b)
    s = 1 if alice_outcome == 0 else -1
    return (np.array([a, s * b], dtype=complex),
            np.array([np.conj(b), -s * np.conj(a)], dtype=complex))


def unlock_rho2prime(ab: bz.AbPair, branch: int) -> UnlockResult:
    """Give C and D one ebit from a rho2prime component without A and B meeting.

    Alice measures X and broadcasts. Bob then measures
    {a|0> + b|1>, b*|0> - a*|1>} after Alice's |+>, or
    {a|0> - b|1>, b*|0> + a*|1>} after |->; his outcome is the component.
    C applies Z when component 2 is identified, turning B_2 into B_1.
    """
    if not isinstance(ab, bz.AbPair):
        ab = bz.AbPair(*ab)
    if branch not in (1, 2):
        raise UsageError(f"branch must be 1 or 2, got {branch!r}")
    psi = bz.rho2prime_components(ab)[branch - 1]

    def schedule(log):
        if len(log) == 0:
            return LocalMeasurement("A", (0,), X_BASIS, "X")
        if len(log) == 1:
            sign = "+" if log[0] == 0 else "-"
            return LocalMeasurement("B", (1,), _bob_unlock_basis(ab, log[0]), f"ab{sign}")
        return None

    branches = []
    cd = np.zeros((4, 4), dtype=complex)
    for steps, p, post in enumerate_branches(psi, schedule):
        verdict = 1 if steps[1].outcome == 0 else 2
        branches.append(Branch(branch, steps, p, verdict))
        if verdict == 2:
            post = np.kron(np.kron(np.eye(4), bz.Z), np.eye(2)) @ post
        cd += p * partial_trace(projector(post / np.linalg.norm(post)), [2, 3])
    notes = ("Bob basis after Alice |+>: {a|0>+b|1>, b*|0>-a*|1>}; "
             "after |->: {a|0>-b|1>, b*|0>+a*|1>}; C applies Z on verdict 2")
    return UnlockResult(Transcript(f"unlock branch {branch}", tuple(branches), notes), cd)


def unlock_joint(label: bz.LabelLike) -> UnlockResult:
    """A and B together: a Bell measurement on AB of |B_l>_AB |B_l>_CD, then D corrects to B_1."""
    lab = bz.as_label(label)
    bell_basis = tuple(bz.bell(k) for k in range(1, 5))

    def schedule(log):
        return LocalMeasurement("AB", (0, 1), bell_basis, "Bell") if not log else None

    branches = []
    cd = np.zeros((4, 4), dtype=complex)
    psi = tensor([bz.bell(lab), bz.bell(lab)])
    for steps, p, post in enumerate_branches(psi, schedule):
        verdict = steps[0].outcome + 1
        branches.append(Branch(lab.index, steps, p, verdict))
        fix = np.kron(np.eye(8), bz.rel_pauli(verdict, 1))
        post = fix @ post
        cd += p * partial_trace(projector(post / np.linalg.norm(post)), [2, 3])
    return UnlockResult(Transcript(f"joint unlock {lab.index}", tuple(branches),
                                   "A and B measured together in the Bell basis"), cd)


@dataclass
class Tally:
    shots: int
    seed: int
    correct: int
    branch_counts: list[int]
    verdict_counts: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"shots": self.shots, "seed": self.seed, "correct": self.correct,
                "branch_counts": list(self.branch_counts),
                "verdict_counts": {str(k): v for k, v in sorted(self.verdict_counts.items())}}


def sample(transcript: Transcript, shots: int, seed: int) -> Tally:
    """Draw ``shots`` branches, preparing each candidate state with equal prior."""
    if shots < 1:
        raise UsageError("shots must be positive")
    prepared = transcript.prepared
    weights = np.array([b.probability / transcript.total_probability(b.prepared) / len(prepared)
                        for b in transcript.branches])
    rng = np.random.default_rng(np.uint64(seed))
    draws = rng.choice(len(weights), size=shots, p=weights / weights.sum())
    counts = np.bincount(draws, minlength=len(weights))
    verdicts: dict[int, int] = {}
    correct = 0
    for b, c in zip(transcript.branches, counts):
        verdicts[b.verdict] = verdicts.get(b.verdict, 0) + int(c)
        correct += int(c) if b.correct else 0
    return Tally(shots, seed, correct, [int(c) for c in counts], verdicts)


def conditional_bob_state(e: np.ndarray, label: bz.LabelLike) -> tuple[np.ndarray, float]:
    """Bob's normalized state and the probability after Alice finds |e> on |B_label>."""
    e = ket(e, tol=1e-9)
    if e.size != 2:
        raise UsageError("Alice's outcome must be a single-qubit ket")
    amp = bz.bell(label).reshape(2, 2)
    v = e.conj() @ amp
    p = float(np.real(np.vdot(v, v)))
    return v / np.sqrt(p), p


def overlap_triple(e: np.ndarray, triple: Sequence[bz.LabelLike]) -> tuple[float, float, float]:
    """|<b_1|b_2>|, |<b_1|b_3>|, |<b_2|b_3>| for Bob's conditional states."""
    labels = [bz.as_label(t) for t in triple]
    if len(labels) != 3 or len(set(labels)) != 3:
        raise UsageError("need three distinct Bell labels")
    b = [conditional_bob_state(e, l)[0] for l in labels]
    return (abs(np.vdot(b[0], b[1])), abs(np.vdot(b[0], b[2])), abs(np.vdot(b[1], b[2])))


@dataclass(frozen=True)
class BlochDirection:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0 <= self.theta <= np.pi:
            raise ValidationError(f"theta {self.theta} outside [0, pi]")
        if not 0 <= self.phi < 2 * np.pi:
            raise ValidationError(f"phi {self.phi} outside [0, 2 pi)")

    def ket(self) -> np.ndarray:
        return np.array([np.cos(self.theta / 2), np.exp(1j * self.phi) * np.sin(self.theta / 2)])


@dataclass(frozen=True)
class SearchReport:
    triple: tuple[int, int, int]
    grid: tuple[int, int]
    minimum: float
    argmin: BlochDirection
    bound: float

    @property
    def bound_holds(self) -> bool:
        return self.minimum >= self.bound - 1e-9

    def as_dict(self) -> dict:
        return {"triple": list(self.triple), "grid": list(self.grid),
                "min_max_overlap": self.minimum,
                "argmin": {"theta": self.argmin.theta, "phi": self.argmin.phi},
                "bound": self.bound, "bound_holds": self.bound_holds}


def three_bell_oneway_search(triple: Sequence[bz.LabelLike],
                             grid: tuple[int, int] = (91, 180)) -> SearchReport:
    """Grid search over Alice's first projective measurement for three Bell states.

    A perfect one-way protocol needs some direction making Bob's three
    conditional states pairwise orthogonal. The reported quantity is the grid
    minimum of the largest pairwise overlap; it stays at or above 1/sqrt(3).
    This is evidence for the one-way projective class only.
    """
    labels = tuple(bz.as_label(t) for t in triple)
    if len(labels) != 3 or len(set(labels)) != 3:
        raise UsageError("need three distinct Bell labels")
    n_theta, n_phi = grid
    if n_theta < 2 or n_phi < 2:
        raise UsageError(f"grid {grid} is degenerate, need at least 2x2")
    theta = np.linspace(0, np.pi, n_theta)
    phi = np.linspace(0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    e = np.stack([np.cos(tt / 2), np.exp(1j * pp) * np.sin(tt / 2)], axis=-1)
    # Bob states sqrt(2) (<e| (x) I)|B_l>, already unit norm
    bob = [np.sqrt(2) * (e.conj() @ bz.bell(l).reshape(2, 2)) for l in labels]
    pairs = [(0, 1), (0, 2), (1, 2)]
    ov = np.stack([np.abs(np.sum(bob[i].conj() * bob[j], axis=-1)) for i, j in pairs])
    worst = ov.max(axis=0)
    k = np.unravel_index(np.argmin(worst), worst.shape)
    report = SearchReport(tuple(l.index for l in labels), (n_theta, n_phi),
                          float(worst[k]), BlochDirection(float(theta[k[0]]), float(phi[k[1]])),
                          float(1 / np.sqrt(3)))
    if not report.bound_holds:
        raise AssertionError(f"overlap bound violated: {report.minimum} < {report.bound}")
    return report
