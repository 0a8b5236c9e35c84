"""Canonical, Hadamard, Bell and GHZ bases.

Bell states ``b_ij`` are indexed by ``2*i + j`` and GHZ states ``b_e1e2e3``
by ``4*e1 + 2*e2 + e3``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .hilbert import (
    EPS,
    H0,
    H1,
    QubitPermutation,
    StateVector,
    check_orthonormal,
    expand_in_basis,
    permute_qubits,
    tensor,
    tensor_all,
)
from .report import Report


def _bit(x: int) -> int:
    if x not in (0, 1):
        raise ValueError(f"expected a bit, got {x!r}")
    return int(x)


def bell_state(i: int, j: int) -> StateVector:
    """``(|0 i> + (-1)^j |1 ~i>) / sqrt 2``."""
    i, j = _bit(i), _bit(j)
    return StateVector.from_kets({f"0{i}": 1, f"1{1 - i}": (-1) ** j})


def ghz_state(e1: int, e2: int, e3: int) -> StateVector:
    """``(|0 e1 e2> + (-1)^e3 |1 ~e1 ~e2>) / sqrt 2``."""
    e1, e2, e3 = _bit(e1), _bit(e2), _bit(e3)
    return StateVector.from_kets({f"0{e1}{e2}": 1, f"1{1 - e1}{1 - e2}": (-1) ** e3})


def bell_by_index(k: int) -> StateVector:
    return bell_state(k >> 1, k & 1)


def ghz_by_index(k: int) -> StateVector:
    return ghz_state(k >> 2 & 1, k >> 1 & 1, k & 1)


def canonical_basis(n: int) -> list[StateVector]:
    return [StateVector(np.eye(2**n)[k]) for k in range(2**n)]


def hadamard_basis(n: int) -> list[StateVector]:
    """Products ``h_a (x) h_b (x) ...`` ordered by the radix value of ``ab...``."""
    return [tensor_all((H0, H1)[b] for b in bits) for bits in itertools.product((0, 1), repeat=n)]


@dataclass(frozen=True)
class BellPairing:
    first: int
    second: int

    def __post_init__(self):
        if self.first == self.second:
            raise ValueError("a Bell pairing needs two distinct qubits")
        if self.first < 0 or self.second < 0:
            raise ValueError("qubit positions must be non-negative")

    @property
    def positions(self) -> tuple[int, int]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"{self.first}{self.second}"


@dataclass(frozen=True, eq=False)
class EntangledBasis:
    """Ordered orthonormal basis of 2- or 3-qubit states.

    ``kind`` is ``"bell"`` or ``"ghz"``.  For a Bell basis acting on a larger
    register, ``states`` are the 2-qubit vectors and ``pairing`` says which
    positions of the ``num_qubits``-qubit register they describe.
    """

    kind: str
    states: tuple[StateVector, ...]
    num_qubits: int
    pairing: Optional[BellPairing] = None
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        check_orthonormal(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, k: int) -> StateVector:
        return self.states[k]

    @property
    def name(self) -> str:
        if self.kind == "bell":
            return f"bell({self.pairing})"
        return self.kind

    @property
    def is_full(self) -> bool:
        """True when the states span the whole register."""
        return self.states[0].num_qubits == self.num_qubits


def bell_basis_on(pairing: BellPairing | tuple[int, int], n: int = 2) -> EntangledBasis:
    if not isinstance(pairing, BellPairing):
        pairing = BellPairing(*pairing)
    if n not in (2, 4):
        raise ValueError(f"Bell bases are built on 2 or 4 qubits, not {n}")
    if max(pairing.positions) >= n:
        raise ValueError(f"pairing {pairing.positions} out of range for {n} qubits")
    states = [bell_by_index(k) for k in range(4)]
    if n == 2 and pairing.positions == (1, 0):
        swap = QubitPermutation((1, 0))
        states = [permute_qubits(s, swap) for s in states]
    labels = tuple(f"b{k >> 1}{k & 1}" for k in range(4))
    return EntangledBasis("bell", tuple(states), n, pairing, labels)


@lru_cache(maxsize=None)
def bell_basis() -> EntangledBasis:
    return bell_basis_on(BellPairing(0, 1), 2)


@lru_cache(maxsize=None)
def ghz_basis() -> EntangledBasis:
    labels = tuple(f"b{k:03b}" for k in range(8))
    return EntangledBasis("ghz", tuple(ghz_by_index(k) for k in range(8)), 3, None, labels)


def pair_product_basis(p: BellPairing | tuple, q: BellPairing | tuple) -> list[StateVector]:
    """The 16 states ``b^(p)_{i0 j0} (x) b^(q)_{i1 j1}`` on four qubits.

    Ordered by the radix value of ``i0 j0 i1 j1``.
    """
    p = p if isinstance(p, BellPairing) else BellPairing(*p)
    q = q if isinstance(q, BellPairing) else BellPairing(*q)
    perm = QubitPermutation(p.positions + q.positions)
    out = []
    for a in range(4):
        for b in range(4):
            out.append(permute_qubits(tensor(bell_by_index(a), bell_by_index(b)), perm))
    return out


# Hadamard-basis coefficients as printed.  Each term is sign + product label
# h_a (x) h_b (...) with a, b, ... read left to right.
_s = 1 / np.sqrt(2)
PRINTED_BELL_EXPANSIONS = {
    "b00": (_s, "+00 +11"),
    "b01": (_s, "+10 +01"),
    "b10": (_s, "+00 -11"),
    "b11": (_s, "+10 -01"),
}
PRINTED_GHZ_EXPANSIONS = {
    "b000": (0.5, "+000 +011 +101 +110"),
    "b001": (0.5, "+100 +111 +001 +010"),
    "b010": (0.5, "+000 -011 -101 +110"),
    "b011": (0.5, "+100 -111 -001 +010"),
    "b100": (0.5, "+000 -011 +101 -110"),
    "b101": (0.5, "+100 -111 +001 -010"),
    "b110": (0.5, "+000 +011 -101 -110"),
    "b111": (0.5, "+100 +111 -001 -010"),
}


def _printed_coefficients(scale: float, terms: str, n: int) -> np.ndarray:
    coeffs = np.zeros(2**n, dtype=complex)
    for term in terms.split():
        sign = -1 if term[0] == "-" else 1
        coeffs[int(term[1:], 2)] += sign * scale
    return coeffs


def verify_hadamard_expansions(tol: float = 1e-12) -> Report:
    """Compare the computed Hadamard expansions of the Bell and GHZ states with the printed ones."""
    report = Report("hadamard expansions")
    for basis, printed, n in (
        (bell_basis(), PRINTED_BELL_EXPANSIONS, 2),
        (ghz_basis(), PRINTED_GHZ_EXPANSIONS, 3),
    ):
        hb = hadamard_basis(n)
        for label, state in zip(basis.labels, basis.states):
            got = np.array(expand_in_basis(state, hb))
            want = _printed_coefficients(*printed[label], n)
            report.add(f"hadamard:{label}", np.max(np.abs(got - want)), tol)
    return report


def is_orthonormal(states, tol: float = EPS) -> bool:
    try:
        check_orthonormal(states, tol)
    except ValueError:
        return False
    return True
