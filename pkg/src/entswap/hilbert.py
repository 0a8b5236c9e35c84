"""Small-register complex vector algebra.

States are dense vectors of ``2**n`` amplitudes.  Index bits follow ket
labels: the leftmost ket symbol (qubit position 0) is the most significant
bit, so ``|01>`` sits at index 1 and ``|10>`` at index 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

EPS = 1e-10
SQRT1_2 = 1 / np.sqrt(2)


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


class BasisError(ValueError):
    """A supplied basis is not orthonormal or does not span the space."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized joint state of ``num_qubits`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _freeze(self.amplitudes).reshape(-1)
        size = amps.size
        if size < 2 or size & (size - 1):
            raise DimensionError(f"amplitude count {size} is not a power of two >= 2")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > EPS:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __getitem__(self, index: int) -> complex:
        return complex(self.amplitudes[index])

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"StateVector({format_ket(self)})"

    def scaled(self, c: complex) -> "StateVector":
        """Multiply by a unit-modulus scalar."""
        return StateVector(self.amplitudes * c)

    def allclose(self, other: "StateVector", tol: float = EPS) -> bool:
        return self.dim == other.dim and bool(
            np.max(np.abs(self.amplitudes - other.amplitudes)) <= tol
        )

    @classmethod
    def from_array(cls, values: Iterable[complex], normalize: bool = False) -> "StateVector":
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=complex)
        if normalize:
            norm = np.linalg.norm(arr)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            arr = arr / norm
        return cls(arr)

    @classmethod
    def from_kets(cls, terms: Mapping[str, complex], normalize: bool = True) -> "StateVector":
        """Build a state from ``{"01": coeff, ...}``; all labels must share a length."""
        lengths = {len(label) for label in terms}
        if len(lengths) != 1:
            raise DimensionError("ket labels must all have the same length")
        (n,) = lengths
        arr = np.zeros(2**n, dtype=complex)
        for label, coeff in terms.items():
            arr[int(label, 2)] += coeff
        return cls.from_array(arr, normalize=normalize)


def ket(label: str) -> StateVector:
    """Canonical basis ket, e.g. ``ket("0110")``."""
    return StateVector.from_kets({label: 1.0})


KET0 = ket("0")
KET1 = ket("1")
H0 = StateVector(np.array([1, 1]) * SQRT1_2)
H1 = StateVector(np.array([1, -1]) * SQRT1_2)


def format_ket(s: StateVector, tol: float = 1e-12) -> str:
    n = s.num_qubits
    parts = []
    for idx, amp in enumerate(s.amplitudes):
        if abs(amp) > tol:
            parts.append(f"({amp.real:+.6g}{amp.imag:+.6g}j)|{idx:0{n}b}>")
    return " + ".join(parts)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def tensor_all(states: Iterable[StateVector]) -> StateVector:
    it = iter(states)
    out = next(it)
    for s in it:
        out = tensor(out, s)
    return out


def inner(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


@dataclass(frozen=True)
class QubitPermutation:
    """Relabelling of qubit positions: position ``p`` moves to ``images[p]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    def __len__(self) -> int:
        return len(self.images)

    def inverse(self) -> "QubitPermutation":
        inv = [0] * len(self.images)
        for src, dst in enumerate(self.images):
            inv[dst] = src
        return QubitPermutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "QubitPermutation":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, a: int, b: int) -> "QubitPermutation":
        images = list(range(n))
        images[a], images[b] = images[b], images[a]
        return cls(tuple(images))


def permute_qubits(s: StateVector, p: QubitPermutation) -> StateVector:
    n = s.num_qubits
    if len(p) != n:
        raise DimensionError(f"permutation of length {len(p)} applied to {n} qubits")
    t = s.amplitudes.reshape((2,) * n)
    return StateVector(np.moveaxis(t, range(n), p.images).reshape(-1))


def equal_up_to_phase(a: StateVector, b: StateVector, tol: float = EPS) -> complex | None:
    """Return the unit scalar ``c`` with ``a == c * b``, or ``None``."""
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    big = np.flatnonzero(np.abs(b.amplitudes) > tol)
    if big.size == 0:
        return None
    k = big[0]
    c = a.amplitudes[k] / b.amplitudes[k]
    if abs(abs(c) - 1) > tol:
        return None
    if np.max(np.abs(a.amplitudes - c * b.amplitudes)) > tol:
        return None
    return complex(c)


def check_orthonormal(basis: Sequence[StateVector], tol: float = EPS) -> None:
    if not basis:
        raise BasisError("empty basis")
    dim = basis[0].dim
    if any(v.dim != dim for v in basis):
        raise BasisError("basis vectors have different dimensions")
    if len(basis) != dim:
        raise BasisError(f"{len(basis)} vectors cannot span a space of dimension {dim}")
    m = np.array([v.amplitudes for v in basis])
    gram = m.conj() @ m.T
    dev = np.max(np.abs(gram - np.eye(dim)))
    if dev > tol:
        raise BasisError(f"basis is not orthonormal (max Gram deviation {dev:.3g})")


def expand_in_basis(s: StateVector, basis: Sequence[StateVector]) -> list[complex]:
    """Coefficients ``c_k = <basis_k|s>`` of ``s`` in an orthonormal basis."""
    check_orthonormal(basis)
    if basis[0].dim != s.dim:
        raise DimensionError(f"dimension mismatch: {s.dim} vs {basis[0].dim}")
    return [inner(v, s) for v in basis]


def reconstruct(coeffs: Sequence[complex], basis: Sequence[StateVector]) -> np.ndarray:
    """``sum_k c_k basis_k`` as a raw array (not necessarily normalized)."""
    return sum(c * v.amplitudes for c, v in zip(coeffs, basis))
