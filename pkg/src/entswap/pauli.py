"""Pauli operators numbered ``[s0 s1 s2 s3] = [I X Y Z]`` and their tensor words."""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .hilbert import H0, H1, KET0, KET1, DimensionError, StateVector
from .report import Report

_MATRICES = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _m in _MATRICES:
    _m.setflags(write=False)

PauliWord = tuple[int, ...]


def _check_index(i: int) -> int:
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in 0..3, got {i!r}")
    return int(i)


def pauli_matrix(i: int) -> np.ndarray:
    return _MATRICES[_check_index(i)]


def parse_word(word: Union[str, Sequence[int]]) -> PauliWord:
    """Accept ``"033"`` or ``(0, 3, 3)``."""
    if isinstance(word, str):
        word = [int(ch) for ch in word]
    out = tuple(_check_index(i) for i in word)
    if not out:
        raise ValueError("Pauli word must have at least one letter")
    return out


def word_str(word: Sequence[int]) -> str:
    return "".join(str(i) for i in word)


def apply_local(s: StateVector, pos: int, i: int) -> StateVector:
    """Apply Pauli ``i`` to qubit ``pos``; identity elsewhere."""
    n = s.num_qubits
    if not 0 <= pos < n:
        raise IndexError(f"qubit position {pos} out of range for {n} qubits")
    m = pauli_matrix(i)
    # axis 1 walks the bit of qubit `pos`; the other axes are the high and low bits
    t = s.amplitudes.reshape(2**pos, 2, 2 ** (n - pos - 1))
    return StateVector(np.einsum("ij,ajb->aib", m, t).reshape(-1))


def apply_word(s: StateVector, word: Union[str, Sequence[int]]) -> StateVector:
    w = parse_word(word)
    if len(w) != s.num_qubits:
        raise DimensionError(f"word of length {len(w)} applied to {s.num_qubits} qubits")
    for pos, i in enumerate(w):
        if i:
            s = apply_local(s, pos, i)
    return s


def word_matrix(word: Union[str, Sequence[int]]) -> np.ndarray:
    """Dense Kronecker product; used only as a cross-check."""
    out = np.eye(1, dtype=complex)
    for i in parse_word(word):
        out = np.kron(out, pauli_matrix(i))
    return out


# Single-qubit action table as printed: (operator, input) -> (phase, output).
PRINTED_ACTIONS: dict[tuple[int, str], tuple[complex, str]] = {
    (0, "0"): (1, "0"), (0, "1"): (1, "1"), (0, "h0"): (1, "h0"), (0, "h1"): (1, "h1"),
    (1, "0"): (1, "1"), (1, "1"): (1, "0"), (1, "h0"): (1, "h0"), (1, "h1"): (-1, "h1"),
    (2, "0"): (-1j, "1"), (2, "1"): (1j, "0"), (2, "h0"): (1j, "h1"), (2, "h1"): (-1j, "h0"),
    (3, "0"): (1, "0"), (3, "1"): (-1, "1"), (3, "h0"): (1, "h1"), (3, "h1"): (1, "h0"),
}


def single_qubit_vectors() -> dict[str, StateVector]:
    return {"0": KET0, "1": KET1, "h0": H0, "h1": H1}


def _phase_str(c: complex) -> str:
    c = complex(round(c.real, 12), round(c.imag, 12))
    return {1: "+1", -1: "-1", 1j: "+i", -1j: "-i"}.get(c, f"{c:.6g}")


def verify_pauli_actions(tol: float = 1e-10) -> Report:
    """Apply each operator to |0>, |1>, h0, h1 and compare with the printed action table."""
    report = Report("pauli actions")
    vecs = single_qubit_vectors()
    for (i, src), (phase, dst) in PRINTED_ACTIONS.items():
        got = apply_local(vecs[src], 0, i).amplitudes
        want = phase * vecs[dst].amplitudes
        dev = float(np.max(np.abs(got - want)))
        note = ""
        if dev >= tol:
            c = complex(np.vdot(vecs[dst].amplitudes, got))
            note = f"printed {_phase_str(phase)}*{dst}, computed {_phase_str(c)}*{dst}"
        report.add(f"pauli:s{i}({src})", dev, tol, note)
    return report
