"""Entanglement swapping on four qubits.

``z`` states pair qubits (0,1) and (2,3); ``y`` states pair (0,2) and (1,3)
and are the ``z`` states with the middle qubits exchanged.  Each family
expands in the other with four coefficients of modulus 1/2, on the label
patterns (same, j-bars, i-bars, all-bars).
"""
from __future__ import annotations

import itertools

import numpy as np

from .hilbert import QubitPermutation, StateVector, expand_in_basis, permute_qubits
from .report import Report

LABELS = tuple(itertools.product((0, 1), repeat=4))
MIDDLE_SWAP = QubitPermutation.swap(4, 1, 2)


def label_index(i0: int, j0: int, i1: int, j1: int) -> int:
    return 8 * i0 + 4 * j0 + 2 * i1 + j1


def label_str(labels) -> str:
    return "".join(str(b) for b in labels)


def z_state(i0: int, j0: int, i1: int, j1: int) -> StateVector:
    """``b^(01)_{i0 j0} (x) b^(23)_{i1 j1}`` written out term by term."""
    ni0, ni1 = 1 - i0, 1 - i1
    return StateVector.from_kets(
        {
            f"0{i0}0{i1}": 1,
            f"0{i0}1{ni1}": (-1) ** j1,
            f"1{ni0}0{i1}": (-1) ** j0,
            f"1{ni0}1{ni1}": (-1) ** (j0 + j1),
        }
    )


def y_state(i0: int, j0: int, i1: int, j1: int) -> StateVector:
    """``b^(02)_{i0 j0} (x) b^(13)_{i1 j1}`` written out term by term."""
    ni0, ni1 = 1 - i0, 1 - i1
    return StateVector.from_kets(
        {
            f"00{i0}{i1}": 1,
            f"01{i0}{ni1}": (-1) ** j1,
            f"10{ni0}{i1}": (-1) ** j0,
            f"11{ni0}{ni1}": (-1) ** (j0 + j1),
        }
    )


def z_family() -> list[StateVector]:
    return [z_state(*lab) for lab in LABELS]


def y_family() -> list[StateVector]:
    return [y_state(*lab) for lab in LABELS]


def swap_terms(i0: int, j0: int, i1: int, j1: int) -> list[tuple[tuple[int, ...], int]]:
    """The four (label, printed sign) terms of the cross-family expansion."""
    return [
        ((i0, j0, i1, j1), 1),
        ((i0, 1 - j0, i1, 1 - j1), (-1) ** j1),
        ((1 - i0, j0, 1 - i1, j1), (-1) ** j0),
        ((1 - i0, 1 - j0, 1 - i1, 1 - j1), (-1) ** (j0 + j1)),
    ]


def observed_sign_law(i0: int, j0: int, i1: int, j1: int) -> list[tuple[tuple[int, ...], int]]:
    """The same four terms with the signs the state definitions actually produce."""
    return [
        ((i0, j0, i1, j1), 1),
        ((i0, 1 - j0, i1, 1 - j1), (-1) ** i0),
        ((1 - i0, j0, 1 - i1, j1), (-1) ** j1),
        ((1 - i0, 1 - j0, 1 - i1, 1 - j1), (-1) ** (i0 + j1)),
    ]


def change_of_basis() -> np.ndarray:
    """``M[a, b] = <y_a | z_b>``, rows and columns in label order."""
    ys, zs = y_family(), z_family()
    return np.array([expand_in_basis(z, ys) for z in zs]).T


def verify_swap_identities(tol: float = 1e-10) -> Report:
    """Expand every z state in the y family and vice versa.

    Per tuple and direction two checks are recorded: ``support`` (exactly
    the four printed label patterns carry weight, each of modulus 1/2) and
    ``signs`` (the signs equal the printed ones).
    """
    report = Report("entanglement swapping identities")
    ys, zs = y_family(), z_family()
    observed_ok = True
    for src_name, dst_name, src, dst in (("z", "y", zs, ys), ("y", "z", ys, zs)):
        for lab in LABELS:
            coeffs = np.array(expand_in_basis(src[label_index(*lab)], dst))
            printed = np.zeros(16)
            support = np.zeros(16)
            for term, sign in swap_terms(*lab):
                printed[label_index(*term)] = 0.5 * sign
                support[label_index(*term)] = 0.5
            observed = np.zeros(16)
            for term, sign in observed_sign_law(*lab):
                observed[label_index(*term)] = 0.5 * sign
            observed_ok &= bool(np.max(np.abs(coeffs - observed)) < tol)
            name = f"swap:{src_name}{label_str(lab)}->{dst_name}"
            report.add(f"{name}:support", float(np.max(np.abs(np.abs(coeffs) - support))), tol)
            dev = float(np.max(np.abs(coeffs - printed)))
            bad = [
                label_str(term)
                for term, sign in swap_terms(*lab)
                if abs(coeffs[label_index(*term)] - 0.5 * sign) >= tol
            ]
            report.add(f"{name}:signs", dev, tol, f"sign mismatch at {','.join(bad)}" if bad else "")
    m = change_of_basis()
    report.add("swap:matrix_symmetric", float(np.max(np.abs(m - m.T))), tol)
    report.add("swap:matrix_involutive", float(np.max(np.abs(m @ m - np.eye(16)))), tol)
    if observed_ok:
        report.notes.append(
            "computed signs follow (+1, (-1)^i0, (-1)^j1, (-1)^(i0+j1)) on (same, j-bars, i-bars, all-bars) "
            "in both directions"
        )
    return report


def swap_middle(s: StateVector) -> StateVector:
    return permute_qubits(s, MIDDLE_SWAP)
