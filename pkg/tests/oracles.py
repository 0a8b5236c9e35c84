"""Independent reference constructions used as test oracles.

Nothing here calls into the index-arithmetic paths under test: states are
built with ``np.kron`` from explicit 2-vectors and qubit permutations are
done bit by bit.
"""
import numpy as np

R2 = 1 / np.sqrt(2)
KET = {0: np.array([1, 0], dtype=complex), 1: np.array([0, 1], dtype=complex)}
HAD = {0: np.array([R2, R2], dtype=complex), 1: np.array([R2, -R2], dtype=complex)}
PAULI = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def kron(*vs):
    out = np.ones(1, dtype=complex)
    for v in vs:
        out = np.kron(out, v)
    return out


def ket_of(bits):
    return kron(*(KET[b] for b in bits))


def bell_ref(i, j):
    return R2 * (ket_of((0, i)) + (-1) ** j * ket_of((1, 1 - i)))


def ghz_ref(e1, e2, e3):
    return R2 * (ket_of((0, e1, e2)) + (-1) ** e3 * ket_of((1, 1 - e1, 1 - e2)))


def word_ref(word):
    return kron(*(PAULI[i] for i in word)) if len(word) > 1 else PAULI[word[0]]


def permute_ref(vec, images):
    """Move the bit of qubit p to position images[p]; MSB is qubit 0."""
    n = len(images)
    out = np.zeros_like(vec)
    for idx, amp in enumerate(vec):
        bits = [(idx >> (n - 1 - p)) & 1 for p in range(n)]
        new = [0] * n
        for p, b in enumerate(bits):
            new[images[p]] = b
        out[int("".join(map(str, new)), 2)] = amp
    return out


def phase_match(a, b, tol=1e-10):
    """Index-free check that a = c*b for some unit c."""
    c = np.vdot(b, a)
    return abs(abs(c) - 1) < tol and np.max(np.abs(a - c * b)) < tol

