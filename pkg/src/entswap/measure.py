"""Seeded projective measurement in Bell and GHZ bases."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .bases import BellPairing, EntangledBasis, bell_basis_on, ghz_basis
from .hilbert import DimensionError, StateVector

PROB_FLOOR = 1e-12


class RandomSource:
    """Deterministic stream of draws for one protocol run."""

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def uniform(self) -> float:
        return float(self._gen.random())

    def integer(self, high: int) -> int:
        """Uniform integer in ``[0, high)``."""
        return int(self._gen.integers(high))

    def bit(self) -> int:
        return self.integer(2)


@dataclass(frozen=True)
class MeasurementOutcome:
    basis_index: int
    probability: float
    post_state: StateVector


def _pair_branches(s: StateVector, basis: EntangledBasis) -> list[tuple[float, np.ndarray]]:
    n = s.num_qubits
    mu, nu = basis.pairing.positions
    if max(mu, nu) >= n:
        raise DimensionError(f"pairing ({mu},{nu}) out of range for {n} qubits")
    t = np.moveaxis(s.amplitudes.reshape((2,) * n), (mu, nu), (0, 1)).reshape(4, -1)
    out = []
    for b in basis.states:
        rest = b.amplitudes.conj() @ t
        prob = float(np.vdot(rest, rest).real)
        post = np.outer(b.amplitudes, rest).reshape((2,) * n)
        out.append((prob, np.moveaxis(post, (0, 1), (mu, nu)).reshape(-1)))
    return out


def _full_branches(s: StateVector, basis: EntangledBasis) -> list[tuple[float, np.ndarray]]:
    if basis.states[0].dim != s.dim:
        raise DimensionError(f"basis of dimension {basis.states[0].dim} on state of dimension {s.dim}")
    out = []
    for b in basis.states:
        amp = np.vdot(b.amplitudes, s.amplitudes)
        out.append((float(abs(amp) ** 2), amp * b.amplitudes))
    return out


def outcome_probabilities(s: StateVector, basis: EntangledBasis) -> list[float]:
    branches = _full_branches(s, basis) if basis.is_full else _pair_branches(s, basis)
    return [p for p, _ in branches]


def _sample(branches: list[tuple[float, np.ndarray]], rng: RandomSource) -> MeasurementOutcome:
    probs = np.array([p if p >= PROB_FLOOR else 0.0 for p, _ in branches])
    probs = probs / probs.sum()
    u = rng.uniform()
    cdf = np.cumsum(probs)
    k = int(np.searchsorted(cdf, u, side="right"))
    if k >= len(probs) or probs[k] == 0.0:
        # u landed in rounding slack past the last nonzero outcome
        k = int(np.flatnonzero(probs)[-1])
    post = branches[k][1]
    return MeasurementOutcome(k, float(probs[k]), StateVector(post / np.linalg.norm(post)))


def measure_full(s: StateVector, basis: EntangledBasis, rng: RandomSource) -> MeasurementOutcome:
    return _sample(_full_branches(s, basis), rng)


def measure_subset(
    s: StateVector,
    pairing: Union[BellPairing, tuple[int, int], str],
    rng: RandomSource,
) -> MeasurementOutcome:
    """Measure two qubits of ``s`` in their Bell basis, or all three in the GHZ basis.

    ``pairing="ghz"`` selects the whole-register GHZ measurement.
    """
    if pairing == "ghz":
        return measure_full(s, ghz_basis(), rng)
    basis = bell_basis_on(pairing, 4 if s.num_qubits > 2 else 2)
    if s.num_qubits == 2:
        return _sample(_full_branches(s, basis), rng)
    return _sample(_pair_branches(s, basis), rng)
