import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entswap.bases import BellPairing, bell_basis, bell_basis_on, bell_state, ghz_basis, ghz_state
from entswap.hilbert import EPS, StateVector, inner
from entswap.measure import RandomSource, measure_full, measure_subset, outcome_probabilities
from entswap.pauli import apply_word
from entswap.swapping import z_state


def test_eigenstate_is_deterministic():
    for seed in range(5):
        out = measure_full(bell_state(1, 0), bell_basis(), RandomSource(seed))
        assert out.basis_index == 2 and out.probability == 1.0


def test_ghz_eigenstate():
    out = measure_subset(ghz_state(1, 0, 1), "ghz", RandomSource(3))
    assert out.basis_index == 5


def test_pauli_then_measure():
    s = apply_word(ghz_state(0, 0, 0), "010")
    assert measure_full(s, ghz_basis(), RandomSource(0)).basis_index == 4


def test_swapping_pairing_uniform():
    probs = outcome_probabilities(z_state(0, 0, 0, 0), bell_basis_on((0, 2), 4))
    np.testing.assert_allclose(probs, [0.25] * 4, atol=EPS)


def test_parity_law_after_cross_measurement():
    # measuring (0,2) then (1,3) on z_{i0 j0 i1 j1} yields a^c = i0^i1, b^d = j0^j1
    for lab in itertools.product((0, 1), repeat=4):
        for seed in range(8):
            rng = RandomSource(seed)
            first = measure_subset(z_state(*lab), BellPairing(0, 2), rng)
            second = measure_subset(first.post_state, BellPairing(1, 3), rng)
            (a, b), (c, d) = divmod(first.basis_index, 2), divmod(second.basis_index, 2)
            assert (a ^ c, b ^ d) == (lab[0] ^ lab[2], lab[1] ^ lab[3])
            assert second.probability == pytest.approx(1.0)


def test_post_state_collapsed():
    rng = RandomSource(11)
    out = measure_subset(z_state(0, 1, 1, 0), BellPairing(0, 2), rng)
    again = measure_subset(out.post_state, BellPairing(0, 2), rng)
    assert again.basis_index == out.basis_index and again.probability == pytest.approx(1.0)


def test_same_seed_same_sequence():
    def run(seed):
        rng = RandomSource(seed)
        s = StateVector.from_array(np.arange(8) + 1.0, normalize=True)
        return [measure_full(s, ghz_basis(), rng).basis_index for _ in range(20)]

    assert run(42) == run(42)
    assert run(42) != run(43)


def test_seed_range():
    RandomSource(2**64 - 1)
    with pytest.raises(ValueError):
        RandomSource(-1)
    with pytest.raises(ValueError):
        RandomSource(2**64)


def test_empirical_frequencies():
    s = StateVector.from_array([np.sqrt(0.1), 0, 0, np.sqrt(0.9)])
    # b00 and b01 carry (sqrt.1 +- sqrt.9)^2 / 2
    want = outcome_probabilities(s, bell_basis())
    rng = RandomSource(5)
    counts = np.bincount([measure_full(s, bell_basis(), rng).basis_index for _ in range(4000)], minlength=4)
    np.testing.assert_allclose(counts / 4000, want, atol=0.03)


random_states = st.builds(
    lambda n, seed: StateVector.from_array(
        np.random.default_rng(seed).normal(size=2**n) + 1j * np.random.default_rng(seed + 1).normal(size=2**n),
        normalize=True,
    ),
    st.sampled_from([2, 3, 4]),
    st.integers(0, 2**30),
)


@given(random_states)
@settings(max_examples=40, deadline=None)
def test_probabilities_sum_to_one(s):
    if s.num_qubits == 2:
        bases = [bell_basis()]
    elif s.num_qubits == 3:
        bases = [ghz_basis()]
    else:
        bases = [bell_basis_on(p, 4) for p in ((0, 1), (0, 2), (1, 3), (2, 3))]
    for b in bases:
        assert sum(outcome_probabilities(s, b)) == pytest.approx(1.0, abs=1e-10)


@given(random_states, st.integers(0, 2**63))
@settings(max_examples=40, deadline=None)
def test_post_state_is_projection(s, seed):
    if s.num_qubits != 2:
        return
    out = measure_full(s, bell_basis(), RandomSource(seed))
    assert abs(abs(inner(bell_basis()[out.basis_index], out.post_state)) - 1) < 1e-10
    assert out.probability > 0
