import itertools

import numpy as np
import pytest

from entswap.bases import bell_by_index, bell_state, ghz_state
from entswap.hilbert import EPS, H0, H1, KET0, KET1, DimensionError, StateVector, equal_up_to_phase
from entswap.pauli import apply_local, apply_word, parse_word, pauli_matrix, verify_pauli_actions, word_matrix

from oracles import PAULI, word_ref


def rand_state(n, seed):
    g = np.random.default_rng(seed)
    return StateVector.from_array(g.normal(size=2**n) + 1j * g.normal(size=2**n), normalize=True)


@pytest.mark.parametrize("i", range(4))
def test_matrices_exact(i):
    m = pauli_matrix(i)
    assert np.array_equal(m, PAULI[i])
    assert np.array_equal(m @ m.conj().T, np.eye(2))
    assert np.array_equal(m, m.conj().T)


def test_named_matrices():
    assert np.array_equal(pauli_matrix(0), np.eye(2))
    assert np.array_equal(pauli_matrix(2), [[0, -1j], [1j, 0]])
    assert np.array_equal(pauli_matrix(3) @ pauli_matrix(3), np.eye(2))


def test_printed_action_table_report():
    report = verify_pauli_actions()
    failed = sorted(c.name for c in report.failures())
    # the printed s2 row carries conjugated phases; the other 12 entries agree
    assert failed == ["pauli:s2(0)", "pauli:s2(1)", "pauli:s2(h0)", "pauli:s2(h1)"]


def test_bad_index():
    with pytest.raises(ValueError):
        pauli_matrix(4)
    with pytest.raises(ValueError):
        parse_word("014")


class TestApplyLocal:
    def test_x_flips(self):
        assert apply_local(KET0, 0, 1).allclose(KET1)

    def test_y_phases_follow_matrix(self):
        # [[0,-i],[i,0]] gives Y|0> = i|1>, Y|1> = -i|0>, Y h0 = -i h1, Y h1 = i h0
        assert apply_local(KET0, 0, 2).allclose(KET1.scaled(1j))
        assert apply_local(KET1, 0, 2).allclose(KET0.scaled(-1j))
        assert apply_local(H0, 0, 2).allclose(H1.scaled(-1j))
        assert apply_local(H1, 0, 2).allclose(H0.scaled(1j))

    def test_identity(self):
        s = rand_state(3, 0)
        for pos in range(3):
            assert apply_local(s, pos, 0).allclose(s)

    def test_position_out_of_range(self):
        with pytest.raises(IndexError):
            apply_local(KET0, 1, 1)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_dense_kron(self, n):
        s = rand_state(n, n)
        for pos, i in itertools.product(range(n), range(4)):
            word = [0] * n
            word[pos] = i
            np.testing.assert_allclose(apply_local(s, pos, i).amplitudes, word_ref(word) @ s.amplitudes, atol=EPS)

    def test_commutes_across_positions(self):
        s = rand_state(4, 1)
        for a, b in itertools.combinations(range(4), 2):
            for i, j in itertools.product(range(4), repeat=2):
                ab = apply_local(apply_local(s, a, i), b, j)
                ba = apply_local(apply_local(s, b, j), a, i)
                assert np.array_equal(ab.amplitudes, ba.amplitudes)


class TestApplyWord:
    def test_b00_x_on_second(self):
        # dense oracle: (I (x) X)(|00>+|11>)/sqrt2 = (|01>+|10>)/sqrt2 = b_10
        dense = word_ref((0, 1)) @ bell_state(0, 0).amplitudes
        np.testing.assert_allclose(dense, bell_state(1, 0).amplitudes, atol=EPS)
        assert apply_word(bell_state(0, 0), (0, 1)).allclose(bell_state(1, 0))

    def test_identity_word(self):
        for k in range(4):
            assert apply_word(bell_by_index(k), "00").allclose(bell_by_index(k))

    def test_033_fixes_b000(self):
        b = ghz_state(0, 0, 0)
        assert apply_word(b, "033").allclose(b)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            apply_word(bell_state(0, 0), "000")

    def test_involution_up_to_phase(self):
        s = rand_state(3, 2)
        for w in itertools.product(range(4), repeat=3):
            assert equal_up_to_phase(apply_word(apply_word(s, w), w), s) is not None

    def test_matches_word_matrix(self):
        s = rand_state(2, 3)
        for w in itertools.product(range(4), repeat=2):
            np.testing.assert_allclose(apply_word(s, w).amplitudes, word_matrix(w) @ s.amplitudes, atol=EPS)
