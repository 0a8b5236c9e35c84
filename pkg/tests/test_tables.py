import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entswap.bases import bell_basis, ghz_basis
from entswap.pauli import parse_word, word_str
from entswap.tables import (
    PRINTED_A2_PERMS,
    PRINTED_A3,
    PRINTED_S,
    AmbiguousDecodeError,
    DecodeError,
    build_a2,
    build_a3,
    compose,
    decode_partner,
    derive_action,
    beta_relations,
    injective_in,
    is_group,
    is_regular,
    restrict_to_s,
    s_single_index_unique,
    verify_tables,
)

from oracles import bell_ref, ghz_ref, phase_match, word_ref

BELL_REF = [bell_ref(i, j) for i, j in itertools.product((0, 1), repeat=2)]
GHZ_REF = [ghz_ref(*e) for e in itertools.product((0, 1), repeat=3)]


def perm_ref(word, refs):
    """Dense-matrix oracle: image index of every reference vector under the word."""
    m = word_ref(word)
    out = []
    for v in refs:
        hits = [t for t, u in enumerate(refs) if phase_match(m @ v, u)]
        assert len(hits) == 1
        out.append(hits[0])
    return tuple(out)


class TestDeriveAction:
    def test_x_on_second_qubit(self):
        assert derive_action("01", bell_basis()).perm == (2, 3, 0, 1)

    def test_033_is_identity_on_ghz(self):
        assert derive_action("033", ghz_basis()).perm == tuple(range(8))

    def test_010_flips_first_ghz_label(self):
        perm = derive_action("010", ghz_basis()).perm
        assert perm[0] == 4
        assert perm == (4, 5, 6, 7, 0, 1, 2, 3)

    def test_wrong_arity(self):
        with pytest.raises(ValueError):
            derive_action("01", ghz_basis())

    @pytest.mark.parametrize("word", ["".join(w) for w in itertools.product("0123", repeat=2)])
    def test_a2_matches_dense_oracle(self, word):
        assert build_a2().perm(word) == perm_ref(parse_word(word), BELL_REF)

    def test_a3_matches_dense_oracle(self):
        a3 = build_a3()
        for w in itertools.product(range(4), repeat=3):
            assert a3.perm(w) == perm_ref(w, GHZ_REF), word_str(w)

    def test_phases_reproduce_images(self):
        basis = ghz_basis()
        for w in [(1, 2, 3), (2, 2, 0), (0, 1, 3)]:
            action = derive_action(w, basis)
            for k, (t, c) in enumerate(zip(action.perm, action.phases)):
                got = word_ref(w) @ basis[k].amplitudes
                np.testing.assert_allclose(got, c * basis[t].amplitudes, atol=1e-12)


class TestA2:
    def test_image_and_preimages(self):
        a2 = build_a2()
        assert a2.image() == set(PRINTED_A2_PERMS)
        assert len(a2) == 16
        assert all(len(ws) == 4 for _, _, ws in a2.rows())

    def test_derived_rows(self):
        # frozen from the dense oracle above
        rows = {ell: [word_str(w) for w in ws] for ell, _, ws in build_a2().rows()}
        assert rows == {
            0: ["00", "11", "22", "33"],
            1: ["01", "10", "23", "32"],
            2: ["02", "13", "20", "31"],
            3: ["03", "12", "21", "30"],
        }

    def test_beta_relations(self):
        assert all(beta_relations(build_a2()).values())

    def test_klein_group(self):
        image = build_a2().image()
        assert is_group(image) and is_regular(image)
        assert all(compose(p, p) == (0, 1, 2, 3) for p in image)

    def test_injective_in_each_position(self):
        assert injective_in(build_a2(), 0) and injective_in(build_a2(), 1)


class TestA3:
    def test_word_sets_match_printed(self):
        a3 = build_a3()
        for mu, (_, words) in enumerate(PRINTED_A3):
            assert [word_str(w) for w in a3.preimage(a3.labels[mu])] == sorted(words)

    def test_rows_are_xor_translations(self):
        # derived row mu sends basis index k to k xor mu
        for mu, perm in enumerate(build_a3().labels):
            assert perm == tuple(k ^ mu for k in range(8))

    def test_printed_perm_column_disagrees(self):
        a3 = build_a3()
        bad = [mu for mu, (perm, _) in enumerate(PRINTED_A3) if a3.labels[mu] != perm]
        assert bad == [1, 2, 3, 5, 6, 7]

    def test_group_structure(self):
        image = build_a3().image()
        assert len(image) == 8 and is_group(image) and is_regular(image)

    def test_injective(self):
        assert all(injective_in(build_a3(), pos) for pos in range(3))


class TestSRestriction:
    def test_rows(self):
        s, a3 = restrict_to_s(), build_a3()
        assert len(s) == 16
        for mu, words in PRINTED_S:
            assert [word_str(w) for w in s.preimage(a3.labels[mu])] == sorted(words)

    def test_example_rows(self):
        rows = {ell: [word_str(w) for w in ws] for ell, _, ws in restrict_to_s().rows()}
        assert rows[0] == ["000", "122"]
        assert rows[7] == ["200", "322"]

    def test_single_index_uniqueness(self):
        result = s_single_index_unique(restrict_to_s())
        assert len(result) == 24 and all(result.values())


class TestDecode:
    def test_a2_example(self):
        assert decode_partner(build_a2(), 0, 2, (0, None)) == (0, 1)

    def test_s_example(self):
        assert decode_partner(restrict_to_s(), 0, 7, (None, 0, None)) == (2, 0, 0)

    def test_ambiguous_in_full_a3(self):
        with pytest.raises(AmbiguousDecodeError):
            decode_partner(build_a3(), 0, 0, (None, None, 0))

    def test_no_match(self):
        # S only holds even indices at positions 1 and 2
        with pytest.raises(DecodeError):
            decode_partner(restrict_to_s(), 0, 0, (None, 1, None))

    def test_rejects_fully_known(self):
        with pytest.raises(ValueError):
            decode_partner(build_a2(), 0, 0, (0, 0))

    @given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
    @settings(max_examples=60, deadline=None)
    def test_a2_roundtrip(self, i, j, k):
        a2 = build_a2()
        out = a2.perm((i, j))[k]
        assert decode_partner(a2, k, out, (i, None)) == (i, j)
        assert decode_partner(a2, k, out, (None, j)) == (i, j)

    @given(st.sampled_from(sorted(restrict_to_s().entries)), st.integers(0, 7), st.integers(0, 2))
    @settings(max_examples=80, deadline=None)
    def test_s_roundtrip(self, word, ell, pos):
        s = restrict_to_s()
        out = s.perm(word)[ell]
        known = [None, None, None]
        known[pos] = word[pos]
        assert decode_partner(s, ell, out, known) == word


def test_verify_tables_report():
    report = verify_tables()
    failed = sorted(c.name for c in report.failures())
    assert failed == sorted(f"a3:row{mu}:perm" for mu in (1, 2, 3, 5, 6, 7))
    assert any("same preimage set" in n for n in report.notes)
