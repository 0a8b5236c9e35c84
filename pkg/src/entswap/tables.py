"""Permutations induced by Pauli words on the Bell and GHZ bases.

Every table here is derived by brute force: apply the word to each basis
vector and look for the basis element it is a phase multiple of.  The
printed tables are kept alongside as golden data and compared, never used
as the source.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .bases import EntangledBasis, bell_basis, ghz_basis
from .hilbert import EPS, equal_up_to_phase
from .pauli import PauliWord, apply_word, parse_word, word_str
from .report import Report

Permutation = tuple[int, ...]


class DerivationError(RuntimeError):
    """A transformed basis vector matched no basis element."""


class DecodeError(RuntimeError):
    """No word is consistent with the observed transition."""


class AmbiguousDecodeError(DecodeError):
    """More than one word is consistent with the observed transition."""


@dataclass(frozen=True)
class Action:
    perm: Permutation
    phases: tuple[complex, ...]


def derive_action(word, basis: EntangledBasis) -> Action:
    w = parse_word(word)
    if len(w) != basis.num_qubits or not basis.is_full:
        raise ValueError(f"word {word_str(w)} does not fit basis {basis.name}")
    images, phases = [], []
    for k, state in enumerate(basis.states):
        moved = apply_word(state, w)
        for target, candidate in enumerate(basis.states):
            c = equal_up_to_phase(moved, candidate)
            if c is not None:
                images.append(target)
                phases.append(c)
                break
        else:
            raise DerivationError(f"{word_str(w)} maps basis vector {k} outside the basis")
    if sorted(images) != list(range(len(basis))):
        raise DerivationError(f"{word_str(w)} does not induce a permutation: {images}")
    return Action(tuple(images), tuple(phases))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``: apply ``q`` first."""
    return tuple(p[q[k]] for k in range(len(q)))


class ActionTable:
    """Pauli word -> induced basis permutation, with stable row labels.

    ``labels`` lists the image permutations in row order; row ``r`` is
    ``beta_r``.
    """

    def __init__(self, entries: dict[PauliWord, Action], labels: Sequence[Permutation], arity: int):
        self.entries = dict(sorted(entries.items()))
        self.labels = tuple(tuple(p) for p in labels)
        self.arity = arity
        image = {a.perm for a in self.entries.values()}
        missing = image - set(self.labels)
        if missing:
            raise DerivationError(f"derived permutations without a label: {sorted(missing)}")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, word) -> Action:
        return self.entries[parse_word(word)]

    def perm(self, word) -> Permutation:
        return self[word].perm

    def image(self) -> set[Permutation]:
        return {a.perm for a in self.entries.values()}

    def label_of(self, perm: Permutation) -> int:
        return self.labels.index(tuple(perm))

    def preimage(self, perm: Permutation) -> list[PauliWord]:
        return [w for w, a in self.entries.items() if a.perm == tuple(perm)]

    def rows(self) -> list[tuple[int, Permutation, list[PauliWord]]]:
        """``(label, permutation, sorted preimage)`` for every label with a nonempty preimage."""
        out = []
        for ell, perm in enumerate(self.labels):
            words = self.preimage(perm)
            if words:
                out.append((ell, perm, words))
        return out

    def restricted(self, words: Iterable[PauliWord]) -> "ActionTable":
        keep = {parse_word(w) for w in words}
        return ActionTable({w: a for w, a in self.entries.items() if w in keep}, self.labels, self.arity)


# Permutation column of the printed two-qubit table, in row order.
PRINTED_A2_PERMS: tuple[Permutation, ...] = (
    (0, 1, 2, 3),
    (2, 3, 0, 1),
    (3, 2, 1, 0),
    (1, 0, 3, 2),
)
# Preimage column of the same table as printed; every row lists the same set.
PRINTED_A2_PREIMAGES: tuple[tuple[str, ...], ...] = (
    ("00", "01", "02", "03"),
    ("01", "00", "03", "02"),
    ("02", "03", "00", "01"),
    ("03", "02", "01", "00"),
)

PRINTED_A3: tuple[tuple[Permutation, tuple[str, ...]], ...] = (
    ((0, 1, 2, 3, 4, 5, 6, 7), ("000", "033", "111", "122", "212", "221", "303", "330")),
    ((2, 3, 0, 1, 6, 7, 4, 5), ("003", "030", "112", "121", "211", "222", "300", "333")),
    ((3, 2, 1, 0, 7, 6, 5, 4), ("001", "032", "110", "123", "213", "220", "302", "331")),
    ((1, 0, 3, 2, 5, 4, 7, 6), ("002", "031", "113", "120", "210", "223", "301", "332")),
    ((4, 5, 6, 7, 0, 1, 2, 3), ("010", "023", "101", "132", "202", "231", "313", "320")),
    ((6, 7, 4, 5, 2, 3, 0, 1), ("013", "020", "102", "131", "201", "232", "310", "323")),
    ((7, 6, 5, 4, 3, 2, 1, 0), ("011", "022", "100", "133", "203", "230", "312", "321")),
    ((5, 4, 7, 6, 1, 0, 3, 2), ("012", "021", "103", "130", "200", "233", "311", "322")),
)

# Restriction to S = {s_ijk : j, k in {0, 2}}, in printed row order (mu, words).
PRINTED_S: tuple[tuple[int, tuple[str, str]], ...] = (
    (0, ("000", "122")),
    (3, ("002", "120")),
    (5, ("020", "102")),
    (6, ("022", "100")),
    (7, ("200", "322")),
    (4, ("202", "320")),
    (2, ("220", "302")),
    (1, ("222", "300")),
)

S_WORDS: tuple[PauliWord, ...] = tuple(
    (i, j, k) for i in range(4) for j in (0, 2) for k in (0, 2)
)


def _derive_all(basis: EntangledBasis, arity: int) -> dict[PauliWord, Action]:
    return {w: derive_action(w, basis) for w in itertools.product(range(4), repeat=arity)}


@lru_cache(maxsize=None)
def build_a2() -> ActionTable:
    """Rows labelled by the printed permutation column (its word column is unusable)."""
    return ActionTable(_derive_all(bell_basis(), 2), PRINTED_A2_PERMS, 2)


@lru_cache(maxsize=None)
def build_a3() -> ActionTable:
    """Row ``mu`` is the derived permutation whose preimage equals printed row ``mu``'s word set.

    The printed permutation column is not used for labelling: six of its
    rows disagree with the GHZ definition (see ``verify_tables``).
    """
    entries = _derive_all(ghz_basis(), 3)
    by_words: dict[Permutation, set[str]] = {}
    for w, action in entries.items():
        by_words.setdefault(action.perm, set()).add(word_str(w))
    perm_of_set = {frozenset(ws): perm for perm, ws in by_words.items()}
    labels = []
    for mu, (_, words) in enumerate(PRINTED_A3):
        perm = perm_of_set.get(frozenset(words))
        if perm is None:
            raise DerivationError(f"printed row {mu} is not a preimage class of the derived action")
        labels.append(perm)
    return ActionTable(entries, labels, 3)


@lru_cache(maxsize=None)
def restrict_to_s() -> ActionTable:
    return build_a3().restricted(S_WORDS)


def decode_partner(
    table: ActionTable,
    initial: int,
    outcome: int,
    known: Sequence[Optional[int]],
) -> PauliWord:
    """Complete a partially known word from an observed basis transition.

    ``known`` has one entry per qubit, ``None`` where the index is unknown.
    Returns the unique full word ``w`` agreeing with ``known`` whose action
    sends ``initial`` to ``outcome``.
    """
    if len(known) != table.arity:
        raise ValueError(f"expected {table.arity} positions, got {len(known)}")
    if all(k is not None for k in known):
        raise ValueError("nothing to decode: every position is known")
    hits = [
        w
        for w, action in table.entries.items()
        if action.perm[initial] == outcome
        and all(k is None or k == wi for k, wi in zip(known, w))
    ]
    if not hits:
        raise DecodeError(f"no word matching {known} sends {initial} -> {outcome}")
    if len(hits) > 1:
        raise AmbiguousDecodeError(
            f"{len(hits)} words matching {known} send {initial} -> {outcome}: "
            + ", ".join(word_str(w) for w in hits)
        )
    return hits[0]


def unknown_indices(word: PauliWord, known: Sequence[Optional[int]]) -> tuple[int, ...]:
    return tuple(wi for wi, k in zip(word, known) if k is None)


# --- structural checks -------------------------------------------------------


def beta_relations(table: ActionTable) -> dict[str, bool]:
    """Check ``A2(s_{i beta_a(i)}) = beta_b`` for the four (a, b) pairs relating the A2 labels."""
    beta = table.labels
    out = {}
    for a, b in ((0, 0), (3, 1), (1, 2), (2, 3)):
        out[f"A2(s_i,beta{a}(i))=beta{b}"] = all(
            table.perm((i, beta[a][i])) == beta[b] for i in range(4)
        )
    return out


def is_group(perms: Iterable[Permutation]) -> bool:
    perms = set(perms)
    return all(compose(p, q) in perms for p in perms for q in perms)


def is_regular(perms: Iterable[Permutation]) -> bool:
    """Each basis index is sent to every index by exactly one permutation."""
    perms = list(perms)
    n = len(perms[0])
    return len(perms) == n and all(
        sorted(p[k] for p in perms) == list(range(n)) for k in range(n)
    )


def injective_in(table: ActionTable, free: int) -> bool:
    """For every setting of the other positions, varying ``free`` yields distinct permutations."""
    fixed_positions = [p for p in range(table.arity) if p != free]
    groups: dict[tuple, list[Permutation]] = {}
    for w, action in table.entries.items():
        groups.setdefault(tuple(w[p] for p in fixed_positions), []).append(action.perm)
    return all(len(set(perms)) == len(perms) for perms in groups.values())


def s_single_index_unique(table: ActionTable) -> dict[tuple[int, int], bool]:
    """For each (row, position): the two words of the row differ at that position."""
    out = {}
    for ell, _, words in table.rows():
        for pos in range(3):
            out[(ell, pos)] = len({w[pos] for w in words}) == len(words)
    return out


def verify_tables() -> Report:
    report = Report("permutation tables")

    a2 = build_a2()
    report.flag("a2:image_size=4", len(a2.image()) == 4)
    report.flag("a2:preimage_sizes=4", all(len(ws) == 4 for _, _, ws in a2.rows()))
    for name, ok in beta_relations(a2).items():
        report.flag(f"a2:{name}", ok)
    report.flag("a2:klein_group", is_group(a2.image()) and all(
        compose(p, p) == PRINTED_A2_PERMS[0] for p in a2.image()))
    report.flag("a2:decode_injective", injective_in(a2, 1) and injective_in(a2, 0))
    printed_rows = [sorted(parse_word(w) for w in ws) for ws in PRINTED_A2_PREIMAGES]
    derived_rows = [words for _, _, words in a2.rows()]
    if printed_rows != derived_rows:
        report.notes.append(
            "printed two-qubit table lists the same preimage set in every row; derived rows are "
            + "; ".join(
                f"beta{ell}={{{','.join(word_str(w) for w in ws)}}}" for ell, _, ws in a2.rows()
            )
        )

    a3 = build_a3()
    report.flag("a3:image_size=8", len(a3.image()) == 8)
    report.flag("a3:preimage_sizes=8", all(len(ws) == 8 for _, _, ws in a3.rows()))
    for mu, (printed_perm, words) in enumerate(PRINTED_A3):
        derived_words = [word_str(w) for w in a3.preimage(a3.labels[mu])]
        report.flag(f"a3:row{mu}:words", derived_words == sorted(words))
        derived_perm = a3.labels[mu]
        report.flag(
            f"a3:row{mu}:perm",
            derived_perm == printed_perm,
            "" if derived_perm == printed_perm
            else f"printed={list(printed_perm)} derived={list(derived_perm)}",
        )
    identity = tuple(range(8))
    report.flag("a3:closed_involutive", is_group(a3.image()) and all(
        compose(p, p) == identity for p in a3.image()))
    for pos in range(3):
        report.flag(f"a3:injective_pos{pos}", injective_in(a3, pos))

    s = restrict_to_s()
    report.flag("s:size=16", len(s) == 16)
    for mu, words in PRINTED_S:
        derived = [word_str(w) for w in s.preimage(a3.labels[mu])]
        report.flag(f"s:row{mu}", derived == sorted(words))
    for (ell, pos), ok in s_single_index_unique(s).items():
        report.flag(f"s:unique_row{ell}_pos{pos}", ok)

    max_phase_dev = max(
        abs(abs(c) - 1) for t in (a2, a3) for a in t.entries.values() for c in a.phases
    )
    report.add("phases:unit_modulus", max_phase_dev, EPS)
    return report
