"""Five entanglement-based communication protocols as seeded simulations.

Every ``run_*`` function takes its inputs plus a seed, plays the parties'
steps against a :class:`~entswap.registry.Registry`, and returns the decoded
messages together with the full transcript.  Identical inputs and seeds give
identical transcripts.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bases import BellPairing, bell_basis, bell_by_index, ghz_basis, ghz_by_index
from .hilbert import tensor
from .measure import RandomSource
from .registry import ProtocolFailure, ProtocolStateError, Registry, Transcript
from .swapping import MIDDLE_SWAP
from .tables import ActionTable, DecodeError, build_a2, build_a3, decode_partner, restrict_to_s

ALICE, BOB, CLAIRE = "Alice", "Bob", "Claire"

MessageWord = tuple[int, ...]


def check_word(msg: Sequence[int]) -> MessageWord:
    out = tuple(int(x) for x in msg)
    if any(x not in (0, 1, 2, 3) for x in out):
        raise ValueError(f"message symbols must be in 0..3: {out}")
    return out


def bits_to_symbols(bits: str) -> MessageWord:
    """Read a bit string two bits at a time, first bit most significant."""
    if len(bits) % 2 or set(bits) - {"0", "1"}:
        raise ValueError(f"expected an even-length bit string, got {bits!r}")
    return tuple(int(bits[k : k + 2], 2) for k in range(0, len(bits), 2))


def symbols_to_bits(msg: Sequence[int]) -> str:
    return "".join(f"{s:02b}" for s in msg)


@dataclass(frozen=True)
class PadSpec:
    """Length-``n`` carrier with message symbols placed at positions ``J`` (in the given order)."""

    n: int
    J: tuple[int, ...]

    def __post_init__(self):
        J = tuple(int(x) for x in self.J)
        if len(set(J)) != len(J):
            raise ValueError(f"pad positions must be distinct: {J}")
        if any(not 0 <= x < self.n for x in J):
            raise ValueError(f"pad positions {J} out of range for n={self.n}")
        object.__setattr__(self, "J", J)

    @property
    def m(self) -> int:
        return len(self.J)

    @classmethod
    def full(cls, n: int) -> "PadSpec":
        return cls(n, tuple(range(n)))


def pad_message(msg: Sequence[int], pad: PadSpec, rng: RandomSource) -> MessageWord:
    msg = check_word(msg)
    if len(msg) != pad.m:
        raise ValueError(f"message of length {len(msg)} does not fit {pad.m} pad positions")
    out = [rng.integer(4) for _ in range(pad.n)]
    for pos, sym in zip(pad.J, msg):
        out[pos] = sym
    return tuple(out)


def unpad(word: Sequence[int], pad: PadSpec) -> MessageWord:
    if len(word) != pad.n:
        raise ValueError(f"word of length {len(word)} is not a length-{pad.n} carrier")
    return tuple(word[pos] for pos in pad.J)


def _decode(table: ActionTable, initial: int, outcome: int, known: Sequence[Optional[int]]):
    try:
        return decode_partner(table, initial, outcome, known)
    except DecodeError as exc:
        raise ProtocolFailure(str(exc)) from exc


# --- quantum secure direct communication ------------------------------------


@dataclass
class QSDCResult:
    decoded: MessageWord
    padded: MessageWord
    outcomes: tuple[int, ...]
    transcript: Transcript


def run_qsdc(msg: Sequence[int], i: int, k: int, pad: PadSpec, seed: int) -> QSDCResult:
    """Alice encodes on her halves of ``n`` copies of ``b_k``; Bob applies ``sigma_i`` to his, measures and decodes."""
    msg = check_word(msg)
    if len(msg) != pad.m:
        raise ValueError(f"message of length {len(msg)} does not fit {pad.m} pad positions")
    check_word([i, k])
    reg = Registry(RandomSource(seed))
    a2 = build_a2()
    groups = [f"c{kappa}" for kappa in range(pad.n)]
    for g in groups:
        reg.prepare(ALICE, g, bell_by_index(k), [BOB, ALICE], f"b{k:02b}")

    padded = pad_message(msg, pad, reg.rng)
    for g, j in zip(groups, padded):
        reg.apply(ALICE, g, 1, j)
    for g in groups:
        reg.send(ALICE, BOB, g, 1)

    outcomes, recovered = [], []
    for g in groups:
        reg.apply(BOB, g, 0, i)
        out = reg.measure([BOB], g, bell_basis()).basis_index
        outcomes.append(out)
        recovered.append(_decode(a2, k, out, (i, None))[1])
    decoded = unpad(recovered, pad)
    reg.decode(BOB, decoded, about=ALICE)
    return QSDCResult(decoded, padded, tuple(outcomes), reg.transcript)


# --- bidirectional ----------------------------------------------------------


@dataclass
class BidirectionalResult:
    alice_received: MessageWord
    bob_received: MessageWord
    outcomes: tuple[int, ...]
    transcript: Transcript


def run_bidirectional(msg_a: Sequence[int], msg_b: Sequence[int], k: int, seed: int) -> BidirectionalResult:
    """Alice encodes on qubit 0, Bob on qubit 1 of each shared ``b_k``; one Bell measurement per pair is seen by both."""
    msg_a, msg_b = check_word(msg_a), check_word(msg_b)
    if len(msg_a) != len(msg_b):
        raise ValueError("both messages must have the same length")
    check_word([k])
    reg = Registry(RandomSource(seed))
    a2 = build_a2()
    groups = [f"c{kappa}" for kappa in range(len(msg_a))]
    for g in groups:
        reg.prepare(ALICE, g, bell_by_index(k), [ALICE, BOB], f"b{k:02b}")

    for g, i in zip(groups, msg_a):
        reg.apply(ALICE, g, 0, i)
    for g, j in zip(groups, msg_b):
        reg.apply(BOB, g, 1, j)
    for g in groups:
        reg.send(ALICE, BOB, g, 0)
    for g in groups:
        reg.send(BOB, ALICE, g, 1)

    outcomes, got_a, got_b = [], [], []
    for g, i, j in zip(groups, msg_a, msg_b):
        out = reg.measure([ALICE, BOB], g, bell_basis()).basis_index
        outcomes.append(out)
        got_a.append(_decode(a2, k, out, (i, None))[1])
        got_b.append(_decode(a2, k, out, (None, j))[0])
    reg.decode(ALICE, got_a, about=BOB)
    reg.decode(BOB, got_b, about=ALICE)
    return BidirectionalResult(tuple(got_a), tuple(got_b), tuple(outcomes), reg.transcript)


# --- multidirectional (three parties, one round) -----------------------------


@dataclass
class MultidirectionalResult:
    outcome: int
    views: dict[str, dict[str, str]]
    reference_intact: bool
    transcript: Transcript


def run_multidirectional(bits_a: str, bit_b: int, bit_c: int, ell: int, seed: int) -> MultidirectionalResult:
    """Alice sends two bits, Bob and Claire one each, over a shared GHZ state ``b_ell``.

    ``views[party]`` maps each other party to the bits ``party`` recovered.
    """
    if len(bits_a) != 2 or set(bits_a) - {"0", "1"}:
        raise ValueError(f"Alice needs exactly two bits, got {bits_a!r}")
    if bit_b not in (0, 1) or bit_c not in (0, 1):
        raise ValueError("Bob and Claire each send one bit")
    if not 0 <= ell < 8:
        raise ValueError(f"GHZ index must be in 0..7, got {ell}")
    reg = Registry(RandomSource(seed))
    s_table = restrict_to_s()
    parties = [ALICE, BOB, CLAIRE]
    initial = ghz_by_index(ell)
    reg.prepare(ALICE, "c0", initial, parties, f"b{ell:03b}")
    reg.prepare(ALICE, "c1", initial, parties, f"b{ell:03b}")

    word = (int(bits_a, 2), 2 * bit_b, 2 * bit_c)
    for pos, (party, idx) in enumerate(zip(parties, word)):
        reg.apply(party, "c1", pos, idx)
    out = reg.measure(parties, "c1", ghz_basis()).basis_index

    views = {}
    for pos, party in enumerate(parties):
        known = [None, None, None]
        known[pos] = word[pos]
        full = _decode(s_table, ell, out, known)
        view = {}
        for other_pos, other in enumerate(parties):
            if other_pos == pos:
                continue
            idx = full[other_pos]
            view[other] = f"{idx:02b}" if other_pos == 0 else str(idx // 2)
        views[party] = view
        reg.decode(party, [view[o] for o in parties if o in view])
    intact = reg.state("c0").allclose(initial)
    return MultidirectionalResult(out, views, intact, reg.transcript)


# --- controlled bidirectional ------------------------------------------------


class Phase(enum.Enum):
    ENCODING = "encoding"
    SUBMITTED = "submitted"
    AUTHORIZED = "authorized"
    WITHHELD = "withheld"


class ControlledSession:
    """Alice and Bob exchange messages through GHZ triples only if Claire measures.

    Claire holds qubit 0 of every triple, Alice qubit 1, Bob qubit 2.
    """

    def __init__(self, ell: int, pad: PadSpec, seed: int):
        if not 0 <= ell < 8:
            raise ValueError(f"GHZ index must be in 0..7, got {ell}")
        self.ell = ell
        self.pad = pad
        self.reg = Registry(RandomSource(seed))
        self.table = build_a3()
        self.phase = Phase.ENCODING
        self.groups = [f"c{nu}" for nu in range(pad.n)]
        self.sequences: dict[str, MessageWord] = {}
        self.outcomes: Optional[tuple[int, ...]] = None
        for g in self.groups:
            self.reg.prepare(CLAIRE, g, ghz_by_index(ell), [CLAIRE, ALICE, BOB], f"b{ell:03b}")

    def encode(self, party: str, msg: Sequence[int]) -> None:
        if self.phase is not Phase.ENCODING or party in self.sequences:
            raise ProtocolStateError(f"{party} cannot encode in phase {self.phase.value}")
        pos = {ALICE: 1, BOB: 2}[party]
        seq = pad_message(msg, self.pad, self.reg.rng)
        for g, idx in zip(self.groups, seq):
            self.reg.apply(party, g, pos, idx)
        for g in self.groups:
            self.reg.send(party, CLAIRE, g, pos)
        self.sequences[party] = seq
        if len(self.sequences) == 2:
            self.phase = Phase.SUBMITTED

    def authorize(self, grant: bool) -> None:
        if self.phase is not Phase.SUBMITTED:
            raise ProtocolStateError(f"Claire cannot decide in phase {self.phase.value}")
        if not grant:
            self.phase = Phase.WITHHELD
            return
        outs = tuple(self.reg.measure([CLAIRE], g, ghz_basis()).basis_index for g in self.groups)
        payload = "".join(str(o) for o in outs)
        self.reg.classical(CLAIRE, ALICE, payload)
        self.reg.classical(CLAIRE, BOB, payload)
        self.outcomes = outs
        self.phase = Phase.AUTHORIZED

    def decode(self, party: str) -> MessageWord:
        """Recover the correspondent's message at the agreed positions."""
        if self.phase is not Phase.AUTHORIZED:
            raise ProtocolStateError(f"{party} cannot decode without authorization")
        own = unpad(self.sequences[party], self.pad)
        got = []
        for nu, sym in zip(self.pad.J, own):
            out = self.outcomes[nu]
            if party == ALICE:
                got.append(_decode(self.table, self.ell, out, (0, sym, None))[2])
            else:
                got.append(_decode(self.table, self.ell, out, (0, None, sym))[1])
        other = BOB if party == ALICE else ALICE
        self.reg.decode(party, got, about=other)
        return tuple(got)


@dataclass
class ControlledResult:
    alice_received: Optional[MessageWord]
    bob_received: Optional[MessageWord]
    outcomes: Optional[tuple[int, ...]]
    transcript: Transcript


def run_controlled(
    msg_a: Sequence[int], msg_b: Sequence[int], ell: int, pad: PadSpec, grant: bool, seed: int
) -> ControlledResult:
    msg_a, msg_b = check_word(msg_a), check_word(msg_b)
    if not len(msg_a) == len(msg_b) == pad.m:
        raise ValueError("both messages must have one symbol per pad position")
    session = ControlledSession(ell, pad, seed)
    session.encode(ALICE, msg_a)
    session.encode(BOB, msg_b)
    session.authorize(grant)
    if not grant:
        return ControlledResult(None, None, None, session.reg.transcript)
    got_a = session.decode(ALICE)
    got_b = session.decode(BOB)
    return ControlledResult(got_a, got_b, session.outcomes, session.reg.transcript)


def controller_candidates(ell: int, outcome: int, position: int, controller_index: Optional[int] = None) -> set[int]:
    """Symbols at ``position`` consistent with a broadcast outcome.

    With ``controller_index=None`` the controller's own operator is treated
    as unknown, i.e. only the broadcast outcome is used.
    """
    table = build_a3()
    return {
        w[position]
        for w, action in table.entries.items()
        if action.perm[ell] == outcome and (controller_index is None or w[0] == controller_index)
    }


# --- key agreement by entanglement swapping ---------------------------------


@dataclass(frozen=True)
class Block:
    index: int
    labels: tuple[int, int, int, int]
    alice_action: int
    bob_action: int
    outcomes: tuple[int, int]
    alice_bits: tuple[int, ...]
    bob_bits: tuple[int, ...]

    @property
    def correlated(self) -> bool:
        return self.alice_action == self.bob_action

    @property
    def outcome_bits(self) -> tuple[int, int, int, int]:
        (a, b), (c, d) = (divmod(o, 2) for o in self.outcomes)
        return (a, b, c, d)


@dataclass
class KeyAgreementResult:
    key_alice: tuple[int, ...]
    key_bob: tuple[int, ...]
    blocks: list[Block]
    transcript: Transcript
    stats: dict = field(default_factory=dict)


_PAIRINGS = {0: ((0, 1), (2, 3)), 1: ((0, 2), (1, 3))}


def run_key_agreement(m: int, seed: int) -> KeyAgreementResult:
    """Alice prepares ``m`` blocks of two Bell pairs and may swap each block's middle qubits;
    Bob measures each block along one of two pairings.  Correlated blocks give 4 key bits,
    anticorrelated blocks the 2 parity bits.
    """
    if m < 1:
        raise ValueError("need at least one block")
    reg = Registry(RandomSource(seed))
    rng = reg.rng
    labels = [rng.integer(4) for _ in range(2 * m)]
    groups = [f"q{k}" for k in range(m)]
    for k, g in enumerate(groups):
        first, second = labels[2 * k], labels[2 * k + 1]
        state = tensor(bell_by_index(first), bell_by_index(second))
        reg.prepare(ALICE, g, state, [ALICE] * 4, f"b{first:02b},b{second:02b}")

    alice_actions = [rng.bit() for _ in range(m)]
    for g, act in zip(groups, alice_actions):
        if act:
            reg.permute(ALICE, g, MIDDLE_SWAP, "swap(1,2)")
    for g in groups:
        for pos in range(4):
            reg.send(ALICE, BOB, g, pos)

    bob_actions = [rng.bit() for _ in range(m)]
    results = []
    for g, act in zip(groups, bob_actions):
        p, q = _PAIRINGS[act]
        results.append((reg.measure([BOB], g, BellPairing(*p)).basis_index,
                        reg.measure([BOB], g, BellPairing(*q)).basis_index))

    reg.classical(ALICE, BOB, "".join(f"A{a}" for a in alice_actions))
    reg.classical(BOB, ALICE, "".join(f"B{b}" for b in bob_actions))

    blocks, key_a, key_b = [], [], []
    for k in range(m):
        i0, j0 = divmod(labels[2 * k], 2)
        i1, j1 = divmod(labels[2 * k + 1], 2)
        (a, b), (c, d) = (divmod(o, 2) for o in results[k])
        if alice_actions[k] == bob_actions[k]:
            alice_bits = (i0, j0, i1, j1)
            bob_bits = (a, b, c, d)
        else:
            alice_bits = (i0 ^ i1, j0 ^ j1)
            bob_bits = (a ^ c, b ^ d)
        blocks.append(Block(k, (i0, j0, i1, j1), alice_actions[k], bob_actions[k], results[k], alice_bits, bob_bits))
        key_a.extend(alice_bits)
        key_b.extend(bob_bits)
    reg.decode(ALICE, key_a, about="key")
    reg.decode(BOB, key_b, about="key")
    return KeyAgreementResult(tuple(key_a), tuple(key_b), blocks, reg.transcript, key_agreement_stats(blocks))


def anticorrelated_class(block: Block) -> int:
    """Which of the four parity-consistent outcomes Bob saw: radix of ``(a^i0, b^j0)``."""
    a, b, _, _ = block.outcome_bits
    return 2 * (a ^ block.labels[0]) + (b ^ block.labels[1])


def key_agreement_stats(blocks: Sequence[Block]) -> dict:
    corr = [blk for blk in blocks if blk.correlated]
    anti = [blk for blk in blocks if not blk.correlated]
    classes = Counter(anticorrelated_class(blk) for blk in anti)
    parity_ok = all(
        blk.outcome_bits[0] ^ blk.outcome_bits[2] == blk.labels[0] ^ blk.labels[2]
        and blk.outcome_bits[1] ^ blk.outcome_bits[3] == blk.labels[1] ^ blk.labels[3]
        for blk in anti
    )
    return {
        "blocks": len(blocks),
        "correlated": len(corr),
        "anticorrelated": len(anti),
        "key_length": 4 * len(corr) + 2 * len(anti),
        "anticorrelated_classes": [classes.get(c, 0) for c in range(4)],
        "parity_law_holds": parity_ok,
    }
