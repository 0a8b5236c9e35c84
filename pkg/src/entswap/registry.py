"""Joint-state bookkeeping and event transcripts for protocol runs.

Each entangled group is one joint ``StateVector``; sending a qubit only
changes who owns it.  Every action is appended to a ``Transcript`` as a
flat record so runs can be replayed and diffed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .bases import BellPairing, EntangledBasis
from .hilbert import QubitPermutation, StateVector, permute_qubits
from .measure import MeasurementOutcome, RandomSource, measure_full, measure_subset
from .pauli import apply_local

FIELDS = (
    "event", "step", "actor", "target", "group", "position",
    "pauli", "basis", "outcome", "prob", "payload",
)


class ProtocolError(RuntimeError):
    """Base class for protocol-run failures."""


class OwnershipError(ProtocolError):
    """A party touched a qubit it does not hold."""


class ProtocolStateError(ProtocolError):
    """An operation was attempted in the wrong phase of a run."""


class ProtocolFailure(ProtocolError):
    """Decoding did not recover a unique message."""


@dataclass
class Transcript:
    events: list[dict] = field(default_factory=list)

    def record(self, event: str, **fields) -> dict:
        unknown = set(fields) - set(FIELDS)
        if unknown:
            raise ValueError(f"unknown transcript fields: {sorted(unknown)}")
        rec = {"event": event, "step": len(self.events)}
        rec.update({k: v for k, v in fields.items() if v is not None})
        self.events.append(rec)
        return rec

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def of_kind(self, event: str) -> list[dict]:
        return [e for e in self.events if e["event"] == event]

    def to_lines(self) -> list[str]:
        return [json.dumps(e, sort_keys=True, separators=(",", ":")) for e in self.events]

    def dumps(self) -> str:
        return "".join(line + "\n" for line in self.to_lines())

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        return cls([json.loads(line) for line in text.splitlines() if line.strip()])


def _symbols(values: Iterable) -> str:
    return "".join(str(v) for v in values)


class Registry:
    """Entangled groups of one protocol run, their owners, and the run transcript."""

    def __init__(self, rng: RandomSource):
        self.rng = rng
        self.groups: dict[str, StateVector] = {}
        self.owners: dict[tuple[str, int], str] = {}
        self.transcript = Transcript()

    def prepare(self, actor: str, group: str, state: StateVector, owners: Sequence[str], label: str) -> None:
        if group in self.groups:
            raise ProtocolStateError(f"group {group} already exists")
        if len(owners) != state.num_qubits:
            raise ValueError(f"{len(owners)} owners for {state.num_qubits} qubits")
        self.groups[group] = state
        for pos, owner in enumerate(owners):
            self.owners[(group, pos)] = owner
        self.transcript.record("prepare", actor=actor, group=group, basis=label, payload=",".join(owners))

    def state(self, group: str) -> StateVector:
        return self.groups[group]

    def owner(self, group: str, pos: int) -> str:
        return self.owners[(group, pos)]

    def _require(self, party: str, group: str, pos: int) -> None:
        holder = self.owners.get((group, pos))
        if holder is None:
            raise ProtocolStateError(f"no qubit {group}[{pos}]")
        if holder != party:
            raise OwnershipError(f"{party} acted on {group}[{pos}] held by {holder}")

    def apply(self, party: str, group: str, pos: int, pauli: int) -> None:
        self._require(party, group, pos)
        self.groups[group] = apply_local(self.groups[group], pos, pauli)
        self.transcript.record("local-op", actor=party, group=group, position=pos, pauli=pauli)

    def permute(self, party: str, group: str, perm: QubitPermutation, label: str) -> None:
        """Relabel qubits of a group held entirely by ``party``."""
        for pos in range(len(perm)):
            self._require(party, group, pos)
        self.groups[group] = permute_qubits(self.groups[group], perm)
        self.transcript.record("local-op", actor=party, group=group, payload=label)

    def send(self, src: str, dst: str, group: str, pos: int) -> None:
        self._require(src, group, pos)
        self.owners[(group, pos)] = dst
        self.transcript.record("quantum-send", actor=src, target=dst, group=group, position=pos)

    def classical(self, src: str, dst: str, payload: str) -> None:
        self.transcript.record("classical-send", actor=src, target=dst, payload=payload)

    def measure(
        self,
        actors: Sequence[str],
        group: str,
        how: Union[EntangledBasis, BellPairing, tuple[int, int]],
    ) -> MeasurementOutcome:
        """Projectively measure ``group``; every measured qubit must be held by one of ``actors``.

        ``how`` is a full basis for the whole group or a Bell pairing.
        """
        state = self.groups[group]
        if isinstance(how, EntangledBasis):
            positions = range(state.num_qubits)
            name = how.name
        else:
            pairing = how if isinstance(how, BellPairing) else BellPairing(*how)
            positions = pairing.positions
            name = f"bell({pairing})"
        for pos in positions:
            holder = self.owners[(group, pos)]
            if holder not in actors:
                raise OwnershipError(f"{'+'.join(actors)} measured {group}[{pos}] held by {holder}")
        if isinstance(how, EntangledBasis):
            result = measure_full(state, how, self.rng)
        else:
            result = measure_subset(state, pairing, self.rng)
        self.groups[group] = result.post_state
        self.transcript.record(
            "measurement",
            actor="+".join(actors),
            group=group,
            basis=name,
            outcome=result.basis_index,
            prob=round(result.probability, 12),
        )
        return result

    def decode(self, party: str, symbols: Iterable, about: Optional[str] = None) -> None:
        self.transcript.record("decode", actor=party, target=about, payload=_symbols(symbols))
