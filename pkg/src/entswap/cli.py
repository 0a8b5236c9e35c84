"""Command line entry point: ``entswap {tables,verify,run,info}``.

Exit codes: 0 success, 2 usage error, 3 verification failure, 4 protocol
failure.  On any failure the last line of standard output is
``FAILED exit=<code> reason=<text>``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .bases import verify_hadamard_expansions
from .pauli import verify_pauli_actions, word_str
from .protocols import (
    PadSpec,
    run_bidirectional,
    run_controlled,
    run_key_agreement,
    run_multidirectional,
    run_qsdc,
)
from .registry import ProtocolError
from .swapping import verify_swap_identities
from .tables import build_a2, build_a3, restrict_to_s, verify_tables

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_PROTOCOL = 0, 2, 3, 4
SEED_ENV = "ENTSWAP_SEED"

TABLES = {"a2": build_a2, "a3": build_a3, "s": restrict_to_s}
SUITES = {
    "pauli": verify_pauli_actions,
    "hadamard": verify_hadamard_expansions,
    "swap": verify_swap_identities,
    "tables": verify_tables,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(code: int, reason: str) -> int:
    print(f"FAILED exit={code} reason={' '.join(reason.split())}")
    return code


def _digits(text: str, radix: int, what: str) -> tuple[int, ...]:
    if text == "-":
        return ()
    try:
        values = tuple(int(ch, radix) for ch in text)
    except ValueError:
        raise UsageError(f"{what} must be a string of base-{radix} digits, got {text!r}") from None
    return values


def _positions(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--J must be comma-separated integers, got {text!r}") from None


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be a decimal integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entswap", description="Entanglement-swapping protocol simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="dump a derived permutation table")
    p.add_argument("which", choices=sorted(TABLES))
    p.add_argument("--format", choices=("text", "records"), default="text")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=(*SUITES, "all"))

    p = sub.add_parser("run", help="run a protocol")
    p.add_argument("protocol", choices=("qsdc", "bidi", "multi", "controlled", "keyagree"))
    p.add_argument("--msg", help="radix-4 message (qsdc)")
    p.add_argument("--msg-a", help="Alice's radix-4 message (bidi, controlled)")
    p.add_argument("--msg-b", help="Bob's radix-4 message (bidi, controlled)")
    p.add_argument("--bits-a", help="Alice's two bits (multi)")
    p.add_argument("--bit-b", help="Bob's bit (multi)")
    p.add_argument("--bit-c", help="Claire's bit (multi)")
    p.add_argument("--n", type=int, help="carrier length (qsdc, controlled)")
    p.add_argument("--J", default=None, help="comma-separated message positions")
    p.add_argument("--i", type=int, default=0, help="Bob's Pauli index (qsdc)")
    p.add_argument("--k", type=int, default=0, help="shared Bell index (qsdc, bidi)")
    p.add_argument("--ell", type=int, default=0, help="shared GHZ index (multi, controlled)")
    p.add_argument("--grant", type=_bool, default=True, help="controller authorization (controlled)")
    p.add_argument("--m", type=int, default=None, help="number of 4-qubit blocks (keyagree)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trace-out", default=None, help="write the transcript to this path")

    sub.add_parser("info", help="show version and conventions")
    return parser


def cmd_tables(which: str, fmt: str) -> int:
    table = TABLES[which]()
    for ell, perm, words in table.rows():
        names = [word_str(w) for w in words]
        if fmt == "records":
            print(json.dumps({"table": which, "index": ell, "permutation": list(perm), "words": names},
                             separators=(",", ":")))
        else:
            print(f"{ell}  [{' '.join(map(str, perm))}]  {{{', '.join(names)}}}")
    return EXIT_OK


def cmd_verify(suite: str) -> int:
    names = list(SUITES) if suite == "all" else [suite]
    failed = []
    for name in names:
        report = SUITES[name]()
        for line in report.lines():
            print(line)
        failed += [c.name for c in report.failures()]
    total_line = f"verify {suite}: {'ok' if not failed else f'{len(failed)} failed'}"
    print(total_line)
    if failed:
        more = f" (+{len(failed) - 1} more)" if len(failed) > 1 else ""
        return _fail(EXIT_VERIFY, f"verification failed: {failed[0]}{more}")
    return EXIT_OK


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.protocol} requires {', '.join(missing)}")


def _pad(args, m: int) -> PadSpec:
    n = args.n if args.n is not None else m
    J = _positions(args.J) if args.J is not None else tuple(range(m))
    try:
        return PadSpec(n, J)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _bit(text: str, what: str) -> int:
    if text not in ("0", "1"):
        raise UsageError(f"{what} must be 0 or 1, got {text!r}")
    return int(text)


def _show(symbols) -> str:
    return "".join(map(str, symbols)) if symbols else "-"


def cmd_run(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    proto = args.protocol
    ok = True
    try:
        if proto == "qsdc":
            _need(args, "msg")
            msg = _digits(args.msg, 4, "--msg")
            res = run_qsdc(msg, args.i, args.k, _pad(args, len(msg)), seed)
            print(f"carrier {_show(res.padded)}")
            print(f"outcomes {_show(res.outcomes)}")
            print(f"decoded {_show(res.decoded)}")
            ok = res.decoded == msg
        elif proto == "bidi":
            _need(args, "msg_a", "msg_b")
            a, b = _digits(args.msg_a, 4, "--msg-a"), _digits(args.msg_b, 4, "--msg-b")
            res = run_bidirectional(a, b, args.k, seed)
            print(f"outcomes {_show(res.outcomes)}")
            print(f"alice_received {_show(res.alice_received)}")
            print(f"bob_received {_show(res.bob_received)}")
            ok = res.alice_received == b and res.bob_received == a
        elif proto == "multi":
            _need(args, "bits_a", "bit_b", "bit_c")
            bit_b, bit_c = _bit(args.bit_b, "--bit-b"), _bit(args.bit_c, "--bit-c")
            res = run_multidirectional(args.bits_a, bit_b, bit_c, args.ell, seed)
            print(f"outcome {res.outcome}")
            for party, view in res.views.items():
                print(f"{party} " + " ".join(f"{k}={v}" for k, v in view.items()))
            truth = {"Alice": args.bits_a, "Bob": str(bit_b), "Claire": str(bit_c)}
            ok = res.reference_intact and all(
                v == truth[other] for view in res.views.values() for other, v in view.items()
            )
        elif proto == "controlled":
            _need(args, "msg_a", "msg_b")
            a, b = _digits(args.msg_a, 4, "--msg-a"), _digits(args.msg_b, 4, "--msg-b")
            res = run_controlled(a, b, args.ell, _pad(args, len(a)), args.grant, seed)
            if res.outcomes is None:
                print("no authorization; no message exchanged")
                ok = res.alice_received is None and res.bob_received is None and not res.transcript.of_kind("measurement")
            else:
                print(f"outcomes {_show(res.outcomes)}")
                print(f"alice_received {_show(res.alice_received)}")
                print(f"bob_received {_show(res.bob_received)}")
                ok = res.alice_received == b and res.bob_received == a
        else:
            _need(args, "m")
            res = run_key_agreement(args.m, seed)
            for blk in res.blocks:
                print(
                    f"block {blk.index} labels={_show(blk.labels)} A{blk.alice_action} B{blk.bob_action} "
                    f"{'correlated' if blk.correlated else 'anticorrelated'} "
                    f"outcomes={_show(blk.outcome_bits)} bits={_show(blk.bob_bits)}"
                )
            s = res.stats
            print(
                f"stats blocks={s['blocks']} correlated={s['correlated']} anticorrelated={s['anticorrelated']} "
                f"key_length={s['key_length']} classes={','.join(map(str, s['anticorrelated_classes']))}"
            )
            print(f"key_alice {_show(res.key_alice)}")
            print(f"key_bob {_show(res.key_bob)}")
            ok = res.key_alice == res.key_bob and s["parity_law_holds"]
    except ProtocolError as exc:
        return _fail(EXIT_PROTOCOL, f"{type(exc).__name__}: {exc}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    if args.trace_out:
        res.transcript.write(args.trace_out)
    if not ok:
        return _fail(EXIT_PROTOCOL, f"{proto} did not recover the sent message")
    return EXIT_OK


def cmd_info() -> int:
    print(f"entswap {__version__}")
    print("ket order: leftmost label = most significant index bit = qubit position 0")
    print("bell index: b_ij -> 2*i + j; ghz index: b_e1e2e3 -> 4*e1 + 2*e2 + e3")
    print("pauli numbering: 0=I 1=X 2=Y 3=Z")
    print(f"default seed: ${SEED_ENV} or 0")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "tables":
            return cmd_tables(args.which, args.format)
        if args.command == "verify":
            return cmd_verify(args.suite)
        if args.command == "run":
            return cmd_run(args)
        return cmd_info()
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        return _fail(EXIT_USAGE, f"usage: {exc}")


if __name__ == "__main__":
    sys.exit(main())
