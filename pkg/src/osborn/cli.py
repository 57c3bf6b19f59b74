"""Command-line entry point: ``osborn <subcommand> ...``.

Exit status: 0 when every requested check holds, 1 when a check fails,
2 for usage errors, 3 for unreadable or invalid input files.  The worker
count for parallel enumeration comes from ``OSBORN_WORKERS``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import crypto
from .enumerate import (OrderTooLarge, corpus, enumerate_loops, inverse_cycles)
from .isotopy import (check_diagram, check_OS0_prime, check_OSI, is_g_loop,
                      is_universal_osborn, principal_isotope)
from .loop import FiniteLoop, LoopError, load_loop, serialize_loop
from .mappings import parse_word
from .properties import ALIASES, IDENTITIES, PropertyReport, has_property
from .theorems import CATALOGUE, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def resolve_loop(spec: str) -> FiniteLoop:
    """A path to a ``.tab`` file, or the name of a built-in loop."""
    p = Path(spec)
    if p.exists():
        try:
            return load_loop(p)
        except LoopError as exc:
            raise InputError(f"{spec}: {exc}") from None
        except OSError as exc:
            raise InputError(f"{spec}: {exc}") from None
    builtin = corpus()
    name = p.stem if p.suffix == ".tab" else spec
    if name in builtin:
        return builtin[name]
    raise InputError(f"{spec}: no such file or built-in loop")


def _loop_arg(args) -> FiniteLoop:
    spec = getattr(args, "loop_opt", None) or getattr(args, "loop", None)
    if not spec:
        raise UsageError("a loop (file or built-in name) is required")
    return resolve_loop(spec)


def _emit(reports: list[PropertyReport], fmt: str) -> int:
    for r in reports:
        if fmt == "structured":
            print(json.dumps(r.as_dict(), sort_keys=True))
        else:
            print(r.line())
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def _check_one(L: FiniteLoop, prop: str, args) -> PropertyReport:
    key = prop.lower()
    if key == "universal-osborn":
        return is_universal_osborn(L)
    if key in ("os0-prime", "os0prime"):
        return check_OS0_prime(L)
    if key in ("osi01", "osi011", "dlip"):
        return check_OSI(L, key)
    if key == "diagram":
        return check_diagram(L)
    if key == "g-loop":
        return is_g_loop(L, samples=args.samples, seed=args.seed, exhaustive=args.exhaustive)
    try:
        return has_property(L, key)
    except KeyError:
        raise UsageError(f"unknown property {prop!r}") from None


def cmd_validate(args) -> int:
    L = _loop_arg(args)
    print(f"order {L.order} identity {L.identity}")
    return EXIT_OK


def cmd_check(args) -> int:
    L = _loop_arg(args)
    props = args.property or ["osborn"]
    return _emit([_check_one(L, p, args) for p in props], args.format)


def cmd_verify_theorem(args) -> int:
    L = _loop_arg(args)
    names = list(CATALOGUE) if args.all or not args.theorem else args.theorem
    try:
        reports = [verify_theorem(L, t) for t in names]
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    return _emit(reports, args.format)


def cmd_isotope(args) -> int:
    L = _loop_arg(args)
    for v in (args.f, args.g):
        if not 1 <= v <= L.order:
            raise UsageError(f"element {v} outside 1..{L.order}")
    iso = principal_isotope(L, args.f, args.g)
    text = serialize_loop(iso, [f"principal isotope f={args.f} g={args.g}, identity {iso.identity}"])
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_universal_check(args) -> int:
    L = _loop_arg(args)
    return _emit([is_universal_osborn(L, args.variant)], args.format)


def _codec(args) -> crypto.Codec:
    if args.codec:
        try:
            return crypto.Codec.load(args.codec)
        except (OSError, ValueError) as exc:
            raise InputError(f"{args.codec}: {exc}") from None
    return crypto.default_codec()


def _components(args, L: FiniteLoop):
    if not 1 <= args.key <= L.order:
        raise UsageError(f"key {args.key} outside 1..{L.order}")
    F = crypto.functional(L, args.ci, args.key)
    return F, crypto.split(F, args.split)


def cmd_encode(args) -> int:
    L = _loop_arg(args)
    codec = _codec(args)
    F, (sfc, rfc) = _components(args, L)
    if args.table:
        rows = crypto.cipher_table(L, codec, sfc, rfc, sorted(set(args.msg)))
        sys.stdout.write(crypto.format_cipher_table(rows))
        return EXIT_OK
    print(",".join(map(str, crypto.encipher(L, codec, sfc, args.msg))))
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_decode(args) -> int:
    L = _loop_arg(args)
    codec = _codec(args)
    F, (sfc, rfc) = _components(args, L)
    elements = crypto.decipher_elements(L, rfc, _int_list(args.cipher))
    if args.elements:
        print(",".join(map(str, elements)))
    else:
        print(codec.to_text(elements))
    return EXIT_OK


def cmd_chain(args) -> int:
    L = _loop_arg(args)
    codec = _codec(args)
    try:
        chain = crypto.ChainConfig.parse(args.components)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    trace = crypto.chain_transmit(L, chain, codec, args.msg)
    sys.stdout.write(trace.table())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    where = []
    for w in args.where or []:
        key = w.lower()
        if key != "universal-osborn":
            key = ALIASES.get(key, key)
            if key not in IDENTITIES:
                raise UsageError(f"unknown property {w!r}")
        where.append(key)
    emit = Path(args.emit) if args.emit else None
    if emit:
        emit.mkdir(parents=True, exist_ok=True)
    count = 0
    for L in enumerate_loops(args.order, where, allow_order7=args.allow_order7):
        count += 1
        if emit:
            (emit / f"loop{args.order}_{count:05d}.tab").write_text(serialize_loop(L))
    print(f"order {args.order} loops {count}")
    return EXIT_OK


def cmd_cycles(args) -> int:
    L = _loop_arg(args)
    rep = inverse_cycles(L)
    print(rep.notation())
    print("lengths " + ",".join(map(str, rep.lengths)))
    return EXIT_OK


def cmd_cf(args) -> int:
    L = _loop_arg(args)
    if not 1 <= args.key <= L.order:
        raise UsageError(f"key {args.key} outside 1..{L.order}")
    F = crypto.functional(L, args.ci, args.key)
    print(f"name {F.name}")
    print(f"key {F.key}")
    print(f"word {F.word}")
    print("components " + " | ".join(str(c) for c in F.components))
    print(f"degree {F.degree}")
    if args.split:
        sfc, rfc = crypto.split(F, args.split)
        print(f"sfc {sfc}")
        print(f"rfc {rfc}")
    ci = crypto.is_CI(L, F)
    print(f"ci {ci.status}" + (f" witness: {ci.witness[0]}" if ci.witness else ""))
    return EXIT_OK if ci.holds else EXIT_FAIL


def cmd_report(args) -> int:
    from .report import write_report

    L = _loop_arg(args)
    for p in write_report(L, args.out, theorems=not args.no_theorems):
        print(p)
    return EXIT_OK


def _add_loop(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("loop", nargs="?", help="table file or built-in loop name")
    p.add_argument("--loop", dest="loop_opt", metavar="LOOP", help="table file or built-in loop name")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "structured"), default="text")


def _add_cipher(p: argparse.ArgumentParser) -> None:
    p.add_argument("--key", type=int, required=True, help="enciphering element x")
    p.add_argument("--ci", default="dlip", choices=sorted(crypto.FUNCTIONALS))
    p.add_argument("--split", type=int, required=True, help="SFC length")
    p.add_argument("--codec", help="codec file (lines '<CHAR> <INDEX>'); default B/N/O/R/S map")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="osborn", description="Finite loop toolkit and Osborn-loop cipher engine.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a table")
    _add_loop(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="check loop properties")
    _add_loop(p)
    p.add_argument("--property", action="append",
                   help="property name; repeatable (default: osborn). Includes "
                        "universal-osborn, os0-prime, osi01, osi011, dlip, diagram, g-loop")
    p.add_argument("--samples", type=int, default=16, help="isotopes sampled for g-loop")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true", help="g-loop: test every isotope")
    _add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-theorem", help="check theorem conclusions")
    _add_loop(p)
    p.add_argument("--theorem", action="append", help="one of: " + ", ".join(CATALOGUE))
    p.add_argument("--all", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("isotope", help="emit an f,g-principal isotope as a table file")
    _add_loop(p)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_isotope)

    p = sub.add_parser("universal-check", help="are all principal isotopes Osborn?")
    _add_loop(p)
    p.add_argument("--variant", default="OS0", choices=("OS0", "OS1", "OS2", "OS3"))
    _add_format(p)
    p.set_defaults(func=cmd_universal_check)

    p = sub.add_parser("encode", help="encipher a message with a functional's SFC")
    _add_loop(p, positional=False)
    _add_cipher(p)
    p.add_argument("--msg", required=True)
    p.add_argument("--table", action="store_true", help="print the per-letter computation table")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decipher with the RFC")
    _add_loop(p, positional=False)
    _add_cipher(p)
    p.add_argument("--cipher", required=True, help="comma-separated elements")
    p.add_argument("--elements", action="store_true", help="print elements instead of letters")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("chain", help="relay a message through several terminals")
    _add_loop(p, positional=False)
    p.add_argument("--components", required=True, help="words separated by '|', e.g. 'L:16|L:10|R:10|R:16'")
    p.add_argument("--codec")
    p.add_argument("--msg", required=True)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("enumerate", help="enumerate normalized loops of a small order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--where", action="append", help="property filter; repeatable")
    p.add_argument("--emit", help="directory for one .tab file per hit")
    p.add_argument("--allow-order7", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cycles", help="cycle decomposition of x -> x^rho")
    _add_loop(p)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("cf", help="inspect a cryptographic functional")
    _add_loop(p)
    p.add_argument("--ci", default="dlip", choices=sorted(crypto.FUNCTIONALS))
    p.add_argument("--key", type=int, required=True)
    p.add_argument("--split", type=int)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("report", help="write TSV summaries and figures for a loop")
    _add_loop(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--no-theorems", action="store_true")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"osborn {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, OSError) as exc:
        print(f"osborn {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (crypto.CryptoError, OrderTooLarge, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"osborn {args.command}: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
