"""Command line front end.

    lamplight machine run --mod 2 --state 0 --word 1011
    lamplight series inv --mod 2 --len 5 1100
    lamplight group normalform q p
    lamplight verify all --seed 0

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from lamplight import affine, lamplighter, mealy, series, verify
from lamplight.errors import LamplightError
from lamplight.words import DigitWord

DEFAULT_LENGTH = 64


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mod", type=int, default=2, help="alphabet size / ring Z/nZ (default 2)")
    p.add_argument("--len", type=int, default=None, help="series truncation length")
    p.add_argument("--seed", type=int, default=0, help="seed for verification suites")
    p.add_argument("--depth", type=int, default=20, help="max generator word length / search depth")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="lamplight", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    machine = sub.add_parser("machine", parents=[common], help="the lamplighter Mealy machine")
    machine.add_argument("action", choices=("show", "invert", "run"))
    machine.add_argument("--state", type=int, default=0)
    machine.add_argument("--word", default="")
    machine.add_argument("--inverse", action="store_true", help="run the inverse machine")

    ser = sub.add_parser("series", parents=[common], help="truncated power series arithmetic")
    ser.add_argument("action", choices=("add", "mul", "inv", "shift", "geom", "pow"))
    ser.add_argument("operands", nargs="*")
    ser.add_argument("--a", type=int, default=1, help="ratio for geom")
    ser.add_argument("--exp", type=int, default=None, help="exponent for pow")
    ser.add_argument("--header", action="store_true", help="prefix output with mod=<n> len=<L>:")

    group = sub.add_parser("group", parents=[common], help="group elements and normal forms")
    group.add_argument("action", choices=("compose", "inv", "normalform", "act", "tolamp"))
    group.add_argument("operands", nargs="*")
    group.add_argument("--elem", default=None, help="normal form text, e.g. '{-1};2'")
    group.add_argument("--word", default=None)

    ver = sub.add_parser("verify", parents=[common], help="run property suites")
    ver.add_argument("suite", choices=verify.SUITES + ("all",))
    ver.add_argument("--trials", type=int, default=200)
    return parser


def _word(text: str, modulus: int) -> DigitWord:
    return DigitWord.parse(text, modulus)


def cmd_machine(args) -> list[str]:
    m = affine.build_lamplighter_machine(args.mod)
    if args.action == "show":
        return [mealy.format_machine(m)]
    inverse = mealy.invert(m)
    if args.action == "invert":
        return [mealy.format_machine(inverse)]
    if not 0 <= args.state < m.state_count:
        raise UsageError(f"state {args.state} out of range [0, {m.state_count})")
    state, out = mealy.transduce(inverse if args.inverse else m, args.state, _word(args.word, args.mod))
    return [f"output={out} state={state}"]


def cmd_series(args) -> list[str]:
    n = args.mod
    length = args.len
    if length is None:
        length = max((len(op.rstrip(".…").split(",")) if "," in op else len(op.rstrip(".…"))
                      for op in args.operands), default=DEFAULT_LENGTH)
    if length < 1:
        raise UsageError("--len must be >= 1")
    ops = [series.TruncatedSeries.parse(op, n, length) for op in args.operands]
    arity = {"add": 2, "mul": 2, "inv": 1, "shift": 1, "geom": 0, "pow": 1}[args.action]
    if len(ops) != arity:
        raise UsageError(f"series {args.action} takes {arity} operand(s), got {len(ops)}")
    if args.action == "add":
        result = series.add(*ops)
    elif args.action == "mul":
        result = series.mul(*ops)
    elif args.action == "inv":
        result = series.inverse(ops[0])
    elif args.action == "shift":
        result = series.shift(ops[0])
    elif args.action == "geom":
        result = series.geometric(args.a, length, n)
    else:
        if args.exp is None:
            raise UsageError("series pow needs --exp")
        result = series.power(ops[0], args.exp)
    text = series.format_series(result)
    if args.header:
        text = f"mod={n} len={length}:{text}"
    return [text]


def _element(text: str, modulus: int) -> affine.NormalForm:
    if text.strip().startswith("{"):
        return affine.parse_normalform(text, modulus)
    return affine.word_to_normalform(affine.parse_generator_word(text, modulus))


def cmd_group(args) -> list[str]:
    n = args.mod
    if args.action == "normalform":
        word = affine.parse_generator_word(" ".join(args.operands), n)
        return [affine.format_normalform(affine.word_to_normalform(word))]
    if args.action == "compose":
        if not args.operands:
            raise UsageError("group compose needs at least one element")
        result = affine.NormalForm.identity(n)
        for op in args.operands:
            result = affine.nf_mul(result, _element(op, n))
        return [affine.format_normalform(result)]
    if args.action == "inv":
        if len(args.operands) != 1:
            raise UsageError("group inv takes one element")
        return [affine.format_normalform(affine.nf_inv(_element(args.operands[0], n)))]
    if args.action == "tolamp":
        texts = args.operands or ([args.elem] if args.elem else [])
        if len(texts) != 1:
            raise UsageError("group tolamp takes one element")
        return [lamplighter.format_lamp(lamplighter.nf_to_lamp(_element(texts[0], n)))]
    # act
    if args.word is None:
        raise UsageError("group act needs --word")
    w = _word(args.word, n)
    if args.elem is not None:
        return [str(affine.nf_apply_word(affine.parse_normalform(args.elem, n), w))]
    if not args.operands:
        raise UsageError("group act needs --elem or generator tokens")
    return [str(affine.nf_apply_word(affine.parse_generator_word(" ".join(args.operands), n), w))]


def cmd_verify(args) -> tuple[list[str], bool]:
    cfg = verify.VerifyConfig(
        modulus=args.mod,
        series_length=args.len if args.len is not None else DEFAULT_LENGTH,
        seed=args.seed,
        depth=args.depth,
        trials=args.trials,
    )
    lines: list[str] = []
    ok = True
    for report in verify.run_suite(args.suite, cfg):
        lines.append(f"[{report.suite}] mod={cfg.modulus} len={cfg.series_length} seed={cfg.seed}")
        lines.extend("  " + ln for ln in report.lines())
        ok = ok and report.ok
    lines.append("OK" if ok else "FAILED")
    return lines, ok


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    # operands may follow options (``series inv --mod 2 1100``); argparse leaves them unparsed
    args, extras = parser.parse_known_args(argv)
    if extras:
        if not hasattr(args, "operands") or any(e.startswith("--") for e in extras):
            parser.error(f"unrecognized arguments: {' '.join(extras)}")
        args.operands = list(args.operands) + extras
    try:
        if args.mod < 2:
            raise UsageError("--mod must be >= 2")
        if args.command == "verify":
            lines, ok = cmd_verify(args)
            print("\n".join(lines))
            return 0 if ok else 1
        handler = {"machine": cmd_machine, "series": cmd_series, "group": cmd_group}[args.command]
        print("\n".join(handler(args)))
        return 0
    except (UsageError, LamplightError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
