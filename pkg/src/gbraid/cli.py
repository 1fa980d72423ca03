"""Command-line front end: ``gbraid <command> [flags] [word]``.

Exit codes: 0 success, 1 usage or input error, 2 domain error (for example
NotNormal or NotPure), 3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import alexander, oracle, quasitoric, schreier
from .errors import (GBraidError, MoveNotAllowed, NotNormal, NotPure, NotRegular, ParseError,
                     StrandMismatch, TheoryError, VerificationError)
from .render import RenderOptions, render
from .rewriter import RewriteTrace, format_trace, parse_trace, replay_trace
from .theory import PRESET_NAMES, TheorySpec, builtin, format_theory, load_theory, validate_normal
from .word import BraidWord, parse_word, permutation

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--theory", default="classical", help="preset name or theory config file")
    p.add_argument("--strands", type=int, help="strand count (default: from the word)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dominant", help="dominant tag used by constructions")
    p.add_argument("--trace-out", help="write the certifying trace or log here")
    p.add_argument("--out", help="write the main output here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="gbraid", description="Generalized braid words and quasitoric forms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    th = sub.add_parser("theory", parents=[common], help="list, show or validate theories")
    th.add_argument("action", choices=["list", "show", "validate"])
    th.add_argument("name", nargs="?", help="preset or config file (default: --theory)")

    def word_cmd(name, helptext):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("word", nargs="*", help="word tokens; read from stdin when absent")
        return p

    word_cmd("pi", "permutation of a word")
    word_cmd("components", "number of closure components")
    word_cmd("rep", "Schreier coset representative")
    word_cmd("lambda", "rewrite a pure word into λ-generators")
    word_cmd("quasitoric", "quasitoric form of a pure word")
    word_cmd("check", "report the quasitoric shape")
    word_cmd("inverse", "quasitoric form of the inverse of a quasitoric word")
    word_cmd("alexander", "quasitoric braid with the same closure")
    rd = word_cmd("render", "draw a word")
    rd.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    rd.add_argument("--cell-width", type=int, default=40)
    rd.add_argument("--cell-height", type=int, default=40)
    rd.add_argument("--no-tags", action="store_true")

    vf = sub.add_parser("verify", parents=[common], help="replay a trace or Markov log file")
    vf.add_argument("file")
    vf.add_argument("--log", help="Markov log to replay before the trace (alexander output)")

    orc = sub.add_parser("oracle", parents=[common], help="search for moves between two words")
    orc.add_argument("first")
    orc.add_argument("second")
    orc.add_argument("--depth", type=int, default=1, help="net R2-insertion budget")
    orc.add_argument("--node-cap", type=int, default=oracle.DEFAULT_NODE_CAP)

    rnd = sub.add_parser("random", parents=[common], help="seeded random word")
    rnd.add_argument("--length", type=int, default=8)
    return parser


# ---------------------------------------------------------------- helpers


def load_theory_arg(spec: str) -> TheorySpec:
    if spec in PRESET_NAMES:
        return builtin(spec)
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return load_theory(fh.read())
    raise TheoryError(f"unknown preset or missing file {spec!r}; presets: {', '.join(PRESET_NAMES)}")


def _word_text(tokens, stdin) -> str:
    if tokens and tokens != ["-"]:
        return " ".join(tokens)
    return stdin.read()


def _infer_strands(text: str) -> int:
    top = 0
    for tok in text.replace("(", " ").replace(")", " ").split():
        digits = "".join(ch for ch in tok if ch.isdigit())
        if digits:
            top = max(top, int(digits))
    return top + 1


def read_word(text: str, args, theory: TheorySpec) -> BraidWord:
    n = args.strands if args.strands is not None else _infer_strands(text)
    return parse_word(text, n, theory)


def _emit(text: str, args, stdout) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _write_trace(args, trace: RewriteTrace) -> None:
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            fh.write(format_trace(trace))


def _log_path(trace_path: str) -> str:
    return trace_path + ".markov"


# ---------------------------------------------------------------- commands


def _cmd_theory(args, stdout) -> int:
    if args.action == "list":
        stdout.write("\n".join(PRESET_NAMES) + "\n")
        return EXIT_OK
    th = load_theory_arg(args.name or args.theory)
    if args.action == "show":
        stdout.write(format_theory(th))
        return EXIT_OK
    dom = validate_normal(th)
    stdout.write(f"normal; dominant: {' '.join(sorted(dom))}\n")
    return EXIT_OK


def _cmd_word(args, th: TheorySpec, stdin, stdout) -> int:
    w = read_word(_word_text(args.word, stdin), args, th)
    cmd = args.command
    if cmd == "pi":
        _emit(f"{permutation(w)}\n", args, stdout)
    elif cmd == "components":
        _emit(f"{alexander.component_count(w)}\n", args, stdout)
    elif cmd == "rep":
        x = th.default_dominant(args.dominant)
        rep = schreier.coset_rep(w)
        _emit(f"{rep.expand(th, x)}\n", args, stdout)
    elif cmd == "lambda":
        _emit(f"{schreier.pure_to_lambda(w, args.dominant)}\n", args, stdout)
    elif cmd == "quasitoric":
        q, tr = quasitoric.pure_to_quasitoric(w, args.dominant)
        _write_trace(args, tr)
        _emit(f"{q}\n", args, stdout)
    elif cmd == "check":
        shape = quasitoric.quasitoric_type(w)
        _emit(f"{shape if shape is not None else 'none'}\n", args, stdout)
        return EXIT_OK if shape is not None else EXIT_DOMAIN
    elif cmd == "inverse":
        q, tr = quasitoric.quasitoric_inverse(w, args.dominant)
        _write_trace(args, tr)
        _emit(f"{q}\n", args, stdout)
    elif cmd == "alexander":
        q, log, tr = alexander.closure_to_quasitoric(w, args.dominant)
        if args.trace_out:
            _write_trace(args, tr)
            with open(_log_path(args.trace_out), "w", encoding="utf-8") as fh:
                fh.write(alexander.format_markov_log(log))
        _emit(f"{q}\nstrands: {q.strands}\n", args, stdout)
    elif cmd == "render":
        opts = RenderOptions(args.format, args.cell_width, args.cell_height, not args.no_tags)
        _emit(render(w, opts), args, stdout)
    return EXIT_OK


def _cmd_verify(args, th: TheorySpec, stdout) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    if any(line.startswith("initial:") for line in text.splitlines()):
        log = alexander.parse_markov_log(text, th)
        out = alexander.replay_markov(None, log)
        stdout.write(f"ok: {len(log)} Markov steps, {out.strands} strands\n")
        return EXIT_OK
    trace = parse_trace(text, th)
    if trace.source is None:
        raise VerificationError("trace file has no 'source:' line")
    out = replay_trace(trace.source, trace)
    log_file = args.log or (_log_path(args.file) if os.path.exists(_log_path(args.file)) else None)
    if log_file:
        with open(log_file, encoding="utf-8") as fh:
            text = fh.read()
        log = alexander.parse_markov_log(text, th)
        normalized = alexander.replay_markov(None, log)
        if normalized.letters != out.letters or normalized.strands != out.strands:
            raise VerificationError("Markov log and trace disagree on the normalized word")
        stdout.write(f"ok: {len(log)} Markov steps, {len(trace)} moves\n")
    else:
        stdout.write(f"ok: {len(trace)} moves\n")
    return EXIT_OK


def _cmd_oracle(args, th: TheorySpec, stdout) -> int:
    n = args.strands or max(_infer_strands(args.first), _infer_strands(args.second))
    w1, w2 = parse_word(args.first, n, th), parse_word(args.second, n, th)
    verdict = oracle.bfs_equivalent(w1, w2, args.depth, args.node_cap)
    if verdict.witness is not None:
        _write_trace(args, verdict.witness)
    stdout.write(f"{verdict}\n")
    return EXIT_OK


def _cmd_random(args, th: TheorySpec, stdout) -> int:
    n = args.strands if args.strands is not None else 3
    _emit(f"{oracle.random_word(n, args.length, args.seed, th)}\n", args, stdout)
    return EXIT_OK


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "theory":
            return _cmd_theory(args, stdout)
        th = load_theory_arg(args.theory)
        if args.command == "verify":
            return _cmd_verify(args, th, stdout)
        if args.command == "oracle":
            return _cmd_oracle(args, th, stdout)
        if args.command == "random":
            return _cmd_random(args, th, stdout)
        return _cmd_word(args, th, stdin, stdout)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (VerificationError, MoveNotAllowed) as exc:
        stderr.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY
    except (ParseError, TheoryError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (NotNormal, NotRegular, NotPure, StrandMismatch, GBraidError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
