"""Markov moves and normalization of a braid into a quasitoric braid with
the same closure.

Only the permutation matters for the normalization: conjugators are
positive dominant words lifted from permutations, and stabilization always
adds one dominant letter on a new last strand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .cancel import CancelToken, check
from .certify import Editor
from .errors import ParseError, StrandMismatch, VerificationError
from .quasitoric import _dominant, pure_to_quasitoric
from .rewriter import RewriteTrace, replay_trace
from .theory import TheorySpec
from .word import BraidWord, Permutation, invert, letter, parse_word, permutation, reduced_word


@dataclass(frozen=True)
class MarkovStep:
    kind: str  # "M1" or "M2"
    payload: BraidWord | int

    def __str__(self) -> str:
        if self.kind == "M1":
            return f"m1 {self.payload}".rstrip()
        return f"m2 {'+' if self.payload > 0 else '-'}"


@dataclass(frozen=True)
class MarkovLog:
    steps: tuple[MarkovStep, ...]
    initial_strands: int
    final_strands: int
    dominant: str
    source: BraidWord | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.steps)


def markov_conjugate(w: BraidWord, u: BraidWord) -> BraidWord:
    """``u w u^-1`` with no reduction."""
    if u.strands != w.strands:
        raise StrandMismatch(f"conjugator has {u.strands} strands, word has {w.strands}")
    return BraidWord(w.strands, u.letters + w.letters + invert(u).letters, w.theory)


def markov_stabilize(w: BraidWord, sign: int = 1, dominant: str | None = None) -> BraidWord:
    """Add strand ``n+1`` and append the dominant letter at position ``n``."""
    x = _dominant(w.theory, dominant)
    n = w.strands
    return BraidWord(n + 1, w.letters + (letter(w.theory, x, n, sign),), w.theory)


def component_count(w: BraidWord) -> int:
    return len(permutation(w).cycles())


def rho_power(m: int, k: int) -> Permutation:
    """``p -> p + k (mod m)`` on 1..m."""
    return Permutation(tuple((p - 1 + k) % m + 1 for p in range(1, m + 1)))


def replay_markov(w: BraidWord | None, log: MarkovLog) -> BraidWord:
    """Apply the log to ``w`` (default: the source recorded in the log)."""
    if w is None:
        if log.source is None:
            raise VerificationError("Markov log records no source word")
        w = log.source
    if w.strands != log.initial_strands:
        raise StrandMismatch(f"log starts on {log.initial_strands} strands, word has {w.strands}")
    cur = w
    for st in log.steps:
        if st.kind == "M1":
            cur = markov_conjugate(cur, st.payload)
        else:
            cur = markov_stabilize(cur, st.payload, log.dominant)
    if cur.strands != log.final_strands:
        raise VerificationError(f"log ends on {cur.strands} strands, header says {log.final_strands}")
    return cur


def cycle_normalize(w: BraidWord, dominant: str | None = None):
    """``(w', m, k, log)`` with ``permutation(w') = rho^k`` on ``m`` strands.

    ``k`` is 0 for a pure input (returned as is).  When orbit equalization
    already yields a power of rho that power is kept; otherwise a final
    conjugation realizes ``rho^c`` with ``c`` the number of cycles.
    """
    th = w.theory
    x = _dominant(th, dominant)
    n0 = w.strands
    if permutation(w).is_identity():
        return w, n0, 0, MarkovLog((), n0, n0, x, w)
    steps: list[MarkovStep] = []
    cur = w
    while True:
        cycles = permutation(cur).cycles()
        sizes = {len(c) for c in cycles}
        if len(sizes) == 1:
            break
        small = min(cycles, key=lambda c: (len(c), min(c)))
        n = cur.strands
        e = max(small)
        if e != n:
            # strand starting at n is carried to e, so e's orbit now holds n
            u = BraidWord(n, tuple(letter(th, x, p) for p in range(n - 1, e - 1, -1)), th)
            steps.append(MarkovStep("M1", u))
            cur = markov_conjugate(cur, u)
        steps.append(MarkovStep("M2", 1))
        cur = markov_stabilize(cur, 1, x)
    perm = permutation(cur)
    cycles = perm.cycles()
    c, m = len(cycles), cur.strands
    # a permutation that already is a power of rho needs no final conjugation
    for k in range(1, m):
        if perm == rho_power(m, k):
            return cur, m, k, MarkovLog(tuple(steps), n0, m, x, w)
    ell = m // c
    # conjugator permutation sends r + t*c to the t-th element of cycle r
    images = [0] * m
    for r, cyc in enumerate(cycles):
        for t in range(ell):
            images[r + t * c] = cyc[t]
    u = reduced_word(Permutation(tuple(images)), th, x)
    steps.append(MarkovStep("M1", u))
    cur = markov_conjugate(cur, u)
    assert permutation(cur) == rho_power(m, c)
    return cur, m, c, MarkovLog(tuple(steps), n0, m, x, w)


def delta(m: int, theory: TheorySpec, x: str) -> BraidWord:
    """``x_{m-1} ... x_1``, whose permutation is ``p -> p + 1 (mod m)``."""
    return BraidWord(m, tuple(letter(theory, x, p) for p in range(m - 1, 0, -1)), theory)


def closure_to_quasitoric(w: BraidWord, dominant: str | None = None, token: CancelToken | None = None):
    """``(Q, log, trace)``: ``log`` takes ``w`` to ``w'`` by Markov moves and
    ``trace`` rewrites the quasitoric word ``Q`` into ``w'``."""
    th = w.theory
    x = _dominant(th, dominant)
    wn, m, k, log = cycle_normalize(w, x)
    check(token)
    d = delta(m, th, x)
    dk = d ** k
    pure = BraidWord(m, wn.letters + invert(dk).letters, th)
    qp, tr = pure_to_quasitoric(pure, x, token)
    out = BraidWord(m, qp.letters + dk.letters, th)
    ed = Editor(th, out.letters)
    ed.run(tr.steps)
    ed.cancel_inverse_product(len(wn), len(dk))
    if ed.cur != list(wn.letters):
        raise VerificationError("closure certificate did not reach the normalized word")
    return out, log, RewriteTrace(tuple(ed.steps), wn, out)


# ---------------------------------------------------------- log files


def format_markov_log(log: MarkovLog) -> str:
    lines = [f"initial: {log.initial_strands}", f"final: {log.final_strands}", f"dominant: {log.dominant}"]
    if log.source is not None:
        lines.append(f"source: {log.source}")
    lines.extend(str(st) for st in log.steps)
    return "\n".join(lines) + "\n"


def parse_markov_log(text: str, theory: TheorySpec) -> MarkovLog:
    header: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        if sep and key in ("initial", "final", "dominant", "source"):
            header[key] = val.strip()
        else:
            body.append((lineno, line))
    for key in ("initial", "final"):
        if key not in header:
            raise ParseError(f"markov log has no '{key}:' line")
    n = int(header["initial"])
    x = theory.default_dominant(header.get("dominant"))
    steps: list[MarkovStep] = []
    for lineno, line in body:
        kind, _, rest = line.partition(" ")
        if kind == "m1":
            steps.append(MarkovStep("M1", parse_word(rest, n, theory)))
        elif kind == "m2" and rest.strip() in ("+", "-"):
            steps.append(MarkovStep("M2", 1 if rest.strip() == "+" else -1))
            n += 1
        else:
            raise ParseError(f"bad markov log line {line!r}", lineno, 1)
    source = None
    if "source" in header:
        source = parse_word(header["source"], int(header["initial"]), theory)
    return MarkovLog(tuple(steps), int(header["initial"]), int(header["final"]), x, source)


def verify_closure(w: BraidWord, q: BraidWord, log: MarkovLog, trace: RewriteTrace) -> BraidWord:
    """Replay ``log`` from ``w`` and ``trace`` from ``q``; both must meet."""
    wn = replay_markov(w, log)
    got = replay_trace(q, trace)
    if got.letters != wn.letters:
        raise VerificationError("trace output differs from the Markov-normalized word")
    return wn

