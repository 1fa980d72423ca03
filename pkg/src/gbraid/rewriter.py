"""Elementary moves, certification traces and detour straightening."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import MoveNotAllowed, OutputMismatch, ParseError, PatternMismatch, VerificationError
from .theory import (
    BRAID_RELATION,
    FAR_COMMUTE,
    MIX_FORMS,
    MoveFamily,
    R2_DELETE,
    R2_INSERT,
    TheorySpec,
    validate_normal,
)
from .word import BraidWord, Letter, format_letters, letter, parse_word

# Three-letter sides as (role, position offset, sign).  Sign is "e", "d",
# or a fixed +1/-1; roles "x" and "a" are the dominant and dominated tags.
_SIDES = {
    "br": (
        (("x", 0, "e"), ("x", 1, "e"), ("x", 0, "e")),
        (("x", 1, "e"), ("x", 0, "e"), ("x", 1, "e")),
    ),
    "mix3a": (
        (("x", 0, "e"), ("x", 1, "e"), ("a", 0, "d")),
        (("a", 1, "d"), ("x", 0, "e"), ("x", 1, "e")),
    ),
    "mix3b": (
        (("a", 0, "d"), ("x", 1, 1), ("x", 0, 1)),
        (("x", 1, 1), ("x", 0, 1), ("a", 1, "d")),
    ),
    "mix3c": (
        (("a", 0, "d"), ("x", 1, -1), ("x", 0, -1)),
        (("x", 1, -1), ("x", 0, -1), ("a", 1, "d")),
    ),
    "mix3d": (
        (("x", 0, -1), ("a", 1, "d"), ("x", 0, 1)),
        (("x", 1, 1), ("a", 0, "d"), ("x", 1, -1)),
    ),
    "mix3e": (
        (("x", 0, 1), ("a", 1, "d"), ("x", 0, -1)),
        (("x", 1, -1), ("a", 0, "d"), ("x", 1, 1)),
    ),
}
FIXED_EPS = {"mix3b": 1, "mix3c": -1, "mix3d": 1, "mix3e": -1}

_INT_KEYS = ("i", "j")
_SIGN_KEYS = ("s", "r", "e", "d")


def _base(fid: str) -> tuple[str, bool]:
    if fid.endswith(".r"):
        return fid[:-2], True
    return fid, False


@dataclass(frozen=True)
class MoveInstance:
    """A move family applied at letter ``index`` with explicit bindings.

    Binding keys: ``t, i, s`` (R2 letters); ``t, i, s, u, j, r`` (far
    commutation, left then right letter); ``x, i, e`` (braid relation);
    ``x, a, i, e, d`` (mixed R3).
    """

    fid: str
    index: int
    params: tuple = ()

    @classmethod
    def make(cls, fid: str, index: int, **params) -> "MoveInstance":
        return cls(fid, index, tuple(sorted(params.items())))

    @property
    def bind(self) -> dict:
        return dict(self.params)

    def tags(self) -> tuple[str, ...]:
        b = self.bind
        if self.fid in ("r2ins", "r2del"):
            return (b["t"],)
        if self.fid == "fc":
            return ()
        if _base(self.fid)[0] == "br":
            return (b["x"],)
        return (b["x"], b["a"])

    def eps(self) -> int | None:
        base, _ = _base(self.fid)
        if base in FIXED_EPS:
            return FIXED_EPS[base]
        return self.bind.get("e")

    def shifted(self, index: int = 0, pos: int = 0) -> "MoveInstance":
        b = self.bind
        for k in _INT_KEYS:
            if k in b:
                b[k] += pos
        return MoveInstance(self.fid, self.index + index, tuple(sorted(b.items())))

    def inverse(self) -> "MoveInstance":
        """The move undoing this one when applied to its output."""
        b = self.bind
        if self.fid == "r2ins":
            return MoveInstance("r2del", self.index, self.params)
        if self.fid == "r2del":
            return MoveInstance("r2ins", self.index, self.params)
        if self.fid == "fc":
            swapped = dict(t=b["u"], i=b["j"], s=b["r"], u=b["t"], j=b["i"], r=b["s"])
            return MoveInstance.make("fc", self.index, **swapped)
        base, rev = _base(self.fid)
        return MoveInstance(base if rev else base + ".r", self.index, self.params)

    def __str__(self) -> str:
        parts = []
        for k, v in self.params:
            if k in _SIGN_KEYS:
                v = "+" if v > 0 else "-"
            parts.append(f"{k}={v}")
        return f"{self.fid} @{self.index}" + ("" if not parts else " " + " ".join(parts))


@dataclass(frozen=True)
class RewriteTrace:
    steps: tuple[MoveInstance, ...]
    claimed_output: BraidWord
    source: BraidWord | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.steps)


def sides(move: MoveInstance, theory: TheorySpec) -> tuple[list[Letter], list[Letter]]:
    """Left- and right-hand letter lists of ``move``."""
    b = move.bind
    fid = move.fid
    if fid in ("r2ins", "r2del"):
        first = letter(theory, b["t"], b["i"], b["s"])
        pair = [first, first.inverse(theory)]
        return ([], pair) if fid == "r2ins" else (pair, [])
    if fid == "fc":
        left = letter(theory, b["t"], b["i"], b["s"])
        right = letter(theory, b["u"], b["j"], b["r"])
        return [left, right], [right, left]
    base, rev = _base(fid)
    if base not in _SIDES:
        raise ParseError(f"unknown move family {fid!r}")
    lhs_spec, rhs_spec = _SIDES[base]
    lhs = _build(lhs_spec, b, theory)
    rhs = _build(rhs_spec, b, theory)
    return (rhs, lhs) if rev else (lhs, rhs)


def _build(spec, b: dict, theory: TheorySpec) -> list[Letter]:
    out = []
    for role, off, sgn in spec:
        tag = b["x"] if role == "x" else b["a"]
        sign = b[sgn] if isinstance(sgn, str) else sgn
        out.append(letter(theory, tag, b["i"] + off, sign))
    return out


def _bind_window(base: str, reverse: bool, window: Sequence[Letter]) -> dict | None:
    """Read bindings for a three-letter family side from ``window``."""
    lhs_spec, rhs_spec = _SIDES[base]
    spec = rhs_spec if reverse else lhs_spec
    b: dict = {}
    for (role, off, sgn), lt in zip(spec, window):
        key = "x" if role == "x" else "a"
        b.setdefault(key, lt.tag)
        b.setdefault("i", lt.pos - off)
        if isinstance(sgn, str):
            b.setdefault(sgn, lt.sign)
    if base == "br":
        b.pop("a", None)
    elif base in FIXED_EPS:
        b.pop("e", None)
    b.setdefault("d", 1)
    if base == "br":
        b.pop("d", None)
    return b


def check_allowed(move: MoveInstance, theory: TheorySpec) -> MoveFamily:
    fam = theory.find_family(move.fid, move.tags(), move.eps())
    if fam is None:
        raise MoveNotAllowed(f"move {move.fid} on tags {','.join(move.tags()) or '*'} is not allowed in theory {theory.name}")
    return fam


def apply_move(w: BraidWord, move: MoveInstance) -> BraidWord:
    th = w.theory
    check_allowed(move, th)
    lhs, rhs = sides(move, th)
    k = move.index
    letters = w.letters
    if move.fid == "fc" and abs(lhs[0].pos - lhs[1].pos) <= 1:
        raise PatternMismatch(f"far commutation needs |i-j| > 1 ({move})")
    for lt in rhs + lhs:
        if not 1 <= lt.pos <= w.strands - 1:
            raise PatternMismatch(f"move {move} leaves strand range 1..{w.strands}")
    if k < 0 or k + len(lhs) > len(letters) or list(letters[k:k + len(lhs)]) != lhs:
        got = format_letters(letters[max(k, 0):k + len(lhs)])
        raise PatternMismatch(f"{move}: expected '{format_letters(lhs)}' at {k}, found '{got}'")
    return BraidWord(w.strands, letters[:k] + tuple(rhs) + letters[k + len(lhs):], th)


def replay_trace(source: BraidWord, trace: RewriteTrace | Sequence[MoveInstance]) -> BraidWord:
    steps = trace.steps if isinstance(trace, RewriteTrace) else tuple(trace)
    cur = source
    for k, step in enumerate(steps, 1):
        try:
            cur = apply_move(cur, step)
        except (MoveNotAllowed, PatternMismatch) as exc:
            exc.args = (f"step {k}: {exc.args[0]}",)
            exc.step = k
            raise
    if isinstance(trace, RewriteTrace) and cur.letters != trace.claimed_output.letters:
        raise OutputMismatch(f"replay produced '{cur}' but trace claims '{trace.claimed_output}'")
    return cur


def make_trace(source: BraidWord, steps: Iterable[MoveInstance], verify: bool = True) -> RewriteTrace:
    steps = tuple(steps)
    out = replay_trace(source, steps) if verify else None
    return RewriteTrace(steps, out, source)


def reverse_steps(steps: Sequence[MoveInstance]) -> list[MoveInstance]:
    return [m.inverse() for m in reversed(steps)]


def shift_steps(steps: Iterable[MoveInstance], index: int = 0, pos: int = 0) -> list[MoveInstance]:
    return [m.shifted(index, pos) for m in steps]


# --------------------------------------------------------- enumeration


def _r3_table(theory: TheorySpec) -> dict:
    """(base, reverse) -> allowed (x, a, eps) keys for three-letter families."""
    table: dict = {}
    for fam in theory.moves:
        if fam.kind in (R2_INSERT, R2_DELETE, FAR_COMMUTE):
            continue
        base, rev = _base(fam.id)
        x = fam.tags[0]
        a = fam.tags[1] if len(fam.tags) > 1 else x
        table.setdefault((base, rev), set()).add((x, a, fam.eps))
    return table


def legal_moves(w: BraidWord, insertions: bool = True) -> Iterator[MoveInstance]:
    """Every elementary move applicable to ``w`` in its theory."""
    th = w.theory
    letters = w.letters
    n = w.strands
    m = len(letters)
    r2_tags = [t.name for t in th.tags if t.r2_allowed]
    table = th.__dict__.get("_r3_cache")
    if table is None:
        table = _r3_table(th)
        th.__dict__["_r3_cache"] = table
    for k in range(m):
        a = letters[k]
        if k + 1 < m:
            b = letters[k + 1]
            if a.tag == b.tag and a.pos == b.pos and a.tag in r2_tags and b == a.inverse(th):
                yield MoveInstance.make("r2del", k, t=a.tag, i=a.pos, s=a.sign)
            if abs(a.pos - b.pos) > 1:
                yield MoveInstance.make("fc", k, t=a.tag, i=a.pos, s=a.sign, u=b.tag, j=b.pos, r=b.sign)
        if k + 2 < m:
            window = letters[k:k + 3]
            lo = min(lt.pos for lt in window)
            if max(lt.pos for lt in window) != lo + 1:
                continue
            for (base, rev), allowed in table.items():
                b3 = _bind_window(base, rev, window)
                x = b3["x"]
                ta = b3.get("a", x)
                eps = FIXED_EPS.get(base, b3.get("e"))
                if not any(ax == x and aa == ta and (ae is None or ae == eps) for ax, aa, ae in allowed):
                    continue
                mv = MoveInstance(base + (".r" if rev else ""), k, tuple(sorted(b3.items())))
                if b3["i"] < 1 or b3["i"] + 1 > n - 1:
                    continue
                lhs, _ = sides(mv, th)
                if list(window) == lhs:
                    yield mv
    if insertions:
        for k in range(m + 1):
            for t in r2_tags:
                signs = (1,) if th.involutive(t) else (1, -1)
                for i in range(1, n):
                    for s in signs:
                        yield MoveInstance.make("r2ins", k, t=t, i=i, s=s)


# --------------------------------------------------------- straightening


def cancel_r2_pairs(w: BraidWord) -> tuple[BraidWord, RewriteTrace]:
    th = w.theory
    cur = list(w.letters)
    steps = []
    k = 0
    while k + 1 < len(cur):
        a, b = cur[k], cur[k + 1]
        if a.pos == b.pos and a.tag == b.tag and th.tag(a.tag).r2_allowed and b == a.inverse(th):
            steps.append(MoveInstance.make("r2del", k, t=a.tag, i=a.pos, s=a.sign))
            del cur[k:k + 2]
            k = max(k - 1, 0)
        else:
            k += 1
    out = BraidWord(w.strands, tuple(cur), th)
    return out, RewriteTrace(tuple(steps), out, w)


def _r3_at(cur: list[Letter], k: int, theory: TheorySpec, candidates) -> MoveInstance | None:
    window = cur[k:k + 3]
    for fid in candidates:
        base, rev = _base(fid)
        b = _bind_window(base, rev, window)
        mv = MoveInstance(fid, k, tuple(sorted(b.items())))
        if theory.find_family(fid, mv.tags(), mv.eps()) is None:
            continue
        if sides(mv, theory)[0] == window:
            return mv
    return None


def straighten(w: BraidWord, strand: int, dominant: str | None = None):
    """Detour the strand starting at ``strand`` so that it crosses nothing.

    Returns ``(word, trace)`` or None when the strand meets a non-dominant
    letter, mixes dominant tags, switches between above and below, does not
    return to its start, or other strands cross its column.
    """
    th = w.theory
    dom = validate_normal(th)
    s = strand
    cur = list(w.letters)
    steps: list[MoveInstance] = []

    def do(mv: MoveInstance) -> None:
        lhs, rhs = sides(mv, th)
        k = mv.index
        assert cur[k:k + len(lhs)] == lhs, (mv, cur[k:k + len(lhs)])
        cur[k:k + len(lhs)] = rhs
        steps.append(mv)

    a_len = x_len = 0
    q = s
    xtag = dominant
    o = None
    while a_len + x_len < len(cur):
        idx = a_len + x_len
        y = cur[idx]
        if y.pos in (q - 1, q):
            right = y.pos == q
            if y.tag not in dom or (xtag is not None and y.tag != xtag):
                return None
            xtag = y.tag
            inv = th.involutive(xtag)
            if o is None:
                o = 1 if inv else (y.sign if right else -y.sign)
            want = 1 if inv else (o if right else -o)
            if y.sign != want:
                return None
            away = (q >= s and right) or (q <= s and not right)
            if away:
                x_len += 1
                q += 1 if right else -1
            else:
                prev = cur[idx - 1]
                do(MoveInstance.make("r2del", idx - 1, t=prev.tag, i=prev.pos, s=prev.sign))
                x_len -= 1
                q += 1 if right else -1
            continue
        if x_len == 0:
            a_len += 1
            continue
        if (q > s and y.pos == s - 1) or (q < s and y.pos == s):
            return None
        j = idx
        cands = ("mix3a",) if q > s else ("mix3b.r", "mix3c.r")
        while j > a_len:
            prev, mine = cur[j - 1], cur[j]
            if abs(prev.pos - mine.pos) > 1:
                do(MoveInstance.make("fc", j - 1, t=prev.tag, i=prev.pos, s=prev.sign,
                                     u=mine.tag, j=mine.pos, r=mine.sign))
                j -= 1
            else:
                mv = _r3_at(cur, j - 2, th, cands)
                if mv is None:
                    return None
                do(mv)
                j -= 2
        a_len += 1
    if q != s:
        return None
    out = BraidWord(w.strands, tuple(cur), th)
    return out, RewriteTrace(tuple(steps), out, w)


# --------------------------------------------------------- trace files


_STEP_RE = re.compile(r"^step\s+(\d+):\s+(\S+)\s+@(\d+)\s*(.*)$")


def format_trace(trace: RewriteTrace) -> str:
    lines = []
    if trace.source is not None:
        lines.append(f"# theory {trace.source.theory.name}")
        lines.append(f"strands: {trace.source.strands}")
        lines.append(f"source: {trace.source}")
    for k, st in enumerate(trace.steps, 1):
        lines.append(f"step {k}: {st}")
    lines.append(f"output: {trace.claimed_output}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str, theory: TheorySpec, strands: int | None = None) -> RewriteTrace:
    steps = []
    source_text = None
    output_text = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("strands:"):
            strands = int(line.split(":", 1)[1])
            continue
        if line.startswith("source:"):
            source_text = line.split(":", 1)[1]
            continue
        if line.startswith("output:"):
            output_text = line.split(":", 1)[1]
            continue
        m = _STEP_RE.match(line)
        if not m:
            raise ParseError(f"bad trace line {line!r}", lineno, 1)
        params = {}
        for tok in m.group(4).split():
            key, _, val = tok.partition("=")
            if key in _INT_KEYS:
                params[key] = int(val)
            elif key in _SIGN_KEYS:
                if val not in ("+", "-"):
                    raise ParseError(f"bad sign {val!r}", lineno, 1)
                params[key] = 1 if val == "+" else -1
            else:
                params[key] = val
        steps.append(MoveInstance.make(m.group(2), int(m.group(3)), **params))
    if output_text is None:
        raise VerificationError("trace has no 'output:' line")
    if strands is None:
        raise VerificationError("trace does not state its strand count")
    source = parse_word(source_text, strands, theory) if source_text is not None else None
    return RewriteTrace(tuple(steps), parse_word(output_text, strands, theory), source)
