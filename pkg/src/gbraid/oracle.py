"""Small-scale equality oracle and seeded random words.

``bfs_equivalent`` searches the move graph of a theory between two words.
States are the exact letter sequences; the only length-increasing move is
R2 insertion, so bounding the length bounds the graph.  The search runs
layer by layer from both ends and expands neighbors in a fixed order, so
verdicts and witnesses are deterministic.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import lru_cache

from .cancel import CancelToken, check
from .certify import Editor, _handle_reduce
from .errors import StrandMismatch
from .rewriter import (MoveInstance, RewriteTrace, cancel_r2_pairs, legal_moves, replay_trace,
                       reverse_steps, sides)
from .theory import TheorySpec
from .word import BraidWord, Letter, letter, permutation, permutation_of, reduced_word, tag_exponents

from . import _kernel_py

try:
    if os.environ.get("GBRAID_PURE_PYTHON"):
        raise ImportError("pure-Python kernel requested")
    from ._kernel import expand, expand_layer
    KERNEL = "compiled"
except ImportError:  # no compiler at install time, or forced off
    expand, expand_layer = _kernel_py.expand, _kernel_py.expand_layer
    KERNEL = "python"

EQUIVALENT = "equivalent"
DISTINCT = "distinct-by-invariant"
UNKNOWN = "unknown"

DEFAULT_NODE_CAP = 200_000
# budget for rewriting one dominant run into its reduced word
RUN_CAP = 50_000
# words visited per plateau while looking for a cancelling pair
PLATEAU_CAP = 20_000


@dataclass(frozen=True)
class SearchVerdict:
    outcome: str
    witness: RewriteTrace | None = None
    explored: int = 0
    invariant: str | None = None

    @property
    def equivalent(self) -> bool:
        return self.outcome == EQUIVALENT

    def __str__(self) -> str:
        if self.outcome == DISTINCT:
            return f"{DISTINCT} ({self.invariant})"
        if self.outcome == EQUIVALENT:
            return f"{EQUIVALENT} ({len(self.witness)} steps, {self.explored} states)"
        return f"{UNKNOWN} ({self.explored} states)"


class MoveTables:
    """Integer coding of letters and the move tables of one theory."""

    def __init__(self, theory: TheorySpec, strands: int):
        self.theory = theory
        self.strands = strands
        self.syms: list[tuple[str, int]] = []
        for t in theory.tag_names:
            self.syms.append((t, 1))
            self.syms.append((t, -1))
        self.S = S = len(self.syms)
        size = S * (strands + 1)
        inv = [-1] * size
        ins = []
        for pos in range(1, strands):
            for s, (t, sign) in enumerate(self.syms):
                if sign < 0 and theory.involutive(t):
                    continue
                if theory.tag(t).r2_allowed:
                    c = pos * S + s
                    inv[c] = self.code(Letter(t, pos, sign).inverse(theory))
                    ins.append(c)
        self.inv = tuple(inv)
        self.ins = tuple(ins)
        self.r3, self.r3_moves = _r3_tables(theory)

    def code(self, lt: Letter) -> int:
        return lt.pos * self.S + self.syms.index((lt.tag, lt.sign))

    def letter(self, c: int) -> Letter:
        t, s = self.syms[c % self.S]
        return Letter(t, c // self.S, s)

    def encode(self, w: BraidWord) -> tuple[int, ...]:
        return tuple(self.code(lt) for lt in w.letters)

    def move(self, state: tuple[int, ...], key) -> MoveInstance:
        """The MoveInstance for kernel ``key`` applied to ``state``."""
        k, kind, extra = key
        if kind == 0:
            a = self.letter(state[k])
            return MoveInstance.make("r2del", k, t=a.tag, i=a.pos, s=a.sign)
        if kind == 1:
            a, b = self.letter(state[k]), self.letter(state[k + 1])
            return MoveInstance.make("fc", k, t=a.tag, i=a.pos, s=a.sign, u=b.tag, j=b.pos, r=b.sign)
        if kind == 2:
            lo = min(self.letter(c).pos for c in state[k:k + 3])
            return self.r3_moves[extra].shifted(k, lo - 1)
        a = self.letter(extra)
        return MoveInstance.make("r2ins", k, t=a.tag, i=a.pos, s=a.sign)


@lru_cache(maxsize=None)
def _r3_tables(theory: TheorySpec):
    """Three-letter moves on positions {1, 2}, keyed by coded left side."""
    syms = []
    for t in theory.tag_names:
        syms.append((t, 1))
        syms.append((t, -1))
    S = len(syms)
    letters = [Letter(t, p, s) for p in (1, 2) for t, s in syms if not (s < 0 and theory.involutive(t))]

    def code(lt):
        return lt.pos * S + syms.index((lt.tag, lt.sign))

    table: dict = {}
    moves: list[MoveInstance] = []
    for a in letters:
        for b in letters:
            for c in letters:
                if {a.pos, b.pos, c.pos} != {1, 2}:
                    continue
                w = BraidWord(3, (a, b, c), theory)
                for mv in legal_moves(w, insertions=False):
                    if mv.fid in ("r2del", "fc") or mv.index != 0:
                        continue
                    rhs = tuple(code(lt) for lt in sides(mv, theory)[1])
                    hits = table.setdefault((code(a), code(b), code(c)), [])
                    # several families can coincide on one triple; keep the first
                    if all(r != rhs for _, r in hits):
                        hits.append((len(moves), rhs))
                        moves.append(mv)
    return {k: tuple(v) for k, v in table.items()}, tuple(moves)


@lru_cache(maxsize=64)
def move_tables(theory: TheorySpec, strands: int) -> MoveTables:
    return MoveTables(theory, strands)


def _path(parent: dict, node) -> list:
    """(state, key) pairs from the root to ``node``."""
    out = []
    while parent[node] is not None:
        prev, key = parent[node]
        out.append((prev, key))
        node = prev
    out.reverse()
    return out


def bfs_equivalent(w1: BraidWord, w2: BraidWord, depth: int = 0, node_cap: int = DEFAULT_NODE_CAP,
                   token: CancelToken | None = None) -> SearchVerdict:
    """Search for a move sequence from ``w1`` to ``w2``.

    Every visited word is at most ``2 * depth`` letters longer than the
    longer of the two inputs; at most ``node_cap`` words are visited.
    """
    if w1.strands != w2.strands:
        raise StrandMismatch(f"strand counts differ: {w1.strands} vs {w2.strands}")
    if w1.theory != w2.theory:
        raise StrandMismatch("words belong to different theories")
    if permutation(w1) != permutation(w2):
        return SearchVerdict(DISTINCT, invariant="permutation")
    if tag_exponents(w1) != tag_exponents(w2):
        return SearchVerdict(DISTINCT, invariant="tag_exponents")
    if w1.letters == w2.letters:
        return SearchVerdict(EQUIVALENT, RewriteTrace((), w2, w1), 1)
    maxlen = max(len(w1), len(w2)) + 2 * depth
    # certified descents shrink both ends before the search; they are move
    # sequences inside the length bound, so the verdict keeps its meaning
    r1, pre = _shrink(w1, maxlen, token)
    r2, post = _shrink(w2, maxlen, token)
    if r1.letters == r2.letters:
        return _verdict(w1, w2, pre + reverse_steps(post), 1)
    tb = move_tables(w1.theory, w1.strands)
    start, goal = tb.encode(r1), tb.encode(r2)
    # widen the length bound gradually; short bounds are cheap and usually enough
    explored = 0
    bounds = list(range(max(len(start), len(goal)), maxlen, 2)) + [maxlen]
    for bound in bounds:
        path, used = _search(tb, start, goal, bound, node_cap - explored, token)
        explored += used
        if path is not None:
            return _verdict(w1, w2, pre + path + reverse_steps(post), explored)
        if explored > node_cap:
            break
    return SearchVerdict(UNKNOWN, explored=explored)


def _search(tb: MoveTables, start, goal, maxlen: int, cap: int, token: CancelToken | None = None):
    """Bidirectional layered search; ``(moves or None, explored)``."""
    if start == goal:
        return [], 1
    sides_ = [{start: None}, {goal: None}]
    fronts = [[start], [goal]]
    explored = 2
    while fronts[0] and fronts[1]:
        d = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        mine, other = sides_[d], sides_[1 - d]
        check(token)
        new, meets, explored = expand_layer(fronts[d], mine, other, maxlen, tb.S, tb.inv, tb.r3, tb.ins,
                                            cap, explored)
        if meets:
            best = min((_join(tb, sides_, t) for t in meets), key=lambda p: (len(p), p))
            return [mv for _, mv in best], explored
        if explored > cap:
            break
        fronts[d] = new
    return None, explored


def _descend(w: BraidWord, maxlen: int) -> tuple[BraidWord, list[MoveInstance]]:
    """Length-bounded certified simplification of ``w``.

    Adjacent pairs are cancelled; every maximal run of an involutive
    dominant tag is rewritten into the bubble-sort reduced word of its
    permutation without ever growing (braid moves and deletions suffice in
    a symmetric group); a word in a single non-involutive dominant tag is
    handle-reduced when that stays within ``maxlen`` letters.
    """
    th = w.theory
    red, tr = cancel_r2_pairs(w)
    steps = list(tr.steps)
    cur = list(red.letters)
    tb = move_tables(th, w.strands)
    k = len(cur)
    while k > 0:
        x = cur[k - 1].tag
        start = k - 1
        while start > 0 and cur[start - 1].tag == x:
            start -= 1
        run = cur[start:k]
        if len(run) > 1 and th.involutive(x) and x in th.dominant_tags:
            target = reduced_word(permutation_of(run, w.strands), th, x).letters
            if tuple(run) != target:
                path, _ = _search(tb, tuple(map(tb.code, run)), tuple(map(tb.code, target)),
                                  len(run), RUN_CAP)
                if path is not None:
                    steps.extend(mv.shifted(start) for mv in path)
                    cur[start:k] = target
        k = start
    red, tr = cancel_r2_pairs(BraidWord(w.strands, tuple(cur), th))
    steps.extend(tr.steps)
    tags = {lt.tag for lt in red.letters}
    if len(tags) != 1:
        return red, steps
    (x,) = tags
    if x not in th.dominant_tags or th.involutive(x):
        return red, steps
    ed = Editor(th, red.letters)
    _handle_reduce(ed, 0, len(ed.cur))
    size = len(red)
    for mv in ed.steps:
        size += 2 if mv.fid == "r2ins" else -2 if mv.fid == "r2del" else 0
        if size > maxlen:
            return red, steps
    return BraidWord(w.strands, tuple(ed.cur), th), steps + ed.steps


def _plateau(tb: MoveTables, start: tuple, cap: int, token: CancelToken | None = None):
    """Moves from ``start`` through same-length words to a shorter word, or None.

    Only commutations and three-letter moves are used until some adjacent
    pair cancels; that deletion ends the path.
    """
    parent = {start: None}
    front = [start]
    while front and len(parent) < cap:
        check(token)
        new = []
        for s in front:
            for key, t in expand(s, len(s), tb.S, tb.inv, tb.r3, tb.ins):
                if t in parent:
                    continue
                parent[t] = (s, key)
                if key[1] == 0:
                    return [tb.move(p, k) for p, k in _path(parent, t)], t
                new.append(t)
        front = new
    return None


def _shrink(w: BraidWord, maxlen: int, token: CancelToken | None = None):
    """Alternate certified descents and plateau searches until neither helps."""
    cur, steps = _descend(w, maxlen)
    tb = move_tables(w.theory, w.strands)
    while True:
        found = _plateau(tb, tb.encode(cur), PLATEAU_CAP, token)
        if found is None:
            return cur, steps
        moves, state = found
        steps.extend(moves)
        cur, more = _descend(BraidWord(w.strands, tuple(map(tb.letter, state)), w.theory), maxlen)
        steps.extend(more)


def _verdict(w1: BraidWord, w2: BraidWord, steps, explored: int) -> SearchVerdict:
    witness = RewriteTrace(tuple(steps), w2, w1)
    replay_trace(w1, witness)
    return SearchVerdict(EQUIVALENT, witness, explored)


def _join(tb: MoveTables, sides_, meet) -> list:
    """Forward path through ``meet`` as (sort key, MoveInstance) pairs."""
    out = [((0,) + key, tb.move(s, key)) for s, key in _path(sides_[0], meet)]
    back = _path(sides_[1], meet)
    # the backward tree stores moves goal -> meet; undo them in reverse
    for s, key in reversed(back):
        out.append(((1,) + key, tb.move(s, key).inverse()))
    return out


def random_word(n: int, length: int, seed: int, theory: TheorySpec) -> BraidWord:
    """Letters drawn uniformly from all legal (tag, position, sign) triples."""
    if n < 1 or length < 0:
        raise ValueError("need n >= 1 and length >= 0")
    choices = [letter(theory, t, p, s)
               for t in theory.tag_names for p in range(1, n)
               for s in ((1,) if theory.involutive(t) else (1, -1))]
    if length and not choices:
        raise ValueError("a 1-strand word has no letters")
    rng = random.Random(seed)
    return BraidWord(n, tuple(rng.choice(choices) for _ in range(length)), theory)
