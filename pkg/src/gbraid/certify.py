"""Certified equalities between words that differ only in dominant letters.

Two tools, both emitting elementary moves:

* ``reduce_dominant`` rewrites a trivial word in the dominant tag ``x`` to
  the empty word.  Non-involutive ``x`` uses handle reduction: a handle
  ``x_i^e v x_i^-e`` (``v`` free of ``x_i`` and ``x_{i-1}``) is removed by
  pushing ``x_i^e`` to the right, each ``x_{i+1}^d`` in ``v`` being
  replaced by ``x_{i+1}^-e x_i^d x_{i+1}^e`` through one mixed R3 step.
  Involutive ``x`` straightens the top strand repeatedly.
* ``equate`` rewrites ``A z B`` into ``C z' D`` where ``z, z'`` are the only
  non-dominant letters.  The dominant word ``Y = C^-1 A`` must carry the
  two strands of ``z'`` onto those of ``z`` as a parallel band; ``Y`` is
  replaced by its cabled form, ``z`` is pushed through the band, and the
  remaining dominant parts are matched with ``reduce_dominant``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import VerificationError
from .rewriter import MoveInstance, _r3_at, sides, straighten
from .theory import TheorySpec
from .word import BraidWord, Letter, letter

# handle reduction is fast in practice; this only guards against bugs
MAX_STEPS = 2_000_000


class Editor:
    """A mutable letter list that records every move applied to it."""

    def __init__(self, theory: TheorySpec, letters: Sequence[Letter]):
        self.theory = theory
        self.cur = list(letters)
        self.steps: list[MoveInstance] = []

    def do(self, mv: MoveInstance) -> None:
        lhs, rhs = sides(mv, self.theory)
        k = mv.index
        if self.cur[k:k + len(lhs)] != lhs:
            raise VerificationError(f"internal rewrite mismatch at {mv}")
        self.cur[k:k + len(lhs)] = rhs
        self.steps.append(mv)
        if len(self.steps) > MAX_STEPS:
            raise VerificationError("certification exceeded its step budget")

    def run(self, steps: Sequence[MoveInstance], offset: int = 0) -> None:
        for mv in steps:
            self.do(mv.shifted(offset) if offset else mv)

    def insert(self, k: int, lt: Letter) -> None:
        """Insert ``lt lt^-1`` before index ``k``."""
        self.do(MoveInstance.make("r2ins", k, t=lt.tag, i=lt.pos, s=lt.sign))

    def delete(self, k: int) -> None:
        lt = self.cur[k]
        self.do(MoveInstance.make("r2del", k, t=lt.tag, i=lt.pos, s=lt.sign))

    def swap(self, k: int) -> None:
        a, b = self.cur[k], self.cur[k + 1]
        self.do(MoveInstance.make("fc", k, t=a.tag, i=a.pos, s=a.sign, u=b.tag, j=b.pos, r=b.sign))

    def r3(self, k: int, candidates: Sequence[str]) -> None:
        mv = _r3_at(self.cur, k, self.theory, candidates)
        if mv is None:
            got = " ".join(map(str, self.cur[k:k + 3]))
            raise VerificationError(f"no allowed {'/'.join(candidates)} move on '{got}'")
        self.do(mv)

    def insert_inverse_product(self, k: int, word: Sequence[Letter]) -> None:
        """Insert ``word^-1 word`` before index ``k`` by nested R2 moves."""
        m = len(word)
        for t in range(m - 1, -1, -1):
            self.insert(k + (m - 1 - t), word[t].inverse(self.theory))

    def cancel_inverse_product(self, k: int, m: int) -> None:
        """Delete ``E E^-1`` where ``E`` (length ``m``) starts at ``k``."""
        for t in range(m):
            self.delete(k + m - 1 - t)


def inverse_letters(letters: Sequence[Letter], theory: TheorySpec) -> list[Letter]:
    return [lt.inverse(theory) for lt in reversed(letters)]


# ---------------------------------------------------------- dominant words


def _handle_reduce(ed: Editor, start: int, end: int) -> int:
    """Handle-reduce ``cur[start:end]`` in place; returns the new end."""
    cur = ed.cur
    t = start
    while t < end:
        y = cur[t]
        i = y.pos
        s = t - 1
        while s >= start and cur[s].pos not in (i - 1, i):
            s -= 1
        if s < start or cur[s].pos != i or cur[s].sign != -y.sign:
            t += 1
            continue
        e = cur[s].sign
        k = s
        while k + 1 < t:
            nxt = cur[k + 1]
            if abs(nxt.pos - i) >= 2:
                ed.swap(k)
                k += 1
                continue
            # nxt is x_{i+1}^d: x_i^e x_{i+1}^d -> x_{i+1}^-e x_i^d x_{i+1}^e x_i^e
            ed.insert(k + 2, letter(ed.theory, y.tag, i, -e))
            ed.r3(k, ("mix3e",) if e > 0 else ("mix3d",))
            k += 3
            t += 2
            end += 2
        ed.delete(k)
        end -= 2
        # the replacement may open handles further left; rescan from the start
        t = start
    return end


def reduce_dominant(letters: Sequence[Letter], strands: int, theory: TheorySpec, x: str) -> list[MoveInstance]:
    """Moves taking a trivial ``x``-word to the empty word.

    Raises VerificationError when the word is not trivial.
    """
    if any(lt.tag != x for lt in letters):
        raise VerificationError("reduce_dominant expects a word in the dominant tag only")
    if theory.involutive(x):
        w = BraidWord(strands, tuple(letters), theory)
        steps: list[MoveInstance] = []
        for s in range(strands, 1, -1):
            res = straighten(w, s, x)
            if res is None:
                raise VerificationError(f"dominant word '{w}' is not trivial")
            w, tr = res
            steps.extend(tr.steps)
        if len(w):
            raise VerificationError(f"dominant word '{w}' is not trivial")
        return steps
    ed = Editor(theory, letters)
    end = _handle_reduce(ed, 0, len(ed.cur))
    if end:
        raise VerificationError(f"dominant word '{' '.join(map(str, ed.cur))}' is not trivial")
    return ed.steps


def equate_dominant(u1: Sequence[Letter], u2: Sequence[Letter], strands: int, theory: TheorySpec,
                    x: str) -> list[MoveInstance]:
    """Moves rewriting the ``x``-word ``u1`` into the equal ``x``-word ``u2``."""
    if list(u1) == list(u2):
        return []
    ed = Editor(theory, u1)
    ed.insert_inverse_product(len(u1), list(u2))
    probe = list(u1) + inverse_letters(u2, theory)
    ed.run(reduce_dominant(probe, strands, theory, x))
    assert ed.cur == list(u2)
    return ed.steps


# ---------------------------------------------------------- band transport


def _track(letters: Sequence[Letter], n: int) -> tuple[list[int], list[int]]:
    """(start label at each final position, final position of each label)."""
    at = list(range(n + 1))
    for lt in letters:
        at[lt.pos], at[lt.pos + 1] = at[lt.pos + 1], at[lt.pos]
    where = [0] * (n + 1)
    for p in range(1, n + 1):
        where[at[p]] = p
    return at, where


def cable_form(y: Sequence[Letter], m: int, n: int, theory: TheorySpec):
    """Cabled word for ``y`` treating the strands ending at ``m, m+1`` as a band.

    Returns ``(letters, groups, start)`` where each group is
    ``(kind, count, position of the band's left strand before the group)``
    and ``start`` is the band's position at the top of ``y``.  Returns None
    when the two strands do not start next to each other in the same order.
    """
    at, _ = _track(y, n)
    u, v = at[m], at[m + 1]
    if v != u + 1:
        return None
    # delete strand v
    strand_at = list(range(n + 1))
    reduced: list[Letter] = []
    for lt in y:
        p = lt.pos
        left, right = strand_at[p], strand_at[p + 1]
        strand_at[p], strand_at[p + 1] = right, left
        if v in (left, right):
            continue
        vpos = strand_at.index(v)
        reduced.append(Letter(lt.tag, p - 1 if vpos < p else p, lt.sign))
    phi = u
    out: list[Letter] = []
    groups = []
    for lt in reduced:
        k, s, t = lt.pos, lt.sign, lt.tag
        if k + 1 < phi:
            groups.append(("far", 1, phi))
            out.append(letter(theory, t, k, s))
        elif k > phi:
            groups.append(("far", 1, phi))
            out.append(letter(theory, t, k + 1, s))
        elif k == phi:
            groups.append(("right", 2, phi))
            out.extend((letter(theory, t, phi + 1, s), letter(theory, t, phi, s)))
            phi += 1
        else:
            groups.append(("left", 2, phi))
            out.extend((letter(theory, t, phi - 1, s), letter(theory, t, phi, s)))
            phi -= 1
    assert phi == m
    return out, groups, u


def _push_left(ed: Editor, k: int, groups) -> int:
    """Push the letter at ``k`` leftwards through the cabled groups ending there."""
    for kind, count, _ in reversed(groups):
        if kind == "far":
            ed.swap(k - 1)
            k -= 1
        elif kind == "right":
            ed.r3(k - 2, ("mix3b.r", "mix3c.r"))
            k -= 2
        else:
            ed.r3(k - 2, ("mix3a",))
            k -= 2
    return k


def equate(u1: Sequence[Letter], u2: Sequence[Letter], strands: int, theory: TheorySpec,
           x: str) -> list[MoveInstance]:
    """Moves rewriting ``u1`` into ``u2``; both have at most one letter not tagged ``x``."""
    u1, u2 = list(u1), list(u2)
    odd1 = [k for k, lt in enumerate(u1) if lt.tag != x]
    odd2 = [k for k, lt in enumerate(u2) if lt.tag != x]
    if not odd1 and not odd2:
        return equate_dominant(u1, u2, strands, theory, x)
    if len(odd1) != 1 or len(odd2) != 1:
        raise VerificationError("equate handles words with at most one non-dominant letter")
    k1, k2 = odd1[0], odd2[0]
    z1, z2 = u1[k1], u2[k2]
    if (z1.tag, z1.sign) != (z2.tag, z2.sign):
        raise VerificationError(f"letters {z1} and {z2} differ in tag or sign")
    a, b = u1[:k1], u1[k1 + 1:]
    c, d = u2[:k2], u2[k2 + 1:]
    y = inverse_letters(c, theory) + a
    cab = cable_form(y, z1.pos, strands, theory)
    if cab is None or cab[2] != z2.pos:
        raise VerificationError(f"letter {z1} cannot be transported to {z2}")
    ystar, groups, _ = cab
    ed = Editor(theory, u1)
    ed.run(equate_dominant(a, c + ystar, strands, theory, x))
    k = _push_left(ed, len(c) + len(ystar), groups)
    assert k == len(c) and ed.cur[k] == z2
    tail = ed.cur[k + 1:]
    ed.run(equate_dominant(tail, d, strands, theory, x), k + 1)
    assert ed.cur == u2
    return ed.steps
