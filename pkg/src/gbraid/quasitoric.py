"""Quasitoric words: shape recognition and certified constructions.

A word of type (p, q) is q blocks, each with one letter at every position
p-1, p-2, ..., 1 in that order.  Every construction returns the new word
together with a trace that rewrites it back into the word it was built
from, so ``replay_trace(result, trace)`` reproduces the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cancel import CancelToken, check
from .certify import Editor, equate
from .errors import NotPure, VerificationError
from .rewriter import RewriteTrace, reverse_steps, straighten
from .schreier import LambdaGen, entry_letters, free_reduce, rs_scan, MAX_SCHREIER_STRANDS, SchreierTooLarge
from .theory import TheorySpec, validate_normal
from .word import BraidWord, Letter, invert, letter, permutation, power


@dataclass(frozen=True)
class QuasitoricShape:
    width: int
    blocks: int
    embedding: tuple[int, int] | None = None

    def __str__(self) -> str:
        base = f"({self.width},{self.blocks})"
        if self.embedding is None:
            return base
        return base + f"@[{self.embedding[0]},{self.embedding[1]}]"


def _blocks_match(letters: Sequence[Letter], i: int, j: int) -> bool:
    width = j - i
    if width < 1 or len(letters) % width:
        return False
    return all(lt.pos == j - 1 - (k % width) for k, lt in enumerate(letters))


def quasitoric_type(w: BraidWord) -> QuasitoricShape | None:
    """Full-width shape if it matches, else the embedded shape on the
    interval spanned by the letters, else None."""
    n = w.strands
    letters = w.letters
    if not letters:
        return QuasitoricShape(n, 0)
    if _blocks_match(letters, 1, n):
        return QuasitoricShape(n, len(letters) // (n - 1))
    i = min(lt.pos for lt in letters)
    j = max(lt.pos for lt in letters) + 1
    if _blocks_match(letters, i, j):
        return QuasitoricShape(j - i + 1, len(letters) // (j - i), (i, j))
    return None


def _dominant(theory: TheorySpec, dominant: str | None) -> str:
    validate_normal(theory)
    return theory.default_dominant(dominant)


# ---------------------------------------------------------- identity words


def marked_identity(p: int, orient: Sequence[int], owner: str, theory: TheorySpec, x: str,
                    offset: int = 0) -> list[Letter]:
    """A trivial (p, p) word in ``x``.

    Every crossing is signed by its owning strand (the higher start label for
    ``owner="top"``, the lower for ``"bottom"``): sign ``orient[label]`` when
    the owner moves right, its negative when it moves left.  Straightening
    owners first (top down, or bottom up) removes the word.
    """
    at = list(range(p + 1))
    out = []
    for _ in range(p):
        for pos in range(p - 1, 0, -1):
            u, v = at[pos], at[pos + 1]
            own = max(u, v) if owner == "top" else min(u, v)
            sign = orient[own] if own == u else -orient[own]
            out.append(letter(theory, x, pos + offset, sign))
            at[pos], at[pos + 1] = v, u
    return out


def identity_quasitoric(n: int, theory: TheorySpec, dominant: str | None = None) -> tuple[BraidWord, RewriteTrace]:
    """Blocks j = 1..n at positions n-1..1, the lowest j-1 letters inverted;
    the trace straightens strands n, n-1, ..., 2 down to the empty word."""
    x = _dominant(theory, dominant)
    if n < 1:
        raise ValueError("n must be at least 1")
    letters = [letter(theory, x, pos, -1 if pos <= j - 1 else 1)
               for j in range(1, n + 1) for pos in range(n - 1, 0, -1)]
    w = BraidWord(n, tuple(letters), theory)
    cur, steps = w, []
    for s in range(n, 1, -1):
        res = straighten(cur, s, x)
        if res is None:
            raise VerificationError(f"strand {s} of the identity word could not be straightened")
        cur, tr = res
        steps.extend(tr.steps)
    if len(cur):
        raise VerificationError("identity word did not straighten to the empty word")
    return w, RewriteTrace(tuple(steps), cur, w)


# ---------------------------------------------------------- sliding


def _widen(letters: Sequence[Letter], i: int, j: int, side: str, theory: TheorySpec, x: str) -> list[Letter]:
    """Add a straight strand next to the interval (i, j), routed as a traveller.

    Per period the new strand S crosses the whole interval once (one block of
    its own) and is crossed once by the traveller of each of the p old
    blocks; S is x-below: ``x`` moving left, ``x^-1`` moving right.
    """
    p = j - i + 1
    width = p - 1
    blocks = [letters[k:k + width] for k in range(0, len(letters), width)]
    if len(blocks) % p:
        raise ValueError(f"block count {len(blocks)} is not a multiple of the width {p}; word is not pure")
    base = i - 1 if side == "right" else i - 2  # new local position u is global u + base
    travel = [letter(theory, x, u + base, 1) for u in range(p, 0, -1)]
    out: list[Letter] = []
    for start in range(0, len(blocks), p):
        period = blocks[start:start + p]
        if side == "right":
            out.extend(travel)
        for t, blk in enumerate(period, 1):
            # old block letters are at old-local positions p-1..1 in order
            old = {width - k: lt for k, lt in enumerate(blk)}
            for u in range(p, 0, -1):
                if u == t:
                    out.append(letter(theory, x, u + base, -1))
                else:
                    src = old[u - 1] if u > t else old[u]
                    out.append(Letter(src.tag, u + base, src.sign))
        if side == "left":
            out.extend(travel)
    return out


def slide_to_full(w: BraidWord, interval: tuple[int, int], dominant: str | None = None) -> tuple[BraidWord, RewriteTrace]:
    """Widen a pure (i, j)-embedded quasitoric word to full width."""
    th = w.theory
    x = _dominant(th, dominant)
    n = w.strands
    i, j = interval
    if not 1 <= i < j <= n:
        raise ValueError(f"bad interval ({i},{j}) for {n} strands")
    perm = permutation(w)
    if not perm.is_identity():
        raise NotPure(perm.images)
    if w.letters and not _blocks_match(w.letters, i, j):
        raise ValueError(f"word is not ({i},{j})-quasitoric")
    if not w.letters:
        return w, RewriteTrace((), w, w)
    cur = list(w.letters)
    steps: list = []
    while (i, j) != (1, n):
        side = "right" if j < n else "left"
        new = _widen(cur, i, j, side, th, x)
        s = j + 1 if side == "right" else i - 1
        res = straighten(BraidWord(n, tuple(new), th), s, x)
        if res is None or list(res[0].letters) != cur:
            raise VerificationError(f"widening ({i},{j}) did not straighten back")
        steps = list(res[1].steps) + steps
        cur = new
        i, j = (i, j + 1) if side == "right" else (i - 1, j)
    out = BraidWord(n, tuple(cur), th)
    return out, RewriteTrace(tuple(steps), w, out)


# ---------------------------------------------------------- λ-generators


def _staircase(g: LambdaGen, sign: int, theory: TheorySpec, x: str) -> list[Letter]:
    """An (i, j)-embedded (p, p) word for ``g^sign``: a trivial marked word
    with one letter replaced.

    aL[i,j], xL[i,j]: the staircase (x_{j-1}' ... x_{i+1}' z) followed by
    blocks 1..p-1 of the identity word, with z = a_i or x_i.
    aL[j,i]', xL[i,j]': bottom owners, strand 1 at +1 and the middle strands
    at -1, first block's last letter -> a_i' or x_i'.  aL[i,j]': top owners,
    middle strands -1 and strand p +1, last block's first letter ->
    a_{j-1}'.  aL[j,i]: as before with strand p at -1, that letter -> a_{j-1}.
    """
    i, j = g.i, g.j
    p = j - i + 1
    off = i - 1
    tag = g.tag
    inv = sign < 0
    if tag == x or (g.orient == "ij") != inv:
        # aL[i,j], xL[i,j], aL[j,i]', xL[i,j]'
        if not inv:
            # (x_{j-1}' ... x_{i+1}' z)(x_{j-1} ... x_i) ... (x_{j-1} x_{j-2}' ... x_i')
            word = [letter(theory, x, pos, -1) for pos in range(j - 1, i, -1)] + [letter(theory, tag, i)]
            for t in range(1, p):
                word += [letter(theory, x, pos, -1 if pos - off <= t - 1 else 1) for pos in range(j - 1, i - 1, -1)]
            return word
        orient = [1, 1] + [-1] * (p - 2) + [1]
        word = marked_identity(p, orient, "bottom", theory, x, off)
        word[p - 2] = letter(theory, tag, i, sign)
        return word
    orient = [1, 1] + [-1] * (p - 2) + [1 if inv else -1]
    word = marked_identity(p, orient, "top", theory, x, off)
    word[(p - 1) * (p - 1)] = letter(theory, tag, j - 1, sign)
    return word


def lambda_to_quasitoric(gen: LambdaGen, sign: int, strands: int, theory: TheorySpec,
                         dominant: str | None = None) -> tuple[BraidWord, RewriteTrace]:
    """Full-width quasitoric word equal to ``gen^sign``; the trace rewrites it
    into ``lambda_expand(gen^sign)``."""
    x = _dominant(theory, dominant)
    return _lambda_cached(gen, sign, strands, theory, x)


@lru_cache(maxsize=4096)
def _lambda_cached(gen: LambdaGen, sign: int, n: int, theory: TheorySpec, x: str):
    if sign not in (1, -1):
        raise ValueError("sign must be ±1")
    if not 1 <= gen.i < gen.j <= n:
        raise ValueError(f"{gen} out of range for {n} strands")
    target = entry_letters(gen, sign, theory, x)
    stair = _staircase(gen, sign, theory, x)
    certify = equate(stair, target, n, theory, x)
    embedded = BraidWord(n, tuple(stair), theory)
    full, slide = slide_to_full(embedded, (gen.i, gen.j), x)
    out = BraidWord(n, tuple(target), theory)
    return full, RewriteTrace(tuple(slide.steps) + tuple(certify), out, full)


# ---------------------------------------------------------- pure braids


def _pure_to_quasitoric_steps(w: BraidWord, x: str, token: CancelToken | None):
    """Moves taking ``w`` to a full-width quasitoric word."""
    th = w.theory
    n = w.strands
    scan = rs_scan(w, x)
    ed = Editor(th, w.letters)
    # w -> product of mu_{k-1} g_k mu_k^-1
    for k in range(len(scan) - 1, 0, -1):
        ed.insert_inverse_product(k, list(scan[k - 1][2].expand(th, x).letters))
    pieces = []
    for mu, g, nu, lw in scan:
        left = list(mu.expand(th, x).letters)
        right = [lt.inverse(th) for lt in reversed(nu.expand(th, x).letters)]
        pieces.append((left + [g] + right, lw))
    offsets = []
    total = 0
    for u, _ in pieces:
        offsets.append(total)
        total += len(u)
    # each piece -> expansion of its λ-word
    for (u, lw), off in reversed(list(zip(pieces, offsets))):
        check(token)
        target = []
        for gen, s in lw.entries:
            target.extend(entry_letters(gen, s, th, x))
        ed.run(equate(u, target, n, th, x), off)
    # free reduction of the concatenated λ-word
    stack: list[tuple[tuple[LambdaGen, int], int]] = []
    done = 0
    for _, lw in pieces:
        for gen, s in lw.entries:
            m = len(entry_letters(gen, s, th, x))
            if stack and stack[-1][0] == (gen, -s):
                ed.cancel_inverse_product(done - m, m)
                stack.pop()
                done -= m
            else:
                stack.append(((gen, s), m))
                done += m
    entries = [e for e, _ in stack]
    assert tuple(entries) == free_reduce(e for _, lw in pieces for e in lw.entries)
    # each λ entry -> its quasitoric word
    offs = []
    total = 0
    for _, m in stack:
        offs.append(total)
        total += m
    for (gen, s), off in reversed(list(zip(entries, offs))):
        check(token)
        _, tr = _lambda_cached(gen, s, n, th, x)
        ed.run(reverse_steps(tr.steps), off)
    return ed


def pure_to_quasitoric(w: BraidWord, dominant: str | None = None,
                       token: CancelToken | None = None) -> tuple[BraidWord, RewriteTrace]:
    """Full-width quasitoric word equal to the pure word ``w``; the trace
    rewrites the result into ``w``."""
    th = w.theory
    x = _dominant(th, dominant)
    perm = permutation(w)
    if not perm.is_identity():
        raise NotPure(perm.images)
    if w.strands > MAX_SCHREIER_STRANDS:
        raise SchreierTooLarge(f"quasitoric normalization supports n <= {MAX_SCHREIER_STRANDS}")
    if w.strands == 1:
        return w, RewriteTrace((), w, w)
    ed = _pure_to_quasitoric_steps(w, x, token)
    out = BraidWord(w.strands, tuple(ed.cur), th)
    return out, RewriteTrace(tuple(reverse_steps(ed.steps)), w, out)


def quasitoric_inverse(w: BraidWord, dominant: str | None = None,
                       token: CancelToken | None = None) -> tuple[BraidWord, RewriteTrace]:
    """Full-width quasitoric word equal to ``invert(w)`` for quasitoric ``w``.

    Pure ``w`` is normalized directly.  Otherwise, with k the order of the
    permutation, ``invert(w)^k`` is pure and the result is its quasitoric
    form followed by ``w^(k-1)``.
    """
    th = w.theory
    x = _dominant(th, dominant)
    n = w.strands
    shape = quasitoric_type(w)
    if shape is None or shape.embedding is not None:
        raise ValueError("quasitoric_inverse needs a full-width quasitoric word")
    inv = invert(w)
    perm = permutation(w)
    if perm.is_identity():
        return pure_to_quasitoric(inv, x, token)
    k = perm.order()
    q, tr = pure_to_quasitoric(power(inv, k), x, token)
    tail = power(w, k - 1)
    out = BraidWord(n, q.letters + tail.letters, th)
    ed = Editor(th, out.letters)
    ed.run(tr.steps)
    m = len(w)
    for t in range(k - 1, 0, -1):
        ed.cancel_inverse_product(t * m, m)
    assert ed.cur == list(inv.letters)
    return out, RewriteTrace(tuple(ed.steps), inv, out)
