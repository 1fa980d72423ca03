"""Reidemeister–Schreier rewriting of pure braids into λ-generators.

Notation: ``aL[i,j]`` (i < j) is strand ``j`` reaching over to strand ``i``
through dominant ``x`` crossings, then ``a_i x_i``; ``aL[j,i]`` uses
``x_i a_i``; ``xL[i,j]`` uses ``x_i x_i``.  Every generator is
``P · core · P^-1`` with ``P = x_{j-1}^-1 ... x_{i+1}^-1``.
"""

from __future__ import annotations

import itertools
import math
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import GBraidError, NotPure, ParseError
from .theory import TheorySpec, validate_normal
from .word import BraidWord, Letter, Permutation, letter, permutation, permutation_of

MAX_SCHREIER_STRANDS = 8

_LAMBDA_RE = re.compile(r"^([a-z]+)L\[(\d+),(\d+)\]('?)$")


class LambdaGen(NamedTuple):
    tag: str
    i: int
    j: int
    orient: str = "ij"

    def __str__(self) -> str:
        lo, hi = (self.i, self.j) if self.orient == "ij" else (self.j, self.i)
        return f"{self.tag}L[{lo},{hi}]"


def lgen(tag: str, first: int, second: int, dominant: str) -> LambdaGen:
    """``{tag}λ_{first,second}``; x-generators ignore the order of indices."""
    i, j = min(first, second), max(first, second)
    if i == j:
        raise ValueError("λ-generator indices must differ")
    if tag == dominant:
        return LambdaGen(tag, i, j, "ij")
    return LambdaGen(tag, i, j, "ij" if first < second else "ji")


@dataclass(frozen=True)
class LambdaWord:
    entries: tuple[tuple[LambdaGen, int], ...]
    strands: int
    theory: TheorySpec
    dominant: str

    def __post_init__(self):
        for g, s in self.entries:
            if not 1 <= g.i < g.j <= self.strands:
                raise ValueError(f"{g} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise ValueError("λ-entry sign must be ±1")
            if g.tag == self.dominant and g.orient != "ij":
                raise ValueError("x-generators are stored with orientation ij")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return format_lambda(self)

    def inverse(self) -> "LambdaWord":
        return LambdaWord(tuple((g, -s) for g, s in reversed(self.entries)), self.strands, self.theory, self.dominant)


def format_lambda(lw: LambdaWord) -> str:
    return " ".join(f"{g}{'' if s > 0 else chr(39)}" for g, s in lw.entries)


def parse_lambda(text: str, strands: int, theory: TheorySpec, dominant: str) -> LambdaWord:
    entries = []
    for tok in text.split():
        m = _LAMBDA_RE.match(tok)
        if not m:
            raise ParseError(f"malformed λ-token {tok!r}")
        tag = m.group(1)
        if not theory.has_tag(tag):
            raise ParseError(f"unknown tag {tag}")
        entries.append((lgen(tag, int(m.group(2)), int(m.group(3)), dominant), -1 if m.group(4) else 1))
    return LambdaWord(tuple(entries), strands, theory, dominant)


def free_reduce(entries: Iterable[tuple[LambdaGen, int]]) -> tuple[tuple[LambdaGen, int], ...]:
    out: list[tuple[LambdaGen, int]] = []
    for g, s in entries:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


# ------------------------------------------------------------ expansion


def gen_letters(g: LambdaGen, theory: TheorySpec, dominant: str) -> list[Letter]:
    x = dominant
    i, j = g.i, g.j
    if g.tag == x:
        core = [letter(theory, x, i), letter(theory, x, i)]
    elif g.orient == "ij":
        core = [letter(theory, g.tag, i), letter(theory, x, i)]
    else:
        core = [letter(theory, x, i), letter(theory, g.tag, i)]
    pre = [letter(theory, x, p, -1) for p in range(j - 1, i, -1)]
    post = [letter(theory, x, p, 1) for p in range(i + 1, j)]
    return pre + core + post


def entry_letters(g: LambdaGen, sign: int, theory: TheorySpec, dominant: str) -> list[Letter]:
    lts = gen_letters(g, theory, dominant)
    if sign > 0:
        return lts
    return [lt.inverse(theory) for lt in reversed(lts)]


def lambda_expand(lw: LambdaWord) -> BraidWord:
    letters: list[Letter] = []
    for g, s in lw.entries:
        letters.extend(entry_letters(g, s, lw.theory, lw.dominant))
    return BraidWord(lw.strands, tuple(letters), lw.theory)


# ------------------------------------------------------- Schreier system


class CosetRep(NamedTuple):
    """Factors ``i_k`` for k = 1..n-1; factor k expands to x_k x_{k-1} ... x_{i_k+1}."""

    factors: tuple[int, ...]

    @property
    def strands(self) -> int:
        return len(self.factors) + 1

    def positions(self) -> list[int]:
        out = []
        for k, ik in enumerate(self.factors, 1):
            out.extend(range(k, ik, -1))
        return out

    def expand(self, theory: TheorySpec, dominant: str) -> BraidWord:
        return BraidWord(self.strands, tuple(letter(theory, dominant, p) for p in self.positions()), theory)

    def permutation(self) -> Permutation:
        return permutation_of((Letter("x", p, 1) for p in self.positions()), self.strands)

    def __str__(self) -> str:
        parts = [f"m[{k},{ik}]" for k, ik in enumerate(self.factors, 1) if ik != k]
        return " ".join(parts) if parts else "ε"


class SchreierTooLarge(GBraidError, ValueError):
    pass


_lock = threading.Lock()


@lru_cache(maxsize=None)
def _system(n: int) -> tuple[CosetRep, ...]:
    ranges = [range(0, k + 1) for k in range(1, n)]
    return tuple(CosetRep(tuple(c)) for c in itertools.product(*ranges))


def schreier_system(n: int, cap: int = MAX_SCHREIER_STRANDS) -> tuple[CosetRep, ...]:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise SchreierTooLarge(f"Schreier system for n={n} has {math.factorial(n)} elements (cap n<={cap})")
    with _lock:
        return _system(n)


def rep_for_permutation(perm: Permutation) -> CosetRep:
    """Peel factors k = n-1 .. 1: the strand starting at k+1 ends at i_k + 1."""
    images = list(perm.images)
    n = len(images)
    factors = [0] * (n - 1)
    for k in range(n - 1, 0, -1):
        end = images[k]  # strand starting at k+1
        ik = end - 1
        factors[k - 1] = ik
        images = [e if e <= ik else e - 1 for e in images[:k]]
    rep = CosetRep(tuple(factors))
    assert rep.permutation() == perm, (rep, perm)
    return rep


def coset_rep(w: BraidWord) -> CosetRep:
    validate_normal(w.theory)
    return rep_for_permutation(permutation(w))


# ------------------------------------------------------- conjugation table


def _conj_gen(g: LambdaGen, k: int, bysign: int, x: str) -> list[tuple[LambdaGen, int]]:
    """λ-word for ``x_k^-bysign · g · x_k^bysign`` (g with sign +1)."""
    i, j = g.i, g.j

    def same(ni: int, nj: int) -> LambdaGen:
        return LambdaGen(g.tag, ni, nj, g.orient)

    def xl(a: int, b: int) -> LambdaGen:
        return LambdaGen(x, a, b, "ij")

    def sandwich(c: LambdaGen, mid: LambdaGen, first: int):
        return [(c, first), (mid, 1), (c, -first)]

    adjacent = j == i + 1
    if k <= i - 2 or k >= j + 1 or i + 1 <= k <= j - 2:
        return [(g, 1)]
    if bysign > 0:
        if k == i - 1:
            return sandwich(xl(i, j), same(i - 1, j), 1)
        if k == i:
            if not adjacent:
                return [(same(i + 1, j), 1)]
            if g.tag == x:
                return [(g, 1)]
            if g.orient == "ij":
                return sandwich(xl(i, j), LambdaGen(g.tag, i, j, "ji"), -1)
            return [(LambdaGen(g.tag, i, j, "ij"), 1)]
        if k == j - 1:
            return sandwich(xl(j - 1, j), same(i, j - 1), -1)
        return [(same(i, j + 1), 1)]  # k == j
    if k == i - 1:
        return [(same(i - 1, j), 1)]
    if k == i:
        if not adjacent:
            return sandwich(xl(i, i + 1), same(i + 1, j), 1)
        if g.tag == x:
            return [(g, 1)]
        if g.orient == "ij":
            return [(LambdaGen(g.tag, i, j, "ji"), 1)]
        return sandwich(xl(i, j), LambdaGen(g.tag, i, j, "ij"), 1)
    if k == j - 1:
        return [(same(i, j - 1), 1)]
    return sandwich(xl(i, j), same(i, j + 1), -1)  # k == j


def conjugate_lambda(gen: LambdaGen, sign: int, by: int, bysign: int, strands: int,
                     theory: TheorySpec, dominant: str) -> LambdaWord:
    """``x_by^-bysign · gen^sign · x_by^bysign`` as a λ-word.

    Cases for bysign = +1 (g on strands i < j):
    (i) k <= i-2 or k >= j+1, and i+1 <= k <= j-2: unchanged;
    (ii) k = i-1: xL[i,j] g[i-1,j] xL[i,j]';
    (iii) k = i: g[i+1,j] (adjacent: aL[i,i+1] -> xL' aL[i+1,i] xL,
    aL[i+1,i] -> aL[i,i+1], xL fixed); (v) k = j-1: xL[j-1,j]' g[i,j-1]
    xL[j-1,j]; (vi) k = j: g[i,j+1].  bysign = -1 inverts these.
    """
    validate_normal(theory)
    if not 1 <= by <= strands - 1:
        raise ValueError(f"conjugating position {by} out of range for {strands} strands")
    if bysign not in (1, -1) or sign not in (1, -1):
        raise ValueError("signs must be ±1")
    body = _conj_gen(gen, by, bysign, dominant)
    lw = LambdaWord(tuple(body), strands, theory, dominant)
    return lw if sign > 0 else lw.inverse()


def conjugate_word(lw: LambdaWord, by: int, bysign: int) -> LambdaWord:
    """Conjugate every entry of ``lw`` by ``x_by^bysign`` and free-reduce."""
    out: list[tuple[LambdaGen, int]] = []
    for g, s in lw.entries:
        out.extend(conjugate_lambda(g, s, by, bysign, lw.strands, lw.theory, lw.dominant).entries)
    return LambdaWord(free_reduce(out), lw.strands, lw.theory, lw.dominant)


# ------------------------------------------------- Reidemeister–Schreier


def _lengthens(mu: CosetRep, i: int) -> bool:
    base = mu.permutation()
    return permutation_of((Letter("x", p, 1) for p in mu.positions() + [i]), mu.strands).inversions() > base.inversions()


def _after(mu: CosetRep, i: int) -> CosetRep:
    return rep_for_permutation(permutation_of((Letter("x", p, 1) for p in mu.positions() + [i]), mu.strands))


def rs_generator(mu: CosetRep, g: Letter, theory: TheorySpec, dominant: str) -> LambdaWord:
    """The rewrite of ``mu · g · rep(mu g)^-1`` as a free-reduced λ-word.

    For positive ``g`` at position i: if ``mu x_i`` is longer than ``mu``,
    ``a_i`` gives ``mu (aL[i,i+1] xL[i,i+1]') mu^-1`` and ``x_i`` gives the
    empty word; otherwise ``a_i`` gives ``mu aL[i,i+1] mu^-1`` and ``x_i``
    gives ``mu xL[i,i+1] mu^-1``.  Negative letters use the inverse of the
    positive rewrite from ``rep(mu g)``.
    """
    validate_normal(theory)
    n = mu.strands
    x = dominant
    i = g.pos
    if g.sign < 0 and not theory.involutive(g.tag):
        return rs_generator(_after(mu, i), Letter(g.tag, i, 1), theory, dominant).inverse()
    longer = _lengthens(mu, i)
    xl = LambdaGen(x, i, i + 1, "ij")
    if g.tag == x:
        core = [] if longer else [(xl, 1)]
    else:
        al = LambdaGen(g.tag, i, i + 1, "ij")
        core = [(al, 1), (xl, -1)] if longer else [(al, 1)]
    lw = LambdaWord(tuple(core), n, theory, dominant)
    for p in reversed(mu.positions()):
        lw = conjugate_word(lw, p, -1)
    if theory.involutive(x):
        # xL = P x_i x_i P^-1 is trivial when x is involutive
        lw = LambdaWord(free_reduce(e for e in lw.entries if e[0].tag != x), n, theory, dominant)
    return lw


def rs_scan(w: BraidWord, dominant: str) -> list[tuple[CosetRep, Letter, CosetRep, LambdaWord]]:
    """Per letter: (rep before, letter, rep after, its λ-rewrite)."""
    out = []
    mu = rep_for_permutation(Permutation.identity(w.strands))
    for g in w.letters:
        nxt = _after(mu, g.pos)
        out.append((mu, g, nxt, rs_generator(mu, g, w.theory, dominant)))
        mu = nxt
    return out


def pure_to_lambda(w: BraidWord, dominant: str | None = None) -> LambdaWord:
    """Rewrite a pure braid word as a free-reduced word in λ-generators."""
    th = w.theory
    validate_normal(th)
    x = th.default_dominant(dominant)
    perm = permutation(w)
    if not perm.is_identity():
        raise NotPure(perm.images)
    if w.strands > MAX_SCHREIER_STRANDS:
        raise SchreierTooLarge(f"Reidemeister–Schreier rewriting supports n <= {MAX_SCHREIER_STRANDS}")
    entries: list[tuple[LambdaGen, int]] = []
    for _, _, _, lw in rs_scan(w, x):
        entries.extend(lw.entries)
    return LambdaWord(free_reduce(entries), w.strands, th, x)
