"""Braid words: letters, parsing/formatting, composition and invariants."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import NotRegular, ParseError, StrandMismatch
from .theory import TheorySpec

_TOKEN_RE = re.compile(r"^([a-z]+)(\d+)('?)$")


class Letter(NamedTuple):
    tag: str
    pos: int
    sign: int = 1

    def inverse(self, theory: TheorySpec) -> "Letter":
        if theory.involutive(self.tag):
            return self
        return Letter(self.tag, self.pos, -self.sign)

    def __str__(self) -> str:
        return f"{self.tag}{self.pos}{'' if self.sign > 0 else chr(39)}"


def letter(theory: TheorySpec, tag: str, pos: int, sign: int = 1) -> Letter:
    """Build a letter with the sign normalized for involutive tags."""
    if theory.involutive(tag):
        sign = 1
    return Letter(tag, pos, sign)


@dataclass(frozen=True)
class Permutation:
    """``images[p-1]`` is the end position of the strand starting at ``p``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other`` (i.e. ``other ∘ self``)."""
        return Permutation(tuple(other(self(p)) for p in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for p, q in enumerate(self.images, 1):
            inv[q - 1] = p
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(q == p for p, q in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            q = self(start)
            while q != start:
                cyc.append(q)
                seen.add(q)
                q = self(q)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.n else 1

    def power(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(k)):
            out = out.then(base)
        return out

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...]
    theory: TheorySpec

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        th = self.theory
        fixed = []
        for lt in self.letters:
            if not isinstance(lt, Letter):
                lt = Letter(*lt)
            if not th.has_tag(lt.tag):
                raise ParseError(f"unknown tag {lt.tag}")
            if not 1 <= lt.pos <= self.strands - 1:
                raise ParseError(f"position {lt.pos} out of range for {self.strands} strands")
            if lt.sign not in (1, -1):
                raise ValueError(f"bad sign {lt.sign}")
            if lt.sign < 0 and th.involutive(lt.tag):
                lt = Letter(lt.tag, lt.pos, 1)
            fixed.append(lt)
        object.__setattr__(self, "letters", tuple(fixed))

    @classmethod
    def empty(cls, strands: int, theory: TheorySpec) -> "BraidWord":
        return cls(strands, (), theory)

    def with_letters(self, letters: Iterable[Letter], strands: int | None = None) -> "BraidWord":
        return BraidWord(self.strands if strands is None else strands, tuple(letters), self.theory)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"BraidWord({self.strands}, {format_word(self)!r}, {self.theory.name})"

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def __pow__(self, k: int) -> "BraidWord":
        return power(self, k)

    def permutation(self) -> Permutation:
        return permutation(self)

    def is_pure(self) -> bool:
        return is_pure(self)


def parse_word(text: str, strands: int, theory: TheorySpec) -> BraidWord:
    letters = []
    cleaned = text.replace("(", " ").replace(")", " ")
    for tok in cleaned.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ParseError(f"malformed token {tok!r}")
        tag, pos, prime = m.group(1), int(m.group(2)), m.group(3)
        if not theory.has_tag(tag):
            raise ParseError(f"unknown tag {tag}")
        if not 1 <= pos <= strands - 1:
            raise ParseError(f"position {pos} out of range in {tok!r} for {strands} strands")
        letters.append(letter(theory, tag, pos, -1 if prime else 1))
    return BraidWord(strands, tuple(letters), theory)


def format_letters(letters: Sequence[Letter]) -> str:
    return " ".join(map(str, letters))


def format_word(w: BraidWord) -> str:
    return format_letters(w.letters)


def _check_compatible(w1: BraidWord, w2: BraidWord) -> None:
    if w1.strands != w2.strands:
        raise StrandMismatch(f"strand counts differ: {w1.strands} vs {w2.strands}")
    if w1.theory != w2.theory:
        raise StrandMismatch(f"theories differ: {w1.theory.name} vs {w2.theory.name}")


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    _check_compatible(w1, w2)
    return BraidWord(w1.strands, w1.letters + w2.letters, w1.theory)


def concat(words: Iterable[BraidWord], strands: int, theory: TheorySpec) -> BraidWord:
    letters: list[Letter] = []
    for w in words:
        if w.strands != strands:
            raise StrandMismatch(f"strand counts differ: {w.strands} vs {strands}")
        letters.extend(w.letters)
    return BraidWord(strands, tuple(letters), theory)


def invert(w: BraidWord) -> BraidWord:
    if not w.theory.is_regular:
        raise NotRegular(t.name for t in w.theory.tags if not t.r2_allowed)
    th = w.theory
    return BraidWord(w.strands, tuple(lt.inverse(th) for lt in reversed(w.letters)), th)


def power(w: BraidWord, k: int) -> BraidWord:
    base = w if k >= 0 else invert(w)
    return BraidWord(w.strands, base.letters * abs(k), w.theory)


def permutation_of(letters: Iterable[Letter], n: int) -> Permutation:
    # strand_at[p] = starting label of the strand now at position p
    strand_at = list(range(n + 1))
    for lt in letters:
        i = lt.pos
        strand_at[i], strand_at[i + 1] = strand_at[i + 1], strand_at[i]
    images = [0] * n
    for p in range(1, n + 1):
        images[strand_at[p] - 1] = p
    return Permutation(tuple(images))


def reduced_word(perm: Permutation, theory: TheorySpec, tag: str) -> BraidWord:
    """A positive reduced word in ``tag`` whose permutation is ``perm`` (bubble sort)."""
    n = perm.n
    at = list(range(1, n + 1))  # label of the strand at each position
    out: list[Letter] = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if perm(at[i]) > perm(at[i + 1]):
                at[i], at[i + 1] = at[i + 1], at[i]
                out.append(letter(theory, tag, i + 1))
                changed = True
    return BraidWord(n, tuple(out), theory)


def permutation(w: BraidWord) -> Permutation:
    return permutation_of(w.letters, w.strands)


def is_pure(w: BraidWord) -> bool:
    return permutation(w).is_identity()


def tag_exponents(w: BraidWord) -> dict[str, int]:
    """Signed letter count per tag (mod 2 for involutive tags)."""
    th = w.theory
    out = {name: 0 for name in th.tag_names}
    for lt in w.letters:
        out[lt.tag] += lt.sign
    for name in out:
        if th.involutive(name):
            out[name] %= 2
    return out


def same_invariants(w1: BraidWord, w2: BraidWord) -> bool:
    return permutation(w1) == permutation(w2) and tag_exponents(w1) == tag_exponents(w2)
