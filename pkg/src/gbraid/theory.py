"""Generalized braid theories: tags, dominance and the moves they enable.

A theory is a finite tag alphabet plus a move policy.  Every tag has a
positive and a negative letter (identified when the tag is involutive).
``x`` dominating ``a`` enables five oriented mixed R3 forms (``mix3a`` ...
``mix3e``), each available in both directions.  Writing ``X = x^e`` and
``A = a^d``, the forward left-hand sides on positions ``i, i+1`` are::

    mix3a  X_i X_{i+1} A_i        ->  A_{i+1} X_i X_{i+1}        (any e)
    mix3b  A_i x_{i+1} x_i        ->  x_{i+1} x_i A_{i+1}
    mix3c  A_i x'_{i+1} x'_i      ->  x'_{i+1} x'_i A_{i+1}
    mix3d  x'_i A_{i+1} x_i       ->  x_{i+1} A_i x'_{i+1}
    mix3e  x_i A_{i+1} x'_i       ->  x'_{i+1} A_i x_{i+1}

In each form one strand passes the ``a`` crossing while staying on the
same side (above or below) of both strands it meets through ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import NotNormal, NotRegular, ParseError, TheoryError

_TAG_RE = re.compile(r"^[a-z]+$")

MIX_FORMS = ("mix3a", "mix3b", "mix3c", "mix3d", "mix3e")

R2_INSERT = "R2-insert"
R2_DELETE = "R2-delete"
FAR_COMMUTE = "FarCommute"
BRAID_RELATION = "BraidRelation"
MIXED_R3 = "MixedR3"
R3_VARIANT = "R3Variant"

_KIND_ORDER = {R2_INSERT: 0, R2_DELETE: 1, FAR_COMMUTE: 2, BRAID_RELATION: 3, MIXED_R3: 4, R3_VARIANT: 5}


@dataclass(frozen=True, order=True)
class TagSpec:
    name: str
    involutive: bool = False
    r2_allowed: bool = True

    def __post_init__(self):
        if not isinstance(self.name, str) or not _TAG_RE.match(self.name):
            raise TheoryError(f"invalid tag name {self.name!r}: lowercase letters only")


@dataclass(frozen=True)
class MoveFamily:
    """One oriented family of elementary moves.

    ``form`` names the mixed R3 form for MixedR3/R3Variant kinds; ``eps``
    pins the sign of the dominant letters for restricted variants.
    """

    kind: str
    tags: tuple[str, ...] = ()
    direction: str = "forward"
    form: str | None = None
    eps: int | None = None

    @property
    def id(self) -> str:
        if self.kind == R2_INSERT:
            return "r2ins"
        if self.kind == R2_DELETE:
            return "r2del"
        if self.kind == FAR_COMMUTE:
            return "fc"
        base = "br" if self.kind == BRAID_RELATION else self.form
        return base if self.direction == "forward" else base + ".r"

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.form or "", self.tags, self.direction, self.eps or 0)

    def __str__(self) -> str:
        tags = ",".join(self.tags) if self.tags else "*,*"
        extra = "" if self.eps is None else ("+" if self.eps > 0 else "-")
        return f"{self.kind}({tags}){extra}:{self.id}"


@dataclass(frozen=True)
class TheorySpec:
    name: str
    tags: tuple[TagSpec, ...]
    dominance: frozenset = frozenset()
    # extra one-sided R3 variants: (form, x, a, eps)
    variants: frozenset = frozenset()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        tags = tuple(sorted(self.tags, key=lambda t: t.name))
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "dominance", frozenset(self.dominance))
        object.__setattr__(self, "variants", frozenset(self.variants))
        if not _TAG_RE.match(self.name.replace("-", "").replace("_", "") or "?"):
            raise TheoryError(f"invalid theory name {self.name!r}")
        if not tags:
            raise TheoryError("a theory needs at least one tag")
        index = {}
        for t in tags:
            if t.name in index:
                raise TheoryError(f"duplicate tag {t.name}")
            index[t.name] = t
        object.__setattr__(self, "_index", index)
        for x, a in self.dominance:
            for name in (x, a):
                if name not in index:
                    raise TheoryError(f"unknown tag {name}")
            if not index[x].r2_allowed:
                raise TheoryError(f"dominating tag {x} must allow R2")
        for form, x, a, eps in self.variants:
            if form not in MIX_FORMS:
                raise TheoryError(f"unknown R3 form {form}")
            for name in (x, a):
                if name not in index:
                    raise TheoryError(f"unknown tag {name}")
            if eps not in (1, -1):
                raise TheoryError("variant sign must be + or -")

    def tag(self, name: str) -> TagSpec:
        try:
            return self._index[name]
        except KeyError:
            raise TheoryError(f"unknown tag {name}") from None

    def has_tag(self, name: str) -> bool:
        return name in self._index

    @property
    def tag_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.tags)

    def involutive(self, name: str) -> bool:
        return self.tag(name).involutive

    @property
    def is_regular(self) -> bool:
        return all(t.r2_allowed for t in self.tags)

    @cached_property
    def dominant_tags(self) -> tuple[str, ...]:
        if not self.is_regular:
            return ()
        names = self.tag_names
        return tuple(x for x in names if all((x, a) in self.dominance for a in names))

    @property
    def is_normal(self) -> bool:
        return bool(self.dominant_tags)

    def default_dominant(self, override: str | None = None) -> str:
        dom = validate_normal(self)
        if override is None:
            return min(dom)
        if override not in dom:
            raise TheoryError(f"tag {override} is not dominant in theory {self.name}")
        return override

    @cached_property
    def moves(self) -> tuple[MoveFamily, ...]:
        return tuple(enabled_moves(self))

    @cached_property
    def _move_lookup(self) -> dict:
        table: dict = {}
        for fam in self.moves:
            table.setdefault((fam.id, fam.tags), []).append(fam)
        return table

    def find_family(self, fid: str, tags: tuple[str, ...], eps: int | None = None) -> MoveFamily | None:
        """Return the enabled family with this id and tags admitting ``eps``."""
        if fid == "fc":
            tags = ()
        for fam in self._move_lookup.get((fid, tuple(tags)), ()):
            if fam.eps is None or eps is None or fam.eps == eps:
                return fam
        return None


def validate_normal(theory: TheorySpec) -> frozenset:
    """Return the set of tags dominating ``theory``.

    Raises NotRegular if some tag lacks R2 and NotNormal if no tag
    dominates every tag (itself included).
    """
    missing = [t.name for t in theory.tags if not t.r2_allowed]
    if missing:
        raise NotRegular(missing)
    dom = theory.dominant_tags
    if not dom:
        partial = sorted({x for x, _ in theory.dominance})
        raise NotNormal(partial)
    return frozenset(dom)


def enabled_moves(theory: TheorySpec) -> list[MoveFamily]:
    fams: list[MoveFamily] = []
    for t in theory.tags:
        if t.r2_allowed:
            fams.append(MoveFamily(R2_INSERT, (t.name,)))
            fams.append(MoveFamily(R2_DELETE, (t.name,)))
    fams.append(MoveFamily(FAR_COMMUTE))
    for x in theory.dominant_tags:
        for d in ("forward", "backward"):
            fams.append(MoveFamily(BRAID_RELATION, (x,), d))
    for x, a in sorted(theory.dominance):
        for form in MIX_FORMS:
            for d in ("forward", "backward"):
                fams.append(MoveFamily(MIXED_R3, (x, a), d, form))
    for form, x, a, eps in sorted(theory.variants):
        if (x, a) in theory.dominance:
            continue
        for d in ("forward", "backward"):
            fams.append(MoveFamily(R3_VARIANT, (x, a), d, form, eps))
    fams.sort(key=MoveFamily.sort_key)
    return fams


# ---------------------------------------------------------------- config


def load_theory(config_text: str) -> TheorySpec:
    """Parse the line-oriented theory config format."""
    name = None
    tags: list[TagSpec] = []
    seen: set[str] = set()
    dominance: set[tuple[str, str]] = set()
    variants: set[tuple[str, str, str, int]] = set()
    pending: list[tuple[int, int, str, tuple[str, ...]]] = []

    for lineno, raw in enumerate(config_text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        words = line.split()
        col = len(line) - len(line.lstrip()) + 1
        head = words[0]
        if head == "theory":
            if len(words) != 2 or name is not None:
                raise ParseError("expected exactly one 'theory <name>' line", lineno, col)
            name = words[1]
        elif head == "tag":
            if len(words) < 2:
                raise ParseError("'tag' needs a name", lineno, col)
            tname = words[1]
            if not _TAG_RE.match(tname):
                raise ParseError(f"invalid tag name {tname!r}", lineno, line.index(tname, col - 1) + 1)
            if tname in seen:
                raise ParseError(f"duplicate tag {tname}", lineno, line.index(tname, col - 1) + 1)
            flags = set(words[2:])
            bad = flags - {"involutive", "no-r2"}
            if bad:
                tok = sorted(bad)[0]
                raise ParseError(f"unknown tag flag {tok!r}", lineno, line.index(tok) + 1)
            seen.add(tname)
            tags.append(TagSpec(tname, "involutive" in flags, "no-r2" not in flags))
        elif head == "dominates":
            if len(words) != 3:
                raise ParseError("expected 'dominates <x> <a>'", lineno, col)
            pending.append((lineno, col, head, tuple(words[1:])))
        elif head == "variant":
            if len(words) != 5 or words[1] not in MIX_FORMS or words[4] not in ("+", "-"):
                raise ParseError("expected 'variant <mix3a..mix3e> <x> <a> <+|->'", lineno, col)
            pending.append((lineno, col, head, tuple(words[1:])))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col)

    if name is None:
        raise ParseError("missing 'theory <name>' line", 1, 1)
    for lineno, col, head, args in pending:
        names = args[:2] if head == "dominates" else args[1:3]
        for n in names:
            if n not in seen:
                raise ParseError(f"unknown tag {n}", lineno, col)
        if head == "dominates":
            dominance.add(args)
        else:
            variants.add((args[0], args[1], args[2], 1 if args[3] == "+" else -1))
    try:
        return TheorySpec(name, tuple(tags), frozenset(dominance), frozenset(variants))
    except TheoryError as exc:
        raise ParseError(str(exc), 1, 1) from exc


def format_theory(theory: TheorySpec) -> str:
    lines = [f"theory {theory.name}"]
    for t in theory.tags:
        flags = (["involutive"] if t.involutive else []) + ([] if t.r2_allowed else ["no-r2"])
        lines.append(" ".join(["tag", t.name, *flags]))
    for x, a in sorted(theory.dominance):
        lines.append(f"dominates {x} {a}")
    for form, x, a, eps in sorted(theory.variants):
        lines.append(f"variant {form} {x} {a} {'+' if eps > 0 else '-'}")
    return "\n".join(lines) + "\n"


_PRESETS = {
    "classical": """
theory classical
tag r
dominates r r
""",
    "virtual": """
theory virtual
tag r
tag v involutive
dominates r r
dominates v r
dominates v v
""",
    "welded": """
theory welded
tag r
tag v involutive
dominates r r
dominates v r
dominates v v
variant mix3a r v +
""",
    "flat": """
theory flat
tag r involutive
tag v involutive
dominates r r
dominates r v
dominates v r
dominates v v
""",
    "twin": """
theory twin
tag t involutive
""",
    "virtual-twin": """
theory virtual-twin
tag t involutive
tag v involutive
dominates v t
dominates v v
""",
}

PRESET_NAMES = tuple(_PRESETS)
NORMAL_PRESETS = ("classical", "virtual", "welded", "flat", "virtual-twin")

_cache: dict[str, TheorySpec] = {}


def builtin(name: str) -> TheorySpec:
    if name not in _PRESETS:
        raise TheoryError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    if name not in _cache:
        _cache[name] = load_theory(_PRESETS[name])
    return _cache[name]
