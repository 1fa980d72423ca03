"""Free-group automorphism models of braid theories (independent test oracle).

Each model sends letters to automorphisms of the free group F_n and is a
homomorphism for the relations of the theory it is built for, so unequal
images prove two words distinct and equal images corroborate equality.

* Artin action: sigma_i: g_i -> g_i g_{i+1} g_i^-1, g_{i+1} -> g_i.
* swap: g_i <-> g_{i+1} (a permutation automorphism, models v).
* flip: g_i -> g_{i+1}^-1, g_{i+1} -> g_i^-1 (an involution, models t).
"""

from __future__ import annotations


def reduce(word):
    out = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def inv(word):
    return tuple(-g for g in reversed(word))


def _artin(i, sign, power=1):
    def img(k):
        if sign * power > 0:
            if k == i:
                return (i, i + 1, -i)
            if k == i + 1:
                return (i,)
        else:
            if k == i:
                return (i + 1,)
            if k == i + 1:
                return (-(i + 1), i, i + 1)
        return (k,)
    return img, abs(power)


def _swap(i):
    def img(k):
        if k == i:
            return (i + 1,)
        if k == i + 1:
            return (i,)
        return (k,)
    return img, 1


def _flip(i):
    def img(k):
        if k == i:
            return (-(i + 1),)
        if k == i + 1:
            return (-i,)
        return (k,)
    return img, 1


def _subst(word, img):
    out = []
    for g in word:
        piece = img(abs(g))
        out.extend(piece if g > 0 else inv(piece))
    return reduce(out)


class Model:
    """``kinds`` maps tag -> ("artin", power) | ("swap",) | ("flip",)."""

    def __init__(self, kinds, reverse=False):
        self.kinds = kinds
        # reading right to left swaps which overpass relation holds
        self.reverse = reverse

    def image(self, letters, n):
        imgs = [(k,) for k in range(1, n + 1)]
        for lt in (reversed(letters) if self.reverse else letters):
            kind = self.kinds[lt.tag]
            if kind[0] == "artin":
                f, reps = _artin(lt.pos, lt.sign, kind[1])
            elif kind[0] == "swap":
                f, reps = _swap(lt.pos)
            else:
                f, reps = _flip(lt.pos)
            for _ in range(reps):
                imgs = [_subst(im, f) for im in imgs]
        return tuple(imgs)


class CableModel:
    """Doubles every strand: x becomes the cabled crossing, other tags the
    cabled crossing followed by ``2k`` half twists of the two middle strands.

    Cables pass wholly over or under any block, so every dominance form is
    an isotopy; x_i^2 does not commute with a_i here.
    """

    def __init__(self, dominant, tags):
        self.dominant = dominant
        others = [t for t in tags if t != dominant]
        self.twists = {t: 2 * (k + 1) for k, t in enumerate(others)}
        self.artin = Model({"s": ("artin", 1)})

    def _expand(self, lt):
        i = lt.pos
        cross = [2 * i, 2 * i - 1, 2 * i + 1, 2 * i]
        block = [(p, 1) for p in cross]
        if lt.tag != self.dominant:
            block += [(2 * i, 1)] * self.twists[lt.tag]
        if lt.sign < 0:
            block = [(p, -s) for p, s in reversed(block)]
        return block

    def image(self, letters, n):
        from types import SimpleNamespace as NS
        flat = []
        for lt in letters:
            flat.extend(NS(tag="s", pos=p, sign=s) for p, s in self._expand(lt))
        return self.artin.image(flat, 2 * n)


def models_for(theory, dominant):
    """Models valid as homomorphisms for ``theory`` with ``dominant`` as x."""
    tags = theory.tag_names
    out = []
    names = theory.name
    if names == "classical":
        out.append(Model({"r": ("artin", 1)}))
    elif names == "virtual":
        out.append(Model({"r": ("artin", 1), "v": ("swap",)}))
        out.append(Model({"r": ("artin", 1), "v": ("swap",)}, reverse=True))
    elif names == "welded":
        # r1 r2 v1 = v2 r1 r2 holds for the right-to-left reading only
        out.append(Model({"r": ("artin", 1), "v": ("swap",)}, reverse=True))
    elif names == "flat":
        out.append(Model({"r": ("flip",), "v": ("swap",)}))
        out.append(Model({"r": ("swap",), "v": ("flip",)}))
    elif names == "virtual-twin":
        out.append(Model({"t": ("flip",), "v": ("swap",)}))
    return out


def generic_models(tags, dominant):
    """Models where ``dominant`` dominates every other tag and nothing else holds."""
    others = [t for t in tags if t != dominant]
    m1 = {dominant: ("artin", 1)}
    m2 = {dominant: ("swap",)}
    for k, t in enumerate(others):
        m1[t] = ("artin", 3 + 2 * k)
        m2[t] = ("artin", 1 + 2 * k)
    return [Model(m1), Model(m2), CableModel(dominant, tags)]
