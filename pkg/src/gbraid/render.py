"""ASCII and SVG pictures of braid words, one band per letter, read top to bottom."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .word import BraidWord

# tags with a conventional glyph; anything else is drawn as a labeled dot
OVER_UNDER_TAGS = frozenset({"r"})
CIRCLE_TAGS = frozenset({"v"})


@dataclass(frozen=True)
class RenderOptions:
    format: str = "ascii"
    cell_width: int = 40
    cell_height: int = 40
    show_tags: bool = True

    def __post_init__(self):
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown render format {self.format!r}")
        if self.cell_width < 1 or self.cell_height < 1:
            raise ValueError("cell sizes must be positive")


def render(w: BraidWord, options: RenderOptions = RenderOptions()) -> str:
    if options.format == "ascii":
        return render_ascii(w, options.show_tags)
    return render_svg(w, options)


def _label(lt) -> str:
    return f"{lt.tag}{'+' if lt.sign > 0 else '-'}"


def render_ascii(w: BraidWord, show_tags: bool = True) -> str:
    """Strand columns; each crossing row shows ``\\tag±/`` between its two strands."""
    n = w.strands
    gap = max([3] + [len(_label(lt)) for lt in w.letters])
    header = (" " * gap).join(str(p % 10) for p in range(1, n + 1))
    plain = (" " * gap).join("|" * n)
    rows = [header, plain]
    for lt in w.letters:
        cells = []
        for p in range(1, n + 1):
            if p == lt.pos:
                cells.append("\\")
                mid = _label(lt) if show_tags else "x"
                cells.append(mid.center(gap))
            elif p == lt.pos + 1:
                cells.append("/")
                if p < n:
                    cells.append(" " * gap)
            else:
                cells.append("|")
                if p < n:
                    cells.append(" " * gap)
        rows.append("".join(cells).rstrip())
    rows.append(plain)
    return "\n".join(rows) + "\n"


def render_svg(w: BraidWord, options: RenderOptions = RenderOptions()) -> str:
    n = w.strands
    cw, ch = options.cell_width, options.cell_height
    width = cw * (n + 1)
    height = ch * (len(w) + 2)

    def xpos(p: int) -> int:
        return cw * p

    # strand_at[p] = label of the strand at position p; points per label
    strand_at = list(range(n + 1))
    points = {p: [(xpos(p), 0), (xpos(p), ch)] for p in range(1, n + 1)}
    marks = []
    for t, lt in enumerate(w.letters):
        y0, y1 = ch * (t + 1), ch * (t + 2)
        i = lt.pos
        left, right = strand_at[i], strand_at[i + 1]
        points[left].append((xpos(i + 1), y1))
        points[right].append((xpos(i), y1))
        for p in range(1, n + 1):
            if p not in (i, i + 1):
                points[strand_at[p]].append((xpos(p), y1))
        strand_at[i], strand_at[i + 1] = right, left
        cx, cy = (xpos(i) + xpos(i + 1)) // 2, (y0 + y1) // 2
        marks.append((lt, i, y0, y1, cx, cy))
    for p in range(1, n + 1):
        points[strand_at[p]].append((xpos(p), height))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for label in range(1, n + 1):
        pts = " ".join(f"{x},{y}" for x, y in points[label])
        out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="2"/>')
    for lt, i, y0, y1, cx, cy in marks:
        if lt.tag in OVER_UNDER_TAGS:
            # redraw the over-strand with a white halo so the other one breaks
            x0, x1 = (xpos(i), xpos(i + 1)) if lt.sign > 0 else (xpos(i + 1), xpos(i))
            seg = f'x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"'
            out.append(f'<line {seg} stroke="white" stroke-width="8"/>')
            out.append(f'<line {seg} stroke="black" stroke-width="2"/>')
        elif lt.tag in CIRCLE_TAGS:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{max(ch // 6, 2)}" fill="none" stroke="black"/>')
        else:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
        if options.show_tags:
            text = escape(_label(lt))
            out.append(f'<text x="{cx + cw // 4}" y="{cy + 4}" font-family="monospace" '
                       f'font-size="{max(ch // 4, 6)}">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
