"""Neighbor generation over integer-coded words (pure-Python kernel).

A letter is coded ``pos * S + sym`` where ``sym`` identifies (tag, sign).
``inv[c]`` is the code cancelling ``c`` by R2 (-1 when R2 is not allowed),
``r3`` maps a position-normalized triple to ``[(entry, rhs triple)]`` and
``ins`` lists every insertable code.  Keys are ``(index, kind, extra)`` with
kind 0 = R2 delete, 1 = far commute, 2 = three-letter move, 3 = R2 insert.
"""


def expand(state, maxlen, S, inv, r3, ins):
    out = []
    m = len(state)
    for k in range(m):
        a = state[k]
        if k + 1 < m:
            b = state[k + 1]
            if inv[a] == b:
                out.append(((k, 0, 0), state[:k] + state[k + 2:]))
            pa = a // S
            pb = b // S
            if pa - pb > 1 or pb - pa > 1:
                out.append(((k, 1, 0), state[:k] + (b, a) + state[k + 2:]))
            if k + 2 < m:
                c = state[k + 2]
                pc = c // S
                lo = min(pa, pb, pc)
                if max(pa, pb, pc) == lo + 1:
                    off = (lo - 1) * S
                    hits = r3.get((a - off, b - off, c - off))
                    if hits:
                        for entry, rhs in hits:
                            new = (rhs[0] + off, rhs[1] + off, rhs[2] + off)
                            out.append(((k, 2, entry), state[:k] + new + state[k + 3:]))
    if m + 2 <= maxlen:
        for k in range(m + 1):
            head = state[:k]
            tail = state[k:]
            for c in ins:
                out.append(((k, 3, c), head + (c, inv[c]) + tail))
    return out


def expand_layer(front, mine, other, maxlen, S, inv, r3, ins, cap, explored):
    """Expand every state of ``front`` once, recording parents in ``mine``.

    Returns ``(new states, meets with other, explored)``; stops early once
    ``explored`` passes ``cap`` without a meet.
    """
    new = []
    meets = []
    for s in front:
        for key, t in expand(s, maxlen, S, inv, r3, ins):
            if t in mine:
                continue
            mine[t] = (s, key)
            new.append(t)
            explored += 1
            if t in other:
                meets.append(t)
        if explored > cap and not meets:
            break
    return new, meets, explored
