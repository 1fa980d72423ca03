# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled neighbor generation; same contract as ``_kernel_py.expand``."""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


cdef inline tuple _splice(tuple state, Py_ssize_t k, Py_ssize_t drop, object ins):
    """``state[:k] + ins + state[k + drop:]`` in one allocation."""
    cdef Py_ssize_t m = len(state)
    cdef Py_ssize_t add = len(ins)
    cdef Py_ssize_t size = m - drop + add
    cdef tuple out = PyTuple_New(size)
    cdef Py_ssize_t p, q = 0
    cdef object item
    for p in range(k):
        item = state[p]
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, q, item)
        q += 1
    for p in range(add):
        item = ins[p]
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, q, item)
        q += 1
    for p in range(k + drop, m):
        item = state[p]
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, q, item)
        q += 1
    return out


def expand(tuple state, Py_ssize_t maxlen, long S, tuple inv, dict r3, tuple ins):
    cdef list out = []
    cdef Py_ssize_t m = len(state)
    cdef Py_ssize_t k, e
    cdef long a, b, c, pa, pb, pc, lo, hi, off
    cdef object hits, rhs
    for k in range(m):
        a = state[k]
        if k + 1 < m:
            b = state[k + 1]
            if <long>inv[a] == b:
                out.append(((k, 0, 0), _splice(state, k, 2, ())))
            pa = a // S
            pb = b // S
            if pa - pb > 1 or pb - pa > 1:
                out.append(((k, 1, 0), _splice(state, k, 2, (b, a))))
            if k + 2 < m:
                c = state[k + 2]
                pc = c // S
                lo = min(pa, pb, pc)
                hi = max(pa, pb, pc)
                if hi == lo + 1:
                    off = (lo - 1) * S
                    hits = r3.get((a - off, b - off, c - off))
                    if hits is not None:
                        for entry, rhs in hits:
                            out.append(((k, 2, entry), _splice(
                                state, k, 3, (rhs[0] + off, rhs[1] + off, rhs[2] + off))))
    cdef long code
    if m + 2 <= maxlen:
        for k in range(m + 1):
            for e in range(len(ins)):
                code = ins[e]
                out.append(((k, 3, code), _splice(state, k, 0, (code, inv[code]))))
    return out


def expand_layer(list front, dict mine, dict other, Py_ssize_t maxlen, long S, tuple inv, dict r3,
                 tuple ins, Py_ssize_t cap, Py_ssize_t explored):
    cdef list new = []
    cdef list meets = []
    cdef tuple s, t
    cdef object key
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
