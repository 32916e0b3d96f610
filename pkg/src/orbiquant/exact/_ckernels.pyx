# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of ``_kernels_py``; identical semantics."""


def sparse_echelon(rows):
    cdef dict pivots = {}
    cdef dict row
    cdef dict prow
    cdef object c, k, v, nv, f, inv
    for r in rows:
        row = {}
        for k, v in (<dict>r).items():
            if v != 0:
                row[k] = v
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = 1 / row[c]
                if inv != 1:
                    for k in list(row):
                        row[k] = row[k] * inv
                pivots[c] = row
                break
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv != 0:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return pivots


def back_substitute(dict pivots):
    cdef list order = sorted(pivots, reverse=True)
    cdef Py_ssize_t i, j
    cdef dict prow, other
    cdef object c, c2, f, k, v, nv
    for i in range(len(order)):
        c = order[i]
        prow = pivots[c]
        for j in range(i):
            c2 = order[j]
            f = prow.get(c2)
            if f is None:
                continue
            other = pivots[c2]
            for k, v in other.items():
                nv = prow.get(k, 0) - f * v
                if nv != 0:
                    prow[k] = nv
                else:
                    prow.pop(k, None)
    return pivots


def conv_reduce(list a, list b, list table, Py_ssize_t phi):
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t n = la + lb - 1
    cdef Py_ssize_t i, j, e
    cdef list conv = [0] * n
    cdef list out
    cdef list red
    cdef object ai, bj, ce
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                bj = b[j]
                if bj:
                    conv[i + j] = conv[i + j] + ai * bj
    out = conv[:phi] + [0] * (phi - min(n, phi))
    for e in range(phi, n):
        ce = conv[e]
        if ce:
            red = table[e]
            for i in range(phi):
                if red[i]:
                    out[i] = out[i] + ce * red[i]
    return out
