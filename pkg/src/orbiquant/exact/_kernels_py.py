"""Pure-Python reference kernels.

``_ckernels.pyx`` is a line-for-line compiled twin of this file; keep them in sync.
Rows are sparse dicts ``{column: value}`` over an exact field whose zero compares
equal to ``0``.
"""


def sparse_echelon(rows):
    """Reduce ``rows`` to echelon form.

    Returns ``{pivot_column: row}`` where every row is normalized to have a 1 in
    its pivot column and no entries left of it that belong to another pivot.
    The input dicts are consumed.
    """
    pivots = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = 1 / row[c]
                if inv != 1:
                    for k in row:
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


def back_substitute(pivots):
    """Turn an echelon pivot map into reduced row echelon form, in place."""
    order = sorted(pivots, reverse=True)
    for i, c in enumerate(order):
        prow = pivots[c]
        for c2 in order[:i]:
            f = prow.get(c2)
            if f is None:
                continue
            for k, v in pivots[c2].items():
                nv = prow.get(k, 0) - f * v
                if nv != 0:
                    prow[k] = nv
                else:
                    prow.pop(k, None)
    return pivots


def conv_reduce(a, b, table, phi):
    """Multiply integer coefficient lists and reduce modulo a monic cyclotomic polynomial.

    ``table[e]`` holds the reduced coefficients of ``x**e`` for ``phi <= e < 2*phi - 1``.
    """
    n = len(a) + len(b) - 1
    conv = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
    out = conv[:phi] + [0] * (phi - min(n, phi))
    for e in range(phi, n):
        ce = conv[e]
        if ce:
            red = table[e]
            for i in range(phi):
                if red[i]:
                    out[i] += ce * red[i]
    return out
