"""Exact linear algebra over Q and Q(zeta_N).

Everything is built on two kernels, sparse row echelon and back substitution,
which have compiled twins.  Rows are dicts ``{column: value}``; dense matrices
are wrapped in :class:`ExactMatrix`.
"""

from __future__ import annotations

import numbers

from ._backend import back_substitute, sparse_echelon
from .rational import QQ, as_rational

__all__ = [
    "ExactMatrix",
    "field_elem",
    "rank",
    "rref",
    "kernel_basis",
    "solve",
    "solve_rational",
    "inverse",
    "sparse_rank",
    "sparse_kernel",
    "sparse_rref",
    "span_basis",
    "in_span",
]


def field_elem(x):
    """Normalize ints/strings/Fractions to ``QQ``; leave cyclotomic elements alone."""
    if isinstance(x, (int, str)) or (isinstance(x, numbers.Rational) and type(x) is not QQ):
        return as_rational(x)
    return x


def _sparse_rows(matrix) -> list[dict]:
    rows = []
    for r in matrix:
        rows.append({j: field_elem(v) for j, v in enumerate(r) if v != 0})
    return rows


def sparse_rref(rows) -> dict:
    """Reduced row echelon form of sparse rows, as ``{pivot: row}``."""
    return back_substitute(sparse_echelon([{k: field_elem(v) for k, v in r.items()} for r in rows]))


def sparse_rank(rows) -> int:
    return len(sparse_echelon([{k: field_elem(v) for k, v in r.items()} for r in rows]))


def sparse_kernel(rows, columns) -> list[dict]:
    """Basis of ``{v : sum_j row[j] v[j] = 0 for all rows}`` as sparse vectors.

    ``columns`` is the iterable of all column labels (sortable).
    """
    piv = sparse_rref(rows)
    basis = []
    for f in sorted(columns):
        if f in piv:
            continue
        v = {f: QQ(1)}
        for p, row in piv.items():
            c = row.get(f)
            if c is not None:
                v[p] = -c
        basis.append(v)
    return basis


def span_basis(vectors) -> dict:
    """Echelon basis ``{pivot: vector}`` of the span of sparse vectors."""
    return sparse_rref(vectors)


def in_span(pivots: dict, vector) -> bool:
    """Membership test against an RREF basis produced by :func:`span_basis`."""
    v = {k: field_elem(x) for k, x in vector.items() if x != 0}
    for p in sorted(pivots):
        c = v.get(p)
        if c is None or c == 0:
            continue
        for k, x in pivots[p].items():
            nv = v.get(k, 0) - c * x
            if nv != 0:
                v[k] = nv
            else:
                v.pop(k, None)
    return not v


class ExactMatrix:
    """Dense matrix with exact entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        entries = [[field_elem(x) for x in r] for r in entries]
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else (cols or 0)
        if any(len(r) != self.cols for r in entries):
            raise ValueError("ragged matrix")
        self.entries = tuple(tuple(r) for r in entries)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[QQ(int(i == j)) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, r: int, c: int) -> ExactMatrix:
        return cls([[QQ(0)] * c for _ in range(r)], cols=c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row_list(self):
        return [list(r) for r in self.entries]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            out = []
            for r in self.entries:
                row = []
                for j in range(other.cols):
                    s = QQ(0)
                    for k, a in enumerate(r):
                        if a != 0:
                            b = other.entries[k][j]
                            if b != 0:
                                s = s + a * b
                    row.append(s)
                out.append(row)
            return ExactMatrix(out, cols=other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return [sum((a * b for a, b in zip(r, vec) if a != 0 and b != 0), QQ(0)) for r in self.entries]

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols)

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.entries], cols=self.cols)

    def scale(self, c) -> ExactMatrix:
        return ExactMatrix([[c * a for a in r] for r in self.entries], cols=self.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )

    def columns(self) -> list[list]:
        return [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.entries]})"


def _as_matrix(M) -> ExactMatrix:
    return M if isinstance(M, ExactMatrix) else ExactMatrix(M)


def rank(M) -> int:
    M = _as_matrix(M)
    return len(sparse_echelon(_sparse_rows(M.entries)))


def rref(M) -> tuple[ExactMatrix, list[int]]:
    M = _as_matrix(M)
    piv = back_substitute(sparse_echelon(_sparse_rows(M.entries)))
    order = sorted(piv)
    rows = [[piv[p].get(j, QQ(0)) for j in range(M.cols)] for p in order]
    rows += [[QQ(0)] * M.cols for _ in range(M.rows - len(rows))]
    return ExactMatrix(rows, cols=M.cols), order


def kernel_basis(M) -> list[list]:
    """Basis of the right kernel ``{v : M v = 0}`` as dense vectors."""
    M = _as_matrix(M)
    basis = sparse_kernel(_sparse_rows(M.entries), range(M.cols))
    return [[v.get(j, QQ(0)) for j in range(M.cols)] for v in basis]


def solve(M, rhs) -> list | None:
    """One solution of ``M x = rhs`` or ``None`` if inconsistent."""
    M = _as_matrix(M)
    rows = _sparse_rows(M.entries)
    n = M.cols
    for r, b in zip(rows, rhs):
        b = field_elem(b)
        if b != 0:
            r[n] = b
    piv = back_substitute(sparse_echelon(rows))
    if n in piv:
        return None
    x = [QQ(0)] * n
    for p, row in piv.items():
        x[p] = row.get(n, QQ(0))
    return x


def solve_rational(matrix, rhs) -> list:
    x = solve(matrix, rhs)
    if x is None:
        raise ValueError("singular system")
    return x


def inverse(M) -> ExactMatrix:
    M = _as_matrix(M)
    n = M.rows
    if M.cols != n:
        raise ValueError("inverse of a non-square matrix")
    rows = _sparse_rows(M.entries)
    for i, r in enumerate(rows):
        r[n + i] = QQ(1)
    piv = back_substitute(sparse_echelon(rows))
    if sorted(piv)[:n] != list(range(n)) or len(piv) < n or any(p >= n for p in piv):
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix([[piv[i].get(n + j, QQ(0)) for j in range(n)] for i in range(n)], cols=n)
