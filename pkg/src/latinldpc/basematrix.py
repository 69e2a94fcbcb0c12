"""Base matrices over GF(q) and their expansion to binary parity checks.

A base matrix is a mu x eta array of field elements (entries may be UNSET
while a code is being grown).  Replacing every set entry by its permutation
matrix image yields a sparse mu*q x eta*q binary parity-check matrix.  The
expanded Tanner graph has no 4-cycles exactly when the base matrix satisfies
the cross-addition constraint, which is what `cross_addition_ok` tests.
"""

from __future__ import annotations

import numpy as np

from .galois import GaloisField

UNSET = -1


class BaseMatrix:
    """mu x eta array over GF(q); UNSET entries mark unbuilt blocks."""

    def __init__(self, f: GaloisField, entries):
        entries = np.asarray(entries, dtype=np.int64)
        if entries.ndim != 2 or entries.size == 0:
            raise ValueError("entries must be a nonempty 2-D array")
        if entries.max(initial=UNSET) >= f.q or entries.min(initial=0) < UNSET:
            raise ValueError("entries must be field elements or UNSET")
        self.field = f
        self.entries = entries

    @classmethod
    def unset(cls, f: GaloisField, mu: int, eta: int) -> "BaseMatrix":
        return cls(f, np.full((mu, eta), UNSET, dtype=np.int64))

    @property
    def mu(self) -> int:
        return self.entries.shape[0]

    @property
    def eta(self) -> int:
        return self.entries.shape[1]

    def is_complete(self) -> bool:
        return bool((self.entries != UNSET).all())

    def copy(self) -> "BaseMatrix":
        return BaseMatrix(self.field, self.entries.copy())

    def __eq__(self, other):
        return (
            isinstance(other, BaseMatrix)
            and self.field == other.field
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self):
        return f"BaseMatrix({self.mu}x{self.eta} over GF({self.field.q}))"


def cayley_base_matrix(f: GaloisField) -> BaseMatrix:
    """The canonical q x q base matrix: a zero first row and column bordering
    the multiplicative Cayley table, entry (i, j) = alpha^(i-1 + j-1) for
    i, j >= 1.  Satisfies the cross-addition constraint for every q.
    """
    q = f.q
    w = np.zeros((q, q), dtype=np.int64)
    t = (np.add.outer(np.arange(q - 1), np.arange(q - 1))) % (q - 1)
    w[1:, 1:] = f.exp_table[t]
    return BaseMatrix(f, w)


def subarray(w: BaseMatrix, rows, cols) -> BaseMatrix:
    """Submatrix on the given row/column index lists (distinct, in range)."""
    rows = list(rows)
    cols = list(cols)
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("row/column index lists must be distinct")
    if not all(0 <= r < w.mu for r in rows) or not all(0 <= c < w.eta for c in cols):
        raise ValueError("row/column index out of range")
    return BaseMatrix(w.field, w.entries[np.ix_(rows, cols)])


class SparseParityCheck:
    """Sparse binary parity-check matrix with optional block metadata.

    Entries are kept as parallel (row, col) index arrays sorted by column
    then row.  `gamma`, `rho`, `q` describe the block structure when the
    matrix came from expanding a base matrix.
    """

    def __init__(self, n_rows: int, n_cols: int, rows, cols, gamma=None, rho=None, q=None):
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.shape != cols.shape:
            raise ValueError("row and column index arrays differ in length")
        if len(rows) and (rows.min() < 0 or rows.max() >= n_rows):
            raise ValueError("row index out of range")
        if len(cols) and (cols.min() < 0 or cols.max() >= n_cols):
            raise ValueError("column index out of range")
        order = np.lexsort((rows, cols))
        rows, cols = rows[order], cols[order]
        keys = cols * n_rows + rows
        if len(keys) > 1 and (np.diff(keys) == 0).any():
            raise ValueError("duplicate entries in sparse matrix")
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        self.rows = rows
        self.cols = cols
        self.gamma = gamma
        self.rho = rho
        self.q = q
        self._csr = None
        self._csc = None

    @property
    def nnz(self) -> int:
        return len(self.rows)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        out[self.rows, self.cols] = 1
        return out

    def column_weights(self) -> np.ndarray:
        return np.bincount(self.cols, minlength=self.n_cols)

    def row_weights(self) -> np.ndarray:
        return np.bincount(self.rows, minlength=self.n_rows)

    def csc_arrays(self):
        """(indptr, row_indices): columns to sorted check rows."""
        if self._csc is None:
            indptr = np.zeros(self.n_cols + 1, dtype=np.int64)
            np.add.at(indptr, self.cols + 1, 1)
            np.cumsum(indptr, out=indptr)
            self._csc = (indptr, self.rows.copy())
        return self._csc

    def csr_arrays(self):
        """(indptr, col_indices): check rows to sorted variable columns."""
        if self._csr is None:
            order = np.lexsort((self.cols, self.rows))
            r, c = self.rows[order], self.cols[order]
            indptr = np.zeros(self.n_rows + 1, dtype=np.int64)
            np.add.at(indptr, r + 1, 1)
            np.cumsum(indptr, out=indptr)
            self._csr = (indptr, c)
        return self._csr

    def __eq__(self, other):
        return (
            isinstance(other, SparseParityCheck)
            and (self.n_rows, self.n_cols) == (other.n_rows, other.n_cols)
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
        )


def expand(w: BaseMatrix) -> SparseParityCheck:
    """Replace every base-matrix entry by its permutation-matrix image.

    Block (i, j) of the result is the image of entry (i, j); variable
    (j, x) connects to check (i, position(element(x) + w[i, j])).
    """
    if not w.is_complete():
        raise ValueError("base matrix has UNSET entries; expand needs all blocks")
    f = w.field
    q = f.q
    elems = f._elem_at
    rows = []
    cols = []
    x = np.arange(q, dtype=np.int64)
    for i in range(w.mu):
        for j in range(w.eta):
            r = f._pos_of[f.vadd(elems, int(w.entries[i, j]))]
            rows.append(i * q + r)
            cols.append(j * q + x)
    return SparseParityCheck(
        w.mu * q,
        w.eta * q,
        np.concatenate(rows),
        np.concatenate(cols),
        gamma=w.mu,
        rho=w.eta,
        q=q,
    )


def expand_multiplicative(w: BaseMatrix) -> SparseParityCheck:
    """Expansion over the multiplicative Cayley table: circulant blocks of
    size (q-1) x (q-1).  All entries must be nonzero.  Variable (j, x)
    connects to check (i, position of element(x+1) * w[i, j] among nonzero
    elements), i.e. classical circulant lifting by the entry's log.
    """
    if not w.is_complete():
        raise ValueError("base matrix has UNSET entries")
    if (w.entries == 0).any():
        raise ValueError("multiplicative expansion needs nonzero entries")
    f = w.field
    n = f.q - 1
    rows = []
    cols = []
    x = np.arange(n, dtype=np.int64)
    for i in range(w.mu):
        for j in range(w.eta):
            t = int(f.log_table[w.entries[i, j]])
            rows.append(i * n + (x + t) % n)
            cols.append(j * n + x)
    return SparseParityCheck(w.mu * n, w.eta * n, np.concatenate(rows), np.concatenate(cols))


def cross_addition_ok(w: BaseMatrix, witness: bool = False):
    """No-4-cycle test: all row-pair entry differences distinct per column.

    For every pair of distinct rows (i1, i2) the per-column differences
    w[i1, j] - w[i2, j] over set columns must be pairwise distinct; a repeat
    at columns j1, j2 is exactly a violation of
    w[i1, j1] + w[i2, j2] != w[i1, j2] + w[i2, j1].
    UNSET entries take part in no constraint.

    Returns bool, or (bool, witness_or_None) when witness=True; the witness
    is (i1, i2, j1, j2) in 0-based indices.
    """
    f = w.field
    e = w.entries
    ok = True
    wit = None
    for i1 in range(w.mu):
        for i2 in range(i1 + 1, w.mu):
            mask = (e[i1] != UNSET) & (e[i2] != UNSET)
            js = np.nonzero(mask)[0]
            if len(js) < 2:
                continue
            d = f.vsub(e[i1, js], e[i2, js])
            order = np.argsort(d, kind="stable")
            dup = np.nonzero(np.diff(d[order]) == 0)[0]
            if len(dup):
                ok = False
                a, b = order[dup[0]], order[dup[0] + 1]
                wit = (i1, i2, int(js[a]), int(js[b]))
                break
        if not ok:
            break
    return (ok, wit) if witness else ok


def cross_addition_ok_incremental(w: BaseMatrix, i: int, j: int) -> bool:
    """Cross-addition check restricted to quadruples through entry (i, j)."""
    f = w.field
    e = w.entries
    if e[i, j] == UNSET:
        raise ValueError("entry under test is UNSET")
    for i2 in range(w.mu):
        if i2 == i:
            continue
        if e[i2, j] == UNSET:
            continue
        d = f.sub(int(e[i, j]), int(e[i2, j]))
        mask = (e[i] != UNSET) & (e[i2] != UNSET)
        mask[j] = False
        js = np.nonzero(mask)[0]
        if len(js) == 0:
            continue
        others = f.vsub(e[i, js], e[i2, js])
        if (others == d).any():
            return False
    return True


def cross_multiplication_ok(w: BaseMatrix) -> bool:
    """Multiplicative analogue of the cross-addition constraint.

    Requires w[i1, j1] * w[i2, j2] != w[i1, j2] * w[i2, j1] for all
    quadruples; equivalent to 4-cycle freeness of the circulant expansion.
    Entries must be nonzero (UNSET entries are skipped).
    """
    f = w.field
    e = w.entries
    if ((e == 0) & (e != UNSET)).any():
        raise ValueError("cross-multiplication constraint needs nonzero entries")
    n = f.q - 1
    set_mask = e != UNSET
    logs = np.full(e.shape, -1, dtype=np.int64)
    logs[set_mask] = f.log_table[e[set_mask]]
    for i1 in range(w.mu):
        for i2 in range(i1 + 1, w.mu):
            mask = set_mask[i1] & set_mask[i2]
            if mask.sum() < 2:
                continue
            d = (logs[i1, mask] - logs[i2, mask]) % n
            if len(np.unique(d)) != len(d):
                return False
    return True
