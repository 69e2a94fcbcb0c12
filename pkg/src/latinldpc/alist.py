"""File formats: alist for parity-check matrices, CSV for base matrices.

alist is the standard sparse text interchange format: dimensions line
"n m", max weights line, per-column weights, per-row weights, then 1-based
neighbor lists padded with zeros to the max weight.

Base matrices are written as CSV of exponent tokens: entry alpha^t is the
integer t and the zero element is the token "inf-neg".  UNSET entries (only
meaningful mid-construction) are written as "unset".
"""

from __future__ import annotations

import numpy as np

from .basematrix import UNSET, BaseMatrix, SparseParityCheck
from .galois import NEG_INFINITY, GaloisField

ZERO_TOKEN = "inf-neg"
UNSET_TOKEN = "unset"


class AlistFormatError(ValueError):
    """Malformed alist input; message names the offending line."""


def write_alist(h: SparseParityCheck, path) -> None:
    n, m = h.n_cols, h.n_rows
    col_wt = h.column_weights()
    row_wt = h.row_weights()
    max_col = int(col_wt.max(initial=0))
    max_row = int(row_wt.max(initial=0))
    cptr, rows_of_col = h.csc_arrays()
    rptr, cols_of_row = h.csr_arrays()
    lines = [
        f"{n} {m}",
        f"{max_col} {max_row}",
        " ".join(str(int(x)) for x in col_wt),
        " ".join(str(int(x)) for x in row_wt),
    ]
    for j in range(n):
        nbrs = (rows_of_col[cptr[j]:cptr[j + 1]] + 1).tolist()
        nbrs += [0] * (max_col - len(nbrs))
        lines.append(" ".join(str(x) for x in nbrs))
    for i in range(m):
        nbrs = (cols_of_row[rptr[i]:rptr[i + 1]] + 1).tolist()
        nbrs += [0] * (max_row - len(nbrs))
        lines.append(" ".join(str(x) for x in nbrs))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> SparseParityCheck:
    with open(path) as fh:
        raw_lines = fh.read().splitlines()

    def ints(line_no: int, expect: int | None = None):
        if line_no >= len(raw_lines):
            raise AlistFormatError(f"{path}: line {line_no + 1}: unexpected end of file")
        try:
            vals = [int(tok) for tok in raw_lines[line_no].split()]
        except ValueError:
            raise AlistFormatError(
                f"{path}: line {line_no + 1}: non-integer token"
            ) from None
        if expect is not None and len(vals) != expect:
            raise AlistFormatError(
                f"{path}: line {line_no + 1}: expected {expect} values, got {len(vals)}"
            )
        return vals

    header = ints(0)
    if len(header) != 2:
        raise AlistFormatError(f"{path}: line 1: expected 'n m'")
    n, m = header
    if n <= 0 or m <= 0:
        raise AlistFormatError(f"{path}: line 1: dimensions must be positive")
    max_col, max_row = ints(1, 2)
    col_wt = ints(2, n)
    row_wt = ints(3, m)
    rows = []
    cols = []
    for j in range(n):
        vals = ints(4 + j, max_col)
        live = [v for v in vals if v != 0]
        if len(live) != col_wt[j]:
            raise AlistFormatError(
                f"{path}: line {5 + j}: column {j + 1} lists {len(live)} "
                f"neighbors, declared {col_wt[j]}"
            )
        for v in live:
            if not (1 <= v <= m):
                raise AlistFormatError(
                    f"{path}: line {5 + j}: check index {v} out of range"
                )
            rows.append(v - 1)
            cols.append(j)
    # row lists are redundant; validate consistency when present
    base = 4 + n
    if base + m <= len(raw_lines) and any(raw_lines[base:base + m]):
        declared = set()
        for i in range(m):
            vals = ints(base + i, max_row)
            live = [v for v in vals if v != 0]
            if len(live) != row_wt[i]:
                raise AlistFormatError(
                    f"{path}: line {base + i + 1}: row {i + 1} lists {len(live)} "
                    f"neighbors, declared {row_wt[i]}"
                )
            for v in live:
                if not (1 <= v <= n):
                    raise AlistFormatError(
                        f"{path}: line {base + i + 1}: variable index {v} out of range"
                    )
                declared.add((i, v - 1))
        if declared != set(zip(rows, cols)):
            raise AlistFormatError(f"{path}: row and column neighbor lists disagree")
    elif len(raw_lines) < base + m:
        raise AlistFormatError(f"{path}: line {len(raw_lines) + 1}: truncated file")
    return SparseParityCheck(m, n, np.asarray(rows), np.asarray(cols))


def exponent_token(f: GaloisField, element: int) -> str:
    if element == UNSET:
        return UNSET_TOKEN
    t = f.log_alpha(int(element))
    return ZERO_TOKEN if t is NEG_INFINITY else str(t)


def write_base_matrix_csv(w: BaseMatrix, path) -> None:
    f = w.field
    with open(path, "w") as fh:
        for i in range(w.mu):
            fh.write(",".join(exponent_token(f, w.entries[i, j]) for j in range(w.eta)))
            fh.write("\n")


def read_base_matrix_csv(f: GaloisField, path) -> BaseMatrix:
    rows = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            row = []
            for tok in line.split(","):
                tok = tok.strip()
                if tok == ZERO_TOKEN:
                    row.append(0)
                elif tok == UNSET_TOKEN:
                    row.append(UNSET)
                else:
                    try:
                        t = int(tok)
                    except ValueError:
                        raise ValueError(
                            f"{path}: line {line_no}: bad exponent token {tok!r}"
                        ) from None
                    row.append(f.exp_alpha(t))
            rows.append(row)
    if not rows or len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: empty or ragged base-matrix CSV")
    return BaseMatrix(f, np.asarray(rows, dtype=np.int64))
