"""Permutation matrices from the subtraction Latin square of GF(q).

The Latin square L with entries L[i][j] = i - j (field subtraction, rows and
columns indexed by field elements in the canonical order 0, 1, alpha,
alpha^2, ...) maps each field element a to the q x q permutation matrix that
has a 1 at (i, j) exactly where i - j = a.  Equivalently the matrix sends
column index x to row index x + a.  Under the operations ``box_plus``
(matrix product) and ``box_dot`` (conjugation by powers of a fixed shift
permutation) these q matrices form a field isomorphic to GF(q); the zero
element maps to the identity matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .galois import NEG_INFINITY, GaloisField


@dataclass(frozen=True, eq=False)
class LatinSquare:
    """Cayley-table Latin square over a field's elements.

    kind "subtractive": table[i, j] = element(i) - element(j), q x q.
    kind "multiplicative": table[i, j] = element(i+1) * element(j+1) over the
    nonzero elements, (q-1) x (q-1); its permutation images are circulants.
    """

    field: GaloisField
    kind: str
    table: np.ndarray = dc_field(repr=False)

    def symbol_rows_cols(self):
        return self.table.shape


def latin_subtractive(f: GaloisField) -> LatinSquare:
    """The q x q Latin square of field subtraction, canonically indexed."""
    elems = np.asarray(f.elements(), dtype=np.int64)
    table = f.vsub(elems[:, None], elems[None, :])
    return LatinSquare(f, "subtractive", table)


def latin_multiplicative(f: GaloisField) -> LatinSquare:
    """Cayley table of the multiplicative group (nonzero elements only)."""
    q = f.q
    t = np.add.outer(np.arange(q - 1), np.arange(q - 1)) % (q - 1)
    table = f.exp_table[t]
    return LatinSquare(f, "multiplicative", table)


class PermMatrix:
    """Permutation matrix f(a) for a field element a.

    Stored as an index map, never as a dense bit matrix: ``col_to_row[x]`` is
    the row position receiving the 1 of column position x, i.e. the position
    of element(x) + a.  Row/column positions use the canonical element order.
    """

    __slots__ = ("field", "element", "col_to_row")

    def __init__(self, f: GaloisField, element: int, col_to_row: np.ndarray):
        self.field = f
        self.element = element
        self.col_to_row = col_to_row

    @property
    def row_to_col(self) -> np.ndarray:
        inv = np.empty_like(self.col_to_row)
        inv[self.col_to_row] = np.arange(len(self.col_to_row))
        return inv

    def as_dense(self) -> np.ndarray:
        q = self.field.q
        out = np.zeros((q, q), dtype=np.uint8)
        out[self.col_to_row, np.arange(q)] = 1
        return out

    def shift_exponent(self):
        """Discrete log of the underlying element (NEG_INFINITY for f(0))."""
        return self.field.log_alpha(self.element)

    def __eq__(self, other):
        return (
            isinstance(other, PermMatrix)
            and self.field == other.field
            and np.array_equal(self.col_to_row, other.col_to_row)
        )

    def __repr__(self):
        return f"PermMatrix(element={self.element}, q={self.field.q})"


def f_map(f: GaloisField, a: int) -> PermMatrix:
    """Image of element a: 1 at (i, j) iff i - j = a.  f(0) is the identity."""
    elems = f._elem_at
    col_to_row = f._pos_of[f.vadd(elems, a)]
    return PermMatrix(f, a, col_to_row.astype(np.int64))


def f_map_all(f: GaloisField) -> list[PermMatrix]:
    """Images of all q elements, canonical order (f(0), f(1), f(alpha), ...)."""
    return [f_map(f, a) for a in f.elements()]


class ShiftMatrix:
    """The fixed permutation P (and its transpose Q) used by ``box_dot``.

    P fixes position 0 and cyclically shifts the nonzero-power positions by
    one, so conjugating f(alpha^t) by P yields f(alpha^(t+1)).
    """

    def __init__(self, f: GaloisField):
        q = f.q
        col_to_row = np.empty(q, dtype=np.int64)
        col_to_row[0] = 0
        t = np.arange(q - 1)
        col_to_row[1 + t] = 1 + (t + 1) % (q - 1)
        self.field = f
        self.col_to_row = col_to_row

    def power(self, s: int) -> np.ndarray:
        """col_to_row map of P^s (s may be negative: powers of Q)."""
        q = self.field.q
        out = np.empty(q, dtype=np.int64)
        out[0] = 0
        t = np.arange(q - 1)
        out[1 + t] = 1 + (t + s) % (q - 1)
        return out

    def as_dense(self) -> np.ndarray:
        q = self.field.q
        out = np.zeros((q, q), dtype=np.uint8)
        out[self.col_to_row, np.arange(q)] = 1
        return out


def box_plus(A: PermMatrix, B: PermMatrix) -> PermMatrix:
    """Field addition on images: the matrix product A @ B.

    Equals f(a + b) when A = f(a), B = f(b).
    """
    if A.field != B.field:
        raise ValueError("operands come from different fields")
    f = A.field
    col_to_row = A.col_to_row[B.col_to_row]
    return PermMatrix(f, f.add(A.element, B.element), col_to_row)


def box_dot(A: PermMatrix, B: PermMatrix) -> PermMatrix:
    """Field multiplication on images, via shift conjugation: P^t2 A Q^t2.

    Conjugating by the shift permutation increments the exponent
    (P M_t Q = M_{t+1}), so conjugating f(alpha^t1) by P^t2 yields
    f(alpha^(t1+t2)) = f(a * b).  A zero operand (the identity matrix f(0))
    annihilates, matching the field isomorphism.
    """
    if A.field != B.field:
        raise ValueError("operands come from different fields")
    f = A.field
    t1 = A.shift_exponent()
    t2 = B.shift_exponent()
    if t1 is NEG_INFINITY or t2 is NEG_INFINITY:
        return f_map(f, 0)
    P = ShiftMatrix(f)
    ps = P.power(t2)
    qs = P.power(-t2)
    # (P^s A Q^s) e_j = P^s (A (Q^s e_j))
    col_to_row = ps[A.col_to_row[qs]]
    return PermMatrix(f, f.mul(A.element, B.element), col_to_row)


@dataclass
class IsomorphismReport:
    ok: bool
    pairs_checked: int
    first_failure: tuple | None


def verify_isomorphism(f: GaloisField, bound: int = 64) -> IsomorphismReport:
    """Exhaustively check f(a+b) = f(a) [+] f(b) and f(a*b) = f(a) [.] f(b).

    Raises if q exceeds the bound (the check is quadratic in q and meant for
    small fields).
    """
    if f.q > bound:
        raise ValueError(f"q = {f.q} exceeds verification bound {bound}")
    images = {a: f_map(f, a) for a in f.elements()}
    checked = 0
    for a in f.elements():
        for b in f.elements():
            s = box_plus(images[a], images[b])
            if not np.array_equal(s.col_to_row, images[f.add(a, b)].col_to_row):
                return IsomorphismReport(False, checked, ("add", a, b))
            checked += 1
            m = box_dot(images[a], images[b])
            if not np.array_equal(m.col_to_row, images[f.mul(a, b)].col_to_row):
                return IsomorphismReport(False, checked, ("mul", a, b))
            checked += 1
    return IsomorphismReport(True, checked, None)
