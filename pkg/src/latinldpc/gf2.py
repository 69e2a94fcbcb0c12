"""GF(2) linear algebra on sparse parity-check matrices."""

from __future__ import annotations

from .basematrix import SparseParityCheck


def gf2_rank(h: SparseParityCheck) -> int:
    """Rank over GF(2) by Gaussian elimination on integer bitset rows."""
    row_bits = [0] * h.n_rows
    for r, c in zip(h.rows.tolist(), h.cols.tolist()):
        row_bits[r] ^= 1 << c
    pivots: dict[int, int] = {}
    rank = 0
    for bits in row_bits:
        while bits:
            lead = bits.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = bits
                rank += 1
                break
            bits ^= piv
    return rank


def code_dimension(h: SparseParityCheck) -> int:
    """k = n - rank(H): dimension of the null-space code."""
    return h.n_cols - gf2_rank(h)


def nullspace_basis(h: SparseParityCheck) -> list[int]:
    """Basis of the GF(2) null space, each vector packed as an int bitset
    (bit j = coordinate j).  Small codes only: used for codeword sampling."""
    n = h.n_cols
    row_bits = [0] * h.n_rows
    for r, c in zip(h.rows.tolist(), h.cols.tolist()):
        row_bits[r] ^= 1 << c
    pivots: dict[int, int] = {}
    for bits in row_bits:
        while bits:
            lead = bits.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = bits
                break
            bits ^= piv
    # full reduction: clear every pivot column from the other rows
    for lead in sorted(pivots):
        row = pivots[lead]
        for other in list(pivots):
            if other != lead and (pivots[other] >> lead) & 1:
                pivots[other] ^= row
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = 1 << fc
        for lead, row in pivots.items():
            if (row >> fc) & 1:
                vec |= 1 << lead
        basis.append(vec)
    return basis
