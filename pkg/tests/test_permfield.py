"""Latin squares, the map to permutation matrices, and its field structure."""

import itertools

import numpy as np
import pytest

from latinldpc import make_field
from latinldpc.permfield import (
    ShiftMatrix,
    box_dot,
    box_plus,
    f_map,
    f_map_all,
    latin_multiplicative,
    latin_subtractive,
    verify_isomorphism,
)


def test_latin_gf2(gf2):
    assert latin_subtractive(gf2).table.tolist() == [[0, 1], [1, 0]]


def test_latin_gf3():
    f = make_field(3, 1)
    t = latin_subtractive(f).table
    # row indexed by element i holds i - j for the canonical column order
    for i, ei in enumerate(f.elements()):
        for j, ej in enumerate(f.elements()):
            assert t[i, j] == f.sub(ei, ej)
    for row in t:
        assert sorted(row.tolist()) == [0, 1, 2]


def test_latin_gf4_entry(gf4):
    t = latin_subtractive(gf4).table
    # l[alpha, 1] = alpha + 1 = alpha^2 (positions: alpha -> 2, 1 -> 1)
    assert t[2, 1] == gf4.exp_alpha(2)


def test_latin_square_property(gf8):
    t = latin_subtractive(gf8).table
    for i in range(8):
        assert len(set(t[i].tolist())) == 8
        assert len(set(t[:, i].tolist())) == 8


def test_f_map_basics(gf4, gf2):
    assert (f_map(gf4, 0).col_to_row == np.arange(4)).all()  # f(0) = identity
    m = f_map(gf2, 1).as_dense()
    assert m.tolist() == [[0, 1], [1, 0]]
    # f(alpha) sends column x to row x + alpha, exhaustively
    a = gf4.alpha
    fm = f_map(gf4, a)
    for x in gf4.elements():
        assert fm.col_to_row[gf4.position_of(x)] == gf4.position_of(gf4.add(x, a))


def test_images_tile_the_grid(gf4, gf8):
    for f in (gf4, gf8):
        total = sum(m.as_dense().astype(int) for m in f_map_all(f))
        assert (total == 1).all()


def test_permutation_rows_and_columns(gf8):
    for m in f_map_all(gf8):
        d = m.as_dense()
        assert (d.sum(axis=0) == 1).all() and (d.sum(axis=1) == 1).all()


def test_box_plus(gf8, gf4):
    for f in (gf8, gf4):
        images = {a: f_map(f, a) for a in f.elements()}
        ident = images[0]
        for a in f.elements():
            assert box_plus(images[a], ident) == images[a]
            if f.p == 2:
                assert box_plus(images[a], images[a]) == ident
    # f(alpha) [+] f(1) = f(alpha^3) in GF(8) with x^3 + x + 1
    f = gf8
    assert box_plus(f_map(f, f.alpha), f_map(f, 1)) == f_map(f, f.exp_alpha(3))


def test_box_plus_is_matrix_product(gf8):
    a, b = gf8.exp_alpha(2), gf8.exp_alpha(5)
    prod = f_map(gf8, a).as_dense() @ f_map(gf8, b).as_dense()
    assert (prod == f_map(gf8, gf8.add(a, b)).as_dense()).all()


def test_shift_matrix_conjugation_increments_exponent(gf8, gf9):
    for f in (gf8, gf9):
        P = ShiftMatrix(f)
        # P Q = identity
        assert (P.power(1)[P.power(-1)] == np.arange(f.q)).all()
        for t in range(f.q - 1):
            mt = f_map(f, f.exp_alpha(t))
            mt1 = f_map(f, f.exp_alpha(t + 1))
            conj = P.power(1)[mt.col_to_row[P.power(-1)]]
            assert (conj == mt1.col_to_row).all()


def test_shift_conjugation_iterated(gf8):
    # P^s M_t Q^s = M_{t+s} for all t, s
    P = ShiftMatrix(gf8)
    for t in range(7):
        for s in range(-7, 8):
            mt = f_map(gf8, gf8.exp_alpha(t))
            conj = P.power(s)[mt.col_to_row[P.power(-s)]]
            assert (conj == f_map(gf8, gf8.exp_alpha(t + s)).col_to_row).all()


def test_box_dot(gf8, gf9):
    f = gf8
    m3, m5 = f_map(f, f.exp_alpha(3)), f_map(f, f.exp_alpha(5))
    assert box_dot(m3, m5) == f_map(f, f.exp_alpha(1))  # exponents mod 7
    m0 = f_map(f, 1)
    for t in range(7):
        mt = f_map(f, f.exp_alpha(t))
        assert box_dot(m0, mt) == mt
    # zero annihilates
    zero = f_map(f, 0)
    assert box_dot(zero, m3) == zero and box_dot(m3, zero) == zero
    # cyclic group of order q-1 under box_dot
    f = gf9
    gen = f_map(f, f.alpha)
    acc = f_map(f, 1)
    seen = set()
    for _ in range(f.q - 1):
        acc = box_dot(acc, gen)
        seen.add(acc.element)
    assert len(seen) == f.q - 1


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (2, 3), (3, 1), (5, 1), (3, 2)])
def test_isomorphism_exhaustive(p, m):
    rep = verify_isomorphism(make_field(p, m))
    assert rep.ok, rep.first_failure
    assert rep.pairs_checked == 2 * (p**m) ** 2


def test_isomorphism_bound():
    with pytest.raises(ValueError):
        verify_isomorphism(make_field(13, 1), bound=12)


def test_field_mismatch(gf4, gf8):
    with pytest.raises(ValueError):
        box_plus(f_map(gf4, 0), f_map(gf8, 0))
    with pytest.raises(ValueError):
        box_dot(f_map(gf4, 1), f_map(gf8, 1))


def test_multiplicative_latin(gf5):
    ls = latin_multiplicative(gf5)
    assert ls.table.shape == (4, 4)
    for row in ls.table:
        assert sorted(row.tolist()) == sorted([1, 2, 3, 4])
