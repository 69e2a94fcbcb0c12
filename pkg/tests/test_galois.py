"""Field arithmetic: spec examples, axioms against a polynomial oracle."""

import itertools

import numpy as np
import pytest

from latinldpc import NEG_INFINITY, make_field
from latinldpc.galois import default_modulus, is_irreducible, is_prime


# -- independent oracle: polynomial arithmetic on coefficient tuples ---------


def poly_oracle_add(f, a, b):
    ca, cb = f.coeffs(a), f.coeffs(b)
    return f.from_coeffs(tuple((x + y) % f.p for x, y in zip(ca, cb)))


def poly_oracle_mul(f, a, b):
    # schoolbook product then reduction by the modulus, no tables involved
    ca, cb = f.coeffs(a), f.coeffs(b)
    prod = [0] * (2 * f.m - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            prod[i + j] = (prod[i + j] + x * y) % f.p
    mod = list(f.modulus)
    for top in range(len(prod) - 1, f.m - 1, -1):
        c = prod[top]
        if c:
            for k in range(f.m + 1):
                prod[top - f.m + k] = (prod[top - f.m + k] - c * mod[k]) % f.p
    return f.from_coeffs(tuple(prod[: f.m]))


def test_gf2_trivial():
    f = make_field(2, 1)
    assert f.q == 2 and f.alpha == 1
    assert f.add(1, 1) == 0


def test_gf8_construction_matches_named_modulus():
    f = make_field(2, 3, (1, 1, 0, 1))  # x^3 + x + 1
    assert f.alpha == 2  # alpha = x
    assert f.exp_alpha(3) == f.add(f.alpha, 1)  # alpha^3 = alpha + 1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)  # default picks the same


def test_gf361_order():
    f = make_field(19, 2)
    assert f.q == 361
    assert len(set(int(x) for x in f.exp_table)) == 360


def test_add_examples(gf8, gf5):
    a = gf8.alpha
    assert gf8.add(a, a) == 0  # characteristic 2
    assert gf8.add(a, 1) == gf8.exp_alpha(3)
    assert gf5.add(3, 4) == 2


def test_mul_examples(gf8, gf9):
    for f in (gf8, gf9):
        for a in f.elements():
            assert f.mul(a, 1) == a
    assert gf8.mul(gf8.exp_alpha(3), gf8.exp_alpha(5)) == gf8.exp_alpha(1)
    assert gf9.mul(gf9.exp_alpha(4), gf9.exp_alpha(4)) == 1


def test_log_alpha(gf8):
    assert gf8.log_alpha(1) == 0
    assert gf8.log_alpha(0) is NEG_INFINITY
    assert gf8.log_alpha(gf8.add(gf8.alpha, 1)) == 3
    assert gf8.exp_alpha(NEG_INFINITY) == 0


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1), (2, 4)])
def test_field_axioms_exhaustive(p, m):
    f = make_field(p, m)
    if f.q > 16:
        els = list(range(0, f.q, max(1, f.q // 11)))
    else:
        els = f.elements()
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(a, f.neg(a)) == 0
        if a != 0:
            assert f.mul(a, f.inv(a)) == 1
    for a, b, c in itertools.product(els[:6], repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 1), (5, 1), (3, 2), (13, 1)])
def test_add_mul_agree_with_polynomial_oracle(p, m):
    f = make_field(p, m)
    for a, b in itertools.product(f.elements(), repeat=2):
        assert f.add(a, b) == poly_oracle_add(f, a, b)
        assert f.mul(a, b) == poly_oracle_mul(f, a, b)


def test_exp_log_roundtrip(gf9, gf13):
    for f in (gf9, gf13):
        for a in f.elements():
            if a != 0:
                assert f.exp_alpha(f.log_alpha(a)) == a
        for t in range(f.q - 1):
            assert f.log_alpha(f.exp_alpha(t)) == t


def test_alpha_primitive_and_powers_distinct(gf9):
    powers = {gf9.exp_alpha(t) for t in range(gf9.q - 1)}
    assert len(powers) == gf9.q - 1
    assert gf9.exp_alpha(gf9.q - 1) == 1


def test_vectorized_ops_match_scalar(gf9, gf13, rng):
    for f in (gf9, gf13):
        a = rng.integers(0, f.q, size=50)
        b = rng.integers(0, f.q, size=50)
        va = f.vadd(a, b)
        vs = f.vsub(a, b)
        for i in range(50):
            assert va[i] == f.add(int(a[i]), int(b[i]))
            assert vs[i] == f.sub(int(a[i]), int(b[i]))
        add_t, sub_t = f.add_sub_tables()
        assert (add_t[a, b] == va).all()
        assert (sub_t[a, b] == vs).all()


def test_canonical_positions(gf8):
    assert gf8.position_of(0) == 0
    for t in range(gf8.q - 1):
        assert gf8.position_of(gf8.exp_alpha(t)) == 1 + t
        assert gf8.element_at(1 + t) == gf8.exp_alpha(t)


def test_errors():
    with pytest.raises(ValueError):
        make_field(4, 1)  # not prime
    with pytest.raises(ValueError):
        make_field(2, 2, (1, 1, 1, 1))  # wrong degree
    with pytest.raises(ValueError):
        make_field(2, 2, (1, 0, 1))  # (x+1)^2 is reducible
    with pytest.raises(ValueError):
        make_field(2, 17)  # q > 2^16


def test_irreducibility_helpers():
    assert is_prime(53) and not is_prime(49)
    assert is_irreducible((1, 1, 0, 1), 2)
    assert not is_irreducible((1, 0, 0, 1), 2)  # x^3+1 = (x+1)(x^2+x+1)
    assert default_modulus(19, 2) == (1, 0, 1)  # x^2 + 1


def test_larger_extension_field():
    """Table construction stays exact into the upper supported range."""
    f = make_field(2, 13)
    assert f.q == 8192
    assert len(set(f.exp_table.tolist())) == f.q - 1
    a = f.exp_alpha(5000)
    b = f.exp_alpha(4000)
    assert f.mul(a, b) == f.exp_alpha((5000 + 4000) % (f.q - 1))
    assert f.add(a, a) == 0
