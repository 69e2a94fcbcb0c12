"""Decoders: fixed points, error correction, reference-implementation oracle."""

import numpy as np
import pytest

from latinldpc import cayley_base_matrix, expand, generate_patterns, make_field, subarray
from latinldpc.decode import (
    GALLAGER_A,
    GALLAGER_B,
    SPA,
    DecoderConfig,
    DecodeResult,
    gallager_ab_decode,
    gallager_decode_batch,
    spa_decode,
    spa_decode_batch,
    syndrome,
)


@pytest.fixture(scope="module")
def code13():
    f = make_field(13, 1)
    return expand(subarray(cayley_base_matrix(f), [0, 1, 2], range(8)))


# -- reference SPA: an independent, dictionary-based implementation -----------


def reference_spa(h, llr, max_iter=50, clamp=25.0):
    dense = h.to_dense()
    m, n = dense.shape
    chk_of = [list(np.nonzero(dense[:, v])[0]) for v in range(n)]
    var_of = [list(np.nonzero(dense[c])[0]) for c in range(m)]
    mcv = {(c, v): 0.0 for c in range(m) for v in var_of[c]}
    for it in range(max_iter + 1):
        total = [llr[v] + sum(mcv[(c, v)] for c in chk_of[v]) for v in range(n)]
        hard = [1 if t < 0 else 0 for t in total]
        if all(sum(hard[v] for v in var_of[c]) % 2 == 0 for c in range(m)):
            return hard, True, it
        if it == max_iter:
            return hard, False, max_iter
        mvc = {}
        for v in range(n):
            for c in chk_of[v]:
                mvc[(v, c)] = float(np.clip(total[v] - mcv[(c, v)], -clamp, clamp))
        for c in range(m):
            for v in var_of[c]:
                prod = 1.0
                for v2 in var_of[c]:
                    if v2 != v:
                        prod *= np.tanh(
                            np.clip(mvc[(v2, c)], -clamp, clamp) / 2.0
                        )
                prod = float(np.clip(prod, -1 + 1e-14, 1 - 1e-14))
                mcv[(c, v)] = float(np.clip(2.0 * np.arctanh(prod), -clamp, clamp))
    return hard, False, max_iter


def test_codeword_fixed_point(code13):
    n = code13.n_cols
    cfg = DecoderConfig(algorithm=GALLAGER_A, max_iter=20)
    res = gallager_ab_decode(code13, np.zeros(n, dtype=np.uint8), cfg)
    assert res.success and res.iterations_used == 0
    assert not res.word.any()


def test_gallager_corrects_single_errors(code13):
    n = code13.n_cols
    cfg = DecoderConfig(algorithm=GALLAGER_A, max_iter=20)
    ys = np.eye(n, dtype=np.uint8)
    words, success, iters = gallager_decode_batch(code13, ys, cfg)
    assert success.all()
    assert not words.any()
    assert (iters >= 1).all()


def test_gallager_b_threshold(code13):
    n = code13.n_cols
    cfg = DecoderConfig(algorithm=GALLAGER_B, max_iter=20, gallager_b_threshold=2)
    words, success, _ = gallager_decode_batch(code13, np.eye(n, dtype=np.uint8), cfg)
    assert success.all() and not words.any()


def test_gallager_fails_on_trapping_set_support():
    """Some 3-error pattern on a (5,3) trapping set support defeats
    Gallager A: failure shows max iterations and a nonzero syndrome."""
    import itertools

    from latinldpc.graph import TannerGraph, find_pattern

    f = make_field(7, 1)
    h = expand(subarray(cayley_base_matrix(f), [0, 1, 2], range(7)))
    pat = generate_patterns(5, 3, 8)[0]
    support = find_pattern(TannerGraph.from_parity(h), pat)
    assert support is not None
    cfg = DecoderConfig(algorithm=GALLAGER_A, max_iter=30)
    stuck = 0
    for combo in itertools.combinations(support, 3):
        y = np.zeros(h.n_cols, dtype=np.uint8)
        y[list(combo)] = 1
        res = gallager_ab_decode(h, y, cfg)
        if not res.success:
            assert res.iterations_used == 30
            assert syndrome(h, res.word).any()
            stuck += 1
    assert stuck > 0


def test_spa_trivial_and_strong(code13):
    n = code13.n_cols
    cfg = DecoderConfig(algorithm=SPA, max_iter=50)
    res = spa_decode(code13, np.full(n, 15.0), cfg)
    assert res.success and res.iterations_used == 0
    # strong wrong sign on one position: corrected
    llr = np.full(n, 8.0)
    llr[3] = -8.0
    res = spa_decode(code13, llr, cfg)
    assert res.success and not res.word.any()


def test_spa_matches_reference_on_random_frames(code13, rng):
    n = code13.n_cols
    cfg = DecoderConfig(algorithm=SPA, max_iter=30)
    sigma = 0.9
    agree = 0
    for _ in range(100):
        word = np.zeros(n)
        y = 1.0 - 2.0 * word + sigma * rng.standard_normal(n)
        llr = 2.0 * y / sigma**2
        mine = spa_decode(code13, llr, cfg)
        ref_word, ref_ok, ref_it = reference_spa(code13, llr.tolist(), max_iter=30)
        assert mine.success == ref_ok
        if mine.success:
            assert mine.word.tolist() == ref_word
            assert mine.iterations_used == ref_it
        agree += 1
    assert agree == 100


def test_spa_sign_symmetry(code13, rng):
    """Negating all LLRs flips all hard decisions (tanh rule is odd)."""
    n = code13.n_cols
    cfg = DecoderConfig(algorithm=SPA, max_iter=10)
    llr = rng.standard_normal(n) * 3.0
    w1, s1, i1 = spa_decode_batch(code13, llr[None, :], cfg)
    w2, s2, i2 = spa_decode_batch(code13, -llr[None, :], cfg)
    assert (w1[0] ^ w2[0]).all()  # every decision flipped


def test_decoder_permutation_invariance(code13, rng):
    """Permuting H columns together with the input permutes the output."""
    from latinldpc.basematrix import SparseParityCheck

    n = code13.n_cols
    perm = rng.permutation(n)
    dense = code13.to_dense()[:, perm]
    rows, cols = np.nonzero(dense)
    hp = SparseParityCheck(code13.n_rows, n, rows, cols)
    cfg = DecoderConfig(algorithm=SPA, max_iter=30)
    llr = rng.standard_normal(n) * 2.0
    r1 = spa_decode(code13, llr, cfg)
    r2 = spa_decode(hp, llr[perm], cfg)
    assert r1.success == r2.success
    assert (r2.word == r1.word[perm]).all()


def test_success_iff_zero_syndrome(code13, rng):
    cfg = DecoderConfig(algorithm=SPA, max_iter=5)
    n = code13.n_cols
    for _ in range(30):
        llr = rng.standard_normal(n) * 1.2
        res = spa_decode(code13, llr, cfg)
        assert res.success == (not syndrome(code13, res.word).any())


def test_input_validation(code13):
    cfg = DecoderConfig(algorithm=SPA)
    with pytest.raises(ValueError):
        spa_decode(code13, np.zeros(3), cfg)
    with pytest.raises(ValueError):
        spa_decode(code13, np.full(code13.n_cols, np.inf), cfg)
    with pytest.raises(ValueError):
        gallager_ab_decode(code13, np.zeros(3, dtype=np.uint8), DecoderConfig(algorithm=GALLAGER_A))
    with pytest.raises(ValueError):
        DecoderConfig(algorithm="bogus")
    with pytest.raises(ValueError):
        DecoderConfig(max_iter=0)
    with pytest.raises(ValueError):
        spa_decode(code13, np.zeros(code13.n_cols), DecoderConfig(algorithm=GALLAGER_A))
