"""Trapping-set template generation: counts, invariants, catalog files."""

import pytest

from latinldpc import TrappingSetPattern, codeword_patterns, generate_patterns
from latinldpc.patterns import (
    _collapsed_girth,
    _is_connected,
    read_pattern_catalog,
    write_pattern_catalog,
)


def test_codeword_counts_match_catalog():
    assert len(generate_patterns(6, 0, 6)) == 2  # weight-6 codewords
    assert len(generate_patterns(8, 0, 6)) == 5  # weight-8 codewords
    assert len(generate_patterns(4, 0, 6)) == 1  # K4


def test_five_three_girth8_unique():
    pats = generate_patterns(5, 3, 8)
    assert len(pats) == 1
    pat = pats[0]
    # collapsed graph is the complete bipartite K_{2,3}
    assert sorted(pat.degrees()) == [2, 2, 2, 3, 3]
    assert pat.girth_tanner == 8
    assert len(pat.edges) == 6


def test_five_three_girth6_superset():
    pats6 = generate_patterns(5, 3, 6)
    pats8 = generate_patterns(5, 3, 8)
    # the girth >= 6 catalog covers both Fig-style structures: its girth-6
    # classes plus the single girth-8 class
    assert set(pats8) <= set(pats6)
    assert any(p.girth_tanner == 6 for p in pats6)


def test_pattern_invariants():
    for (a, b, g) in [(5, 3, 6), (6, 0, 6), (8, 0, 6), (6, 4, 6), (6, 4, 8), (7, 3, 6)]:
        for pat in generate_patterns(a, b, g):
            assert pat.a == a and pat.b == b
            assert len(pat.edges) == (3 * a - b) // 2
            degs = pat.degrees()
            assert all(1 <= d <= 3 for d in degs)
            assert sum(pat.pendants()) == b
            assert _is_connected(a, pat.edges)
            assert 2 * _collapsed_girth(a, pat.edges) == pat.girth_tanner
            assert pat.girth_tanner >= g


def test_infeasible_parameters_empty():
    assert generate_patterns(3, 1, 6) == ()  # odd 3a - b
    assert generate_patterns(4, 12, 6) == ()  # no edges, cannot connect
    assert generate_patterns(2, 0, 6) == ()  # needs 3 edges on 2 vertices


def test_counts_stable_across_runs():
    a = generate_patterns(6, 4, 6)
    b = generate_patterns(6, 4, 6)
    assert a == b
    assert [p.edges for p in a] == sorted([p.edges for p in a], key=lambda e: e)


def test_girth_filter_monotone():
    g6 = generate_patterns(6, 4, 6)
    g8 = generate_patterns(6, 4, 8)
    assert set(g8) <= set(g6)
    assert all(p.girth_tanner >= 8 for p in g8)


def test_codeword_patterns_helper():
    pats = codeword_patterns(8)
    assert len(pats) == 1 + 2 + 5
    assert all(p.b == 0 for p in pats)


def test_validation_errors():
    with pytest.raises(ValueError):
        TrappingSetPattern(5, 3, ((0, 1),), 6)  # wrong edge count
    with pytest.raises(ValueError):
        TrappingSetPattern(4, 0, ((0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3)), 6)
    with pytest.raises(ValueError):
        generate_patterns(9, 0, 6)  # above supported size
    with pytest.raises(ValueError):
        generate_patterns(5, 3, 7)  # odd girth


def test_catalog_roundtrip(tmp_path):
    pats = generate_patterns(5, 3, 6) + generate_patterns(6, 0, 6)
    path = tmp_path / "catalog.txt"
    write_pattern_catalog(pats, path)
    back = read_pattern_catalog(path)
    assert back == tuple(pats)
    text = path.read_text()
    assert text.startswith("catalog 5")
    assert "pendants" in text
