"""alist and base-matrix CSV round trips plus malformed-input reporting."""

import numpy as np
import pytest

from latinldpc import BaseMatrix, cayley_base_matrix, expand, make_field, subarray
from latinldpc.alist import (
    AlistFormatError,
    read_alist,
    read_base_matrix_csv,
    write_alist,
    write_base_matrix_csv,
)


def test_alist_roundtrip(tmp_path, gf13):
    h = expand(subarray(cayley_base_matrix(gf13), [0, 1, 2], range(6)))
    path = tmp_path / "code.alist"
    write_alist(h, path)
    back = read_alist(path)
    assert back.n_rows == h.n_rows and back.n_cols == h.n_cols
    assert (back.to_dense() == h.to_dense()).all()
    # writing the parsed matrix again gives identical bytes
    path2 = tmp_path / "code2.alist"
    write_alist(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_alist_zero_padding(tmp_path, gf4):
    # irregular matrix: column weights 1 and 2 force padding
    from latinldpc.basematrix import SparseParityCheck

    h = SparseParityCheck(3, 3, rows=[0, 1, 2, 0], cols=[0, 0, 1, 2])
    path = tmp_path / "irr.alist"
    write_alist(h, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "3 3"
    assert lines[1] == "2 2"
    back = read_alist(path)
    assert (back.to_dense() == h.to_dense()).all()


def test_alist_truncated_names_line(tmp_path, gf4):
    h = expand(cayley_base_matrix(gf4))
    path = tmp_path / "x.alist"
    write_alist(h, path)
    lines = path.read_text().splitlines()
    (tmp_path / "trunc.alist").write_text("\n".join(lines[:6]) + "\n")
    with pytest.raises(AlistFormatError, match="line"):
        read_alist(tmp_path / "trunc.alist")


def test_alist_bad_token(tmp_path):
    (tmp_path / "bad.alist").write_text("4 x\n2 2\n")
    with pytest.raises(AlistFormatError, match="line 1"):
        read_alist(tmp_path / "bad.alist")


def test_alist_weight_mismatch(tmp_path):
    text = "2 2\n1 1\n1 1\n1 1\n1 0\n2 0\n1 0\n2 0\n"
    # column 1 declares weight 1 but the padded line lists 2 entries -> fine;
    # corrupt a neighbor entry out of range instead
    bad = text.replace("1 0\n2 0\n1 0\n2 0\n", "3 0\n2 0\n1 0\n2 0\n")
    (tmp_path / "w.alist").write_text(bad)
    with pytest.raises(AlistFormatError):
        read_alist(tmp_path / "w.alist")


def test_base_matrix_csv_roundtrip(tmp_path, gf8):
    w = subarray(cayley_base_matrix(gf8), [0, 1, 2], range(5))
    path = tmp_path / "w.csv"
    write_base_matrix_csv(w, path)
    text = path.read_text()
    assert "inf-neg" in text  # zero entries use the token
    back = read_base_matrix_csv(gf8, path)
    assert back == w


def test_base_matrix_csv_unset(tmp_path, gf8):
    w = BaseMatrix.unset(gf8, 2, 2)
    w.entries[0, 0] = gf8.alpha
    path = tmp_path / "w.csv"
    write_base_matrix_csv(w, path)
    back = read_base_matrix_csv(gf8, path)
    assert back == w


def test_base_matrix_csv_bad_token(tmp_path, gf8):
    (tmp_path / "w.csv").write_text("0,zzz\n")
    with pytest.raises(ValueError, match="line 1"):
        read_base_matrix_csv(gf8, tmp_path / "w.csv")
