"""Structured LDPC codes from Latin-square permutation matrices.

Construction of parity-check arrays over GF(q), trapping-set-aware
progressive Tanner graph growth, graph analytics, iterative decoders and a
reproducible Monte Carlo simulation harness.
"""

from .galois import NEG_INFINITY, GaloisField, make_field
from .basematrix import (
    UNSET,
    BaseMatrix,
    SparseParityCheck,
    cayley_base_matrix,
    cross_addition_ok,
    cross_multiplication_ok,
    expand,
    subarray,
)
from .gf2 import code_dimension, gf2_rank
from .patterns import TrappingSetPattern, codeword_patterns, generate_patterns

__version__ = "0.1.0"

__all__ = [
    "NEG_INFINITY",
    "GaloisField",
    "make_field",
    "UNSET",
    "BaseMatrix",
    "SparseParityCheck",
    "cayley_base_matrix",
    "cross_addition_ok",
    "cross_multiplication_ok",
    "expand",
    "subarray",
    "gf2_rank",
    "code_dimension",
    "TrappingSetPattern",
    "generate_patterns",
    "codeword_patterns",
    "__version__",
]
