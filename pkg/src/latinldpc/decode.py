"""Iterative decoders: Gallager A/B on hard decisions, log-domain SPA.

All decoders stop early on a zero syndrome (checked before the first
iteration, so an error-free input reports zero iterations used) and report
success exactly when the output word satisfies every parity check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .basematrix import SparseParityCheck

GALLAGER_A = "gallager-a"
GALLAGER_B = "gallager-b"
SPA = "spa"


@dataclass(frozen=True)
class DecoderConfig:
    algorithm: str = SPA
    max_iter: int = 50
    gallager_b_threshold: int | None = None  # default: majority of extrinsic
    spa_clamp: float = 25.0

    def __post_init__(self):
        if self.algorithm not in (GALLAGER_A, GALLAGER_B, SPA):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class DecodeResult:
    word: np.ndarray
    success: bool
    iterations_used: int


class _EdgeLayout:
    """Check-major edge arrays shared by the batch decoders."""

    def __init__(self, h: SparseParityCheck):
        rptr, cols = h.csr_arrays()
        self.cptr = rptr
        self.evar = cols.astype(np.int32)
        self.n = h.n_cols
        self.m = h.n_rows
        E = len(self.evar)
        self.cofe = np.repeat(np.arange(self.m), np.diff(rptr)).astype(np.int32)
        order = np.argsort(self.evar, kind="stable")
        self.veidx = order.astype(np.int32)
        self.vptr = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(self.vptr, self.evar + 1, 1)
        np.cumsum(self.vptr, out=self.vptr)
        self.var_degrees = np.diff(self.vptr)
        self.chk_degrees = np.diff(rptr)


def _layout(h: SparseParityCheck) -> _EdgeLayout:
    lay = getattr(h, "_decoder_layout", None)
    if lay is None:
        lay = _EdgeLayout(h)
        h._decoder_layout = lay
    return lay


def syndrome(h: SparseParityCheck, word) -> np.ndarray:
    lay = _layout(h)
    word = np.asarray(word, dtype=np.uint8)
    bits = word[..., lay.evar].astype(np.int64)
    return _segsum(bits, lay.cptr) & 1


def _segsum(arr, indptr):
    starts = np.minimum(indptr[:-1], max(arr.shape[-1] - 1, 0))
    out = np.add.reduceat(arr, starts, axis=-1)
    empty = indptr[:-1] == indptr[1:]
    if empty.any():
        out[..., empty] = 0
    return out


def gallager_decode_batch(h: SparseParityCheck, ys, cfg: DecoderConfig):
    """Vectorized Gallager A/B over frames of received hard bits.

    Check messages are XORs of the other incoming variable messages; a
    variable message flips the received bit when at least `threshold` of the
    other check messages disagree with it (Gallager A: all of them, i.e.
    threshold d_v - 1; B: a configurable majority).  The running decision is
    the received bit flipped on a majority of disagreeing check messages.
    Returns (words, success, iters).
    """
    lay = _layout(h)
    ys = np.atleast_2d(np.asarray(ys, dtype=np.uint8))
    F, n = ys.shape
    if n != lay.n:
        raise ValueError(f"frame length {n} != code length {lay.n}")
    dv = lay.var_degrees
    if cfg.algorithm == GALLAGER_A:
        thresh = np.maximum(dv - 1, 1)
    else:
        thresh = np.full(n, cfg.gallager_b_threshold or 2, dtype=np.int64)
        thresh = np.minimum(np.maximum(thresh, 1), np.maximum(dv - 1, 1))
    decide_thresh = np.ceil((dv + 1) / 2).astype(np.int64)  # majority incl. channel

    words = ys.copy()
    success = np.zeros(F, dtype=bool)
    iters = np.full(F, cfg.max_iter, dtype=np.int32)
    active = np.arange(F)
    y_act = ys.copy()
    # variable-to-check messages, check-major edge order
    mvc = ys[:, lay.evar].copy()

    for it in range(cfg.max_iter + 1):
        # decisions from check messages of the previous half-iteration are
        # folded in below; at it = 0 the decision is the channel word itself
        if it == 0:
            dec = y_act.copy()
        synd = _segsum(dec[:, lay.evar].astype(np.int64), lay.cptr) & 1
        ok = ~synd.any(axis=1)
        if ok.any():
            idx = active[ok]
            words[idx] = dec[ok]
            success[idx] = True
            iters[idx] = it
            keep = ~ok
            active = active[keep]
            if len(active) == 0:
                return words, success, iters
            y_act = y_act[keep]
            mvc = mvc[keep]
            dec = dec[keep]
        if it == cfg.max_iter:
            words[active] = dec
            break
        # check update: extrinsic XOR
        tot = _segsum(mvc.astype(np.int64), lay.cptr) & 1
        mcv = tot[:, lay.cofe] ^ mvc
        # variable update: count disagreeing extrinsic check messages
        disagree = (mcv != y_act[:, lay.evar]).astype(np.int64)
        tot_dis = _segsum(disagree[:, lay.veidx], lay.vptr)
        dec = y_act ^ (tot_dis >= decide_thresh)
        ext_dis = tot_dis[:, lay.evar] - disagree
        flip = ext_dis >= thresh[lay.evar]
        mvc = (y_act[:, lay.evar] ^ flip).astype(np.uint8)
    return words, success, iters


def gallager_ab_decode(h: SparseParityCheck, y, cfg: DecoderConfig) -> DecodeResult:
    """Decode one hard-decision frame with Gallager A or B."""
    if cfg.algorithm not in (GALLAGER_A, GALLAGER_B):
        raise ValueError("config selects a soft decoder")
    y = np.asarray(y, dtype=np.uint8)
    if y.ndim != 1 or len(y) != h.n_cols:
        raise ValueError("received word has wrong length")
    words, success, iters = gallager_decode_batch(h, y[None, :], cfg)
    return DecodeResult(words[0], bool(success[0]), int(iters[0]))


def spa_decode_batch(h: SparseParityCheck, llrs, cfg: DecoderConfig):
    """Batch sum-product decoding of channel LLR frames (positive = bit 0)."""
    lay = _layout(h)
    llrs = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
    if llrs.shape[1] != lay.n:
        raise ValueError(f"frame length {llrs.shape[1]} != code length {lay.n}")
    if not np.isfinite(llrs).all():
        raise ValueError("LLR input must be finite")
    return kernels.spa_decode_frames(
        lay.cptr, lay.evar, lay.vptr, lay.veidx, lay.cofe,
        llrs, cfg.max_iter, cfg.spa_clamp,
    )


def spa_decode(h: SparseParityCheck, llr, cfg: DecoderConfig) -> DecodeResult:
    """Decode one frame of channel LLRs with the sum-product algorithm."""
    if cfg.algorithm != SPA:
        raise ValueError("config selects a hard-decision decoder")
    llr = np.asarray(llr, dtype=np.float64)
    if llr.ndim != 1 or len(llr) != h.n_cols:
        raise ValueError("LLR vector has wrong length")
    words, success, iters = spa_decode_batch(h, llr[None, :], cfg)
    return DecodeResult(words[0], bool(success[0]), int(iters[0]))
