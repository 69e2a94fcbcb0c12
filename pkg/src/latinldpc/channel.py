"""Channel models and the reproducible Monte Carlo FER/BER harness.

Simulation transmits the all-zero codeword (valid for linear codes on the
symmetric channels used here), draws per-batch noise from counter-based
Philox streams keyed by (seed, point index, batch index), and accumulates
integer error counts in batch-index order.  Results are therefore
bit-identical for a given seed regardless of how many workers ran the
batches or where the stop rule truncated them.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .basematrix import SparseParityCheck
from .decode import (
    GALLAGER_A,
    GALLAGER_B,
    SPA,
    DecoderConfig,
    gallager_decode_batch,
    spa_decode_batch,
)

BSC = "bsc"
AWGN = "awgn"


@dataclass(frozen=True)
class ChannelPoint:
    """One operating point: BSC(crossover) or AWGN(Eb/N0 dB at a code rate).

    AWGN uses BPSK mapping 0 -> +1, 1 -> -1 with noise variance
    sigma^2 = 1 / (2 * rate * Eb/N0_linear) and emits LLRs 2*y/sigma^2.
    """

    channel: str
    param: float
    rate: float | None = None

    def __post_init__(self):
        if self.channel == BSC:
            if not (0.0 <= self.param < 0.5):
                raise ValueError("BSC crossover must lie in [0, 0.5)")
        elif self.channel == AWGN:
            if self.rate is None or not (0.0 < self.rate < 1.0):
                raise ValueError("AWGN point needs a code rate in (0, 1)")
        else:
            raise ValueError(f"unknown channel {self.channel!r}")

    def noise_sigma(self) -> float:
        if self.channel != AWGN:
            raise ValueError("sigma is defined for AWGN only")
        ebn0 = 10.0 ** (self.param / 10.0)
        return math.sqrt(1.0 / (2.0 * self.rate * ebn0))

    def label(self) -> str:
        if self.channel == BSC:
            return f"bsc(alpha={self.param:g})"
        return f"awgn(ebn0={self.param:g}dB,R={self.rate:g})"


def transmit(word, point: ChannelPoint, rng: np.random.Generator):
    """Send one word (or a batch) through the channel.

    BSC returns hard bits; AWGN returns channel LLRs (positive favors 0).
    """
    word = np.asarray(word, dtype=np.uint8)
    if point.channel == BSC:
        flips = rng.random(word.shape) < point.param
        return word ^ flips.astype(np.uint8)
    sigma = point.noise_sigma()
    symbols = 1.0 - 2.0 * word.astype(np.float64)
    y = symbols + sigma * rng.standard_normal(word.shape)
    return 2.0 * y / (sigma * sigma)


@dataclass(frozen=True)
class StopRule:
    min_frame_errors: int = 100
    max_frames: int = 10_000_000


#: quick desk-scale preset for interactive runs
DESK_SCALE_STOP = StopRule(min_frame_errors=30, max_frames=100_000)


@dataclass
class SimResult:
    point: ChannelPoint
    frames: int
    frame_errors: int
    bit_errors: int
    seed: int
    wall_time: float
    _n: int = 0  # code length, for BER

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else math.nan

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self._n) if self.frames else math.nan

    def fer_interval(self, z: float = 1.96):
        return wilson_interval(self.frame_errors, self.frames, z)


def wilson_interval(k: int, n: int, z: float = 1.96):
    """Wilson score interval for a binomial proportion."""
    if n == 0:
        return (math.nan, math.nan)
    phat = k / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


def _frame_rng(seed: int, point_idx: int, batch_idx: int) -> np.random.Generator:
    """Counter-based stream: independent of execution order and workers."""
    return np.random.Generator(
        np.random.Philox(key=seed, counter=[0, 0, point_idx, batch_idx])
    )


def _decode_batch(h, cfg: DecoderConfig, point: ChannelPoint, rng, batch: int, n: int):
    zero = np.zeros((batch, n), dtype=np.uint8)
    received = transmit(zero, point, rng)
    if point.channel == BSC:
        if cfg.algorithm == SPA:
            raise ValueError("SPA needs soft input; use an AWGN point")
        words, success, _ = gallager_decode_batch(h, received, cfg)
    else:
        if cfg.algorithm != SPA:
            # hard-decision decoding of the AWGN channel output
            words, success, _ = gallager_decode_batch(
                h, (received < 0).astype(np.uint8), cfg
            )
        else:
            words, success, _ = spa_decode_batch(h, received, cfg)
    wrong = words.any(axis=1) | ~success
    frame_errors = int(wrong.sum())
    bit_errors = int(words[wrong].sum())
    return frame_errors, bit_errors


def run_montecarlo(
    h: SparseParityCheck,
    cfg: DecoderConfig,
    points,
    stop: StopRule,
    seed: int,
    batch_size: int = 2048,
    workers: int = 1,
) -> list[SimResult]:
    """Monte Carlo FER/BER over the given channel points.

    Per point, frames run in batches until the stop rule fires; batch noise
    streams are keyed by (seed, point, batch), and counts are accumulated in
    batch order, truncating speculative batches beyond the stopping one, so
    the result is deterministic for any worker count.
    """
    n = h.n_cols
    results = []
    for p_idx, point in enumerate(points):
        t0 = time.monotonic()
        frames = frame_errors = bit_errors = 0
        batch_idx = 0
        done = stop.max_frames == 0
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            while not done:
                wave = []
                for _ in range(max(1, workers)):
                    if batch_idx * batch_size >= stop.max_frames:
                        break
                    b = min(batch_size, stop.max_frames - batch_idx * batch_size)
                    rng = _frame_rng(seed, p_idx, batch_idx)
                    wave.append(
                        pool.submit(_decode_batch, h, cfg, point, rng, b, n)
                    )
                    batch_idx += 1
                if not wave:
                    break
                for fut in wave:  # batch-index order, regardless of finish order
                    fe, be = fut.result()
                    b = min(batch_size, stop.max_frames - frames)
                    frames += b
                    frame_errors += fe
                    bit_errors += be
                    if frame_errors >= stop.min_frame_errors or frames >= stop.max_frames:
                        done = True
                        break
        res = SimResult(point, frames, frame_errors, bit_errors, seed, time.monotonic() - t0)
        res._n = n
        results.append(res)
    return results


CSV_HEADER = [
    "channel", "param", "rate", "frames", "frame_errors", "bit_errors",
    "fer", "ber", "fer_ci_low", "fer_ci_high",
]


def write_results_csv(results, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in results:
            lo, hi = r.fer_interval()
            writer.writerow([
                r.point.channel,
                repr(r.point.param),
                "" if r.point.rate is None else repr(r.point.rate),
                r.frames,
                r.frame_errors,
                r.bit_errors,
                repr(r.fer),
                repr(r.ber),
                repr(lo),
                repr(hi),
            ])


def write_gnuplot_data(results, path) -> None:
    """Whitespace-column data file: param fer ber ci_low ci_high."""
    with open(path, "w") as fh:
        fh.write("# param fer ber fer_ci_low fer_ci_high\n")
        for r in results:
            lo, hi = r.fer_interval()
            fh.write(f"{r.point.param:g} {r.fer:.6e} {r.ber:.6e} {lo:.6e} {hi:.6e}\n")


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(path, config: dict, seed: int, input_hashes: dict) -> None:
    """Reproducibility manifest: config echo, seed, input digests.

    Deliberately contains no timestamps so reruns are byte-identical.
    """
    from . import __version__

    payload = {
        "config": config,
        "seed": seed,
        "inputs_sha256": input_hashes,
        "package_version": __version__,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
