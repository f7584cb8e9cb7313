"""Seeded Monte Carlo codeword-error-rate simulation over Rayleigh fading.

Randomness contract: trials are processed in fixed-size chunks; chunk c of
SNR point s draws from a Philox stream advanced to a counter that is a
pure function of (seed, s, c). The stopping rule is evaluated on the
cumulative counts in chunk order, so results are bit-identical for any
thread count.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codec import MLDetector
from .constellation import Constellation

CHUNK_TRIALS = 512
_CHUNK_STRIDE = 1 << 40  # Philox 128-bit-block budget per chunk
_SNR_STRIDE = 1 << 64


@dataclass
class SimConfig:
    constellation: Constellation
    n_r: int
    snr_db: list[float]
    seed: int
    name: str = ""
    min_errors: int = 200
    max_trials: int = 10_000_000
    threads: int = 1

    def __post_init__(self):
        if not self.snr_db:
            raise ValueError("snr_db list must be non-empty")
        if self.min_errors < 1:
            raise ValueError("min_errors must be >= 1")
        if not self.name:
            self.name = self.constellation.scheme


@dataclass
class SnrPoint:
    snr_db: float
    trials: int
    errors: int

    @property
    def cer(self) -> float:
        return self.errors / self.trials

    @property
    def ci95(self) -> float:
        """95% half-width, normal approximation."""
        p = self.cer
        return 1.96 * math.sqrt(max(p * (1.0 - p), 0.0) / self.trials)


@dataclass
class SimResult:
    name: str
    seed: int
    points: list[SnrPoint] = field(default_factory=list)


def _chunk_rng(seed: int, snr_index: int, chunk: int) -> np.random.Generator:
    bg = np.random.Philox(key=seed)
    bg.advance(snr_index * _SNR_STRIDE + chunk * _CHUNK_STRIDE)
    return np.random.Generator(bg)


def _run_chunk(cfg: SimConfig, det: MLDetector, points: np.ndarray,
               noise_std: float, snr_index: int, chunk: int) -> tuple[int, int]:
    """Simulate one chunk; returns (trials, errors)."""
    lo = chunk * CHUNK_TRIALS
    hi = min(lo + CHUNK_TRIALS, cfg.max_trials)
    B = hi - lo
    rng = _chunk_rng(cfg.seed, snr_index, chunk)
    msg = rng.integers(0, cfg.constellation.size, size=B)
    hb = rng.standard_normal((B, cfg.n_r, cfg.constellation.n_t, 2))
    wb = rng.standard_normal((B, cfg.n_r, 2))
    H = (hb[..., 0] + 1j * hb[..., 1]) / math.sqrt(2.0)
    w = (wb[..., 0] + 1j * wb[..., 1]) * noise_std
    x = points[msg]
    y = np.einsum("brt,bt->br", H, x) + w

    errors = 0
    for b in range(B):
        if det.detect_index(y[b], H[b]) != msg[b]:
            errors += 1
    return B, errors


def _simulate_point(cfg: SimConfig, det: MLDetector, points: np.ndarray,
                    snr_index: int, snr_db: float) -> SnrPoint:
    power = float(cfg.constellation.power)
    if math.isinf(snr_db):
        noise_std = 0.0
    else:
        noise_std = math.sqrt(power / (10.0 ** (snr_db / 10.0)) / 2.0)

    n_chunks = math.ceil(cfg.max_trials / CHUNK_TRIALS)
    trials = 0
    errors = 0
    done = False
    next_chunk = 0
    workers = max(1, cfg.threads)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while not done and next_chunk < n_chunks:
            wave = list(range(next_chunk, min(next_chunk + workers, n_chunks)))
            results = list(pool.map(
                lambda ch: _run_chunk(cfg, det, points, noise_std, snr_index, ch),
                wave))
            # Accumulate strictly in chunk order; the stopping decision must
            # not depend on how many chunks were computed speculatively.
            for t, e in results:
                trials += t
                errors += e
                if errors >= cfg.min_errors:
                    done = True
                    break
            next_chunk = wave[-1] + 1
    return SnrPoint(snr_db, trials, errors)


def run_cer(cfg: SimConfig) -> SimResult:
    """Full SNR sweep for one scheme; reproducible from (config, seed)."""
    det = MLDetector(cfg.constellation)
    points = cfg.constellation.points_complex()
    res = SimResult(cfg.name, cfg.seed)
    for s, snr_db in enumerate(cfg.snr_db):
        res.points.append(_simulate_point(cfg, det, points, s, snr_db))
    return res


def sweep_compare(configs: list[SimConfig]) -> list[SimResult]:
    """Run several schemes over a shared SNR grid."""
    if not configs:
        raise ValueError("need at least one config")
    grid = configs[0].snr_db
    for cfg in configs[1:]:
        if cfg.snr_db != grid:
            raise ValueError("all configs must share the same snr grid")
    return [run_cer(cfg) for cfg in configs]


def results_to_csv(results: list[SimResult]) -> str:
    """CSV with one row per (scheme, snr point); byte-stable."""
    buf = io.StringIO()
    buf.write("scheme,snr_db,trials,errors,cer,ci95,seed\n")
    for r in results:
        for p in r.points:
            buf.write(f"{r.name},{p.snr_db:g},{p.trials},{p.errors},"
                      f"{p.cer:.8e},{p.ci95:.8e},{r.seed}\n")
    return buf.getvalue()


def theoretical_gain_gap_db(c1: Constellation, c2: Constellation) -> float:
    """10 log10 of the nominal coding gain ratio of c1 over c2."""
    return 10.0 * math.log10(float(c1.coding_gain() / c2.coding_gain()))


def snr_at_cer(result: SimResult, target: float) -> float:
    """SNR (dB) where the measured curve crosses the target CER, by linear
    interpolation of log10(CER) vs SNR. Requires a bracketing pair."""
    pts = [p for p in result.points if p.errors > 0]
    for a, b in zip(pts, pts[1:]):
        if a.cer >= target >= b.cer:
            if a.cer == b.cer:
                return a.snr_db
            la, lb, lt = math.log10(a.cer), math.log10(b.cer), math.log10(target)
            return a.snr_db + (b.snr_db - a.snr_db) * (lt - la) / (lb - la)
    raise ValueError(f"CER {target} not bracketed by the sweep")
