"""Bit/index mapping to transmit vectors and maximum-likelihood detection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .constellation import Constellation


@dataclass(frozen=True)
class MessageIndex:
    """Index-tuple form of one message.

    symbol_indices[l] < M_l for each active slot l; activation_index < L;
    translation_bits are the n_a - 1 free parity-code bits (None for
    schemes without translation patterns).
    """

    symbol_indices: tuple[int, ...]
    activation_index: int
    translation_bits: tuple[int, ...] | None = None


def _check_range(msg: MessageIndex, c: Constellation) -> None:
    if len(msg.symbol_indices) != c.n_a:
        raise ValueError("wrong number of symbol indices")
    for l, s in enumerate(msg.symbol_indices):
        if not (0 <= s < c.slot_alphabets[l].M):
            raise ValueError(f"symbol index {s} out of range for slot {l}")
    if not (0 <= msg.activation_index < c.L):
        raise ValueError("activation index out of range")
    if c.translations is None:
        if msg.translation_bits is not None:
            raise ValueError("scheme has no translation patterns")
    else:
        bits = msg.translation_bits
        if bits is None or len(bits) != c.n_a - 1:
            raise ValueError(f"need {c.n_a - 1} translation bits")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("translation bits must be 0/1")


def _translation_index(c: Constellation, bits: tuple[int, ...]) -> int:
    """Map free bits b_1..b_{n_a-1} to the parity-completed vector's index."""
    parity = reduce(lambda x, y: x ^ y, bits, 0)
    mask = sum(b << l for l, b in enumerate(bits)) | (parity << (c.n_a - 1))
    return c.translations.index_of_mask(mask)


def _translation_bits(c: Constellation, t_idx: int) -> tuple[int, ...]:
    mask = c.translations.masks[t_idx]
    return tuple((mask >> l) & 1 for l in range(c.n_a - 1))


def point_index(msg: MessageIndex, c: Constellation) -> int:
    """Constellation point index under the documented enumeration order."""
    _check_range(msg, c)
    n_sym = math.prod(a.M for a in c.slot_alphabets)
    t_idx = 0
    n_trans = 1
    if c.translations is not None:
        t_idx = _translation_index(c, msg.translation_bits)
        n_trans = c.translations.size
    sym_flat = 0
    for l, s in enumerate(msg.symbol_indices):
        sym_flat = sym_flat * c.slot_alphabets[l].M + s
    return (msg.activation_index * n_trans + t_idx) * n_sym + sym_flat


def message_of(index: int, c: Constellation) -> MessageIndex:
    """Inverse of point_index."""
    if not (0 <= index < c.size):
        raise ValueError("point index out of range")
    syms = tuple(int(s) for s in c.sym_idx[index])
    a_i = int(c.act_idx[index])
    bits = None
    if c.translations is not None:
        bits = _translation_bits(c, int(c.trans_idx[index]))
    return MessageIndex(syms, a_i, bits)


def encode_index(msg: MessageIndex, c: Constellation) -> np.ndarray:
    """Transmit vector (complex, length n_t) for an index-tuple message."""
    return c.points_complex()[point_index(msg, c)]


def bits_per_message(c: Constellation) -> int:
    eta = c.spectral_efficiency()
    n = round(eta)
    if abs(eta - n) > 1e-9:
        raise ValueError("constellation size is not a power of two; "
                         "use index-based encoding")
    return n


def encode_bits(bits, c: Constellation) -> np.ndarray:
    """Bit-sequence encoder for power-of-two M and L.

    Block order: per-slot symbol bits (slot 0 first, MSB first), then the
    activation-pattern bits, then the n_a - 1 translation bits. The
    translation vector is the parity completion of its bit block.
    """
    bits = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0/1")
    if len(bits) != bits_per_message(c):
        raise ValueError(f"expected {bits_per_message(c)} bits, got {len(bits)}")

    def take(n):
        nonlocal bits
        head, bits = bits[:n], bits[n:]
        return head

    def to_int(bs):
        v = 0
        for b in bs:
            v = (v << 1) | b
        return v

    syms = []
    for a in c.slot_alphabets:
        k = a.M.bit_length() - 1
        if a.M != 1 << k:
            raise ValueError("alphabet size is not a power of two")
        syms.append(to_int(take(k)))
    kL = c.L.bit_length() - 1
    if c.L != 1 << kL:
        raise ValueError("L is not a power of two")
    act = to_int(take(kL))
    tbits = take(c.n_a - 1) if c.translations is not None else None
    msg = MessageIndex(tuple(syms), act, tbits)
    return encode_index(msg, c)


def decode_bits(msg: MessageIndex, c: Constellation) -> tuple[int, ...]:
    """Inverse of the encode_bits block layout."""
    _check_range(msg, c)
    out = []

    def emit(v, n):
        out.extend((v >> (n - 1 - i)) & 1 for i in range(n))

    for a, s in zip(c.slot_alphabets, msg.symbol_indices):
        emit(s, a.M.bit_length() - 1)
    emit(msg.activation_index, c.L.bit_length() - 1)
    if c.translations is not None:
        out.extend(msg.translation_bits)
    return tuple(out)


class MLDetector:
    """Exhaustive ML detector that only touches the active columns of H.

    Candidate active values are grouped by activation pattern, so each
    pattern costs one (K_A, n_a) x (n_a, n_r) product plus residual norms.
    Per-constellation precomputation is H-independent.
    """

    def __init__(self, c: Constellation):
        self.c = c
        pts = c.points_complex()
        self._groups = []
        offset = 0
        n_trans = c.translations.size if c.translations is not None else 1
        n_sym = math.prod(a.M for a in c.slot_alphabets)
        block = n_trans * n_sym
        for a_i, pat in enumerate(c.activation.patterns):
            rows = pts[offset:offset + block][:, list(pat.indices)]
            self._groups.append((offset, list(pat.indices), np.ascontiguousarray(rows)))
            offset += block

    def detect_index(self, y: np.ndarray, H: np.ndarray) -> int:
        """Index of the residual-norm minimizer; ties go to the lowest index."""
        y = np.asarray(y)
        H = np.asarray(H)
        if H.shape != (y.shape[0], self.c.n_t):
            raise ValueError("channel matrix shape mismatch")
        best_idx = -1
        best_val = np.inf
        for offset, cols, Z in self._groups:
            HA = H[:, cols]                      # (n_r, n_a)
            r = y[None, :] - Z @ HA.T            # (K_A, n_r)
            vals = np.einsum("kr,kr->k", r.real, r.real) \
                 + np.einsum("kr,kr->k", r.imag, r.imag)
            k = int(np.argmin(vals))
            if vals[k] < best_val:
                best_val = float(vals[k])
                best_idx = offset + k
        return best_idx

    def detect(self, y: np.ndarray, H: np.ndarray) -> MessageIndex:
        return message_of(self.detect_index(y, H), self.c)


def detect_ml(y: np.ndarray, H: np.ndarray, c: Constellation) -> MessageIndex:
    """One-shot ML detection (builds a detector; use MLDetector for batches)."""
    return MLDetector(c).detect(y, H)


def detect_ml_dense_index(y: np.ndarray, H: np.ndarray, c: Constellation,
                          points: np.ndarray | None = None) -> int:
    """Brute-force oracle: full-matrix H @ x for every candidate."""
    if points is None:
        points = c.points_complex()
    r = y[None, :] - points @ H.T
    vals = np.einsum("kr,kr->k", r.real, r.real) + np.einsum("kr,kr->k", r.imag, r.imag)
    return int(np.argmin(vals))


def pairwise_error_bound(x: np.ndarray, xp: np.ndarray, snr: float,
                         power: float, n_r: int) -> float:
    """Union-bound term (4 P / (SNR * ||x - x'||^2))^n_r for Rayleigh fading."""
    d2 = float(np.sum(np.abs(np.asarray(x) - np.asarray(xp)) ** 2))
    if d2 == 0.0:
        raise ValueError("vectors must differ")
    if snr <= 0:
        raise ValueError("snr must be positive")
    return (4.0 * float(power) / (snr * d2)) ** n_r
