"""Transmit-vector constellations and their exact geometric metrics.

Builders enumerate every transmit vector on doubled integer coordinates,
so power and minimum squared distance are exact rationals. Supported
schemes: the translation-pattern construction ("ct"), generalized spatial
modulation with per-position alphabets ("gsm"), and spatial multiplexing
("smx", the n_a = n_t, L = 1 special case of gsm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .alphabets import ALPHA, Alphabet, HalfComplex

#: Refuse enumerations above this many points unless overridden.
DEFAULT_CAP = 2 ** 22


@dataclass(frozen=True)
class ActivationPattern:
    """Strictly increasing 0-based antenna indices carrying nonzero signal."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("indices must be strictly increasing")

    @property
    def n_a(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class ActivationSet:
    patterns: tuple[ActivationPattern, ...]

    def __post_init__(self):
        if len(self.patterns) == 0:
            raise ValueError("need at least one activation pattern")
        if len(set(self.patterns)) != len(self.patterns):
            raise ValueError("activation patterns must be distinct")

    @property
    def L(self) -> int:
        return len(self.patterns)


@dataclass(frozen=True)
class TranslationSet:
    """All even-weight {0, alpha} vectors of length n_a.

    Vectors are stored as bitmasks in ascending order; bit l set means
    component l equals alpha. Same structure as the single-parity check
    code with 1 replaced by alpha.
    """

    n_a: int
    masks: tuple[int, ...]

    def vector(self, idx: int) -> tuple[HalfComplex, ...]:
        m = self.masks[idx]
        return tuple(ALPHA if (m >> l) & 1 else HalfComplex(0, 0)
                     for l in range(self.n_a))

    def index_of_mask(self, mask: int) -> int:
        return self.masks.index(mask)

    @property
    def size(self) -> int:
        return len(self.masks)


def translation_set(n_a: int) -> TranslationSet:
    if n_a < 2:
        raise ValueError("n_a must be >= 2")
    masks = tuple(m for m in range(2 ** n_a) if bin(m).count("1") % 2 == 0)
    return TranslationSet(n_a, masks)


def default_L(n_t: int, n_a: int) -> int:
    """Largest power of 2 not exceeding C(n_t, n_a)."""
    return 2 ** int(math.log2(math.comb(n_t, n_a)))


def default_activation_set(n_t: int, n_a: int, L: int | None = None) -> ActivationSet:
    """The lexicographically first L n_a-subsets of the n_t antennas."""
    if not (2 <= n_a <= n_t):
        raise ValueError("need 2 <= n_a <= n_t")
    if L is None:
        L = default_L(n_t, n_a)
    if not (1 <= L <= math.comb(n_t, n_a)):
        raise ValueError(f"L={L} out of range [1, C({n_t},{n_a})]")
    pats = []
    for combo in combinations(range(n_t), n_a):
        pats.append(ActivationPattern(combo))
        if len(pats) == L:
            break
    return ActivationSet(tuple(pats))


def psi_a(zt: tuple[HalfComplex, ...], pattern: ActivationPattern,
          n_t: int) -> tuple[HalfComplex, ...]:
    """Embed the n_a active values at the pattern's antenna positions."""
    if len(zt) != pattern.n_a:
        raise ValueError("value count does not match pattern size")
    if pattern.indices and pattern.indices[-1] >= n_t:
        raise ValueError("pattern index out of range")
    out = [HalfComplex(0, 0)] * n_t
    for l, j in enumerate(pattern.indices):
        out[j] = zt[l]
    return tuple(out)


@dataclass
class Constellation:
    """Fully enumerated constellation with exact metrics.

    coords2 holds doubled integer coordinates, shape (K, n_t, 2).
    Point ordering: activation index outer, translation index middle,
    symbol tuple inner (slot 0 most significant).
    """

    scheme: str
    n_t: int
    n_a: int
    activation: ActivationSet
    translations: TranslationSet | None
    slot_alphabets: tuple[Alphabet, ...]
    coords2: np.ndarray
    act_idx: np.ndarray
    trans_idx: np.ndarray  # -1 for baselines without translation patterns
    sym_idx: np.ndarray    # shape (K, n_a)
    power: Fraction
    label: str = ""
    _dmin2: Fraction | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.coords2.shape[0]

    @property
    def L(self) -> int:
        return self.activation.L

    @property
    def dmin2(self) -> Fraction:
        if self._dmin2 is None:
            self._dmin2 = min_distance_sq(self)
        return self._dmin2

    def points_complex(self) -> np.ndarray:
        """Float view of the points, shape (K, n_t) complex128."""
        return (self.coords2[..., 0] + 1j * self.coords2[..., 1]) / 2.0

    def spectral_efficiency(self) -> float:
        return math.log2(self.size)

    def coding_gain(self) -> Fraction:
        return coding_gain(self)


def _sym_grid(sizes: list[int]) -> np.ndarray:
    """All index tuples over the given radices, slot 0 most significant."""
    grids = np.meshgrid(*[np.arange(s) for s in sizes], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _enumerate(scheme: str, slot_alphabets: tuple[Alphabet, ...],
               activation: ActivationSet, n_t: int,
               tset: TranslationSet | None, cap: int, label: str) -> Constellation:
    n_a = activation.patterns[0].n_a
    if any(p.n_a != n_a for p in activation.patterns):
        raise ValueError("all activation patterns must have the same size")
    if any(p.indices[-1] >= n_t for p in activation.patterns):
        raise ValueError("activation pattern index out of range")
    if len(slot_alphabets) != n_a:
        raise ValueError("need one alphabet per active slot")

    sizes = [a.M for a in slot_alphabets]
    n_sym = math.prod(sizes)
    n_trans = tset.size if tset is not None else 1
    K = n_sym * activation.L * n_trans
    if K > cap:
        raise ValueError(f"constellation has {K} points, above cap {cap}")

    grid = _sym_grid(sizes)  # (n_sym, n_a)
    base = [np.array([[p.re2, p.im2] for p in a.points], dtype=np.int64)
            for a in slot_alphabets]

    coords2 = np.zeros((K, n_t, 2), dtype=np.int64)
    act_idx = np.empty(K, dtype=np.int64)
    trans_idx = np.full(K, -1, dtype=np.int64)
    sym_idx = np.empty((K, n_a), dtype=np.int64)

    pos = 0
    for a_i, pat in enumerate(activation.patterns):
        for t_i in range(n_trans):
            sl = slice(pos, pos + n_sym)
            mask = tset.masks[t_i] if tset is not None else 0
            for l, j in enumerate(pat.indices):
                vals = base[l][grid[:, l]]
                if (mask >> l) & 1:
                    vals = vals + 1  # add alpha = (1 + i)/2 in doubled coords
                coords2[sl, j, :] = vals
            act_idx[sl] = a_i
            if tset is not None:
                trans_idx[sl] = t_i
            sym_idx[sl] = grid
            pos += n_sym

    power = Fraction(int(np.sum(coords2.astype(np.int64) ** 2)), 4 * K)
    return Constellation(scheme, n_t, n_a, activation, tset, slot_alphabets,
                         coords2, act_idx, trans_idx, sym_idx, power, label)


def build_ct(alphabet: Alphabet, activation: ActivationSet, n_t: int,
             cap: int = DEFAULT_CAP) -> Constellation:
    """Translation-pattern constellation over a P1/P2 alphabet."""
    if not alphabet.is_p1():
        raise ValueError("alphabet violates P1 (not on the odd half-integer grid)")
    if not alphabet.is_p2():
        raise ValueError("alphabet violates P2 (contains -1/2 - i/2)")
    n_a = activation.patterns[0].n_a
    tset = translation_set(n_a)
    label = f"ct({alphabet.label}, n_t={n_t}, n_a={n_a}, L={activation.L})"
    return _enumerate("ct", (alphabet,) * n_a, activation, n_t, tset, cap, label)


def build_gsm(slot_alphabets: tuple[Alphabet, ...] | list[Alphabet],
              activation: ActivationSet, n_t: int,
              cap: int = DEFAULT_CAP) -> Constellation:
    """GSM baseline with one alphabet per active slot (SMX when L=1, n_a=n_t)."""
    slot_alphabets = tuple(slot_alphabets)
    n_a = activation.patterns[0].n_a
    scheme = "smx" if (n_a == n_t and activation.L == 1) else "gsm"
    names = "+".join(a.label for a in slot_alphabets)
    label = f"{scheme}({names}, n_t={n_t}, n_a={n_a}, L={activation.L})"
    return _enumerate(scheme, slot_alphabets, activation, n_t, None, cap, label)


def build_smx(slot_alphabets, n_t: int, cap: int = DEFAULT_CAP) -> Constellation:
    act = ActivationSet((ActivationPattern(tuple(range(n_t))),))
    return build_gsm(slot_alphabets, act, n_t, cap)


# ---------------------------------------------------------------------------
# Exact minimum distance.
#
# Every constellation here is a disjoint union of product sets ("classes"),
# one per (activation pattern, translation vector): the points of a class
# are all choices of one scalar per active antenna from that antenna's
# effective scalar set. The minimum squared distance therefore decomposes:
#   * within a class: the smallest scalar d_min over the class's slots;
#   * across classes: per-antenna independent minima (shared antennas
#     contribute the min cross-set scalar distance, non-shared antennas
#     the min magnitude of their set), summed.
# Both are exact on doubled coordinates (integer quarters).
# ---------------------------------------------------------------------------


def _class_sets(c: Constellation):
    """Per class: (pattern indices, per-slot scalar-set keys).

    A scalar-set key is (slot_alphabet_index, alpha_shift_bit); the actual
    doubled coordinates are materialized once per distinct key.
    """
    n_trans = c.translations.size if c.translations is not None else 1
    classes = []
    for a_i, pat in enumerate(c.activation.patterns):
        for t_i in range(n_trans):
            mask = c.translations.masks[t_i] if c.translations is not None else 0
            keys = tuple((l, (mask >> l) & 1) for l in range(c.n_a))
            classes.append((pat.indices, keys))
    return classes


def _materialize(c: Constellation, key) -> np.ndarray:
    l, shift = key
    arr = np.array([[p.re2, p.im2] for p in c.slot_alphabets[l].points],
                   dtype=np.int64)
    return arr + shift


def min_distance_sq(c: Constellation) -> Fraction:
    """Exact minimum pairwise squared distance over the whole constellation.

    Uses the product-class decomposition above; cost is quadratic in the
    alphabet sizes and in the number of classes, not in |C|.
    """
    if c.size < 2:
        raise ValueError("need at least two points")

    classes = _class_sets(c)
    sets: dict = {}
    for _, keys in classes:
        for k in keys:
            if k not in sets:
                sets[k] = _materialize(c, k)

    min_abs4: dict = {}
    min_self4: dict = {}
    for k, arr in sets.items():
        min_abs4[k] = int(np.min(arr[:, 0] ** 2 + arr[:, 1] ** 2))
        if arr.shape[0] >= 2:
            d = _cross_min4(arr, arr, exclude_equal=True)
            min_self4[k] = d

    cross_cache: dict = {}

    def cross4(k1, k2) -> int:
        key = (k1, k2) if k1 <= k2 else (k2, k1)
        if key not in cross_cache:
            cross_cache[key] = _cross_min4(sets[key[0]], sets[key[1]])
        return cross_cache[key]

    best4 = None

    def consider(v: int):
        nonlocal best4
        if best4 is None or v < best4:
            best4 = v

    # Within-class minima: change exactly one slot.
    for _, keys in classes:
        for k in keys:
            if k in min_self4:
                consider(min_self4[k])

    # Cross-class minima.
    for i in range(len(classes)):
        pat_i, keys_i = classes[i]
        slot_i = {j: keys_i[l] for l, j in enumerate(pat_i)}
        for j2 in range(i + 1, len(classes)):
            pat_j, keys_j = classes[j2]
            slot_j = {j: keys_j[l] for l, j in enumerate(pat_j)}
            total = 0
            for ant in set(slot_i) | set(slot_j):
                if ant in slot_i and ant in slot_j:
                    total += cross4(slot_i[ant], slot_j[ant])
                elif ant in slot_i:
                    total += min_abs4[slot_i[ant]]
                else:
                    total += min_abs4[slot_j[ant]]
                if best4 is not None and total >= best4:
                    break
            consider(total)

    return Fraction(best4, 4)


def _cross_min4(a: np.ndarray, b: np.ndarray, exclude_equal: bool = False) -> int:
    """Min squared distance (in quarters) between two scalar point sets."""
    dr = a[:, 0][:, None] - b[:, 0][None, :]
    di = a[:, 1][:, None] - b[:, 1][None, :]
    d = dr * dr + di * di
    if exclude_equal:
        d = d[d > 0]
    return int(np.min(d))


def min_distance_sq_bruteforce(c: Constellation, block: int = 1024) -> Fraction:
    """All-pairs exact d_min^2 (test oracle; quadratic in |C|)."""
    if c.size < 2:
        raise ValueError("need at least two points")
    pts = c.coords2.reshape(c.size, -1)
    best = None
    for i0 in range(0, c.size, block):
        a = pts[i0:i0 + block]
        for j0 in range(i0, c.size, block):
            b = pts[j0:j0 + block]
            d = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=-1)
            if i0 == j0:
                iu = np.triu_indices(d.shape[0], k=1, m=d.shape[1])
                vals = d[iu]
                if vals.size == 0:
                    continue
                m = int(vals.min())
            else:
                m = int(d.min())
            if best is None or m < best:
                best = m
    return Fraction(best, 4)


def coding_gain(c: Constellation) -> Fraction:
    """Nominal coding gain: exact d_min^2 / power."""
    if c.power == 0:
        raise ValueError("zero-power constellation")
    return c.dmin2 / c.power


def to_db(x) -> float:
    return 10.0 * math.log10(float(x))


def spectral_efficiency(c: Constellation) -> float:
    return c.spectral_efficiency()


def ct_power_formula(alphabet: Alphabet, n_a: int) -> Fraction:
    """Analytic power n_a * (E(A) + E(A + alpha)) / 2."""
    return n_a * (alphabet.energy() + alphabet.translate(ALPHA).energy()) / 2


def ct_gsm_gain_ratio(M: int, n_a: int) -> Fraction:
    """Exact coding-gain ratio of the translation scheme over the matched
    square+cross GSM baseline, for M = 2^(2m) with m >= 2 and n_a >= 2.

    Equals (31/16) * (1 - 16/(31M) - 15/(31 n_a)) / (1 + 2/M + 3/(2 M sqrt(M))).
    """
    r = math.isqrt(M)
    m = r.bit_length() - 1
    if r * r != M or r != 2 ** m or m < 2:
        raise ValueError("M must be 2^(2m) with m >= 2")
    if n_a < 2:
        raise ValueError("n_a must be >= 2")
    num = 1 - Fraction(16, 31 * M) - Fraction(15, 31 * n_a)
    den = 1 + Fraction(2, M) + Fraction(3, 2 * M * r)
    return Fraction(31, 16) * num / den


def save_constellation(c: Constellation, path: str) -> None:
    """Text export: header, then one line per point with index tags and
    the 2*n_t doubled integer coordinates."""
    with open(path, "w") as f:
        M = "x".join(str(a.M) for a in c.slot_alphabets)
        f.write(f"n_t={c.n_t} n_a={c.n_a} L={c.L} M={M} scheme={c.scheme} "
                f"power={c.power.numerator}/{c.power.denominator} "
                f"dmin2={c.dmin2.numerator}/{c.dmin2.denominator}\n")
        for i in range(c.size):
            tmask = (c.translations.masks[c.trans_idx[i]]
                     if c.translations is not None else 0)
            syms = " ".join(str(s) for s in c.sym_idx[i])
            coords = " ".join(str(v) for v in c.coords2[i].ravel())
            f.write(f"{i} {c.act_idx[i]} {tmask} {syms} {coords}\n")
