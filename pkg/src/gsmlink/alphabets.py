"""Complex alphabets on the half-integer grid with exact arithmetic.

All geometry is done on doubled integer coordinates so that squared
magnitudes and distances are exact rationals with denominator 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


@dataclass(frozen=True, order=True)
class HalfComplex:
    """Complex number (re2 + i*im2)/2 stored as doubled integers."""

    re2: int
    im2: int

    def __add__(self, other: "HalfComplex") -> "HalfComplex":
        return HalfComplex(self.re2 + other.re2, self.im2 + other.im2)

    def __sub__(self, other: "HalfComplex") -> "HalfComplex":
        return HalfComplex(self.re2 - other.re2, self.im2 - other.im2)

    def __neg__(self) -> "HalfComplex":
        return HalfComplex(-self.re2, -self.im2)

    def abs2(self) -> Fraction:
        """Exact squared magnitude."""
        return Fraction(self.re2 * self.re2 + self.im2 * self.im2, 4)

    def is_gaussian_integer(self) -> bool:
        return self.re2 % 2 == 0 and self.im2 % 2 == 0

    def is_half_integer(self) -> bool:
        """Both coordinates of the form (odd)/2."""
        return self.re2 % 2 == 1 and self.im2 % 2 == 1

    def __complex__(self) -> complex:
        return complex(self.re2 / 2.0, self.im2 / 2.0)

    def __str__(self) -> str:
        return f"({self.re2}/2, {self.im2}/2)"


#: The offset 1/2 + i/2 used by translation patterns.
ALPHA = HalfComplex(1, 1)

#: Zero offset.
ZERO = HalfComplex(0, 0)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct HalfComplex points."""

    points: tuple[HalfComplex, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.points) == 0:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.points)) != len(self.points):
            raise ValueError("alphabet points must be distinct")

    @property
    def M(self) -> int:
        return len(self.points)

    def is_p1(self) -> bool:
        """All points have half-integer (odd/2) coordinates."""
        return all(p.is_half_integer() for p in self.points)

    def is_p2(self) -> bool:
        """The point -1/2 - i/2 is absent."""
        return HalfComplex(-1, -1) not in self.points

    def energy(self) -> Fraction:
        """Exact mean squared magnitude (1/M) * sum |x|^2."""
        return sum((p.abs2() for p in self.points), Fraction(0)) / self.M

    def translate(self, by: HalfComplex) -> "Alphabet":
        return Alphabet(tuple(p + by for p in self.points),
                        label=f"{self.label}+({by.re2}/2,{by.im2}/2)")


def energy(a: Alphabet) -> Fraction:
    return a.energy()


def translate(a: Alphabet, by: HalfComplex) -> Alphabet:
    return a.translate(by)


def _pam_levels(k: int) -> list[int]:
    """Doubled coordinates of k-ary PAM: -(k-1), -(k-3), ..., (k-1)."""
    return list(range(-(k - 1), k, 2))


def _raster(points: Iterable[HalfComplex]) -> tuple[HalfComplex, ...]:
    """Natural raster order: ascending imaginary part, then real part."""
    return tuple(sorted(points, key=lambda p: (p.im2, p.re2)))


def _even_root(M: int) -> int:
    r = math.isqrt(M)
    if r * r != M or r % 2 != 0:
        raise ValueError(f"M={M} must be a perfect square with an even root")
    return r


def square_qam(M: int) -> Alphabet:
    """Conventional square M-QAM on the half-integer grid. Energy (M-1)/6."""
    r = _even_root(M)
    levels = _pam_levels(r)
    pts = [HalfComplex(a, b) for b in levels for a in levels]
    return Alphabet(_raster(pts), label=f"square-qam-{M}")


def modified_square_qam(M: int) -> Alphabet:
    """Square M-QAM with -1/2-i/2 replaced by -(sqrt(M)+1)/2 - i/2.

    Satisfies P1 and P2; the replacement point is the cheapest exterior
    point on the half-integer grid.
    """
    r = _even_root(M)
    beta = HalfComplex(-(r + 1), -1)
    pts = [p for p in square_qam(M).points if p != HalfComplex(-1, -1)]
    pts.append(beta)
    return Alphabet(_raster(pts), label=f"modified-square-qam-{M}")


def cross_qam(M: int) -> Alphabet:
    """Cross-shaped QAM for M = 2^(2m+1), m >= 2.

    A (3*2^(m-1)) x (3*2^(m-1)) half-integer grid with the four
    (2^(m-2)) x (2^(m-2)) corner blocks removed. Energy (31M/32 - 1)/6.
    """
    m = (M.bit_length() - 2) // 2
    if m < 2 or M != 2 ** (2 * m + 1):
        raise ValueError(f"M={M} must be 2^(2m+1) with m >= 2")
    side = 3 * 2 ** (m - 1)
    corner = 2 ** (m - 2)
    levels = _pam_levels(side)
    cut = levels[side - corner]  # doubled coordinate where corner blocks start
    pts = [HalfComplex(a, b) for b in levels for a in levels
           if not (abs(a) >= cut and abs(b) >= cut)]
    assert len(pts) == M
    return Alphabet(_raster(pts), label=f"cross-qam-{M}")


def searched_alphabet(M: int) -> Alphabet:
    """First M half-integer grid points by ascending |x|^2 + |x+alpha|^2.

    Candidates are {a+ib : |a|,|b| in {1/2, 3/2, ..., ceil(M/2)+1/2}}
    minus -1/2-i/2. Ties broken by ascending |x|^2, then by (re2, im2).
    Deterministic; satisfies P1 and P2 by construction.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    half = math.ceil(M / 2)
    mags = range(1, 2 * half + 2, 2)  # doubled magnitudes 1, 3, ...
    cands = []
    for a in mags:
        for b in mags:
            for sa in (a, -a):
                for sb in (b, -b):
                    if (sa, sb) != (-1, -1):
                        cands.append(HalfComplex(sa, sb))
    cands = set(cands)  # a == -a never happens; dedupe is a no-op guard

    def key(p: HalfComplex):
        self4 = p.re2 ** 2 + p.im2 ** 2
        shift4 = (p.re2 + 1) ** 2 + (p.im2 + 1) ** 2
        return (self4 + shift4, self4, p.re2, p.im2)

    chosen = sorted(cands, key=key)[:M]
    return Alphabet(tuple(chosen), label=f"searched-{M}")


_KINDS = {
    "square": square_qam,
    "modified-square": modified_square_qam,
    "cross": cross_qam,
    "searched": searched_alphabet,
}


def make_alphabet(kind: str, M: int) -> Alphabet:
    """Construct an alphabet by kind name (see _KINDS)."""
    try:
        ctor = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown alphabet kind {kind!r}; "
                         f"choose from {sorted(_KINDS)}") from None
    return ctor(M)


def save_alphabet(a: Alphabet, path: str) -> None:
    """Text format: header 'M=<int> label=<text>', then 're2 im2' per line."""
    with open(path, "w") as f:
        f.write(f"M={a.M} label={a.label}\n")
        for p in a.points:
            f.write(f"{p.re2} {p.im2}\n")


def load_alphabet(path: str) -> Alphabet:
    with open(path) as f:
        header = f.readline().strip()
        m_part, label_part = header.split(" ", 1)
        M = int(m_part.removeprefix("M="))
        label = label_part.removeprefix("label=")
        pts = []
        for line in f:
            if line.strip():
                re2, im2 = line.split()
                pts.append(HalfComplex(int(re2), int(im2)))
    if len(pts) != M:
        raise ValueError(f"expected {M} points, found {len(pts)}")
    return Alphabet(tuple(pts), label=label)
