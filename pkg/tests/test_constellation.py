import math
from fractions import Fraction

import numpy as np
import pytest

from gsmlink.alphabets import ALPHA, HalfComplex, cross_qam, modified_square_qam, \
    searched_alphabet, square_qam
from gsmlink.constellation import (ActivationPattern, ActivationSet, build_ct,
                                   build_gsm, build_smx, coding_gain,
                                   ct_gsm_gain_ratio, ct_power_formula,
                                   default_activation_set, default_L,
                                   min_distance_sq, min_distance_sq_bruteforce,
                                   psi_a, save_constellation, translation_set)

A0 = HalfComplex(0, 0)


def test_translation_set_na3_matches_parity_code():
    t = translation_set(3)
    vecs = {t.vector(i) for i in range(t.size)}
    assert vecs == {(A0, A0, A0), (A0, ALPHA, ALPHA),
                    (ALPHA, A0, ALPHA), (ALPHA, ALPHA, A0)}


def test_translation_set_na2():
    t = translation_set(2)
    assert t.size == 2
    assert {t.vector(0), t.vector(1)} == {(A0, A0), (ALPHA, ALPHA)}


def test_translation_set_na4_balanced():
    t = translation_set(4)
    assert t.size == 8
    for l in range(4):
        count = sum((m >> l) & 1 for m in t.masks)
        assert count == 4  # each component is alpha in exactly half the vectors


def test_translation_set_rejects_small_na():
    with pytest.raises(ValueError):
        translation_set(1)


def test_default_activation_set_examples():
    s = default_activation_set(4, 3, 4)
    assert [p.indices for p in s.patterns] == [(0, 1, 2), (0, 1, 3),
                                               (0, 2, 3), (1, 2, 3)]
    assert default_L(4, 2) == 4  # largest power of 2 <= C(4,2) = 6
    assert default_activation_set(2, 2, 1).patterns == (ActivationPattern((0, 1)),)
    with pytest.raises(ValueError):
        default_activation_set(4, 2, 7)


def test_psi_a_embedding():
    a, b, c = HalfComplex(1, 1), HalfComplex(3, -1), HalfComplex(-1, 1)
    out = psi_a((a, b, c), ActivationPattern((0, 2, 3)), 4)
    assert out == (a, A0, b, c)
    # identity embedding when all antennas are active
    out = psi_a((a, b), ActivationPattern((0, 1)), 2)
    assert out == (a, b)
    norm = sum(p.abs2() for p in out)
    assert norm == a.abs2() + b.abs2()
    with pytest.raises(ValueError):
        psi_a((a, b), ActivationPattern((0, 3)), 3)


def test_build_ct_example2_scale():
    c = build_ct(modified_square_qam(4), default_activation_set(4, 3, 4), 4)
    assert c.size == 4 ** 3 * 4 * 4 == 1024
    assert c.spectral_efficiency() == 10
    assert c.dmin2 == 1


def test_build_ct_power_mod16_na2():
    c = build_ct(modified_square_qam(16), default_activation_set(4, 2, 4), 4)
    assert c.power == Fraction(49, 8)
    assert c.power == ct_power_formula(modified_square_qam(16), 2)


def test_build_ct_rejects_p2_violation():
    with pytest.raises(ValueError):
        build_ct(square_qam(16), default_activation_set(4, 2, 4), 4)


def test_build_ct_rejects_above_cap():
    with pytest.raises(ValueError):
        build_ct(modified_square_qam(16), default_activation_set(4, 2, 4), 4,
                 cap=1000)


@pytest.mark.parametrize("alphabet,n_t,n_a,L", [
    (modified_square_qam(4), 4, 2, 4),
    (modified_square_qam(4), 4, 3, 2),
    (searched_alphabet(5), 3, 2, 2),
    (searched_alphabet(8), 4, 3, 4),
])
def test_min_distance_structured_matches_bruteforce_ct(alphabet, n_t, n_a, L):
    c = build_ct(alphabet, default_activation_set(n_t, n_a, L), n_t)
    assert min_distance_sq(c) == min_distance_sq_bruteforce(c)


def test_min_distance_structured_matches_bruteforce_gsm():
    c = build_gsm([square_qam(4), searched_alphabet(6)],
                  default_activation_set(4, 2, 4), 4)
    assert min_distance_sq(c) == min_distance_sq_bruteforce(c)
    s = build_smx([square_qam(4), square_qam(16)], 2)
    assert min_distance_sq(s) == min_distance_sq_bruteforce(s)


def test_min_distance_requires_two_points():
    c = build_smx([searched_alphabet(1), searched_alphabet(1)], 2)
    with pytest.raises(ValueError):
        min_distance_sq(c)


def test_gsm_mixed_square_cross_power():
    c = build_gsm([square_qam(64), cross_qam(128), cross_qam(128)],
                  default_activation_set(4, 3, 4), 4)
    assert c.power == Fraction(63, 6) + 2 * Fraction(123, 6) == Fraction(103, 2)
    assert c.dmin2 == 1


def test_smx_two_antenna_4qam():
    c = build_smx([square_qam(4), square_qam(4)], 2)
    assert c.scheme == "smx"
    assert c.size == 16
    assert c.power == 1
    assert c.dmin2 == 1


def test_ct_cardinality_and_support():
    c = build_ct(searched_alphabet(5), default_activation_set(4, 3, 2), 4)
    assert c.size == 5 ** 3 * 2 * 4
    active = (c.coords2[..., 0] != 0) | (c.coords2[..., 1] != 0)
    assert np.all(active.sum(axis=1) == 3)
    abs4 = c.coords2[..., 0] ** 2 + c.coords2[..., 1] ** 2
    assert np.all(abs4[active] >= 2)  # |x_j|^2 >= 1/2 exactly


def test_pairwise_z_t_distance_floor_small():
    # all (z, t) != (z', t') pairs are at squared distance >= 1
    alphabet = searched_alphabet(4)
    tset = translation_set(3)
    vecs = []
    for t_i in range(tset.size):
        t = tset.vector(t_i)
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    z = (alphabet.points[i], alphabet.points[j], alphabet.points[k])
                    vecs.append([z[l] + t[l] for l in range(3)])
    arr = np.array([[(v.re2, v.im2) for v in row] for row in vecs], dtype=np.int64)
    flat = arr.reshape(len(vecs), -1)
    d = ((flat[:, None, :] - flat[None, :, :]) ** 2).sum(axis=-1)
    iu = np.triu_indices(len(vecs), k=1)
    assert d[iu].min() >= 4  # >= 1 in quarters


def test_coding_gain_constants():
    new1 = build_ct(modified_square_qam(16), default_activation_set(4, 2, 4), 4)
    assert coding_gain(new1) == Fraction(8, 49)
    ct64 = build_ct(modified_square_qam(64), default_activation_set(4, 3, 2), 4)
    assert coding_gain(ct64) == Fraction(32, 1059)
    gsm = build_gsm([square_qam(64), cross_qam(128), cross_qam(128)],
                    default_activation_set(4, 3, 2), 4)
    assert coding_gain(gsm) == Fraction(2, 103)
    gap = 10 * math.log10(float(coding_gain(ct64) / coding_gain(gsm)))
    assert gap == pytest.approx(1.92, abs=0.005)


def test_gain_ratio_closed_form():
    assert ct_gsm_gain_ratio(16, 2) == Fraction(60, 49)
    # monotone in M and n_a, limit 31/16
    assert ct_gsm_gain_ratio(64, 3) > ct_gsm_gain_ratio(16, 3) > ct_gsm_gain_ratio(16, 2)
    assert ct_gsm_gain_ratio(64, 3) >= Fraction(60, 49)
    lim = ct_gsm_gain_ratio(2 ** 20, 64)
    assert abs(float(lim) - 31 / 16) <= 0.01 * 31 / 16
    with pytest.raises(ValueError):
        ct_gsm_gain_ratio(8, 2)
    with pytest.raises(ValueError):
        ct_gsm_gain_ratio(16, 1)


@pytest.mark.parametrize("m,n_a", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_gain_ratio_matches_built_constellations(m, n_a):
    M = 2 ** (2 * m)
    act = default_activation_set(4, n_a, 2)
    ct = build_ct(modified_square_qam(M), act, 4)
    alphas = [square_qam(M)] + [cross_qam(2 * M)] * (n_a - 1)
    gsm = build_gsm(alphas, act, 4)
    assert coding_gain(ct) / coding_gain(gsm) == ct_gsm_gain_ratio(M, n_a)


def test_spectral_efficiency_examples():
    c = build_ct(modified_square_qam(64), default_activation_set(4, 3, 4), 4)
    assert c.spectral_efficiency() == 22
    c = build_ct(searched_alphabet(37), default_activation_set(4, 2, 6), 4)
    assert c.spectral_efficiency() == pytest.approx(math.log2(37 ** 2 * 6 * 2))
    assert c.spectral_efficiency() == pytest.approx(14.005, abs=0.01)
    c = build_ct(searched_alphabet(13), default_activation_set(4, 2, 6), 4)
    assert c.spectral_efficiency() == pytest.approx(10.99, abs=0.01)


def test_ct_power_formula_holds_for_any_p1_p2_alphabet():
    for alphabet in (searched_alphabet(7), searched_alphabet(13)):
        for n_a in (2, 3):
            c = build_ct(alphabet, default_activation_set(4, n_a, 2), 4)
            assert c.power == ct_power_formula(alphabet, n_a)


def test_enumeration_order_is_documented():
    # activation outer, translation middle, symbol tuple inner (slot 0 MSB)
    c = build_ct(modified_square_qam(4), default_activation_set(4, 2, 2), 4)
    M, T = 4, 2
    for i in range(c.size):
        a, rem = divmod(i, T * M * M)
        t, sym = divmod(rem, M * M)
        assert c.act_idx[i] == a
        assert c.trans_idx[i] == t
        assert tuple(c.sym_idx[i]) == (sym // M, sym % M)


def test_save_constellation_format(tmp_path):
    c = build_ct(modified_square_qam(4), default_activation_set(4, 2, 2), 4)
    path = tmp_path / "c.txt"
    save_constellation(c, str(path))
    lines = path.read_text().splitlines()
    assert len(lines) == c.size + 1
    assert lines[0].startswith("n_t=4 n_a=2 L=2 M=4x4 scheme=ct power=")
    first = lines[1].split()
    assert len(first) == 3 + c.n_a + 2 * c.n_t
