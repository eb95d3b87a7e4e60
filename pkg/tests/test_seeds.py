import numpy as np
import pytest

from inv2w.modring import Residue
from inv2w.seeds import SeedKind, correct_bits, default_seed, parse_seed, seed_x0


def test_examples():
    assert seed_x0(Residue(7, 8), SeedKind.K1).value == 1
    assert seed_x0(Residue(3, 8), SeedKind.K2).value == 3
    assert seed_x0(Residue(7, 8), SeedKind.K4_MONT).value == 23
    assert seed_x0(Residue(7, 8), SeedKind.K4_ALT).value == 247
    assert 7 * 23 % 16 == 1 and 7 * 247 % 16 == 1


def test_correct_bits():
    assert [correct_bits(k) for k in SeedKind] == [1, 2, 3, 4, 4, 5]


def test_tables_brute_force():
    # the residue tables behind the formulas, checked by direct enumeration
    assert all(r * r % 4 == 1 for r in (1, 3))
    assert all(r * ((3 * r) ^ 2) % 16 == 1 for r in range(1, 16, 2))
    assert all(r * ((r ^ 2) - (r + r)) % 16 == 1 for r in range(1, 16, 2))
    assert all(r * ((3 * r) ^ 2) % 32 == 1 for r in range(1, 32, 2))
    assert all(r * r % 8 == 1 for r in range(1, 8, 2))


@pytest.mark.parametrize("kind", list(SeedKind))
@pytest.mark.parametrize("w", [4, 5, 6, 8, 13, 16, 64, 128, 1000])
def test_every_odd_residue(kind, w):
    if w < kind.min_width:
        pytest.skip("below formula's minimum width")
    k = kind.bits
    # all residues mod 2**max(k,4), shifted by a high multiple of 2**k so the
    # upper bits are exercised too
    span = 1 << max(k, 4)
    for r in range(1, span, 2):
        for hi in (0, 1, (1 << (w - 1)) // span):
            a = Residue(r + hi * span, w)
            assert (a.value * seed_x0(a, kind).value) % (1 << k) == 1


def test_k4_variants_agree_mod_16():
    for r in range(1, 256, 2):
        a = Residue(r, 8)
        m = a * seed_x0(a, SeedKind.K4_MONT)
        alt = a * seed_x0(a, SeedKind.K4_ALT)
        assert m.value % 16 == alt.value % 16 == 1


def test_minimum_width():
    with pytest.raises(ValueError):
        seed_x0(Residue(3, 3), SeedKind.K4_MONT)
    with pytest.raises(ValueError):
        seed_x0(Residue(3, 3), SeedKind.K4_ALT)
    with pytest.raises(ValueError):
        seed_x0(Residue(3, 4), SeedKind.K5)
    assert seed_x0(Residue(3, 5), SeedKind.K5).value == 11
    assert seed_x0(Residue(1, 1), SeedKind.K2).value == 1


@pytest.mark.parametrize("kind", list(SeedKind))
def test_array_path_matches(kind):
    vals = np.arange(1, 256, 2, dtype=np.uint8)
    got = seed_x0(vals, kind)
    got = np.broadcast_to(got, vals.shape)
    assert [int(v) for v in got] == [seed_x0(Residue(int(v), 8), kind).value for v in vals]


def test_defaults_and_parsing():
    assert default_seed(64) is SeedKind.K4_MONT
    assert default_seed(3) is SeedKind.K1
    assert parse_seed("k4alt") is SeedKind.K4_ALT
    assert parse_seed("K4_MONT") is SeedKind.K4_MONT
    with pytest.raises(ValueError):
        parse_seed("k9")
