import random

import pytest

from inv2w.applications import (InexactDivision, exact_divide, mont_mul, mont_new,
                                redc, to_montgomery)
from inv2w.modring import InverseDoesNotExist, Residue


def test_mont_new_examples():
    ctx = mont_new(13, 8)
    assert ctx.neg_inv.value == 59 == 256 - 197
    assert (13 * 59) % 256 == 255
    assert mont_new(255, 8).neg_inv.value == 1
    with pytest.raises(ValueError):
        mont_new(1, 8)
    with pytest.raises(InverseDoesNotExist):
        mont_new(12, 8)


def test_redc_examples():
    ctx = mont_new(13, 8)
    assert redc(ctx, 0).value == 0
    assert redc(ctx, 256).value == 1
    assert redc(ctx, Residue(256, 16)).value == 1
    with pytest.raises(ValueError):
        redc(ctx, 13 * 256)
    with pytest.raises(ValueError):
        redc(ctx, -1)
    with pytest.raises(ValueError):
        redc(ctx, Residue(5, 8))


@pytest.mark.parametrize("w", [8, 16, 32, 64, 128])
def test_redc_against_naive(w):
    rng = random.Random(w)
    for _ in range(500):
        n = rng.getrandbits(w) | 1
        if n == 1:
            continue
        ctx = mont_new(n, w)
        assert (n * ctx.neg_inv.value) % (1 << w) == (1 << w) - 1
        x, y = rng.randrange(n), rng.randrange(n)
        rinv = pow(1 << w, -1, n)
        assert redc(ctx, x * y).value == (x * y * rinv) % n


def test_montgomery_roundtrip():
    ctx = mont_new(1_000_003, 32)
    a, b = 123456, 654321
    prod = mont_mul(ctx, to_montgomery(ctx, a), to_montgomery(ctx, b))
    assert redc(ctx, prod).value == a * b % 1_000_003


def test_exact_divide_examples():
    assert exact_divide(9, 3, width=8).value == 3 == 9 * 171 % 256
    assert exact_divide(0, 7, width=8).value == 0
    assert exact_divide(0, 7, width=1000).value == 0
    assert exact_divide(255, 255, width=8).value == 1


def test_exact_divide_verify():
    assert exact_divide(Residue(21, 8), Residue(7, 8), verify=True).value == 3
    with pytest.raises(InexactDivision):
        exact_divide(10, 3, width=8, verify=True)
    # unverified inexact division still returns the modular product
    assert exact_divide(10, 3, width=8).value == 10 * 171 % 256
    with pytest.raises(InverseDoesNotExist):
        exact_divide(10, 2, width=8)


@pytest.mark.parametrize("w", [16, 64, 256])
def test_exact_divide_random(w):
    rng = random.Random(w)
    for _ in range(300):
        d = rng.getrandbits(rng.randrange(1, w)) | 1
        q = rng.randrange((1 << w) // d)
        assert exact_divide(d * q, d, width=w, verify=True).value == q
