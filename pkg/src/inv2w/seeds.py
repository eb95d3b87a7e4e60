"""Direct starting values x0 with a*x0 == 1 (mod 2**k), k = 1..5."""

from __future__ import annotations

import enum

import numpy as np

from .modring import Residue, WideArray


class SeedKind(enum.Enum):
    K1 = "k1"
    K2 = "k2"
    K3 = "k3"
    K4_MONT = "k4"
    K4_ALT = "k4alt"
    K5 = "k5"

    @property
    def bits(self) -> int:
        return _BITS[self]

    @property
    def min_width(self) -> int:
        return _MIN_WIDTH.get(self, 1)


_BITS = {
    SeedKind.K1: 1,
    SeedKind.K2: 2,
    SeedKind.K3: 3,
    SeedKind.K4_MONT: 4,
    SeedKind.K4_ALT: 4,
    SeedKind.K5: 5,
}

_MIN_WIDTH = {SeedKind.K4_MONT: 4, SeedKind.K4_ALT: 4, SeedKind.K5: 5}


def correct_bits(kind: SeedKind) -> int:
    return kind.bits


def default_seed(width: int) -> SeedKind:
    return SeedKind.K4_MONT if width >= 4 else SeedKind.K1


def parse_seed(name) -> SeedKind:
    if isinstance(name, SeedKind):
        return name
    try:
        return SeedKind(str(name).lower())
    except ValueError:
        try:
            return SeedKind[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown seed kind {name!r}") from None


def check_seed_width(kind: SeedKind, width: int):
    if width < kind.min_width:
        raise ValueError(
            f"seed {kind.name} needs width >= {kind.min_width}, got {width}")


def _one_like(a):
    if isinstance(a, Residue):
        return Residue._raw(1, a.width)
    if isinstance(a, WideArray):
        return a.ones_like()
    return np.ones_like(a)


def seed_x0(a, kind: SeedKind):
    """Starting value for ``a`` under ``kind``.

    ``a`` is a Residue, a WideArray or a numpy unsigned array; the result
    has the same type.  Only oddness of ``a`` matters for correctness, it is not checked
    here.
    """
    if isinstance(a, Residue):
        check_seed_width(kind, a.width)
    if kind is SeedKind.K1:
        return _one_like(a)
    if kind in (SeedKind.K2, SeedKind.K3):
        return a
    if kind in (SeedKind.K4_MONT, SeedKind.K5):
        return (3 * a) ^ 2
    if kind is SeedKind.K4_ALT:
        return (a ^ 2) - (a + a)
    raise ValueError(f"unknown seed kind {kind!r}")
