"""Inverse modulo 2**w: the residual-squaring recurrence, Newton's method,
Dumas' original sequencing and an extended Euclid oracle.

The iterative algorithms are written once against the operator surface of
:class:`~inv2w.modring.Residue`; the same code runs on numpy unsigned arrays
for the batch helpers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import modring
from .modring import InverseDoesNotExist, OddResidue, Residue
from .seeds import SeedKind, check_seed_width, default_seed, parse_seed, seed_x0


class AlgoKind(enum.Enum):
    IMPROVED = "improved"
    NEWTON = "newton"
    DUMAS_ORIGINAL = "dumas"
    EUCLID = "euclid"


def parse_algo(name) -> AlgoKind:
    if isinstance(name, AlgoKind):
        return name
    try:
        return AlgoKind(str(name).lower())
    except ValueError:
        try:
            return AlgoKind[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown algorithm {name!r}") from None


class TraceStep(NamedTuple):
    n: int
    x: Residue
    y: Residue


@dataclass
class IterationTrace:
    """Per-step values of one inversion.

    ``y`` is the residual ``1 - a*x`` of the same step, so ``a*x + y == 1``
    holds on every row.  Values are reduced to the caller's width.
    """

    algo: AlgoKind
    k: int
    p: int
    width: int
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def y0(self) -> Residue:
        return self.steps[0].y


def iteration_count(width: int, k: int) -> int:
    """Smallest p with k * 2**p >= width."""
    if k >= width:
        return 0
    return (-(-width // k) - 1).bit_length()


def working_width(width: int, k: int) -> int:
    return max(width, k << iteration_count(width, k))


def residual(a: Residue, x: Residue) -> Residue:
    return 1 - a * x


# --- shared skeletons ---------------------------------------------------------
# ``record`` collects (x_n, y_n) pairs when tracing.

def _improved(a, x0, p, record=None):
    y = 1 - a * x0
    x = x0
    for n in range(p):
        if record is not None:
            record.append((x, y))
        x = x * (1 + y)
        if record is not None or n + 1 < p:
            y = y * y
    if record is not None:
        record.append((x, y))
    return x


def _newton(a, x0, p, record=None):
    x = x0
    for _ in range(p):
        if record is not None:
            record.append((x, 1 - a * x))
        x = x * (2 - a * x)
    if record is not None:
        record.append((x, 1 - a * x))
    return x


def _dumas(a, p, record=None):
    # u0 = 2 - a leaves residual (a - 1)**2, so u0 is good to 2 bits
    y = a - 1
    u = 2 - a
    y = y * y
    for n in range(p):
        if record is not None:
            record.append((u, y))
        u = u * (1 + y)
        if record is not None or n + 1 < p:
            y = y * y
    if record is not None:
        record.append((u, y))
    return u


def _as_odd(a, width) -> OddResidue:
    if isinstance(a, Residue):
        if width is not None and width != a.width:
            raise modring.WidthMismatchError(f"width {a.width} vs {width}")
        return OddResidue.of(a)
    return OddResidue(a, 64 if width is None else width)


def _make_trace(algo, k, p, width, record):
    steps = [TraceStep(n, x.resize(width), y.resize(width))
             for n, (x, y) in enumerate(record)]
    return IterationTrace(algo, k, p, width, steps)


def _lifted(algo, a, seed, width, trace):
    a = _as_odd(a, width)
    w = a.width
    seed = default_seed(w) if seed is None else parse_seed(seed)
    check_seed_width(seed, w)
    k = seed.bits
    p = iteration_count(w, k)
    # the width cap applies to callers, not to this internal lift
    wide = Residue._raw(a.value, working_width(w, k))
    record = [] if trace else None
    x0 = seed_x0(wide, seed)
    if algo is AlgoKind.IMPROVED:
        x = _improved(wide, x0, p, record)
    else:
        x = _newton(wide, x0, p, record)
    x = x.resize(w)
    if trace:
        return x, _make_trace(algo, k, p, w, record)
    return x


def invert_improved(a, seed: SeedKind | str | None = None, *, width=None,
                    trace=False):
    """Inverse of odd ``a`` by x_{n+1} = x_n * (1 + y**(2**n)).

    ``y`` starts as the residual of the seed and is squared every step, so
    the two dependency chains (x and y) can run side by side.  The seed
    defaults to K4_MONT, or K1 below width 4.  When ``width / k`` is not a
    power of two the work is done at the next ``k * 2**p`` bits and the
    result truncated.

    Returns the inverse, or ``(inverse, IterationTrace)`` with ``trace``.
    """
    return _lifted(AlgoKind.IMPROVED, a, seed, width, trace)


def invert_newton(a, seed: SeedKind | str | None = None, *, width=None,
                  trace=False):
    """Inverse of odd ``a`` by x_{n+1} = x_n * (2 - a*x_n)."""
    return _lifted(AlgoKind.NEWTON, a, seed, width, trace)


def invert_dumas_original(a, *, width=None, trace=False):
    """Inverse of odd ``a`` sequenced as Dumas' algorithm without a seed.

    Starts from u0 = 2 - a and y = (a - 1)**2, then runs
    ``ceil(log2(w / 2))`` steps of u *= 1 + y; y *= y at width w directly.
    """
    a = _as_odd(a, width)
    p = iteration_count(a.width, 2)
    record = [] if trace else None
    u = _dumas(a, p, record)
    if trace:
        return u, _make_trace(AlgoKind.DUMAS_ORIGINAL, 2, p, a.width, record)
    return u


def euclid_inverse_int(a: int, m: int) -> int:
    """Extended Euclid: x in [0, m) with a*x == 1 (mod m)."""
    old_r, r = m, a % m
    old_s, s = 0, 1
    while r:
        q, rem = divmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise InverseDoesNotExist(f"gcd({a}, {m}) = {old_r}")
    return old_s % m


def invert_euclid(a, *, width=None) -> Residue:
    a = _as_odd(a, width)
    return Residue(euclid_inverse_int(a.value, 1 << a.width), a.width)


def invert(a, algo: AlgoKind | str = AlgoKind.IMPROVED, seed=None, *,
           width=None, trace=False):
    algo = parse_algo(algo)
    if algo is AlgoKind.IMPROVED:
        return invert_improved(a, seed, width=width, trace=trace)
    if algo is AlgoKind.NEWTON:
        return invert_newton(a, seed, width=width, trace=trace)
    if algo is AlgoKind.DUMAS_ORIGINAL:
        return invert_dumas_original(a, width=width, trace=trace)
    if trace:
        raise ValueError("the Euclid oracle has no iteration trace")
    return invert_euclid(a, width=width)


def inverse(a: int, width: int = 64, algo="improved", seed=None) -> int:
    """Integer convenience wrapper around :func:`invert`."""
    return invert(a, algo, seed, width=width).value


# --- batch path ---------------------------------------------------------------

def _native(values, width):
    if isinstance(values, np.ndarray) and values.dtype != object:
        return modring.from_machine(values.astype(modring.machine_dtype(width)), width)
    return modring.to_machine(values, width)


def invert_array(values, width: int, algo="improved", seed=None) -> np.ndarray:
    """Vectorised inverse of a sequence of odd values.

    Widths up to 64 run in the smallest native dtype holding ``width`` bits
    (no widening needed: the residual still vanishes mod 2**width) and come
    back as that dtype.  Wider widths run on a :class:`WideArray` and come
    back as an object array of Python ints.
    """
    algo = parse_algo(algo)
    width = modring.check_width(width)
    dt = modring.machine_dtype(width)
    if dt is None:
        a = modring.WideArray(values, width)
        if any(not v & 1 for v in a.values):
            raise InverseDoesNotExist("inverse does not exist for even a")
    else:
        a = _native(values, width)
        if np.any((a & dt(1)) == 0):
            raise InverseDoesNotExist("inverse does not exist for even a")
    if algo is AlgoKind.EUCLID:
        return euclid_array(values, width)
    if algo is AlgoKind.DUMAS_ORIGINAL:
        x = _dumas(a, iteration_count(width, 2))
    else:
        seed = default_seed(width) if seed is None else parse_seed(seed)
        check_seed_width(seed, width)
        p = iteration_count(width, seed.bits)
        step = _improved if algo is AlgoKind.IMPROVED else _newton
        x = step(a, seed_x0(a, seed), p)
    if dt is None:
        return x.values
    return modring.from_machine(x, width)


def euclid_array(values, width: int) -> np.ndarray:
    """Extended Euclid over a sequence of odd values.

    Lane-wise vectorised in int64 up to 62 bits, one value at a time above.
    """
    dt = modring.machine_dtype(width)
    if width > 62:
        m = 1 << width
        out = [euclid_inverse_int(int(v), m) for v in values]
        if dt is None:
            arr = np.empty(len(out), dtype=object)
            arr[:] = out
            return arr
        return np.array(out, dtype=dt)
    a = _native(values, width).astype(np.int64)
    old_r = np.full_like(a, 1 << width)
    r = a.copy()
    old_s = np.zeros_like(a)
    s = np.ones_like(a)
    while np.any(r):
        live = r != 0
        q = np.where(live, old_r // np.where(live, r, 1), 0)
        old_r, r = np.where(live, r, old_r), np.where(live, old_r - q * r, r)
        old_s, s = np.where(live, s, old_s), np.where(live, old_s - q * s, s)
    if np.any(old_r != 1):
        raise InverseDoesNotExist("inverse does not exist for even a")
    return (old_s % (1 << width)).astype(dt)
