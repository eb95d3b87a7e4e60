"""Wrapping arithmetic modulo 2**w.

Two paths share the same operator surface:

* :class:`Residue` holds a single value of any width 1..MAX_WIDTH on top of
  Python's arbitrary precision ints, masked after every operation.
* numpy unsigned arrays (``uint8`` .. ``uint64``) wrap natively and are used
  for batch work at machine widths.  Widths that are not a dtype size are
  computed in the next larger dtype and masked at the end, which is valid
  because the low w bits of +, -, *, ^, &, |, << only depend on the low w
  bits of the operands.
"""

from __future__ import annotations

import numpy as np

MAX_WIDTH = 4096
MACHINE_WIDTHS = (8, 16, 32, 64, 128)

_DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32, 64: np.uint64}


class WidthMismatchError(ValueError):
    """Two residues of different widths were combined."""


class InverseDoesNotExist(ValueError):
    """Raised for an even value, which has no inverse modulo 2**w."""


def check_width(w: int) -> int:
    if not isinstance(w, (int, np.integer)) or isinstance(w, bool):
        raise TypeError(f"width must be an int, got {type(w).__name__}")
    w = int(w)
    if not 1 <= w <= MAX_WIDTH:
        raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {w}")
    return w


def mask(w: int) -> int:
    return (1 << w) - 1


_new = object.__new__
_set = object.__setattr__


class Residue:
    """An integer modulo 2**width, always stored fully reduced.

    Operands may be another Residue of the same width or a plain int, which
    is reduced first.  Subtraction wraps with two's-complement semantics.
    """

    __slots__ = ("value", "width", "_mask")

    def __init__(self, value: int, width: int):
        width = check_width(width)
        m = mask(width)
        _set(self, "width", width)
        _set(self, "_mask", m)
        _set(self, "value", int(value) & m)

    @classmethod
    def _raw(cls, value, width):
        # value already reduced, width already checked
        r = _new(cls)
        _set(r, "width", width)
        _set(r, "_mask", (1 << width) - 1)
        _set(r, "value", value)
        return r

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _other(self, o):
        if isinstance(o, Residue):
            if o.width != self.width:
                raise WidthMismatchError(f"width {self.width} vs {o.width}")
            return o.value
        if isinstance(o, (int, np.integer)) and not isinstance(o, bool):
            return int(o)
        return None

    def _wrap(self, v):
        r = _new(Residue)
        _set(r, "width", self.width)
        _set(r, "_mask", self._mask)
        _set(r, "value", v & self._mask)
        return r

    def __add__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(self.value + v)

    __radd__ = __add__

    def __sub__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(self.value - v)

    def __rsub__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(v - self.value)

    def __mul__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(self.value * v)

    __rmul__ = __mul__

    def __xor__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(self.value ^ v)

    __rxor__ = __xor__

    def __and__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(self.value & v)

    __rand__ = __and__

    def __or__(self, o):
        v = self._other(o)
        return NotImplemented if v is None else self._wrap(self.value | v)

    __ror__ = __or__

    def __lshift__(self, n):
        n = n.value if isinstance(n, Residue) else int(n)
        if n < 0:
            raise ValueError("negative shift count")
        if n >= self.width:
            return Residue._raw(0, self.width)
        return self._wrap(self.value << n)

    def __neg__(self):
        return self._wrap(-self.value)

    def __eq__(self, o):
        if isinstance(o, Residue):
            return self.width == o.width and self.value == o.value
        if isinstance(o, (int, np.integer)) and not isinstance(o, bool):
            return self.value == int(o)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"Residue({self.value}, width={self.width})"

    @property
    def is_odd(self) -> bool:
        return bool(self.value & 1)

    def resize(self, width: int) -> "Residue":
        """Reinterpret the value at another width (truncating if narrower)."""
        return Residue(self.value, width)

    def trailing_zeros(self) -> int:
        """Number of trailing zero bits; a zero residue reports its width."""
        if self.value == 0:
            return self.width
        return (self.value & -self.value).bit_length() - 1


class OddResidue(Residue):
    """A residue whose value is odd, i.e. one that has an inverse."""

    __slots__ = ()

    def __init__(self, value: int, width: int):
        super().__init__(value, width)
        if not self.value & 1:
            raise InverseDoesNotExist(
                f"inverse does not exist for even a ({self.value} mod 2^{self.width})")

    @classmethod
    def of(cls, a) -> "OddResidue":
        if isinstance(a, OddResidue):
            return a
        return cls(a.value, a.width)


def reduce(value: int, width: int) -> Residue:
    return Residue(value, width)


def _same(a: Residue, b: Residue):
    if a.width != b.width:
        raise WidthMismatchError(f"width {a.width} vs {b.width}")


def wrapping_add(a: Residue, b: Residue) -> Residue:
    _same(a, b)
    return a + b


def wrapping_sub(a: Residue, b: Residue) -> Residue:
    _same(a, b)
    return a - b


def wrapping_mul(a: Residue, b: Residue) -> Residue:
    _same(a, b)
    return a * b


def wrapping_xor(a: Residue, b: Residue) -> Residue:
    _same(a, b)
    return a ^ b


def wrapping_and(a: Residue, b: Residue) -> Residue:
    _same(a, b)
    return a & b


def wrapping_or(a: Residue, b: Residue) -> Residue:
    _same(a, b)
    return a | b


def wrapping_shl(a: Residue, n: int) -> Residue:
    return a << n


def wrapping_neg(a: Residue) -> Residue:
    return -a


# --- machine path -----------------------------------------------------------

def machine_dtype(w: int):
    """Smallest numpy unsigned dtype holding w bits, or None past 64 bits.

    numpy has no 128-bit integer, so w=128 stays on the Residue path.
    """
    for bits, dt in _DTYPES.items():
        if w <= bits:
            return dt
    return None


def to_machine(values, w: int) -> np.ndarray:
    dt = machine_dtype(w)
    if dt is None:
        raise ValueError(f"no native dtype for width {w}")
    m = mask(w)
    return np.array([int(v) & m for v in values], dtype=dt)


def from_machine(arr: np.ndarray, w: int) -> np.ndarray:
    """Mask a container-width array back down to w bits."""
    bits = arr.dtype.itemsize * 8
    if w == bits:
        return arr
    return arr & arr.dtype.type(mask(w))


def machine_shl(arr: np.ndarray, n: int) -> np.ndarray:
    if n >= arr.dtype.itemsize * 8:
        return np.zeros_like(arr)
    return arr << arr.dtype.type(n)


class WideArray:
    """Batch of residues wider than 64 bits, held in an object array.

    Supports the same operators as Residue, masking after each one.
    """

    __slots__ = ("values", "width", "_mask")

    def __init__(self, values, width: int):
        self.width = check_width(width)
        self._mask = mask(self.width)
        arr = np.empty(len(values), dtype=object)
        arr[:] = [int(v) & self._mask for v in values]
        self.values = arr

    def _wrap(self, arr):
        r = _new(WideArray)
        r.width, r._mask, r.values = self.width, self._mask, arr & self._mask
        return r

    def _other(self, o):
        if isinstance(o, WideArray):
            if o.width != self.width:
                raise WidthMismatchError(f"width {self.width} vs {o.width}")
            return o.values
        return int(o)

    def __add__(self, o):
        return self._wrap(self.values + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.values - self._other(o))

    def __rsub__(self, o):
        return self._wrap(self._other(o) - self.values)

    def __mul__(self, o):
        return self._wrap(self.values * self._other(o))

    __rmul__ = __mul__

    def __xor__(self, o):
        return self._wrap(self.values ^ self._other(o))

    __rxor__ = __xor__

    def __and__(self, o):
        return self._wrap(self.values & self._other(o))

    __rand__ = __and__

    def __or__(self, o):
        return self._wrap(self.values | self._other(o))

    __ror__ = __or__

    def __lshift__(self, n):
        if n >= self.width:
            return self._wrap(self.values * 0)
        return self._wrap(self.values << int(n))

    def __neg__(self):
        return self._wrap(-self.values)

    def __len__(self):
        return len(self.values)

    def ones_like(self):
        return self._wrap(self.values * 0 + 1)

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]
