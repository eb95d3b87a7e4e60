"""Montgomery REDC and exact division by an odd constant, both driven by
the inverse modulo 2**w."""

from __future__ import annotations

from dataclasses import dataclass

from .inverse import invert_improved
from .modring import OddResidue, Residue


class InexactDivision(ValueError):
    """The divisor does not divide the numerator exactly."""


@dataclass(frozen=True)
class MontgomeryContext:
    n: OddResidue
    neg_inv: Residue

    @property
    def width(self) -> int:
        return self.n.width

    @property
    def r(self) -> int:
        return 1 << self.width


def mont_new(n, width: int | None = None) -> MontgomeryContext:
    """Context for odd modulus 1 < n < 2**w, with n * neg_inv == -1 (mod 2**w)."""
    if isinstance(n, Residue):
        n = OddResidue.of(n)
    else:
        n = OddResidue(n, 64 if width is None else width)
    if n.value == 1:
        raise ValueError("Montgomery modulus must be greater than 1")
    return MontgomeryContext(n, -invert_improved(n))


def redc(ctx: MontgomeryContext, t) -> Residue:
    """t * 2**-w mod n, for 0 <= t < n * 2**w.

    ``t`` is an int or a Residue of width 2w.
    """
    w = ctx.width
    if isinstance(t, Residue):
        if t.width != 2 * w:
            raise ValueError(f"t must be a {2 * w}-bit residue, got width {t.width}")
        t = t.value
    n = ctx.n.value
    if not 0 <= t < n << w:
        raise ValueError(f"t out of range [0, n*2^{w})")
    low = Residue(t, w)
    m = low * ctx.neg_inv
    # t + m*n is divisible by 2**w by construction
    u = (t + m.value * n) >> w
    if u >= n:
        u -= n
    return Residue(u, w)


def to_montgomery(ctx: MontgomeryContext, x: int) -> int:
    return (x << ctx.width) % ctx.n.value


def mont_mul(ctx: MontgomeryContext, x: int, y: int) -> int:
    """Product of two Montgomery-form values, still in Montgomery form."""
    return redc(ctx, x * y).value


def exact_divide(numerator, d, *, width: int | None = None, verify: bool = False) -> Residue:
    """numerator / d for odd d dividing numerator, as numerator * d**-1 mod 2**w.

    With ``verify`` the quotient is multiplied back and InexactDivision is
    raised unless it reproduces the numerator as an ordinary integer.
    """
    if not isinstance(numerator, Residue):
        numerator = Residue(numerator, 64 if width is None else width)
    if isinstance(d, Residue):
        d = OddResidue.of(d)
    else:
        d = OddResidue(d, numerator.width)
    q = numerator * invert_improved(d)
    if verify and q.value * d.value != numerator.value:
        raise InexactDivision(f"{d.value} does not divide {numerator.value}")
    return q
