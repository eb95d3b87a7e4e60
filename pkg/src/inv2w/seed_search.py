"""Brute-force search for two-operation seed formulas.

A candidate has the shape ``(r op1 c1) op2 (r op3 c2)`` over the operators
XOR, AND, OR, ADD, SUB and SHL, evaluated with wrapping arithmetic at the
search width.  It passes when ``r * x0 == 1 (mod 2**k)`` for every odd r
below ``2**k``.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from itertools import product

from .modring import Residue


class SearchOp(enum.Enum):
    XOR = "XOR"
    AND = "AND"
    OR = "OR"
    ADD = "ADD"
    SUB = "SUB"
    SHL = "SHL"

    def apply(self, x: Residue, y) -> Residue:
        return _APPLY[self](x, y)


_APPLY = {
    SearchOp.XOR: operator.xor,
    SearchOp.AND: operator.and_,
    SearchOp.OR: operator.or_,
    SearchOp.ADD: operator.add,
    SearchOp.SUB: operator.sub,
    SearchOp.SHL: operator.lshift,
}


@dataclass(frozen=True, order=True)
class SeedCandidate:
    op1: SearchOp
    c1: int
    op2: SearchOp
    op3: SearchOp
    c2: int

    def __str__(self):
        return (f"(a {self.op1.value} {self.c1}) {self.op2.value} "
                f"(a {self.op3.value} {self.c2})")


# Formula 4 of the seed table, as a candidate
FORMULA4 = SeedCandidate(SearchOp.XOR, 2, SearchOp.SUB, SearchOp.SHL, 1)


def evaluate_candidate(c: SeedCandidate, r: Residue) -> Residue:
    left = c.op1.apply(r, c1_as(c.op1, c.c1, r.width))
    right = c.op3.apply(r, c1_as(c.op3, c.c2, r.width))
    if c.op2 is SearchOp.SHL:
        return left << right
    return c.op2.apply(left, right)


def c1_as(op: SearchOp, c: int, width: int):
    # shift constants stay plain counts; everything else is a residue
    if op is SearchOp.SHL:
        return c
    return Residue(c, width)


def passes(c: SeedCandidate, k: int, width: int) -> bool:
    """True if c is correct to k bits for every odd r below 2**k."""
    m = (1 << k) - 1
    for r in range(1, 1 << k, 2):
        x0 = evaluate_candidate(c, Residue(r, width))
        if (r * x0.value) & m != 1:
            return False
    return True


def _constants(op, const_max, width):
    top = min(const_max, width - 1) if op is SearchOp.SHL else const_max
    return range(top + 1)


def candidates(width: int, const_max: int):
    """Every candidate of the space, in (op1, c1, op2, op3, c2) order."""
    ops = list(SearchOp)
    for op1 in ops:
        for c1 in _constants(op1, const_max, width):
            for op2, op3 in product(ops, ops):
                for c2 in _constants(op3, const_max, width):
                    yield SeedCandidate(op1, c1, op2, op3, c2)


def search(k: int = 4, width: int = 8, const_max: int = 15) -> list[SeedCandidate]:
    """All candidates correct to ``k`` bits, in enumeration order.

    Each side ``r op c`` is tabulated once per odd r, so the inner loop only
    combines two precomputed tables.
    """
    if not 1 <= k <= width:
        raise ValueError(f"need 1 <= k <= width, got k={k}, width={width}")
    if const_max < 0:
        raise ValueError("const_max must be nonnegative")
    odd = [Residue(r, width) for r in range(1, 1 << k, 2)]
    m = (1 << k) - 1
    ops = list(SearchOp)
    sides = {
        (op, c): [op.apply(r, c1_as(op, c, width)) for r in odd]
        for op in ops for c in _constants(op, const_max, width)
    }
    found = []
    for op1 in ops:
        for c1 in _constants(op1, const_max, width):
            left = sides[op1, c1]
            for op2, op3 in product(ops, ops):
                for c2 in _constants(op3, const_max, width):
                    right = sides[op3, c2]
                    for r, lv, rv in zip(odd, left, right):
                        x0 = lv << rv if op2 is SearchOp.SHL else op2.apply(lv, rv)
                        if (r.value * x0.value) & m != 1:
                            break
                    else:
                        found.append(SeedCandidate(op1, c1, op2, op3, c2))
    return found
