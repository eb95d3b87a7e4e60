import pytest

from inv2w.modring import Residue
from inv2w.seed_search import (FORMULA4, SearchOp as Op, SeedCandidate, candidates,
                               evaluate_candidate, passes, search)

# independent evaluator on plain ints, kept apart from SearchOp.apply
PLAIN = {
    Op.XOR: lambda x, y, m: (x ^ y) & m,
    Op.AND: lambda x, y, m: x & y,
    Op.OR: lambda x, y, m: (x | y) & m,
    Op.ADD: lambda x, y, m: (x + y) & m,
    Op.SUB: lambda x, y, m: (x - y) & m,
    Op.SHL: lambda x, y, m: (x << y) & m if y < m.bit_length() else 0,
}


def plain_ok(c, k, w):
    m = (1 << w) - 1
    for r in range(1, 1 << k, 2):
        left = PLAIN[c.op1](r, c.c1, m)
        right = PLAIN[c.op3](r, c.c2, m)
        x0 = PLAIN[c.op2](left, right, m)
        if (r * x0) % (1 << k) != 1:
            return False
    return True


def test_evaluate_examples():
    assert evaluate_candidate(FORMULA4, Residue(7, 8)).value == 247 == (5 - 14) % 256
    assert evaluate_candidate(SeedCandidate(Op.ADD, 0, Op.ADD, Op.AND, 0), Residue(5, 8)).value == 5
    zero = SeedCandidate(Op.OR, 0, Op.SUB, Op.OR, 0)
    assert all(evaluate_candidate(zero, Residue(r, 8)).value == 0 for r in range(256))


def test_formula4_found():
    found = search(4, 8, 15)
    assert FORMULA4 in found
    assert str(FORMULA4) == "(a XOR 2) SUB (a SHL 1)"


def test_k1_contains_constant_one():
    found = search(1, 8, 3)
    assert SeedCandidate(Op.AND, 1, Op.ADD, Op.AND, 0) in found


@pytest.mark.parametrize("k,w,cmax", [(1, 8, 3), (2, 8, 4), (3, 8, 6), (4, 8, 15), (4, 16, 5), (5, 8, 4)])
def test_sound_and_complete(k, w, cmax):
    found = search(k, w, cmax)
    assert found == sorted(found, key=_order_key)
    assert all(plain_ok(c, k, w) for c in found)
    everything = list(candidates(w, cmax))
    assert [c for c in everything if plain_ok(c, k, w)] == found


def _order_key(c):
    ops = list(Op)
    return (ops.index(c.op1), c.c1, ops.index(c.op2), ops.index(c.op3), c.c2)


def test_known_failing_candidate_rejected():
    bad = SeedCandidate(Op.XOR, 3, Op.SUB, Op.SHL, 1)
    assert not passes(bad, 4, 8)
    assert bad not in search(4, 8, 15)
    assert passes(FORMULA4, 4, 8)


def test_space_size():
    # SHL constants are capped at width - 1
    assert sum(1 for _ in candidates(64, 15)) == 6**3 * 16**2
    assert sum(1 for _ in candidates(8, 15)) == (5 * 16 + 8) ** 2 * 6


def test_deterministic():
    assert search(4, 8, 2) == search(4, 8, 2)


def test_bad_arguments():
    with pytest.raises(ValueError):
        search(9, 8, 15)
    with pytest.raises(ValueError):
        search(0, 8, 15)
    with pytest.raises(ValueError):
        search(4, 8, -1)
