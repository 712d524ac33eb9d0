#!/usr/bin/env python3
"""
Partitions, Maya sets, rim hooks and the r-core / r-quotient decomposition
"""

import math
import sys
from pathlib import Path

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

import pytest

from zmeasures.errors import ChargeError, ParseError
from zmeasures.halfint import HalfInt, parse_halfint
from zmeasures.partition import (
    EMPTY, MayaSet, Partition, Square, addable_rim_hooks, combine_components, conjugate, core_quotient,
    dim, enumerate_partitions, format_partition, frobenius, from_component, from_core_quotient, from_maya,
    hook_length, hook_lengths, maya, parse_partition, partitions_up_to, removable_rim_hooks, residue_index,
    split_components, to_component,
)


def P(*parts):
    return Partition(tuple(parts))


def test_enumeration():
    """Counts and reverse lexicographic order"""
    assert len(enumerate_partitions(20)) == 627
    assert [p.parts for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(0) == [EMPTY]
    assert len(partitions_up_to(5)) == 1 + 1 + 2 + 3 + 5 + 7
    with pytest.raises(ValueError):
        enumerate_partitions(-1)


def test_parse_and_format():
    assert parse_partition("4,2,1") == P(4, 2, 1)
    assert parse_partition("-") == EMPTY
    assert format_partition(P(3, 1)) == "3,1"
    assert format_partition(EMPTY) == "-"
    with pytest.raises(ParseError):
        parse_partition("2,x")
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_hooks_and_dim():
    """Hook lengths, conjugation and sum of dim^2 = n!"""
    assert hook_lengths(P(3, 1)) == [4, 2, 1, 1]
    assert conjugate(P(3, 1)) == P(2, 1, 1)
    assert conjugate(EMPTY) == EMPTY
    for n in range(9):
        assert sum(dim(lam) ** 2 for lam in enumerate_partitions(n)) == math.factorial(n)


def test_single_hook_length():
    assert hook_length(P(4, 2, 1), Square(1, 2)) == 4
    assert hook_length(P(4, 2, 1), Square(1, 1)) == 6
    assert hook_length(P(4, 2, 1), Square(3, 1)) == 1
    for lam in partitions_up_to(6):
        hooks = [hook_length(lam, Square(i, j)) for i in range(1, lam.length + 1) for j in range(1, lam.part(i) + 1)]
        assert hooks == hook_lengths(lam)
    with pytest.raises(ValueError):
        hook_length(P(4, 2, 1), Square(2, 3))


def test_frobenius_coordinates():
    h = parse_halfint
    assert frobenius(EMPTY) == (frozenset(), frozenset())
    assert frobenius(P(2, 1)) == (frozenset({h("3/2")}), frozenset({h("-3/2")}))
    assert frobenius(P(2, 2)) == (frozenset({h("3/2"), h("1/2")}), frozenset({h("-1/2"), h("-3/2")}))
    for lam in partitions_up_to(8):
        plus, minus = frobenius(lam)
        diagonal = sum(1 for i in range(1, lam.length + 1) if lam.part(i) >= i)
        assert len(plus) == len(minus) == diagonal


def test_maya_sets():
    """S(lambda) = {lambda_i - i + 1/2}, charge 0 and energy |lambda|"""
    s = maya(P(2, 1))
    assert s.plus == frozenset({parse_halfint("3/2")})
    assert s.minus == frozenset({parse_halfint("-3/2")})
    assert parse_halfint("-1/2") in s
    assert parse_halfint("-3/2") not in s
    assert parse_halfint("-5/2") in s
    for lam in partitions_up_to(8):
        s = maya(lam)
        assert s.charge == 0
        assert s.energy == lam.size
        assert from_maya(s) == lam
    assert maya(EMPTY) == MayaSet.vacuum()


def test_from_maya_rejects_charge():
    with pytest.raises(ChargeError):
        from_maya(MayaSet.vacuum().shifted(1))
    assert MayaSet.vacuum().shifted(-2).charge == -2


def test_rim_hooks_of_empty():
    """Two dominoes on the empty diagram: (2) of height 1, (1,1) of height 2"""
    hooks = addable_rim_hooks(EMPTY, 2)
    assert [h.target for h in hooks] == [P(2), P(1, 1)]
    assert [h.sign for h in hooks] == [1, -1]
    assert [h.content_sum for h in hooks] == [1, -1]


def test_rim_hooks_add_and_remove_agree():
    for r in (1, 2, 3):
        for lam in partitions_up_to(7):
            for hook in addable_rim_hooks(lam, r):
                assert hook.target.size == lam.size + r
                back = [h for h in removable_rim_hooks(hook.target, r) if h.target == lam]
                assert len(back) == 1
                assert back[0].height == hook.height
                assert back[0].content_sum == hook.content_sum


def test_residue_components():
    """k <-> (residue class, t) is a bijection on Z + 1/2"""
    for r in (1, 2, 3, 5):
        for t in range(-21, 22, 2):
            k = HalfInt(t)
            j = residue_index(k, r)
            assert 0 <= j < r
            assert from_component(to_component(k, r), j, r) == k


def test_split_and_combine():
    for r in (2, 3):
        for lam in partitions_up_to(7):
            s = maya(lam)
            components = split_components(s, r)
            assert sum(c.charge for c in components) == 0
            assert combine_components(components) == s


def test_core_quotient():
    cq = core_quotient(P(2), 2)
    assert cq.core == EMPTY
    assert sum(q.size for q in cq.quotients) == 1
    cq = core_quotient(P(2, 1), 2)
    assert cq.core == P(2, 1)
    assert all(q == EMPTY for q in cq.quotients)
    for r in (2, 3):
        for lam in partitions_up_to(9):
            cq = core_quotient(lam, r)
            assert lam.size == cq.core.size + r * sum(q.size for q in cq.quotients)
            assert from_core_quotient(cq.core, cq.quotients) == lam
    with pytest.raises(ValueError):
        from_core_quotient(P(2), (EMPTY, EMPTY))


def test_empty_core_count():
    """Partitions of 2m with empty 2-core are counted by pairs of partitions of total size m"""
    pairs = [sum(len(enumerate_partitions(a)) * len(enumerate_partitions(m - a)) for a in range(m + 1))
             for m in range(5)]
    for m, expected in enumerate(pairs):
        count = sum(1 for lam in enumerate_partitions(2 * m) if core_quotient(lam, 2).core == EMPTY)
        assert count == expected


if __name__ == "__main__":
    print("=== zmeasures partition tests ===\n")
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"✓ {name}")
    print("\nAll partition tests passed!")
