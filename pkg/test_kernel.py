#!/usr/bin/env python3
"""
Hypergeometric kernel, correlation determinants and the rim-hook kernel
"""

import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

import pytest

from zmeasures.halfint import HalfInt, halfint_range
from zmeasures.kernel import (
    KernelSpec, K_closed, K_general, K_r, K_series, block_factorization, brute_corr_rimhook, component_shift,
    fraction_free_det, kernel_matrix, predicted_partition_function, rho_det, series_sum,
    truncated_partition_function,
)
from zmeasures.measure import Params, brute_corr
from zmeasures.partition import residue_index
from zmeasures.scalars import GaussianRational, NumericMode
from zmeasures.sl2me import ModuleParams

GRID = halfint_range(HalfInt(-7), HalfInt(7))
H = HalfInt


def test_vacuum_kernel():
    """At xi = 0 the kernel is the indicator of the negative half-integers on the diagonal"""
    ks = KernelSpec(Params(0.3, 0.7, 0.0))
    for i in GRID:
        for j in GRID:
            expected = 1 if (i == j and i.twice < 0) else 0
            assert K_series(i, j, ks) == expected
            assert K_closed(i, j, ks) == expected
    exact = KernelSpec(Params(Fraction(1, 3), Fraction(2, 3), 0, NumericMode.EXACT))
    assert K_series(H(-1), H(-1), exact) == 1 and isinstance(K_series(H(-1), H(-1), exact), int)
    assert rho_det([H(-3), H(-1)], exact) == 1
    assert rho_det([H(1)], exact) == 0


def test_series_matches_closed_form():
    for z, zp, xi in ((0.3, 0.7, 0.3), (1 + 2j, 1 - 2j, 0.2), (0.3, 0.7, 0.6)):
        ks = KernelSpec(Params(z, zp, xi))
        for i in GRID:
            for j in GRID:
                if i != j:
                    assert abs(K_series(i, j, ks) - K_closed(i, j, ks)) < 1e-8, (z, zp, xi, i, j)


def test_general_closed_form_off_the_mixture_line():
    """alpha, beta need not be tied to one xi"""
    for alpha, beta in ((0.2, 0.3), (-0.4, 0.5), (0.1j, 0.6)):
        mp = ModuleParams(0.3, 0.7, alpha, beta)
        for i in GRID:
            for j in GRID:
                if i != j:
                    assert abs(K_general(i, j, mp) - series_sum(i, j, mp)) < 1e-10, (alpha, beta, i, j)
    with pytest.raises(ValueError):
        K_general(H(1), H(1), ModuleParams(0.3, 0.7, 0.2, 0.3))


def test_diagonal_is_a_probability():
    for z, zp, xi in ((0.3, 0.7, 0.3), (1 + 2j, 1 - 2j, 0.2)):
        ks = KernelSpec(Params(z, zp, xi))
        for k in GRID:
            value = K_series(k, k, ks)
            assert abs(value.imag) < 1e-10
            assert -1e-12 <= value.real <= 1 + 1e-12
        # deep negative modes are almost surely occupied, high ones almost surely empty
        assert K_series(H(-7), H(-7), ks).real > K_series(H(7), H(7), ks).real


def test_determinant_matches_brute_force():
    for z, zp, xi in ((0.3, 0.7, 0.3), (1 + 2j, 1 - 2j, 0.2)):
        p = Params(z, zp, xi)
        ks = KernelSpec(p)
        for points in ([H(-1)], [H(1)], [H(-1), H(1)], [H(-3), H(1), H(5)]):
            brute, tail = brute_corr(points, p, 25)
            assert abs(complex(rho_det(points, ks)) - complex(brute)) <= tail.bound + 1e-6, (z, points)


def test_determinant_edge_cases():
    ks = KernelSpec(Params(0.3, 0.7, 0.3))
    assert rho_det([], ks) == 1
    # repeated points collapse to one
    assert rho_det([H(1), H(1)], ks) == pytest.approx(rho_det([H(1)], ks))
    with pytest.raises(ValueError):
        rho_det(halfint_range(H(-13), H(13)), ks)
    km = kernel_matrix([H(-1), H(1)], ks)
    assert km.entries.shape == (2, 2)
    assert km.condition >= 1


def test_fraction_free_det():
    assert fraction_free_det([[2, 1], [1, 3]]) == 5
    assert fraction_free_det([[1, 2], [2, 4]]) == 0
    assert fraction_free_det([[0, 1], [1, 0]]) == -1
    assert fraction_free_det([]) == 1
    half = Fraction(1, 2)
    m = [[half, 1, 0], [1, half, 1], [0, 1, half]]
    assert fraction_free_det(m) == Fraction(1, 8) - 1
    g = GaussianRational(0, 1)
    assert fraction_free_det([[g, 1], [1, g]]) == -2


def test_component_shift():
    assert component_shift(0, 1) == 0
    assert component_shift(0, 2) == Fraction(-1, 4)
    assert component_shift(1, 2) == Fraction(1, 4)
    assert component_shift(1, 3) == 0


def test_rimhook_kernel_blocks():
    ks = KernelSpec(Params(0.3, 0.7, 0.3), r=2)
    for i in GRID:
        for j in GRID:
            if residue_index(i, 2) != residue_index(j, 2):
                assert K_r(i, j, ks) == 0
    # 1/2 and 3/2 lie in different residue classes
    km = kernel_matrix([H(1), H(3)], ks)
    assert km.entries[0, 1] == 0 and km.entries[1, 0] == 0
    factorization = block_factorization([H(-3), H(-1), H(1), H(3)], ks)
    assert sorted(factorization.groups) == [0, 1]
    assert factorization.gap < 1e-12


def test_rimhook_series_matches_closed():
    ks = KernelSpec(Params(0.3, 0.7, 0.3), r=3)
    for i in GRID:
        for j in GRID:
            if i != j and residue_index(i, 3) == residue_index(j, 3):
                assert abs(K_r(i, j, ks, method="series") - K_r(i, j, ks)) < 1e-8


def test_rimhook_determinant_matches_weights():
    ks = KernelSpec(Params(0.3, 0.7, 0.3), r=2)
    for points in ([H(-1)], [H(1)], [H(-1), H(3)], [H(-3), H(1)]):
        result = brute_corr_rimhook(points, ks, 20)
        assert abs(complex(rho_det(points, ks)) - result.value) <= result.tail.bound + 1e-5, points


def test_rimhook_partition_function():
    for r, size in ((2, 20), (3, 24)):
        ks = KernelSpec(Params(0.3, 0.7, 0.3), r=r)
        result = brute_corr_rimhook([], ks, size)
        assert result.value == pytest.approx(1)
        truncated = truncated_partition_function(ks, size)
        assert abs(result.z_truncated - truncated) <= 1e-10 * abs(truncated)
        assert result.z_predicted == predicted_partition_function(ks)
        assert result.relative_gap < 1e-3


def test_rimhook_reduces_to_plain_kernel():
    """r = 1 has a single residue class with no shift"""
    p = Params(0.3, 0.7, 0.3)
    plain, hooked = KernelSpec(p), KernelSpec(p, r=1)
    for i, j in combinations(GRID, 2):
        assert K_closed(i, j, plain) == K_r(i, j, hooked)
    with pytest.raises(ValueError):
        KernelSpec(p, r=0)


if __name__ == "__main__":
    print("=== zmeasures kernel tests ===\n")
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"✓ {name}")
    print("\nAll kernel tests passed!")
