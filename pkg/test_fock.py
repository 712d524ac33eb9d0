#!/usr/bin/env python3
"""
Semi-infinite wedge: fermions, charge, energy and the fermionic sl(2) operators
"""

import sys
from fractions import Fraction
from pathlib import Path

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

import pytest

from zmeasures.errors import ChargeError, WindowError
from zmeasures.fock import (
    WedgeVector, charge, energy, fermionic_D, fermionic_L, fermionic_U, from_wedge, occupation, psi,
    psi_star, required_window, to_wedge,
)
from zmeasures.halfint import HalfInt, halfint_range
from zmeasures.kerov import KerovParams, PartitionVector, apply_D, apply_L, apply_U
from zmeasures.partition import EMPTY, MayaSet, Partition, maya, partitions_up_to
from zmeasures.scalars import GaussianRational

Z = Fraction(2, 7)
ZP = GaussianRational(Fraction(1, 3), Fraction(1, 5))
WINDOW = halfint_range(HalfInt(-11), HalfInt(11))


def test_charge_and_energy():
    vacuum = MayaSet.vacuum()
    assert charge(vacuum) == 0 and energy(vacuum) == 0
    s = maya(Partition((3, 1)))
    assert charge(s) == 0 and energy(s) == 4
    shifted = vacuum.shifted(2)
    assert charge(shifted) == 2
    assert energy(shifted) == Fraction(1, 2) + Fraction(3, 2)
    assert occupation(HalfInt(-1), vacuum) == 1
    assert occupation(HalfInt(1), vacuum) == 0


def test_psi_signs():
    """psi_k on the vacuum creates k; its sign counts the occupied modes above k"""
    vacuum = WedgeVector.vacuum()
    created = psi(HalfInt(1), vacuum)
    assert dict(created.items()) == {MayaSet.vacuum().with_added(HalfInt(1)): 1}
    assert len(psi(HalfInt(-1), vacuum)) == 0
    # removing -3/2 passes over the occupied -1/2
    removed = psi_star(HalfInt(-3), vacuum)
    assert dict(removed.items()) == {MayaSet.vacuum().with_removed(HalfInt(-3)): -1}


def test_anticommutation():
    """{psi_k, psi*_l} = delta_kl, {psi_k, psi_l} = {psi*_k, psi*_l} = 0 on a window of 12 modes"""
    states = [maya(lam).shifted(q) for lam in partitions_up_to(3) for q in (-1, 0, 1)]
    for state in states:
        v = WedgeVector.basis(state)
        for k in WINDOW:
            for l in WINDOW:
                mixed = psi(k, psi_star(l, v)) + psi_star(l, psi(k, v))
                if k == l:
                    mixed = mixed - v
                assert len(mixed) == 0
                assert len(psi(k, psi(l, v)) + psi(l, psi(k, v))) == 0
                assert len(psi_star(k, psi_star(l, v)) + psi_star(l, psi_star(k, v))) == 0


def test_identification_with_kerov():
    """Fermionic U_r, D_r, L_r are Kerov's operators under delta_lambda <-> delta_S(lambda)"""
    for r in (1, 2, 3):
        p = KerovParams(Z, ZP, r)
        for lam in partitions_up_to(7):
            v = PartitionVector.basis(lam)
            w = to_wedge(v)
            assert (from_wedge(fermionic_U(w, Z, r)) - apply_U(v, p)).max_abs() == 0
            assert (from_wedge(fermionic_D(w, ZP, r)) - apply_D(v, p)).max_abs() == 0
            assert (from_wedge(fermionic_L(w, Z, ZP, r)) - apply_L(v, p)).max_abs() == 0


def test_l_on_charged_states():
    """L = 2H + (z+z')C + zz' also off the charge-zero sector"""
    state = MayaSet.vacuum().shifted(1)
    v = WedgeVector.basis(state)
    lv = fermionic_L(v, Z, ZP)
    assert lv.coefficient(state) == 2 * state.energy + (Z + ZP) + Z * ZP
    # [D, U] reproduces it
    commutator = fermionic_D(fermionic_U(v, Z), ZP) - fermionic_U(fermionic_D(v, ZP), Z)
    assert len(commutator - lv) == 0


def test_wedge_conversion():
    v = PartitionVector({Partition((2,)): 3, EMPTY: Fraction(1, 2)})
    assert from_wedge(to_wedge(v)) == v
    with pytest.raises(ChargeError):
        from_wedge(WedgeVector.basis(MayaSet.vacuum().shifted(-1)))


def test_windows():
    s = maya(Partition((2, 1)))
    low, high = required_window(s, 2)
    assert low == HalfInt(-3) - 2 and high == HalfInt(3) + 2
    v = WedgeVector.basis(s)
    assert fermionic_U(v, Z, 2, window=(HalfInt(-9), HalfInt(9))) == fermionic_U(v, Z, 2)
    with pytest.raises(WindowError):
        fermionic_U(v, Z, 2, window=(HalfInt(-1), HalfInt(1)))


if __name__ == "__main__":
    print("=== zmeasures Fock space tests ===\n")
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"✓ {name}")
    print("\nAll Fock space tests passed!")
