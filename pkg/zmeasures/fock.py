"""
Semi-infinite wedge: fermionic creation/annihilation operators on states
delta_S = v_s1 ^ v_s2 ^ ... indexed by Maya sets, charge and energy, and the
fermionic bilinears that realize U_r, D_r, L on the charge-zero sector
"""

import logging
from collections.abc import Mapping
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

from .errors import ChargeError, WindowError
from .halfint import HalfInt
from .kerov import PartitionVector
from .partition import MayaSet, from_maya, maya

logger = logging.getLogger(__name__)

FermionState = MayaSet

Window = Tuple[HalfInt, HalfInt]


def state_key(s: FermionState):
    return (s.charge, s.energy, tuple(sorted(s.plus, reverse=True)), tuple(sorted(s.minus)))


class WedgeVector(Mapping):
    """Finite linear combination of basis states delta_S"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[FermionState, object]] = None):
        self._terms = {s: c for s, c in dict(terms or {}).items() if c != 0}

    @classmethod
    def basis(cls, state: FermionState, coefficient=1) -> "WedgeVector":
        return cls({state: coefficient})

    @classmethod
    def vacuum(cls) -> "WedgeVector":
        return cls.basis(MayaSet.vacuum())

    def __getitem__(self, state: FermionState):
        return self._terms[state]

    def __iter__(self) -> Iterator[FermionState]:
        return iter(sorted(self._terms, key=state_key))

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, state: FermionState):
        return self._terms.get(state, 0)

    def __add__(self, other: "WedgeVector") -> "WedgeVector":
        terms = dict(self._terms)
        for s, c in other.items():
            terms[s] = terms.get(s, 0) + c
        return WedgeVector(terms)

    def __sub__(self, other: "WedgeVector") -> "WedgeVector":
        return self + (-1) * other

    def __mul__(self, scalar) -> "WedgeVector":
        return WedgeVector({s: c * scalar for s, c in self._terms.items()})

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return max((float(abs(c)) for c in self._terms.values()), default=0.0)


def _parity(n: int) -> int:
    return -1 if n % 2 else 1


def psi(k: HalfInt, v: WedgeVector) -> WedgeVector:
    """Exterior multiplication by v_k: sign (-1)^#{s in S : s > k}"""
    terms: Dict[FermionState, object] = {}
    for s, c in v.items():
        if k in s:
            continue
        target = s.with_added(k)
        terms[target] = terms.get(target, 0) + _parity(s.count_above(k)) * c
    return WedgeVector(terms)


def psi_star(k: HalfInt, v: WedgeVector) -> WedgeVector:
    """Contraction with v_k: for k = s_i removes it with sign (-1)^(i+1)"""
    terms: Dict[FermionState, object] = {}
    for s, c in v.items():
        if k not in s:
            continue
        target = s.with_removed(k)
        terms[target] = terms.get(target, 0) + _parity(s.count_above(k)) * c
    return WedgeVector(terms)


def occupation(k: HalfInt, state: FermionState) -> int:
    return 1 if k in state else 0


def charge(state: FermionState) -> int:
    return state.charge


def energy(state: FermionState) -> Fraction:
    return Fraction(state.energy)


def required_window(state: FermionState, r: int = 1) -> Window:
    """Smallest window holding every deviation of the state from the vacuum plus r modes of slack"""
    low, high = state.window()
    return low - r, high + r


def _check_window(state: FermionState, r: int, window: Optional[Window]) -> Window:
    needed = required_window(state, r)
    if window is None:
        return needed
    low, high = window
    if low > needed[0] or high < needed[1]:
        raise WindowError(
            f"window [{low}, {high}] does not cover [{needed[0]}, {needed[1]}] needed by the state")
    return window


def _hop(v: WedgeVector, step: int, weight, r: int, window: Optional[Window]) -> WedgeVector:
    """sum_k weight(k) psi_(k+step) psi*_k over the window of each state"""
    terms: Dict[FermionState, object] = {}
    for s, c in v.items():
        low, high = _check_window(s, r, window)
        for t in range(low.twice, high.twice + 1, 2):
            k = HalfInt(t)
            destination = k + step
            if k not in s or destination in s:
                continue
            removed = s.with_removed(k)
            sign = _parity(s.count_above(k) + removed.count_above(destination))
            target = removed.with_added(destination)
            terms[target] = terms.get(target, 0) + sign * weight(k) * c
    return WedgeVector(terms)


def fermionic_U(v: WedgeVector, z, r: int = 1, window: Optional[Window] = None) -> WedgeVector:
    """U_r = sum_k (z + k/r + 1/2) psi_(k+r) psi*_k"""
    return _hop(v, r, lambda k: z + k.value / r + Fraction(1, 2), r, window)


def fermionic_D(v: WedgeVector, zp, r: int = 1, window: Optional[Window] = None) -> WedgeVector:
    """D_r = sum_k (z' + k/r - 1/2) psi_(k-r) psi*_k"""
    return _hop(v, -r, lambda k: zp + k.value / r - Fraction(1, 2), r, window)


def fermionic_L(v: WedgeVector, z, zp, r: int = 1) -> WedgeVector:
    """L = 2H + (z+z')C + zz' for r = 1; [D_r, U_r] otherwise"""
    if r == 1:
        return WedgeVector({s: c * (2 * s.energy + (z + zp) * s.charge + z * zp) for s, c in v.items()})
    return fermionic_D(fermionic_U(v, z, r), zp, r) - fermionic_U(fermionic_D(v, zp, r), z, r)


def to_wedge(v: PartitionVector) -> WedgeVector:
    """delta_lambda -> delta_S(lambda)"""
    return WedgeVector({maya(lam): c for lam, c in v.items()})


def from_wedge(v: WedgeVector) -> PartitionVector:
    """Inverse of to_wedge on the charge-zero sector"""
    terms = {}
    for s, c in v.items():
        if s.charge != 0:
            raise ChargeError(f"state {s} has charge {s.charge}, expected 0")
        terms[from_maya(s)] = c
    return PartitionVector(terms)
