"""
Kerov's operators U, D, L and their rim-hook versions U_r, D_r, L_r acting on
finite linear combinations of partitions
"""

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from scipy import sparse

from .errors import DegenerateParametersError, MathDomainError
from .partition import (
    EMPTY, Partition, RimHook, addable_rim_hooks, canonical_key, enumerate_partitions,
    partitions_up_to, removable_rim_hooks,
)
from .sl2me import poch_rising

logger = logging.getLogger(__name__)


class PartitionVector(Mapping):
    """Finite linear combination sum c_lambda delta_lambda; zero coefficients are dropped"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Partition, object]] = None):
        self._terms = {lam: c for lam, c in dict(terms or {}).items() if c != 0}

    @classmethod
    def basis(cls, partition: Partition, coefficient=1) -> "PartitionVector":
        return cls({partition: coefficient})

    def __getitem__(self, partition: Partition):
        return self._terms[partition]

    def __iter__(self) -> Iterator[Partition]:
        return iter(sorted(self._terms, key=canonical_key))

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, partition: Partition):
        return self._terms.get(partition, 0)

    def __add__(self, other: "PartitionVector") -> "PartitionVector":
        terms = dict(self._terms)
        for lam, c in other.items():
            terms[lam] = terms.get(lam, 0) + c
        return PartitionVector(terms)

    def __sub__(self, other: "PartitionVector") -> "PartitionVector":
        return self + (-1) * other

    def __neg__(self) -> "PartitionVector":
        return (-1) * self

    def __mul__(self, scalar) -> "PartitionVector":
        return PartitionVector({lam: c * scalar for lam, c in self._terms.items()})

    __rmul__ = __mul__

    def truncate(self, max_size: int) -> "PartitionVector":
        return PartitionVector({lam: c for lam, c in self._terms.items() if lam.size <= max_size})

    def grade(self, n: int) -> "PartitionVector":
        return PartitionVector({lam: c for lam, c in self._terms.items() if lam.size == n})

    def inner(self, other: "PartitionVector"):
        """Bilinear pairing (u, v) = sum u_lambda v_lambda in the orthonormal basis"""
        total = 0
        for lam, c in self._terms.items():
            if lam in other:
                total = total + c * other[lam]
        return total

    @property
    def max_size(self) -> int:
        return max((lam.size for lam in self._terms), default=-1)

    def max_abs(self) -> float:
        return max((float(abs(c)) for c in self._terms.values()), default=0.0)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*[{lam}]" for lam, c in self.items())
        return f"PartitionVector({body or '0'})"


ZERO = PartitionVector()


@dataclass(frozen=True)
class KerovParams:
    z: object
    zp: object
    r: int = 1

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r!r}")


class Generator(str, Enum):
    U = "U"
    D = "D"


@lru_cache(maxsize=None)
def _up_hooks(partition: Partition, r: int) -> Tuple[RimHook, ...]:
    return tuple(addable_rim_hooks(partition, r))


@lru_cache(maxsize=None)
def _down_hooks(partition: Partition, r: int) -> Tuple[RimHook, ...]:
    return tuple(removable_rim_hooks(partition, r))


def hook_weight(hook: RimHook, parameter, r: int):
    """(-1)^(height+1) (parameter + contentSum / r^2)"""
    return hook.sign * (parameter + Fraction(hook.content_sum, r * r))


def apply_U(v: PartitionVector, p: KerovParams) -> PartitionVector:
    """U_r delta_lambda = sum over added r-rim hooks of (-1)^(ht+1) (z + contentSum/r^2) delta_mu"""
    terms: Dict[Partition, object] = {}
    for lam, c in v.items():
        for hook in _up_hooks(lam, p.r):
            terms[hook.target] = terms.get(hook.target, 0) + c * hook_weight(hook, p.z, p.r)
    return PartitionVector(terms)


def apply_D(v: PartitionVector, p: KerovParams) -> PartitionVector:
    """D_r delta_lambda = sum over removed r-rim hooks of (-1)^(ht+1) (z' + contentSum/r^2) delta_mu"""
    terms: Dict[Partition, object] = {}
    for lam, c in v.items():
        for hook in _down_hooks(lam, p.r):
            terms[hook.target] = terms.get(hook.target, 0) + c * hook_weight(hook, p.zp, p.r)
    return PartitionVector(terms)


def apply_L(v: PartitionVector, p: KerovParams) -> PartitionVector:
    """L delta_lambda = (zz' + 2|lambda|) delta_lambda; for r > 1, L_r = [D_r, U_r]"""
    if p.r == 1:
        return PartitionVector({lam: c * (p.z * p.zp + 2 * lam.size) for lam, c in v.items()})
    return apply_D(apply_U(v, p), p) - apply_U(apply_D(v, p), p)


def _apply(gen: Generator, v: PartitionVector, p: KerovParams) -> PartitionVector:
    return apply_U(v, p) if Generator(gen) == Generator.U else apply_D(v, p)


def exp_apply(gen: Generator, coeff, v: PartitionVector, p: KerovParams,
              size_cap: Optional[int] = None, tol: float = 0.0) -> PartitionVector:
    """
    exp(coeff * gen) v.

    D is locally nilpotent, so the D series is summed to the end. The U series is
    cut at size_cap; every component of size <= size_cap is exact because U only
    raises sizes. Coefficients of magnitude <= tol are dropped (tol=0 keeps all).
    """
    gen = Generator(gen)
    if gen == Generator.U:
        if size_cap is None:
            raise ValueError("exp_apply(U) needs a size_cap")
        if size_cap < v.max_size:
            raise ValueError(f"size_cap {size_cap} is below the input size {v.max_size}")
    total = v
    term = v
    s = 0
    while term:
        s += 1
        term = _apply(gen, term, p) * (coeff * Fraction(1, s))
        if gen == Generator.U:
            term = term.truncate(size_cap)
        if tol > 0:
            term = PartitionVector({lam: c for lam, c in term.items() if abs(c) > tol})
        total = total + term
    logger.debug("exp_apply(%s) summed %d terms", gen.value, s - 1)
    return total


@lru_cache(maxsize=256)
def _power_from_vacuum(n: int, p: KerovParams) -> PartitionVector:
    if n == 0:
        return PartitionVector.basis(EMPTY)
    return apply_U(_power_from_vacuum(n - 1, p), p)


def _power_to_vacuum(partition: Partition, p: KerovParams):
    v = PartitionVector.basis(partition)
    for _ in range(partition.size):
        v = apply_D(v, p)
    return v.coefficient(EMPTY)


def matrix_element_Mn(partition: Partition, p: KerovParams):
    """(U^n delta_0, delta_lambda) (D^n delta_lambda, delta_0) / (n! (zz')_n) with n = |lambda|"""
    if p.r != 1:
        raise ValueError("matrix_element_Mn is defined for r = 1")
    n = partition.size
    denominator = Fraction(math.factorial(n)) * poch_rising(p.z * p.zp, n)
    if denominator == 0:
        raise DegenerateParametersError(f"(zz')_{n} vanishes for z={p.z}, z'={p.zp}")
    up = _power_from_vacuum(n, p).coefficient(partition)
    return up * _power_to_vacuum(partition, p) / denominator


@dataclass
class GradedMatrix:
    """Sparse matrix of U_r or D_r from the partitions of one size to another, canonical order"""

    matrix: sparse.csr_matrix
    sources: List[Partition]
    targets: List[Partition]


@lru_cache(maxsize=512)
def graded_matrix(gen: Generator, n: int, p: KerovParams) -> GradedMatrix:
    """Complex sparse matrix of gen between sizes n and n +- r (rows: targets)"""
    gen = Generator(gen)
    target_size = n + p.r if gen == Generator.U else n - p.r
    sources = enumerate_partitions(n)
    targets = enumerate_partitions(target_size) if target_size >= 0 else []
    index = {lam: row for row, lam in enumerate(targets)}
    rows, cols, values = [], [], []
    for col, lam in enumerate(sources):
        hooks = _up_hooks(lam, p.r) if gen == Generator.U else _down_hooks(lam, p.r)
        parameter = p.z if gen == Generator.U else p.zp
        for hook in hooks:
            rows.append(index[hook.target])
            cols.append(col)
            values.append(complex(hook_weight(hook, parameter, p.r)))
    matrix = sparse.csr_matrix(
        (np.array(values, dtype=complex), (rows, cols)), shape=(len(targets), len(sources)))
    return GradedMatrix(matrix=matrix, sources=sources, targets=targets)


def _l_diagonal(n: int, p: KerovParams) -> np.ndarray:
    """Eigenvalues of L_r = [D_r, U_r] on the partitions of n"""
    up = graded_matrix(Generator.U, n, p).matrix
    down_above = graded_matrix(Generator.D, n + p.r, p).matrix
    du = (down_above @ up).diagonal()
    if n >= p.r:
        ud = (graded_matrix(Generator.U, n - p.r, p).matrix @ graded_matrix(Generator.D, n, p).matrix).diagonal()
    else:
        ud = np.zeros(len(enumerate_partitions(n)), dtype=complex)
    return du - ud


@dataclass
class DUReport:
    """Discrepancy of exp(bD) exp(aU) = exp(a'U) (1-ab)^(-L) exp(b'D) on graded components"""

    alpha: complex
    beta: complex
    inputs: int
    compared_size: int
    size_cap: int
    series_cut: int
    convergence_bound: float
    max_discrepancy: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_discrepancy <= self.tol and self.convergence_bound <= self.tol


def _down_chain(vec: np.ndarray, grade: int, beta: complex, p: KerovParams,
                keep_below: int) -> Dict[int, np.ndarray]:
    """exp(beta D) applied to a single graded piece, restricted to grades <= keep_below"""
    out: Dict[int, np.ndarray] = {}
    term, g, s = vec, grade, 0
    while True:
        if g <= keep_below:
            out[g] = out.get(g, 0) + term
        if g < p.r:
            break
        s += 1
        term = (graded_matrix(Generator.D, g, p).matrix @ term) * (beta / s)
        g -= p.r
    return out


def verify_DU(alpha, beta, p: KerovParams, size_cap: int, tol: float = 1e-10,
              max_extension: int = 24) -> DUReport:
    """
    Apply both sides of exp(bD) exp(aU) = exp(aU/(1-ab)) (1-ab)^(-L) exp(bD/(1-ab))
    to every delta_lambda with |lambda| <= size_cap/2 and compare components of
    size <= size_cap/2. The right side is exact there. The U series on the left is
    continued past size_cap until a whole order contributes less than tol/10, at
    most max_extension sizes further; the last contribution is the reported bound.
    """
    alpha, beta = complex(alpha), complex(beta)
    ab = alpha * beta
    if abs(ab) >= 1:
        raise MathDomainError(f"|alpha beta| = {abs(ab):.6g} must be below 1")
    half = size_cap // 2
    a2, b2 = alpha / (1 - ab), beta / (1 - ab)
    max_discrepancy = 0.0
    worst_bound = 0.0
    deepest = size_cap
    inputs = 0
    for n in range(half + 1):
        for col, lam in enumerate(enumerate_partitions(n)):
            inputs += 1
            start = np.zeros(len(enumerate_partitions(n)), dtype=complex)
            start[col] = 1.0

            # left: exp(bD) exp(aU) delta_lambda
            left: Dict[int, np.ndarray] = {}
            term, g, s, quiet, bound = start, n, 0, 0, 0.0
            while True:
                piece = _down_chain(term, g, beta, p, half)
                contribution = max((float(np.max(np.abs(v))) for v in piece.values() if np.size(v)), default=0.0)
                for grade, v in piece.items():
                    left[grade] = left.get(grade, 0) + v
                if g >= size_cap:
                    bound = contribution
                    quiet = quiet + 1 if contribution < tol / 10 else 0
                    if quiet >= 2 or g >= size_cap + max_extension:
                        break
                s += 1
                term = (graded_matrix(Generator.U, g, p).matrix @ term) * (alpha / s)
                g += p.r
            deepest = max(deepest, g)
            worst_bound = max(worst_bound, bound)

            # right: exp(a'U) (1-ab)^(-L) exp(b'D) delta_lambda
            right: Dict[int, np.ndarray] = {}
            for grade, v in _down_chain(start, n, b2, p, half).items():
                scaled = v * (1 - ab) ** (-_l_diagonal(grade, p))
                u_term, ug, us = scaled, grade, 0
                while ug <= half:
                    right[ug] = right.get(ug, 0) + u_term
                    us += 1
                    u_term = (graded_matrix(Generator.U, ug, p).matrix @ u_term) * (a2 / us)
                    ug += p.r

            for grade in set(left) | set(right):
                diff = np.asarray(left.get(grade, 0) - right.get(grade, 0))
                if diff.size:
                    max_discrepancy = max(max_discrepancy, float(np.max(np.abs(diff))))
    logger.debug("verify_DU: %d inputs, series cut at size %d, bound %.3g", inputs, deepest, worst_bound)
    return DUReport(alpha=alpha, beta=beta, inputs=inputs, compared_size=half, size_cap=size_cap,
                    series_cut=deepest, convergence_bound=worst_bound,
                    max_discrepancy=max_discrepancy, tol=tol)


def commutator_residues(p: KerovParams, max_size: int) -> Dict[str, float]:
    """Largest coefficient of [D,U]-L, [L,U]-2U and [L,D]+2D over delta_lambda with |lambda| <= max_size"""
    residues = {"[D,U]-L": 0.0, "[L,U]-2U": 0.0, "[L,D]+2D": 0.0}
    for lam in partitions_up_to(max_size):
        v = PartitionVector.basis(lam)
        u, d, l = apply_U(v, p), apply_D(v, p), apply_L(v, p)
        checks = {
            "[D,U]-L": apply_D(u, p) - apply_U(d, p) - l,
            "[L,U]-2U": apply_L(u, p) - apply_U(l, p) - 2 * u,
            "[L,D]+2D": apply_L(d, p) - apply_D(l, p) + 2 * d,
        }
        for name, residue in checks.items():
            residues[name] = max(residues[name], residue.max_abs())
    return residues


def transpose_residue(max_size: int, z, r: int = 1) -> float:
    """
    Largest |(U delta_lambda, delta_mu) - (delta_lambda, D delta_mu)| with the
    down parameter set equal to z, over |lambda| <= max_size
    """
    up_params = KerovParams(z=z, zp=z, r=r)
    worst = 0.0
    for lam in partitions_up_to(max_size):
        for mu, c in apply_U(PartitionVector.basis(lam), up_params).items():
            back = apply_D(PartitionVector.basis(mu), up_params).coefficient(lam)
            worst = max(worst, abs(c - back))
        for mu, c in apply_D(PartitionVector.basis(lam), up_params).items():
            forth = apply_U(PartitionVector.basis(mu), up_params).coefficient(lam)
            worst = max(worst, abs(c - forth))
    return worst
