"""
The hypergeometric kernel K(i, j) of the mixed z-measure, computed as a series
of SL(2) matrix elements and in closed form, its determinants rho(X) = det K(X),
and the rim-hook kernel K_r built from the residue components
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import ConvergenceError
from .halfint import HalfInt, HALF, MINUS_HALF
from .kerov import Generator, KerovParams, PartitionVector, exp_apply
from .measure import Params, TailBound
from .partition import EMPTY, maya, residue_index, to_component
from .scalars import NumericMode
from .sl2me import MAX_TERMS, SMALL_RUN, ModuleParams, mc, mc_star

logger = logging.getLogger(__name__)

MAX_POINTS = 12


@dataclass(frozen=True)
class KernelSpec:
    """Kernel parameters: alpha = sqrt(xi)/(xi-1), beta = sqrt(xi)"""

    params: Params
    r: int = 1

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r!r}")

    @property
    def xi(self) -> float:
        return float(self.params.xi)

    @property
    def beta(self) -> complex:
        return complex(math.sqrt(self.xi))

    @property
    def alpha(self) -> complex:
        return complex(math.sqrt(self.xi) / (self.xi - 1))

    def module_params(self, shift=0) -> ModuleParams:
        """ModuleParams with z, z' both moved by shift"""
        return ModuleParams(
            z=complex(self.params.z) + shift,
            zp=complex(self.params.zp) + shift,
            alpha=self.alpha,
            beta=self.beta,
        )


@dataclass
class KernelMatrix:
    points: List[HalfInt]
    entries: np.ndarray
    condition: float = float("nan")


def _vacuum_entry(i: HalfInt, j: HalfInt) -> int:
    return 1 if i == j and i.twice < 0 else 0


def _exact_kernel(ks: KernelSpec) -> bool:
    """At xi = 0 the kernel is the 0/1 vacuum indicator and stays exact in exact mode"""
    return ks.params.mode == NumericMode.EXACT and ks.xi == 0


def series_sum(i: HalfInt, j: HalfInt, mp: ModuleParams, tol: float = 1e-14) -> complex:
    """sum over m = -1/2, -3/2, ... of mc(i, m) mc*(j, m)"""
    if tol <= 0:
        raise ValueError("tol must be positive")
    floor = min(i, j, MINUS_HALF)
    total = 0j
    small = 0
    m = MINUS_HALF
    for count in range(MAX_TERMS):
        term = mc(i, m, mp) * mc_star(j, m, mp)
        total += term
        if m < floor:
            if abs(term) <= tol * abs(total):
                small += 1
                if small >= SMALL_RUN:
                    logger.debug("kernel series (%s, %s) converged after %d terms", i, j, count + 1)
                    return total
            else:
                small = 0
        m = m - 1
    raise ConvergenceError(f"kernel series at ({i}, {j}) did not converge in {MAX_TERMS} terms")


def closed_form_coefficients(mp: ModuleParams) -> Tuple[complex, complex]:
    """(beta z', alpha (alpha beta - 1) z)"""
    return mp.beta * mp.zp, mp.alpha * (mp.alpha * mp.beta - 1) * mp.z


def K_general(i: HalfInt, j: HalfInt, mp: ModuleParams) -> complex:
    """Closed form of (Psi_i Psi*_j vac, vac) for arbitrary alpha, beta; i != j"""
    if i == j:
        raise ValueError("the closed form is singular on the diagonal")
    first, second = closed_form_coefficients(mp)
    numerator = (first * mc(i, HALF, mp) * mc_star(j, MINUS_HALF, mp)
                 - second * mc(i, MINUS_HALF, mp) * mc_star(j, HALF, mp))
    return numerator / float(i.value - j.value)


def K_series(i: HalfInt, j: HalfInt, ks: KernelSpec, tol: float = 1e-14):
    """K(i, j) from the matrix-element series; the diagonal's definition of record"""
    if ks.xi == 0:
        return _vacuum_entry(i, j) if _exact_kernel(ks) else complex(_vacuum_entry(i, j))
    return series_sum(i, j, ks.module_params(), tol)


def K_closed(i: HalfInt, j: HalfInt, ks: KernelSpec, tol: float = 1e-14):
    """K(i, j) in closed form; the diagonal falls back to the series"""
    if i == j or ks.xi == 0:
        return K_series(i, j, ks, tol)
    return K_general(i, j, ks.module_params())


def component_shift(j: int, r: int) -> Fraction:
    """-1/2 + c/r for the residue c = j + 1/2"""
    return Fraction(2 * j + 1, 2 * r) - Fraction(1, 2)


def K_r(i: HalfInt, j: HalfInt, ks: KernelSpec, tol: float = 1e-14, method: str = "closed"):
    """
    Rim-hook kernel: zero across residue classes mod r; inside class c it is the
    kernel at (t(i), t(j)) with parameters (z - 1/2 + c/r, z' - 1/2 + c/r)
    """
    r = ks.r
    ri, rj = residue_index(i, r), residue_index(j, r)
    if ri != rj:
        return 0 if _exact_kernel(ks) else 0j
    ti, tj = to_component(i, r), to_component(j, r)
    if ks.xi == 0:
        return K_series(ti, tj, ks, tol)
    mp = ks.module_params(float(component_shift(ri, r)))
    if method == "series" or ti == tj:
        return series_sum(ti, tj, mp, tol)
    return K_general(ti, tj, mp)


def kernel_entry(i: HalfInt, j: HalfInt, ks: KernelSpec, method: str = "closed", tol: float = 1e-14):
    if ks.r > 1:
        return K_r(i, j, ks, tol, method)
    if method == "series":
        return K_series(i, j, ks, tol)
    if method == "closed":
        return K_closed(i, j, ks, tol)
    raise ValueError(f"unknown kernel method {method!r}")


def kernel_matrix(points: Sequence[HalfInt], ks: KernelSpec, method: str = "closed",
                  tol: float = 1e-14) -> KernelMatrix:
    """Entries K(points[a], points[b]) with the 2-norm condition number"""
    points = list(points)
    exact = _exact_kernel(ks)
    dtype = object if exact else complex
    entries = np.empty((len(points), len(points)), dtype=dtype)
    for a, i in enumerate(points):
        for b, j in enumerate(points):
            entries[a, b] = kernel_entry(i, j, ks, method, tol)
    condition = float("nan")
    if points and not exact:
        condition = float(np.linalg.cond(entries))
    return KernelMatrix(points=points, entries=entries, condition=condition)


def fraction_free_det(matrix: List[List[object]]):
    """Bareiss elimination with row swaps; exact for Fraction or Gaussian-rational entries"""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def determinant(entries: np.ndarray):
    if entries.size == 0:
        return 1
    if entries.dtype == object:
        return fraction_free_det(entries.tolist())
    return complex(np.linalg.det(entries))


def rho_det(points: Sequence[HalfInt], ks: KernelSpec, tol: float = 1e-14, method: str = "closed"):
    """rho(X) = det[K(x_a, x_b)] for |X| <= 12"""
    points = sorted(set(points))
    if len(points) > MAX_POINTS:
        raise ValueError(f"|X| = {len(points)} exceeds the cap of {MAX_POINTS} points")
    km = kernel_matrix(points, ks, method, tol)
    if km.condition > 1e10:
        logger.warning("kernel matrix over %d points is ill-conditioned (cond %.3g)", len(points), km.condition)
    return determinant(km.entries)


@dataclass
class BlockFactorization:
    """det K_r(X) against the product of its per-residue blocks"""

    groups: Dict[int, List[HalfInt]]
    block_dets: Dict[int, complex]
    product: complex
    full: complex

    @property
    def gap(self) -> float:
        return abs(complex(self.full) - complex(self.product))


def block_factorization(points: Sequence[HalfInt], ks: KernelSpec, tol: float = 1e-14) -> BlockFactorization:
    points = sorted(set(points))
    groups: Dict[int, List[HalfInt]] = {}
    for k in points:
        groups.setdefault(residue_index(k, ks.r), []).append(k)
    block_dets = {c: rho_det(group, ks, tol) for c, group in sorted(groups.items())}
    product = 1
    for value in block_dets.values():
        product = product * value
    return BlockFactorization(groups=groups, block_dets=block_dets, product=product,
                              full=rho_det(points, ks, tol))


@dataclass
class RimHookCorrelation:
    value: complex
    z_truncated: complex
    z_predicted: complex
    tail: TailBound

    @property
    def relative_gap(self) -> float:
        return abs(self.z_predicted - self.z_truncated) / abs(self.z_truncated)


def predicted_partition_function(ks: KernelSpec) -> complex:
    """prod over residues c of (1-xi)^(-(z-1/2+c/r)(z'-1/2+c/r))"""
    return complex(1 - ks.xi) ** (-component_parameter_sum(ks))


def component_parameter_sum(ks: KernelSpec) -> complex:
    """sum over residues c of (z-1/2+c/r)(z'-1/2+c/r)"""
    z, zp = complex(ks.params.z), complex(ks.params.zp)
    total = 0j
    for j in range(ks.r):
        shift = float(component_shift(j, ks.r))
        total += (z + shift) * (zp + shift)
    return total


def truncated_partition_function(ks: KernelSpec, max_size: int) -> complex:
    """
    Sum of W_r over |lambda| <= max_size predicted by the component factorization:
    the quotient sizes add up to n <= max_size // r and contribute xi^n (s)_n / n!
    with s the sum of the component products
    """
    s = component_parameter_sum(ks)
    term = total = 1 + 0j
    for n in range(max_size // ks.r):
        term *= ks.xi * (s + n) / (n + 1)
        total += term
    return total


@lru_cache(maxsize=8)
def rimhook_weights(ks: KernelSpec, max_size: int) -> Dict:
    """W_r(lambda) = (exp(sqrt(xi) U_r) vac, delta_lambda)(exp(sqrt(xi) D_r) delta_lambda, vac) for |lambda| <= N"""
    z, zp = complex(ks.params.z), complex(ks.params.zp)
    root = math.sqrt(ks.xi)
    vacuum = PartitionVector.basis(EMPTY, 1 + 0j)
    up = exp_apply(Generator.U, root, vacuum, KerovParams(z, zp, ks.r), max_size)
    # (exp(bD) delta_lambda, vac) is the lambda coefficient of exp(bU) vac with z replaced by z'
    down = exp_apply(Generator.U, root, vacuum, KerovParams(zp, z, ks.r), max_size)
    return {lam: c * down.coefficient(lam) for lam, c in up.items()}


def brute_corr_rimhook(points: Sequence[HalfInt], ks: KernelSpec, max_size: int) -> RimHookCorrelation:
    """Normalized sum of W_r over |lambda| <= N with X in S(lambda)"""
    weights = rimhook_weights(ks, max_size)
    points = list(points)
    z_truncated = sum(weights.values(), 0j)
    hit = sum((w for lam, w in weights.items() if all(k in maya(lam) for k in points)), 0j)
    z_predicted = predicted_partition_function(ks)
    gap = abs(z_predicted - z_truncated) / abs(z_truncated)
    return RimHookCorrelation(
        value=hit / z_truncated,
        z_truncated=z_truncated,
        z_predicted=z_predicted,
        tail=TailBound(max_size, 2 * gap, rigorous=ks.params.series_class.positive),
    )
