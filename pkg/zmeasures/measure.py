"""
z-measures M_n, the negative-binomial mixture M, brute-force correlation
functions and an exact enumeration-based sampler
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional

import numpy as np
from scipy import stats

from .errors import ConvergenceError, DegenerateParametersError, MathDomainError, NonPositiveRegimeError
from .halfint import HalfInt
from .partition import MayaSet, Partition, enumerate_partitions, hook_lengths, maya, squares, content
from .scalars import GaussianRational, NumericMode, coerce, is_integer, is_real, scalar_power
from .sl2me import SeriesClass, classify_series, poch_rising

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Params:
    """z, z', xi of the mixed measure; scalars are coerced to the mode's type"""

    z: object
    zp: object
    xi: object = 0
    mode: NumericMode = NumericMode.FLOAT

    def __post_init__(self):
        mode = NumericMode(self.mode)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "z", coerce(self.z, mode))
        object.__setattr__(self, "zp", coerce(self.zp, mode))
        if not is_real(self.xi):
            raise MathDomainError(f"xi must be real, got {self.xi}")
        xi = self.xi.real if isinstance(self.xi, (GaussianRational, complex)) else self.xi
        xi = Fraction(xi) if mode == NumericMode.EXACT else float(xi)
        if not 0 <= xi < 1:
            raise MathDomainError(f"xi must lie in [0, 1), got {xi}")
        object.__setattr__(self, "xi", xi)

    @property
    def zz(self):
        return self.z * self.zp

    @property
    def series_class(self) -> SeriesClass:
        return classify_series(self.z, self.zp)


@dataclass(frozen=True)
class TailBound:
    """
    Mass of the mixture beyond size N; a rigorous bound only in the positive
    regimes. In exact mode `exact` holds the same quantity as a rational and
    `bound` is its float image.
    """

    truncation_size: int
    bound: float
    rigorous: bool = True
    exact: Optional[object] = None

    def reported(self):
        """The value written to output documents"""
        return self.bound if self.exact is None else self.exact


def _content_product(partition: Partition, z, zp):
    """prod over squares of (z+c)(z'+c)/h^2"""
    value = 1
    for square, h in zip(squares(partition), hook_lengths(partition)):
        c = content(square)
        value = value * (z + c) * (zp + c) * Fraction(1, h * h)
    return value


def zmeasure_n(partition: Partition, p: Params):
    """M_n(lambda) = n!/(zz')_n prod (z+c)(z'+c)/h^2"""
    n = partition.size
    denominator = poch_rising(p.zz, n)
    if denominator == 0:
        raise DegenerateParametersError(f"(zz')_{n} = 0 for z={p.z}, z'={p.zp}")
    return Fraction(math.factorial(n)) * _content_product(partition, p.z, p.zp) / denominator


def normalize_check(n: int, p: Params):
    """Sum of M_n over all partitions of n; exactly 1"""
    total = 0
    for partition in enumerate_partitions(n):
        total = total + zmeasure_n(partition, p)
    return total


def mixture_prefactor(p: Params):
    """(1-xi)^(zz'); exact mode needs an integer zz'"""
    if p.mode == NumericMode.EXACT:
        if not is_integer(p.zz):
            raise MathDomainError(f"(1-xi)^(zz') is not exact for zz' = {p.zz}; use float mode")
        return scalar_power(coerce(1 - p.xi, NumericMode.EXACT), p.zz)
    return complex(1 - p.xi) ** complex(p.zz)


def mixed_weight(partition: Partition, p: Params):
    """M(lambda) = (1-xi)^(zz') xi^n (zz')_n/n! M_n(lambda) = (1-xi)^(zz') xi^n prod (z+c)(z'+c)/h^2"""
    n = partition.size
    return mixture_prefactor(p) * p.xi ** n * _content_product(partition, p.z, p.zp)


def negative_binomial_masses(p: Params, max_size: int) -> List[object]:
    """(1-xi)^(zz') xi^n (zz')_n / n! for n = 0..max_size"""
    masses = [mixture_prefactor(p)]
    for n in range(max_size):
        masses.append(masses[-1] * p.xi * (p.zz + n) * Fraction(1, n + 1))
    return masses


def _exact_magnitude(value) -> Fraction:
    value = coerce(value, NumericMode.EXACT)
    if value.im != 0:
        raise MathDomainError(f"expected a real exact mass, got {value}")
    return abs(value.re)


def tail_bound(p: Params, max_size: int) -> TailBound:
    """
    Bound on the mixture mass of sizes above max_size. In the positive regimes
    zz' > 0 and the term ratio xi (zz'+n)/(n+1) decreases to xi, which gives a
    geometric bound, or the exact remainder 1 - sum in exact mode; elsewhere
    the last increment is reported as a heuristic.
    """
    masses = negative_binomial_masses(p, max_size + 1)
    if not p.series_class.positive:
        logger.warning("tail bound for z=%s, z'=%s is heuristic: not a probability measure", p.z, p.zp)
        if p.mode == NumericMode.EXACT:
            last = _exact_magnitude(masses[max_size])
            return TailBound(max_size, float(last), rigorous=False, exact=last)
        return TailBound(max_size, float(abs(masses[max_size])), rigorous=False)
    if p.mode == NumericMode.EXACT:
        # the masses sum to 1, so the remainder is known exactly
        rest = _exact_magnitude(1 - sum(masses[:max_size + 1], coerce(0, p.mode)))
        return TailBound(max_size, float(rest), exact=rest)
    zz = float(complex(p.zz).real)
    xi = float(p.xi)
    ratio = max(xi, xi * (zz + max_size + 1) / (max_size + 2))
    if ratio >= 1:
        return TailBound(max_size, float(abs(1 - sum(complex(m) for m in masses[:max_size + 1]))))
    return TailBound(max_size, float(abs(masses[max_size + 1])) / (1 - ratio))


@dataclass
class MixedMeasureTable:
    """Partitions of size <= max_size with their Maya sets and mixed weights, computed once"""

    params: Params
    max_size: int
    partitions: List[Partition] = field(default_factory=list)
    maya_sets: List[MayaSet] = field(default_factory=list)
    weights: List[object] = field(default_factory=list)

    def __post_init__(self):
        if not self.partitions:
            self._scan()

    def _scan(self):
        prefactor = mixture_prefactor(self.params)
        xi_power = 1
        for n in range(self.max_size + 1):
            scale = prefactor * xi_power
            for partition in enumerate_partitions(n):
                self.partitions.append(partition)
                self.maya_sets.append(maya(partition))
                self.weights.append(scale * _content_product(partition, self.params.z, self.params.zp))
            xi_power = xi_power * self.params.xi
        logger.debug("MixedMeasureTable: %d partitions up to size %d", len(self.partitions), self.max_size)

    def total_mass(self):
        total = 0
        for w in self.weights:
            total = total + w
        return total

    def correlation(self, points: Iterable[HalfInt]):
        """Truncated rho(X) = M{lambda : |lambda| <= N, X subset of S(lambda)}"""
        points = list(points)
        total = 0
        for s, w in zip(self.maya_sets, self.weights):
            if all(k in s for k in points):
                total = total + w
        return total

    def tail(self) -> TailBound:
        return tail_bound(self.params, self.max_size)

    def size_masses(self) -> List[object]:
        masses = [0] * (self.max_size + 1)
        for partition, w in zip(self.partitions, self.weights):
            masses[partition.size] = masses[partition.size] + w
        return masses


@lru_cache(maxsize=16)
def mixed_table(p: Params, max_size: int) -> MixedMeasureTable:
    return MixedMeasureTable(params=p, max_size=max_size)


def brute_corr(points: Iterable[HalfInt], p: Params, max_size: int):
    """(rho(X) summed over |lambda| <= N, TailBound)"""
    table = mixed_table(p, max_size)
    return table.correlation(points), table.tail()


def _real_probabilities(values: List[object]) -> np.ndarray:
    probs = np.array([complex(v).real for v in values], dtype=float)
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sample(p: Params, count: int, max_size: int, seed: int,
           max_tail: Optional[float] = None) -> List[Partition]:
    """
    i.i.d. draws from M truncated at size max_size: the size n from the truncated
    negative binomial, then lambda from M_n over enumerate_partitions(n).
    numpy Generator(PCG64) seeded with `seed`; deterministic per (seed, count).
    """
    if not p.series_class.positive:
        raise NonPositiveRegimeError(
            f"z={p.z}, z'={p.zp} is neither principal nor complementary; M is not a probability measure")
    tail = tail_bound(p, max_size)
    if max_tail is not None and tail.bound > max_tail:
        raise ConvergenceError(f"tail mass bound {tail.bound:.3g} above size {max_size} exceeds {max_tail}")
    rng = np.random.default_rng(seed)
    if count <= 0:
        return []
    sizes = rng.choice(max_size + 1, size=count, p=_real_probabilities(negative_binomial_masses(p, max_size)))
    result: List[Optional[Partition]] = [None] * count
    for n in range(max_size + 1):
        slots = np.flatnonzero(sizes == n)
        if not len(slots):
            continue
        candidates = enumerate_partitions(n)
        probs = _real_probabilities([zmeasure_n(lam, p) for lam in candidates])
        picks = rng.choice(len(candidates), size=len(slots), p=probs)
        for slot, pick in zip(slots, picks):
            result[slot] = candidates[pick]
    return result


@dataclass
class ChiSquareSummary:
    statistic: float
    dof: int
    p_value: float
    bins: int
    empty_fraction: float
    expected_empty: float


def chi_square_summary(samples: List[Partition], p: Params, max_size: int,
                       compare_size: int = 8, min_expected: float = 5.0) -> ChiSquareSummary:
    """
    Pearson chi-square of the empirical distribution against the exact truncated
    masses, one bin per partition of size <= compare_size plus one bin for the rest;
    sparse bins are pooled into the rest
    """
    table = mixed_table(p, max_size)
    total = complex(table.total_mass()).real
    count = len(samples)
    observed: Dict[Partition, int] = {}
    for lam in samples:
        observed[lam] = observed.get(lam, 0) + 1
    obs, exp = [], []
    rest_obs, rest_exp = count, float(count)
    for lam, w in zip(table.partitions, table.weights):
        if lam.size > compare_size:
            break
        expected = count * complex(w).real / total
        if expected < min_expected:
            continue
        obs.append(observed.get(lam, 0))
        exp.append(expected)
        rest_obs -= obs[-1]
        rest_exp -= expected
    if rest_exp > 0:
        obs.append(rest_obs)
        exp.append(rest_exp)
    obs_arr, exp_arr = np.array(obs, dtype=float), np.array(exp, dtype=float)
    statistic = float(np.sum((obs_arr - exp_arr) ** 2 / exp_arr))
    dof = max(len(obs) - 1, 1)
    empty = Partition(())
    return ChiSquareSummary(
        statistic=statistic,
        dof=dof,
        p_value=float(stats.chi2.sf(statistic, dof)),
        bins=len(obs),
        empty_fraction=observed.get(empty, 0) / count if count else 0.0,
        expected_empty=complex(table.weights[0]).real / total,
    )
