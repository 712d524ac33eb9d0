"""
Verification suites: each checks one family of identities numerically or
exactly and reports its worst error against a threshold
"""

import logging
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence

from .errors import MathDomainError
from .halfint import HalfInt, halfint_range
from .kerov import KerovParams, PartitionVector, apply_D, apply_L, apply_U, commutator_residues, verify_DU
from .fock import WedgeVector, fermionic_D, fermionic_L, fermionic_U, from_wedge, psi, psi_star, to_wedge
from .kernel import (
    KernelSpec, K_closed, K_r, K_series, brute_corr_rimhook, rho_det, truncated_partition_function,
)
from .measure import Params, brute_corr, chi_square_summary, normalize_check, sample
from .partition import core_quotient, from_core_quotient, maya, partitions_up_to, residue_index
from .scalars import GaussianRational, NumericMode, parse_scalar
from .sl2me import (
    ModuleParams, apply_module_D, apply_module_U, classify_series, mc, mc_branch, mc_series_oracle,
    mc_star, mc_star_series_oracle, q_form,
)

logger = logging.getLogger(__name__)

GRID = halfint_range(HalfInt(-7), HalfInt(7))


@dataclass
class SuiteResult:
    name: str
    max_error: float
    threshold: float
    passed: bool
    seconds: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("seconds")
        return data


@dataclass
class SuiteOptions:
    """Overrides a caller may set; None keeps the suite's own setting"""

    max_size: Optional[int] = None
    size_cap: Optional[int] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None
    seed: int = 0
    count: Optional[int] = None


def _relative(a, b) -> float:
    return abs(complex(a) - complex(b)) / max(1.0, abs(complex(b)))


def _result(name: str, error: float, threshold: float, **details) -> SuiteResult:
    return SuiteResult(name=name, max_error=float(error), threshold=threshold,
                       passed=float(error) <= threshold, details=details)


def suite_prob(opts: SuiteOptions) -> SuiteResult:
    """sum of M_n over partitions of n is exactly 1"""
    max_n = opts.max_size if opts.max_size is not None else 18
    worst = 0.0
    for z, zp in (("2", "3"), ("1/2", "5/2"), ("1+2i", "1-2i")):
        p = Params(parse_scalar(z, NumericMode.EXACT), parse_scalar(zp, NumericMode.EXACT),
                   mode=NumericMode.EXACT)
        for n in range(max_n + 1):
            total = normalize_check(n, p)
            worst = max(worst, abs(total - 1))
    return _result("prob", worst, 0.0, max_n=max_n)


def _exact_kerov_params(r: int) -> KerovParams:
    return KerovParams(z=Fraction(2, 7), zp=GaussianRational(Fraction(1, 3), Fraction(1, 5)), r=r)


def suite_comm(opts: SuiteOptions) -> SuiteResult:
    """[D,U] = L, [L,U] = 2U, [L,D] = -2D on every delta_lambda"""
    max_size = opts.max_size if opts.max_size is not None else 8
    residues = {}
    for r in (1, 2, 3):
        for key, value in commutator_residues(_exact_kerov_params(r), max_size).items():
            residues[f"r={r} {key}"] = value
    return _result("comm", max(residues.values()), 0.0, max_size=max_size, residues=residues)


def suite_du(opts: SuiteOptions) -> SuiteResult:
    """exp(bD) exp(aU) against its normal-ordered form at z=2, z'=3"""
    alpha = complex(parse_scalar(opts.alpha or "1/4"))
    beta = complex(parse_scalar(opts.beta or "1/4"))
    size_cap = opts.size_cap if opts.size_cap is not None else 12
    report = verify_DU(alpha, beta, KerovParams(2.0, 3.0), size_cap)
    return _result("du", max(report.max_discrepancy, report.convergence_bound), report.tol,
                   compared_size=report.compared_size, series_cut=report.series_cut,
                   convergence_bound=report.convergence_bound, inputs=report.inputs)


def _car_residue(k: HalfInt, l: HalfInt, v: WedgeVector) -> float:
    mixed = psi(k, psi_star(l, v)) + psi_star(l, psi(k, v))
    if k == l:
        mixed = mixed - v
    creation = psi(k, psi(l, v)) + psi(l, psi(k, v))
    annihilation = psi_star(k, psi_star(l, v)) + psi_star(l, psi_star(k, v))
    return max(mixed.max_abs(), creation.max_abs(), annihilation.max_abs())


def suite_fock(opts: SuiteOptions) -> SuiteResult:
    """Fermionic U_r, D_r, L_r equal Kerov's operators; canonical anticommutation on a window"""
    max_size = opts.max_size if opts.max_size is not None else 8
    worst_identification = 0.0
    for r in (1, 2, 3):
        p = _exact_kerov_params(r)
        for lam in partitions_up_to(max_size):
            v = PartitionVector.basis(lam)
            w = to_wedge(v)
            pairs = (
                (from_wedge(fermionic_U(w, p.z, r)), apply_U(v, p)),
                (from_wedge(fermionic_D(w, p.zp, r)), apply_D(v, p)),
                (from_wedge(fermionic_L(w, p.z, p.zp, r)), apply_L(v, p)),
            )
            for fermionic, kerov in pairs:
                worst_identification = max(worst_identification, (fermionic - kerov).max_abs())
    window = halfint_range(HalfInt(-11), HalfInt(11))
    states = []
    for lam in partitions_up_to(4):
        for shift in (-1, 0, 1):
            states.append(maya(lam).shifted(shift))
    worst_car = 0.0
    for state in states:
        v = WedgeVector.basis(state)
        for k in window:
            for l in window:
                worst_car = max(worst_car, _car_residue(k, l, v))
    return _result("fock", max(worst_identification, worst_car), 0.0,
                   identification=worst_identification, car=worst_car, window=len(window))


MC_PARAMS = (
    (0.3, 0.7, 0.25, 0.25),
    (2.0, 3.0, 0.2, -0.2),
    (1 + 2j, 1 - 2j, -0.25, 0.125),
)


def suite_mc(opts: SuiteOptions) -> SuiteResult:
    """2F1 matrix elements against the doubly truncated exponential series"""
    worst = 0.0
    worst_branch = 0.0
    for z, zp, a, b in MC_PARAMS:
        mp = ModuleParams(complex(z), complex(zp), complex(a), complex(b))
        for i in GRID:
            for j in GRID:
                worst = max(worst, _relative(mc(i, j, mp), mc_series_oracle(i, j, mp, 40)))
                worst = max(worst, _relative(mc_star(i, j, mp), mc_star_series_oracle(i, j, mp, 40)))
            for dual in (False, True):
                up = mc_branch(i, i, mp, "up", dual)
                down = mc_branch(i, i, mp, "down", dual)
                worst_branch = max(worst_branch, _relative(up, down))
    passed = worst <= 1e-10 and worst_branch <= 1e-12
    result = _result("mc", worst, 1e-10, branch_agreement=worst_branch)
    result.passed = passed
    return result


def suite_periodicity(opts: SuiteOptions) -> SuiteResult:
    """mc(i, j; z+1, z'+1) = mc(i+1, j+1; z, z')"""
    worst = 0.0
    xi = 0.3
    alpha, beta = complex(xi ** 0.5 / (xi - 1)), complex(xi ** 0.5)
    for z, zp in ((0.3, 0.7), (1 + 2j, 1 - 2j)):
        shifted = ModuleParams(complex(z) + 1, complex(zp) + 1, alpha, beta)
        base = ModuleParams(complex(z), complex(zp), alpha, beta)
        for i in GRID:
            for j in GRID:
                worst = max(worst, _relative(mc(i, j, shifted), mc(i + 1, j + 1, base)))
    return _result("periodicity", worst, 1e-12)


def _window_vector(seed: int) -> Dict[HalfInt, complex]:
    return {k: complex(1 / (1 + abs(float(k)) + seed), float(k) / (7 + seed)) for k in GRID}


def suite_qform(opts: SuiteOptions) -> SuiteResult:
    """Q(U u, v) = Q(u, D v) for the invariant form of the positive series"""
    worst = 0.0
    u, v = _window_vector(0), _window_vector(1)
    for z, zp in ((0.3, 0.7), (2.25, 2.75), (1 + 2j, 1 - 2j)):
        sc = classify_series(z, zp)
        left = q_form(apply_module_U(u, z), v, sc, z, zp)
        right = q_form(u, apply_module_D(v, zp), sc, z, zp)
        worst = max(worst, _relative(left, right))
    return _result("qform", worst, 1e-12)


KERNEL_PARAMS = ((0.3, 0.7), (1 + 2j, 1 - 2j))


def suite_kernel(opts: SuiteOptions) -> SuiteResult:
    """Series and closed form of K agree off the diagonal"""
    worst = 0.0
    for z, zp in KERNEL_PARAMS:
        for xi in (0.1, 0.3, 0.6):
            ks = KernelSpec(Params(z, zp, xi))
            for i in GRID:
                for j in GRID:
                    if i != j:
                        worst = max(worst, abs(K_series(i, j, ks) - K_closed(i, j, ks)))
    return _result("kernel", worst, 1e-8)


def suite_rho(opts: SuiteOptions) -> SuiteResult:
    """det K(X) against the brute-force sum over |lambda| <= N"""
    max_size = opts.max_size if opts.max_size is not None else 25
    worst_excess = 0.0
    worst_gap = 0.0
    tails = {}
    for z, zp, xi in ((0.3, 0.7, 0.3), (1 + 2j, 1 - 2j, 0.2)):
        p = Params(z, zp, xi)
        ks = KernelSpec(p)
        for size in range(4):
            for points in combinations(GRID, size):
                brute, tail = brute_corr(points, p, max_size)
                gap = abs(complex(rho_det(points, ks)) - complex(brute))
                worst_gap = max(worst_gap, gap)
                worst_excess = max(worst_excess, gap - tail.bound)
        tails[f"{z},{zp},{xi}"] = tail.bound
    return _result("rho", worst_excess, 1e-6, max_gap=worst_gap, tails=tails, max_size=max_size)


def suite_rimhook(opts: SuiteOptions) -> SuiteResult:
    """
    r-core/r-quotient bijection, K_r vanishing across residue classes, det K_r
    against the rim-hook weights, and the truncated partition function against
    its component factorization
    """
    worst_bijection = 0
    for r in (2, 3):
        for lam in partitions_up_to(8):
            cq = core_quotient(lam, r)
            rebuilt = from_core_quotient(cq.core, cq.quotients)
            size_gap = abs(lam.size - cq.core.size - r * sum(q.size for q in cq.quotients))
            worst_bijection = max(worst_bijection, int(rebuilt != lam), size_gap)
    worst_cross = 0.0
    worst_excess = 0.0
    worst_z = 0.0
    tails = {}
    p = Params(0.3, 0.7, 0.3)
    for r, default_size in ((2, 20), (3, 24)):
        max_size = opts.max_size if opts.max_size is not None else default_size
        ks = KernelSpec(p, r)
        for i in GRID:
            for j in GRID:
                if residue_index(i, r) != residue_index(j, r):
                    worst_cross = max(worst_cross, abs(K_r(i, j, ks)))
        corr = brute_corr_rimhook((), ks, max_size)
        worst_z = max(worst_z, _relative(corr.z_truncated, truncated_partition_function(ks, max_size)))
        tails[f"r={r}"] = corr.tail.bound
        for size in (1, 2):
            for points in combinations(GRID, size):
                if len({residue_index(k, r) for k in points}) > 1:
                    continue
                corr = brute_corr_rimhook(points, ks, max_size)
                gap = abs(complex(rho_det(points, ks)) - corr.value)
                worst_excess = max(worst_excess, gap - corr.tail.bound)
    result = _result("rimhook", worst_excess, 1e-5, bijection=worst_bijection, cross_class=worst_cross,
                     partition_function=worst_z, tails=tails)
    result.passed = result.passed and worst_bijection == 0 and worst_cross == 0 and worst_z <= 1e-10
    return result


def suite_sampler(opts: SuiteOptions) -> SuiteResult:
    """chi-square of 10^5 draws against the exact masses; reruns reproduce"""
    count = opts.count if opts.count is not None else 100_000
    p = Params(0.3, 0.7, 0.3)
    draws = sample(p, count, 25, opts.seed)
    summary = chi_square_summary(draws, p, 25)
    rerun = sample(p, 1000, 25, opts.seed) == sample(p, 1000, 25, opts.seed)
    result = _result("sampler", 1 - summary.p_value, 1 - 1e-3, statistic=summary.statistic,
                     dof=summary.dof, p_value=summary.p_value, draws=count, reproducible=rerun)
    result.passed = result.passed and rerun
    return result


SUITES: Dict[str, Callable[[SuiteOptions], SuiteResult]] = {
    "prob": suite_prob,
    "comm": suite_comm,
    "du": suite_du,
    "fock": suite_fock,
    "mc": suite_mc,
    "periodicity": suite_periodicity,
    "qform": suite_qform,
    "kernel": suite_kernel,
    "rho": suite_rho,
    "rimhook": suite_rimhook,
    "sampler": suite_sampler,
}


def suite_names(selection: str) -> List[str]:
    """"all" or a comma-separated list of suite names"""
    if selection.strip() == "all":
        return list(SUITES)
    names = [s.strip() for s in selection.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    return names


def run_suites(names: Sequence[str], opts: Optional[SuiteOptions] = None) -> List[SuiteResult]:
    opts = opts or SuiteOptions()
    results = []
    for name in names:
        start = time.perf_counter()
        try:
            result = SUITES[name](opts)
        except MathDomainError as e:
            logger.error("suite %s failed: %s", name, e)
            result = SuiteResult(name=name, max_error=float("inf"), threshold=0.0, passed=False,
                                 details={"error": str(e)})
        result.seconds = round(time.perf_counter() - start, 3)
        logger.info("suite %s: max error %.3g (threshold %.3g) %s", name, result.max_error,
                    result.threshold, "ok" if result.passed else "FAILED")
        results.append(result)
    return results
