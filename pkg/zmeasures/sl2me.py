"""
SL(2) matrix elements: Pochhammer symbols, the Gauss hypergeometric series,
the coefficients of exp(aU) exp(bD) on the module V = span{v_k : k in Z+1/2}
and its dual, and the invariant Hermitian form of the positive series.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

from .errors import ConvergenceError, NonPositiveRegimeError
from .halfint import HalfInt
from .scalars import GaussianRational, is_integer, is_real

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-15
MAX_TERMS = 10_000
SMALL_RUN = 3

ModuleVector = Dict[HalfInt, object]


def poch_rising(x, n: int):
    """(x)_n = x (x+1) ... (x+n-1); (x)_0 = 1"""
    if n < 0:
        raise ValueError("Pochhammer order must be non-negative")
    result = 1
    for t in range(n):
        result = result * (x + t)
    return result


def poch_falling(a, s: int):
    """(a)_(down s) = a (a-1) ... (a-s+1)"""
    if s < 0:
        raise ValueError("Pochhammer order must be non-negative")
    result = 1
    for t in range(s):
        result = result * (a - t)
    return result


def _is_nonpositive_integer(value) -> bool:
    return is_integer(value) and value.real <= 0


def _hyp_series(a, b, c: int, x, tol: float, max_terms: int) -> complex:
    terminating = _is_nonpositive_integer(a) or _is_nonpositive_integer(b)
    if abs(x) >= 1 and not terminating:
        raise ConvergenceError(f"2F1 series argument |x| = {abs(x):.6g} is outside the unit disk")
    total = term = 1 + 0j
    small = 0
    for k in range(max_terms):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0 and ((a + k) == 0 or (b + k) == 0):
            logger.debug("2F1 terminated after %d terms", k + 1)
            return total
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= SMALL_RUN:
                logger.debug("2F1 converged after %d terms (x=%s)", k + 1, x)
                return total
        else:
            small = 0
    raise ConvergenceError(f"2F1({a}, {b}; {c}; {x}) did not converge in {max_terms} terms")


def gauss_2f1(a, b, c: int, x, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> complex:
    """
    F(a, b; c; x) for a positive integer c, in complex floating point.

    Arguments with Re(x) < 0 are mapped by F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1))
    into the right half of the disk, where the series has no cancellation.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not isinstance(c, int) or c < 1:
        raise ValueError(f"c must be a positive integer, got {c!r}")
    a, b, x = complex(a), complex(b), complex(x)
    if x == 0:
        return 1 + 0j
    if x.real < 0:
        logger.debug("2F1: Pfaff transform of x=%s", x)
        return (1 - x) ** (-a) * _hyp_series(a, c - b, c, x / (x - 1), tol, max_terms)
    return _hyp_series(a, b, c, x, tol, max_terms)


def gauss_2f1_partial(a, b, c: int, x, order: int):
    """
    Partial sum of the 2F1 series through x^order in the arithmetic of the inputs,
    together with the first omitted term (zero when the series terminates)
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    total = term = 1
    for k in range(order):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total = total + term
    next_term = term * (a + order) * (b + order) / ((c + order) * (order + 1)) * x
    return total, next_term


@dataclass(frozen=True)
class ModuleParams:
    """Parameters of exp(alpha U) exp(beta D) on the module with parameters z, z'"""

    z: object
    zp: object
    alpha: object = 0
    beta: object = 0

    @property
    def x(self):
        return self.alpha * self.beta


@dataclass(frozen=True)
class SeriesClass:
    tag: str
    n: Optional[int] = None

    @property
    def positive(self) -> bool:
        return self.tag in (PRINCIPAL, COMPLEMENTARY)


PRINCIPAL = "principal"
COMPLEMENTARY = "complementary"
GENERIC = "generic"


def _near(u, v, eps: float = 1e-12) -> bool:
    if isinstance(u, (GaussianRational, int, Fraction)) and isinstance(v, (GaussianRational, int, Fraction)):
        return u == v
    return abs(complex(u) - complex(v)) <= eps


def classify_series(z, zp) -> SeriesClass:
    """principal: z' = conj(z) with z not real; complementary: z, z' real in one (n, n+1)"""
    if not is_real(z) and _near(zp, z.conjugate()):
        return SeriesClass(PRINCIPAL)
    if is_real(z) and is_real(zp) and not is_integer(z) and not is_integer(zp):
        n = math.floor(z.real)
        if math.floor(zp.real) == n:
            return SeriesClass(COMPLEMENTARY, n)
    return SeriesClass(GENERIC)


def _mc_parts(i: HalfInt, j: HalfInt, p: ModuleParams, dual: bool, branch: Optional[str] = None):
    """Prefactor and 2F1 parameters of the i<=j ("up") or i>=j ("down") branch"""
    half = Fraction(1, 2)
    upper = i <= j if branch is None else branch == "up"
    if not dual:
        if upper:
            s = j - i
            pref = p.alpha ** s * poch_rising(p.z + i.value + half, s) * Fraction(1, math.factorial(s))
            return pref, -p.z - i.value + half, -p.zp - i.value + half, s + 1
        s = i - j
        pref = p.beta ** s * poch_rising(p.zp + j.value + half, s) * Fraction(1, math.factorial(s))
        return pref, -p.z - j.value + half, -p.zp - j.value + half, s + 1
    if upper:
        s = j - i
        pref = (-p.beta) ** s * poch_rising(p.zp + i.value + half, s) * Fraction(1, math.factorial(s))
        return pref, p.z + j.value + half, p.zp + j.value + half, s + 1
    s = i - j
    pref = (-p.alpha) ** s * poch_rising(p.z + j.value + half, s) * Fraction(1, math.factorial(s))
    return pref, p.z + i.value + half, p.zp + i.value + half, s + 1


@lru_cache(maxsize=65536)
def mc(i: HalfInt, j: HalfInt, p: ModuleParams, tol: float = DEFAULT_TOL) -> complex:
    """Coefficient of v_j in exp(alpha U) exp(beta D) v_i"""
    pref, a, b, c = _mc_parts(i, j, p, dual=False)
    if pref == 0:
        return 0j
    return complex(pref) * gauss_2f1(a, b, c, p.x, tol)


@lru_cache(maxsize=65536)
def mc_star(i: HalfInt, j: HalfInt, p: ModuleParams, tol: float = DEFAULT_TOL) -> complex:
    """Coefficient of v*_j in exp(alpha U) exp(beta D) v*_i (dual action)"""
    pref, a, b, c = _mc_parts(i, j, p, dual=True)
    if pref == 0:
        return 0j
    return complex(pref) * gauss_2f1(a, b, c, p.x, tol)


def mc_branch(i: HalfInt, j: HalfInt, p: ModuleParams, branch: str, dual: bool = False,
              tol: float = DEFAULT_TOL) -> complex:
    """mc (or mc_star) from the named branch formula; both apply when i == j"""
    if branch not in ("up", "down"):
        raise ValueError(f"branch must be up or down, got {branch!r}")
    if (branch == "up" and i > j) or (branch == "down" and i < j):
        raise ValueError(f"the {branch} branch does not cover ({i}, {j})")
    pref, a, b, c = _mc_parts(i, j, p, dual, branch)
    if pref == 0:
        return 0j
    return complex(pref) * gauss_2f1(a, b, c, p.x, tol)


def mc_exact(i: HalfInt, j: HalfInt, p: ModuleParams, order: int, dual: bool = False) -> Tuple[object, float]:
    """
    Exact-mode matrix element: the 2F1 factor is summed through (alpha beta)^order.
    Returns (value, bound) where bound is the magnitude of the first omitted term;
    the bound is 0 when the series terminates.
    """
    pref, a, b, c = _mc_parts(i, j, p, dual)
    if pref == 0:
        return pref, 0.0
    partial, next_term = gauss_2f1_partial(a, b, c, p.x, order)
    return pref * partial, abs(pref * next_term)


def _clean(vec: ModuleVector) -> ModuleVector:
    return {k: v for k, v in vec.items() if v != 0}


def _accumulate(target: ModuleVector, k: HalfInt, value) -> None:
    target[k] = target.get(k, 0) + value


def apply_module_U(vec: ModuleVector, z, r: int = 1) -> ModuleVector:
    """U_r v_k = (z + k/r + 1/2) v_(k+r)"""
    out: ModuleVector = {}
    for k, coeff in vec.items():
        _accumulate(out, k + r, coeff * (z + k.value / r + Fraction(1, 2)))
    return _clean(out)


def apply_module_D(vec: ModuleVector, zp, r: int = 1) -> ModuleVector:
    """D_r v_k = (z' + k/r - 1/2) v_(k-r)"""
    out: ModuleVector = {}
    for k, coeff in vec.items():
        _accumulate(out, k - r, coeff * (zp + k.value / r - Fraction(1, 2)))
    return _clean(out)


def apply_module_L(vec: ModuleVector, z, zp, r: int = 1) -> ModuleVector:
    """L_r v_k = (2k/r + z + z') v_k"""
    return _clean({k: coeff * (2 * k.value / r + z + zp) for k, coeff in vec.items()})


def apply_dual_U(vec: ModuleVector, z) -> ModuleVector:
    """U v*_k = -(z + k - 1/2) v*_(k-1)"""
    out: ModuleVector = {}
    for k, coeff in vec.items():
        _accumulate(out, k - 1, -coeff * (z + k.value - Fraction(1, 2)))
    return _clean(out)


def apply_dual_D(vec: ModuleVector, zp) -> ModuleVector:
    """D v*_k = -(z' + k + 1/2) v*_(k+1)"""
    out: ModuleVector = {}
    for k, coeff in vec.items():
        _accumulate(out, k + 1, -coeff * (zp + k.value + Fraction(1, 2)))
    return _clean(out)


def _exp_series(action: Callable[[ModuleVector], ModuleVector], coeff, vec: ModuleVector,
                order: int) -> ModuleVector:
    total: ModuleVector = dict(vec)
    term = dict(vec)
    for s in range(1, order + 1):
        term = {k: v * coeff / s for k, v in action(term).items()}
        if not term:
            break
        for k, v in term.items():
            _accumulate(total, k, v)
    return _clean(total)


def mc_series_oracle(i: HalfInt, j: HalfInt, p: ModuleParams, order: int):
    """Coefficient of v_j in the doubly truncated exp(alpha U) exp(beta D) v_i from the raw ladder actions"""
    if order < 0:
        raise ValueError("order must be non-negative")
    down = _exp_series(lambda v: apply_module_D(v, p.zp), p.beta, {i: 1}, order)
    up = _exp_series(lambda v: apply_module_U(v, p.z), p.alpha, down, order)
    return up.get(j, 0)


def mc_star_series_oracle(i: HalfInt, j: HalfInt, p: ModuleParams, order: int):
    """Same as mc_series_oracle for the dual module"""
    if order < 0:
        raise ValueError("order must be non-negative")
    down = _exp_series(lambda v: apply_dual_D(v, p.zp), p.beta, {i: 1}, order)
    up = _exp_series(lambda v: apply_dual_U(v, p.z), p.alpha, down, order)
    return up.get(j, 0)


def q_norm(k: HalfInt, sc: SeriesClass, z, zp):
    """
    Q(v_k, v_k), normalized by Q(v_(-1/2), v_(-1/2)) = 1.
    Complementary series: Gamma(z'+k+1/2)/Gamma(z+k+1/2) up to that constant,
    computed from Q(v_(m+1))/Q(v_m) = (z'+m+1/2)/(z+m+1/2).
    """
    if sc.tag == PRINCIPAL:
        return 1
    if sc.tag != COMPLEMENTARY:
        raise NonPositiveRegimeError(f"no invariant positive form for z={z}, z'={zp}")
    half = Fraction(1, 2)
    value = 1
    if k.twice >= -1:
        for t in range(-1, k.twice, 2):
            m = Fraction(t, 2)
            value = value * (zp + m + half) / (z + m + half)
    else:
        for t in range(k.twice, -1, 2):
            m = Fraction(t, 2)
            value = value * (z + m + half) / (zp + m + half)
    return value


def q_form(u: ModuleVector, v: ModuleVector, sc: SeriesClass, z, zp):
    """Q(u, v) = sum_k u_k conj(v_k) Q(v_k, v_k)"""
    total = 0
    for k, coeff in u.items():
        if k in v:
            total = total + coeff * v[k].conjugate() * q_norm(k, sc, z, zp)
    return total
