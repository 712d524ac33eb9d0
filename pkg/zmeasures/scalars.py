"""
Scalars: exact Gaussian rationals (pairs of Fractions) and complex floats
"""

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import MathDomainError, ParseError


class NumericMode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with Fraction components; closed under + - * /"""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational(Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) + other if isinstance(other, (float, complex)) else NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) - other if isinstance(other, (float, complex)) else NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return other - complex(self) if isinstance(other, (float, complex)) else NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) * other if isinstance(other, (float, complex)) else NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) / other if isinstance(other, (float, complex)) else NotImplemented
        n = o.norm2()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return other / complex(self) if isinstance(other, (float, complex)) else NotImplemented
        return o / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return complex(self) ** exponent
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm2()))

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"


Scalar = Union[GaussianRational, complex]

_UNSIGNED = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_UNSIGNED})(?:(?P<im>[+-](?:{_UNSIGNED})?)i)?"
    rf"|(?P<pure>[+-]?(?:{_UNSIGNED})?)i)$"
)


def _split_complex_text(text: str):
    text = text.replace(" ", "").replace("j", "i")
    if not text:
        raise ParseError("empty scalar")
    match = _SCALAR_RE.match(text)
    if not match:
        raise ParseError(f"not a scalar: {text!r}")
    if match.group("pure") is not None:
        real, imag = "0", match.group("pure")
    else:
        real, imag = match.group("re"), match.group("im") or "0"
    if imag in ("", "+", "-"):
        imag += "1"
    return real, imag


def parse_scalar(text: str, mode: NumericMode = NumericMode.FLOAT) -> Scalar:
    """Parse "2", "1/2", "0.3", "1+2i", "1/2-3/4i", "-2i" """
    real, imag = _split_complex_text(str(text))
    try:
        re_part = Fraction(real)
        im_part = Fraction(imag)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a scalar: {text!r} ({e})")
    if mode == NumericMode.EXACT:
        return GaussianRational(re_part, im_part)
    return complex(float(re_part), float(im_part))


def coerce(value, mode: NumericMode) -> Scalar:
    """Bring an int, Fraction, float, complex or GaussianRational into the mode's scalar type"""
    if mode == NumericMode.EXACT:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return GaussianRational(Fraction(value))
        if isinstance(value, float):
            return GaussianRational(Fraction(value))
        if isinstance(value, complex):
            return GaussianRational(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot coerce {value!r} to an exact scalar")
    return complex(value)


def is_real(value) -> bool:
    return value.imag == 0


def is_integer(value) -> bool:
    """True for scalars with zero imaginary part and an integral real part"""
    if not is_real(value):
        return False
    real = value.real
    if isinstance(real, float):
        return real.is_integer()
    return Fraction(real).denominator == 1


def as_int(value) -> int:
    if not is_integer(value):
        raise ValueError(f"{value} is not an integer")
    return int(value.real)


def scalar_power(base, exponent) -> Scalar:
    """base ** exponent, exact when base is exact and exponent an integer"""
    if isinstance(base, GaussianRational):
        if not is_integer(exponent):
            raise MathDomainError(
                f"({base})^({exponent}) is not exact: exponent must be an integer in exact mode")
        return base ** as_int(exponent)
    return complex(base) ** complex(exponent)


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_float(x: float) -> str:
    return repr(float(x))


def format_scalar(value) -> str:
    """Exact "p/q+r/si" or float "a+bi"; real values print without an imaginary part"""
    if isinstance(value, (int, Rational)):
        return _format_fraction(Fraction(value))
    if isinstance(value, GaussianRational):
        if value.im == 0:
            return _format_fraction(value.re)
        sign = "-" if value.im < 0 else "+"
        real = "" if value.re == 0 else _format_fraction(value.re)
        imag = _format_fraction(abs(value.im))
        if not real:
            return f"{'-' if value.im < 0 else ''}{imag}i"
        return f"{real}{sign}{imag}i"
    value = complex(value)
    if value.imag == 0:
        return _format_float(value.real)
    sign = "-" if value.imag < 0 else "+"
    return f"{_format_float(value.real)}{sign}{_format_float(abs(value.imag))}i"
