"""
Exception hierarchy for zmeasures
"""


class ZMeasureError(Exception):
    """Base class for every error raised by zmeasures"""


class ParseError(ZMeasureError, ValueError):
    """Textual input (partition, half-integer, scalar, config) could not be parsed"""


class MathDomainError(ZMeasureError):
    """A computation was asked for outside its mathematical domain"""


class DegenerateParametersError(MathDomainError):
    """Pochhammer denominator (zz')_n vanishes"""


class ConvergenceError(MathDomainError):
    """A series did not converge within its term cap"""


class ChargeError(MathDomainError):
    """A Maya set has the wrong charge for the requested operation"""


class WindowError(MathDomainError):
    """An explicit fermionic window does not cover the state plus one mode of slack"""


class NonPositiveRegimeError(MathDomainError):
    """Parameters are outside the principal and complementary series"""


class VerificationError(ZMeasureError):
    """A verification suite exceeded its threshold"""
