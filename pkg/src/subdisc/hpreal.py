"""Dyadic interval arithmetic with certified enclosures.

An ``HPReal`` represents the closed interval ``[mid - rad, mid + rad]``.
Every operation returns an enclosure of the exact image of its operands, so
any chain of operations yields a certified bound on the true result.
Midpoints are snapped to the ``2**-prec`` grid only once their denominators
outgrow the working precision; exact rational inputs therefore stay exact
(radius 0) through ``+ - * /`` whenever no genuine uncertainty is present.
"""

from __future__ import annotations

import decimal
from fractions import Fraction
from math import isqrt

from .errors import PrecisionError

_ZERO = Fraction(0)
_RAD_BITS = 64  # mantissa kept for radii (always rounded up)


def _ceil_dyadic(x: Fraction, bits: int = _RAD_BITS) -> Fraction:
    """Smallest dyadic with a ``bits``-bit mantissa that is >= x >= 0."""
    if x == 0:
        return _ZERO
    num, den = x.numerator, x.denominator
    shift = bits - (num.bit_length() - den.bit_length())
    if shift >= 0:
        m = -((-num << shift) // den)
        return Fraction(m, 1 << shift)
    m = -((-num) // (den << -shift))
    return Fraction(m << -shift)


def decimal_str(value: Fraction, digits: int, rounding: str = decimal.ROUND_HALF_EVEN) -> str:
    """Render a rational with the given number of significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        ctx.Emax = decimal.MAX_EMAX
        ctx.Emin = decimal.MIN_EMIN
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return str(d)


class HPReal:
    """A precision-tracked real: midpoint, radius, and working precision."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid: Fraction, rad: Fraction = _ZERO, prec: int = 128):
        if rad < 0:
            raise ValueError("radius must be non-negative")
        self.mid = Fraction(mid)
        self.rad = Fraction(rad)
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact(value, prec: int = 128) -> "HPReal":
        return HPReal(Fraction(value), _ZERO, prec)

    @staticmethod
    def from_endpoints(lo, hi, prec: int = 128) -> "HPReal":
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        return HPReal((lo + hi) / 2, (hi - lo) / 2, prec)

    # -- basic queries -----------------------------------------------------

    def lo(self) -> Fraction:
        return self.mid - self.rad

    def hi(self) -> Fraction:
        return self.mid + self.rad

    @property
    def is_exact(self) -> bool:
        return self.rad == 0

    def contains(self, value) -> bool:
        value = Fraction(value)
        return self.lo() <= value <= self.hi()

    def contains_zero(self) -> bool:
        return self.contains(0)

    def abs_hi(self) -> Fraction:
        return max(abs(self.lo()), abs(self.hi()))

    def abs_lo(self) -> Fraction:
        if self.contains_zero():
            return _ZERO
        return min(abs(self.lo()), abs(self.hi()))

    def sign(self) -> int:
        """Certified sign: -1, 0 (exact zero) or +1; PrecisionError if unknown."""
        if self.lo() > 0:
            return 1
        if self.hi() < 0:
            return -1
        if self.is_exact:
            return 0
        raise PrecisionError("sign not determined at this precision")

    def certainly_lt(self, other) -> bool:
        other = other if isinstance(other, HPReal) else HPReal.exact(other)
        return self.hi() < other.lo()

    def certainly_gt(self, other) -> bool:
        other = other if isinstance(other, HPReal) else HPReal.exact(other)
        return self.lo() > other.hi()

    # -- rounding ----------------------------------------------------------

    def _settle(self) -> "HPReal":
        """Snap the midpoint to the 2**-prec grid when it grows too fine."""
        if self.rad == 0:
            return self
        if self.mid.denominator.bit_length() <= self.prec + 64:
            if self.rad.denominator.bit_length() > _RAD_BITS + 64:
                return HPReal(self.mid, _ceil_dyadic(self.rad), self.prec)
            return self
        scale = 1 << self.prec
        snapped = Fraction((self.mid.numerator * scale) // self.mid.denominator, scale)
        err = self.mid - snapped  # in [0, 2**-prec)
        return HPReal(snapped, _ceil_dyadic(self.rad + err + Fraction(1, scale)), self.prec)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "HPReal":
        if isinstance(value, HPReal):
            return value
        return HPReal.exact(value)

    def __add__(self, other) -> "HPReal":
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        return HPReal(self.mid + other.mid, self.rad + other.rad, prec)._settle()

    __radd__ = __add__

    def __neg__(self) -> "HPReal":
        return HPReal(-self.mid, self.rad, self.prec)

    def __sub__(self, other) -> "HPReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "HPReal":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "HPReal":
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        mid = self.mid * other.mid
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        return HPReal(mid, rad, prec)._settle()

    __rmul__ = __mul__

    def reciprocal(self) -> "HPReal":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        if self.is_exact:
            return HPReal(1 / self.mid, _ZERO, self.prec)
        lo, hi = self.lo(), self.hi()
        return HPReal.from_endpoints(1 / hi, 1 / lo, self.prec)._settle()

    def __truediv__(self, other) -> "HPReal":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "HPReal":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> "HPReal":
        if n < 0:
            return (self ** (-n)).reciprocal()
        result = HPReal.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __abs__(self) -> "HPReal":
        lo, hi = self.lo(), self.hi()
        if lo >= 0:
            return self
        if hi <= 0:
            return -self
        return HPReal.from_endpoints(_ZERO, max(-lo, hi), self.prec)

    def sqrt(self) -> "HPReal":
        """Certified square root; requires the interval to be >= 0."""
        lo, hi = self.lo(), self.hi()
        if lo < 0:
            raise ValueError("sqrt of an interval containing negatives")
        scale = 1 << self.prec
        lo_s = Fraction(isqrt((lo.numerator * scale * scale) // lo.denominator), scale)
        hi_num = isqrt((hi.numerator * scale * scale) // hi.denominator) + 1
        return HPReal.from_endpoints(lo_s, Fraction(hi_num, scale), self.prec)._settle()

    # -- rendering ---------------------------------------------------------

    def to_decimal(self, digits: int = 30) -> str:
        """``midpoint`` or ``midpoint +/- radius`` with significant digits."""
        mid = decimal_str(self.mid, digits)
        if self.is_exact:
            return mid
        rad = decimal_str(self.rad, 3, rounding=decimal.ROUND_CEILING)
        return f"{mid} +/- {rad}"

    def __repr__(self) -> str:
        if self.is_exact:
            return f"HPReal({self.mid!s})"
        return f"HPReal({self.to_decimal(12)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPReal):
            return NotImplemented
        return self.mid == other.mid and self.rad == other.rad

    def __hash__(self):
        return hash((self.mid, self.rad))
