"""Fixed-point torus arithmetic on big-integer mantissas.

A ``FixedPoint`` holds ``mantissa / 2**scale_bits`` exactly.  Every quantity
that feeds a membership test ``|q.alpha - p - gamma| <= psi(|q|)`` lives in
this representation (or in ``fractions.Fraction``); machine floats are only
ever produced for report formatting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MIN_SCALE_BITS = 64
DEFAULT_SCALE_BITS = 192


class PrecisionError(ValueError):
    """Requested operation exceeds the certified precision range."""


def _check_scale(scale_bits: int) -> None:
    if scale_bits < MIN_SCALE_BITS:
        raise PrecisionError(
            f"scale_bits={scale_bits} below minimum {MIN_SCALE_BITS}"
        )


@dataclass(frozen=True)
class FixedPoint:
    """Exact dyadic rational ``mantissa / 2**scale_bits``."""

    mantissa: int
    scale_bits: int = DEFAULT_SCALE_BITS

    def __post_init__(self) -> None:
        _check_scale(self.scale_bits)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_fraction(cls, value: Fraction, scale_bits: int = DEFAULT_SCALE_BITS,
                      ) -> "FixedPoint":
        """Round ``value`` down to the nearest multiple of 2**-scale_bits."""
        _check_scale(scale_bits)
        num, den = value.numerator, value.denominator
        return cls((num << scale_bits) // den, scale_bits)

    @classmethod
    def zero(cls, scale_bits: int = DEFAULT_SCALE_BITS) -> "FixedPoint":
        return cls(0, scale_bits)

    # -- conversions ---------------------------------------------------

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale_bits)

    def to_float(self) -> float:
        # report formatting only
        return self.mantissa / float(1 << self.scale_bits)

    # -- exact arithmetic ----------------------------------------------

    def _aligned(self, other: "FixedPoint") -> tuple[int, int, int]:
        s = max(self.scale_bits, other.scale_bits)
        a = self.mantissa << (s - self.scale_bits)
        b = other.mantissa << (s - other.scale_bits)
        return a, b, s

    def __add__(self, other: "FixedPoint") -> "FixedPoint":
        a, b, s = self._aligned(other)
        return FixedPoint(a + b, s)

    def __sub__(self, other: "FixedPoint") -> "FixedPoint":
        a, b, s = self._aligned(other)
        return FixedPoint(a - b, s)

    def __neg__(self) -> "FixedPoint":
        return FixedPoint(-self.mantissa, self.scale_bits)

    def __mul__(self, k: int) -> "FixedPoint":
        if not isinstance(k, int):
            return NotImplemented
        return FixedPoint(self.mantissa * k, self.scale_bits)

    __rmul__ = __mul__

    def __abs__(self) -> "FixedPoint":
        return FixedPoint(abs(self.mantissa), self.scale_bits)

    def _cmp(self, other: "FixedPoint") -> int:
        a, b, _ = self._aligned(other)
        return (a > b) - (a < b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FixedPoint):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: "FixedPoint") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "FixedPoint") -> bool:
        return self._cmp(other) <= 0

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    # -- torus operations ----------------------------------------------

    def frac(self) -> "FixedPoint":
        """Representative in [0, 1): mantissa reduced mod 2**scale_bits."""
        return FixedPoint(self.mantissa % (1 << self.scale_bits), self.scale_bits)

    def __repr__(self) -> str:
        return f"FixedPoint({self.mantissa}, scale_bits={self.scale_bits})"


def dist_nearest_int(x: FixedPoint) -> FixedPoint:
    """Distance to the nearest integer, exact at the operand's scale.

    Returns a FixedPoint in [0, 1/2].
    """
    one = 1 << x.scale_bits
    r = x.mantissa % one
    return FixedPoint(min(r, one - r), x.scale_bits)
