"""Scalar distance values and the comparison policy used by every algorithm.

Distances are dimensionless nonnegative scalars.  Two numeric modes sit
behind one comparator: exact rationals (`fractions.Fraction`, the default;
decimal strings parse losslessly) and machine floats compared with a
relative tolerance.  All formulas in the library use only +, -, * and
division by two, which both modes support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Value = Union[Fraction, int, float]


@dataclass(frozen=True)
class Comparator:
    """Equality and order policy for distance values.

    ``epsilon is None`` means exact comparison.  Otherwise two values are
    considered equal when ``|a - b| <= epsilon * max(1, |a|, |b|)``.
    """

    epsilon: float | None = None

    @property
    def exact(self) -> bool:
        return self.epsilon is None

    def eq(self, a: Value, b: Value) -> bool:
        if self.epsilon is None:
            return a == b
        return abs(a - b) <= self.epsilon * max(1, abs(a), abs(b))

    def ne(self, a: Value, b: Value) -> bool:
        return not self.eq(a, b)

    def lt(self, a: Value, b: Value) -> bool:
        return a < b and not self.eq(a, b)

    def le(self, a: Value, b: Value) -> bool:
        return a < b or self.eq(a, b)

    def gt(self, a: Value, b: Value) -> bool:
        return b < a and not self.eq(a, b)

    def ge(self, a: Value, b: Value) -> bool:
        return b < a or self.eq(a, b)

    def is_zero(self, a: Value) -> bool:
        return self.eq(a, 0)

    def is_positive(self, a: Value) -> bool:
        return self.gt(a, 0)


EXACT = Comparator()


def tolerant(epsilon: float = 1e-9) -> Comparator:
    """Comparator for float mode with the given relative tolerance."""
    return Comparator(float(epsilon))


def coerce_value(v, exact: bool = True) -> Value:
    """Bring an input scalar into the active numeric mode.

    Exact mode parses strings ("3", "3.25", "5/2") and ints losslessly;
    floats go through their shortest decimal repr so that e.g. 0.1 becomes
    1/10 rather than the binary approximation.
    """
    if exact:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, bool):
            raise TypeError("bool is not a distance value")
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, float):
            return Fraction(str(v))
        if isinstance(v, str):
            return Fraction(v.strip())
        raise TypeError(f"cannot interpret {type(v).__name__} as an exact value")
    if isinstance(v, str):
        v = v.strip()
        return float(Fraction(v)) if "/" in v else float(v)
    return float(v)


def format_value(v: Value, decimal: bool = False, digits: int = 12) -> str:
    """Render a value for output.

    Exact values print as fractions ("5", "3/2") unless ``decimal`` asks for
    rounded decimals with ``digits`` significant digits.
    """
    if decimal or isinstance(v, float):
        return f"{float(v):.{digits}g}"
    return str(Fraction(v))
