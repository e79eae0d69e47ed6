"""Exact half-integer arithmetic and the two q-bracket kinds.

Every label entering a matrix element (weight entries, tableau entries,
l-coordinates) is an integer or half-odd integer.  ``HalfInt`` stores the
doubled value so that comparisons, shifts and parity tests are exact;
floating point appears only when a bracket is finally evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True, eq=False)
class HalfInt:
    """An exact integer or half-odd integer, stored as twice its value.

    ``HalfInt(3)`` is 3/2, ``HalfInt(2 * 4)`` is 4.  Arithmetic with other
    ``HalfInt`` objects or plain ``int`` is exact; no float ever enters.
    """

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int):
            raise TypeError(f"twice must be int, got {type(self.twice).__name__}")

    # -- construction ------------------------------------------------------

    @staticmethod
    def of(value) -> "HalfInt":
        """Coerce an int or HalfInt; anything inexact is rejected."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        raise TypeError(f"cannot interpret {value!r} as an exact half-integer")

    @staticmethod
    def parse(text: str) -> "HalfInt":
        """Parse the exact string form "k" or "k/2" (e.g. "-3/2")."""
        s = text.strip()
        if s.endswith("/2"):
            return HalfInt(int(s[:-2]))
        return HalfInt(2 * int(s))

    # -- structure ---------------------------------------------------------

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    @property
    def is_half_odd(self) -> bool:
        return self.twice % 2 != 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"

    # -- exact arithmetic ---------------------------------------------------

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    # -- exact comparison (HalfInt or int on either side) --------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (HalfInt, int)):
            return self.twice == HalfInt.of(other).twice
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.twice)

    def __lt__(self, other) -> bool:
        return self.twice < HalfInt.of(other).twice

    def __le__(self, other) -> bool:
        return self.twice <= HalfInt.of(other).twice

    def __gt__(self, other) -> bool:
        return self.twice > HalfInt.of(other).twice

    def __ge__(self, other) -> bool:
        return self.twice >= HalfInt.of(other).twice


ONE_HALF = HalfInt(1)


@dataclass(frozen=True)
class QParam:
    """Deformation parameter: a positive real bounded away from 1.

    The guard |q - 1| >= 1e-6 keeps the nonclassical formulas, which blow
    up as q -> 1, well conditioned.
    """

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not v > 0.0:
            raise ValueError(f"q must be positive, got {v}")
        if abs(v - 1.0) < 1e-6:
            raise ValueError(f"|q - 1| must be >= 1e-6, got q = {v}")
        object.__setattr__(self, "value", v)


def _exponent(a):
    """Numeric exponent for a bracket argument (HalfInt, real or complex)."""
    if isinstance(a, HalfInt):
        return a.twice / 2.0
    if isinstance(a, complex):
        return a
    return float(a)


def q_pow(a, q: QParam):
    """q**a for a half-integer, real or complex exponent a."""
    x = _exponent(a)
    if isinstance(x, complex):
        return cmath.exp(x * math.log(q.value))
    return math.exp(x * math.log(q.value))


def q_bracket(a, q: QParam):
    """The q-number [a] = (q^a - q^{-a}) / (q - q^{-1}).

    Odd in a, invariant under q -> 1/q, and [1] = 1 for every q.  Complex
    arguments are accepted (the principal-series parameter enters brackets).
    """
    t = q_pow(a, q)
    return (t - 1.0 / t) / (q.value - 1.0 / q.value)


def q_bracket_plus(a, q: QParam):
    """The plus-type q-number [a]_+ = (q^a + q^{-a}) / (q - q^{-1}).

    Even in a; its sign is the sign of q - 1.  It never vanishes for
    real a.
    """
    t = q_pow(a, q)
    return (t + 1.0 / t) / (q.value - 1.0 / q.value)
