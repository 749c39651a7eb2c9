"""Exact scalars of the ring Z[1/sqrt2].

Every coefficient of a product of the generators ``(1 +- a_i)/sqrt2`` has the
form ``a * 2**(-h/2)``.  Sums of such numbers with mixed parity of ``h`` leave
that set (``1 + 1/sqrt2``), so values are stored as ``(a + b*sqrt2) / 2**k``
and the single-term view ``mantissa * 2**(-halfexp/2)`` is offered whenever the
value has it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

__all__ = ["ScaledDyadic", "ZERO", "ONE", "SQRT2", "INV_SQRT2"]

Number = Union["ScaledDyadic", int]


class ScaledDyadic:
    """Exact number ``(a + b*sqrt2) / 2**k`` in canonical form.

    Canonical means ``k`` is minimal: ``k == 0`` or ``a``, ``b`` are not both
    even.  Zero is ``(0, 0, 0)``.  Equality is therefore field equality.
    """

    __slots__ = ("_a", "_b", "_k")

    def __init__(self, a: int = 0, b: int = 0, k: int = 0) -> None:
        if k < 0:
            # 2**-k in the numerator
            a <<= -k
            b <<= -k
            k = 0
        while k > 0 and not (a & 1) and not (b & 1):
            a >>= 1
            b >>= 1
            k -= 1
        if a == 0 and b == 0:
            k = 0
        self._a = a
        self._b = b
        self._k = k

    @classmethod
    def from_mantissa(cls, mantissa: int, halfexp: int) -> ScaledDyadic:
        """The number ``mantissa * 2**(-halfexp/2)``; ``halfexp`` may be negative."""
        if halfexp % 2 == 0:
            return cls(mantissa, 0, halfexp // 2)
        return cls(0, mantissa, (halfexp + 1) // 2)

    @classmethod
    def pow_sqrt2(cls, e: int) -> ScaledDyadic:
        """``sqrt2 ** e`` for any integer e."""
        return cls.from_mantissa(1, -e)

    @classmethod
    def coerce(cls, x: Number) -> ScaledDyadic:
        if isinstance(x, ScaledDyadic):
            return x
        if isinstance(x, int):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ScaledDyadic")

    # ---------------------------------------------------------------- views

    @property
    def parts(self) -> tuple[int, int, int]:
        return self._a, self._b, self._k

    def is_monomial(self) -> bool:
        return self._a == 0 or self._b == 0

    @property
    def mantissa(self) -> int:
        return self._single()[0]

    @property
    def halfexp(self) -> int:
        return self._single()[1]

    def _single(self) -> tuple[int, int]:
        a, b, k = self._a, self._b, self._k
        if b == 0:
            if k == 0:
                # integer: pull out factors of 2 as halfexp stays nonnegative
                return a, 0
            return a, 2 * k
        if a == 0:
            if k == 0:
                return 2 * b, 1
            return b, 2 * k - 1
        raise ValueError(f"{self!r} is not of the form a*2^(-h/2)")

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._k == 0

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self._a

    def sign(self) -> int:
        a, b = self._a, self._b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2 (never equal, sqrt2 is irrational)
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return -1 if a * a > 2 * b * b else 1

    # ---------------------------------------------------------- arithmetic

    def __add__(self, other: Number) -> ScaledDyadic:
        if isinstance(other, int):
            other = ScaledDyadic(other)
        elif not isinstance(other, ScaledDyadic):
            return NotImplemented
        a1, b1, k1 = self._a, self._b, self._k
        a2, b2, k2 = other._a, other._b, other._k
        if k1 < k2:
            a1 <<= k2 - k1
            b1 <<= k2 - k1
            k1 = k2
        elif k2 < k1:
            a2 <<= k1 - k2
            b2 <<= k1 - k2
        return ScaledDyadic(a1 + a2, b1 + b2, k1)

    __radd__ = __add__

    def __neg__(self) -> ScaledDyadic:
        return ScaledDyadic(-self._a, -self._b, self._k)

    def __sub__(self, other: Number) -> ScaledDyadic:
        if not isinstance(other, (int, ScaledDyadic)):
            return NotImplemented
        return self + (-ScaledDyadic.coerce(other))

    def __rsub__(self, other: Number) -> ScaledDyadic:
        return ScaledDyadic.coerce(other) - self

    def __mul__(self, other: Number) -> ScaledDyadic:
        if isinstance(other, int):
            return ScaledDyadic(self._a * other, self._b * other, self._k)
        if not isinstance(other, ScaledDyadic):
            return NotImplemented
        a1, b1 = self._a, self._b
        a2, b2 = other._a, other._b
        return ScaledDyadic(a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1, self._k + other._k)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ScaledDyadic:
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    # ---------------------------------------------------------- comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._b == 0 and self._k == 0 and self._a == other
        if isinstance(other, ScaledDyadic):
            return self._a == other._a and self._b == other._b and self._k == other._k
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0 and self._k == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._k))

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        return (self._a + self._b * math.sqrt(2)) / (1 << self._k)

    def to_fraction(self) -> Fraction:
        if self._b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self._a, 1 << self._k)

    # -------------------------------------------------------------- output

    def __repr__(self) -> str:
        return f"ScaledDyadic({self._a}, {self._b}, {self._k})"

    def to_json_string(self) -> str:
        """``"a/2^(h/2)"`` for single-term values."""
        m, h = self._single()
        return f"{m}/2^({h}/2)"

    @classmethod
    def from_json_string(cls, text: str) -> ScaledDyadic:
        num, _, rest = text.partition("/2^(")
        if not rest.endswith("/2)"):
            raise ValueError(f"cannot parse {text!r}")
        return cls.from_mantissa(int(num), int(rest[:-3]))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        a, b, k = self._a, self._b, self._k
        den = "" if k == 0 else f"/{1 << k}"
        if b == 0:
            return f"{a}{den}"
        if a == 0:
            sign = "-" if b < 0 else ""
            mag = "" if abs(b) == 1 else str(abs(b))
            return f"{sign}{mag}√2{den}"
        return f"({a}{b:+d}√2){den}"


ZERO = ScaledDyadic(0)
ONE = ScaledDyadic(1)
SQRT2 = ScaledDyadic(0, 1, 0)
INV_SQRT2 = ScaledDyadic(0, 1, 1)
