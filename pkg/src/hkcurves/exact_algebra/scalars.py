"""Exact arithmetic over the Gaussian rationals Q(i).

Scalars are pairs of stdlib Fractions, so every value is in canonical lowest
terms automatically.  The string grammar used by all JSON documents is

    RAT   := INT | INT "/" POSINT
    GAUSS := RAT | RAT "i" | RAT ("+"|"-") RAT "i"

e.g. "3", "-1/2", "2+1/3i".  A unicode minus is accepted on input; output is
ASCII and round-trips byte-identically.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RAT = r"[+-]?\d+(?:/\d+)?"
_URAT = r"\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^\s*(?P<re>{_RAT})(?P<im_joined>[+-]{_URAT})?(?P<i1>i)?\s*$"
)


class GaussianRational:
    """a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse a GAUSS literal.  Raises ValueError on malformed input."""
        s = text.replace("−", "-").strip()
        m = _GAUSS_RE.match(s)
        if not m:
            raise ValueError(f"not a GAUSS literal: {text!r}")
        first, second, tail_i = m.group("re"), m.group("im_joined"), m.group("i1")
        if second is not None:
            # RAT (+|-) RAT i
            if tail_i is None:
                raise ValueError(f"not a GAUSS literal: {text!r}")
            return GaussianRational(Fraction(first), Fraction(second))
        if tail_i is not None:
            return GaussianRational(0, Fraction(first))
        return GaussianRational(Fraction(first), 0)

    @staticmethod
    def from_complex(z: complex, limit: int = 10**6) -> "GaussianRational":
        """Nearest Gaussian rational with bounded denominators (testing aid)."""
        return GaussianRational(
            Fraction(z.real).limit_denominator(limit),
            Fraction(z.imag).limit_denominator(limit),
        )

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    # -- predicates / conversions ---------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gauss(self)


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussianRational) -> str:
    """Canonical GAUSS literal; parse(format(z)) == z."""
    if z.im == 0:
        return _fmt_rat(z.re)
    if z.re == 0:
        return _fmt_rat(z.im) + "i"
    sign = "+" if z.im > 0 else "-"
    return _fmt_rat(z.re) + sign + _fmt_rat(abs(z.im)) + "i"


parse_gauss = GaussianRational.parse

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gauss(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)
