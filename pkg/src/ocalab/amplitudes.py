"""Exact arithmetic in the ring Q(sqrt2) + i*Q(sqrt2).

An element is (a + b*sqrt2) + i*(c + d*sqrt2) with a, b, c, d arbitrary
precision rationals.  The ring is closed under addition, multiplication
and conjugation, which is everything the quantum engine needs: machine
constructions only use amplitudes drawn from {0, +-1, +-1/2, +-1/sqrt2}
and their products.  No floating point ever enters.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


def _mul2(p: Fraction, q: Fraction, r: Fraction, s: Fraction) -> tuple[Fraction, Fraction]:
    # (p + q*sqrt2) * (r + s*sqrt2) in Q(sqrt2) coordinates.
    return p * r + 2 * q * s, p * s + q * r


class Amplitude:
    """One ring element, stored as four exact rationals."""

    __slots__ = ("re_rat", "re_sqrt2", "im_rat", "im_sqrt2")

    def __init__(
        self,
        re_rat: RationalLike = 0,
        re_sqrt2: RationalLike = 0,
        im_rat: RationalLike = 0,
        im_sqrt2: RationalLike = 0,
    ) -> None:
        object.__setattr__(self, "re_rat", Fraction(re_rat))
        object.__setattr__(self, "re_sqrt2", Fraction(re_sqrt2))
        object.__setattr__(self, "im_rat", Fraction(im_rat))
        object.__setattr__(self, "im_sqrt2", Fraction(im_sqrt2))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Amplitude is immutable")

    def _parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.re_rat, self.re_sqrt2, self.im_rat, self.im_sqrt2

    @classmethod
    def _coerce(cls, value: object) -> "Amplitude | None":
        if isinstance(value, Amplitude):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        return None

    def __add__(self, other: object) -> "Amplitude":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Amplitude(
            self.re_rat + o.re_rat,
            self.re_sqrt2 + o.re_sqrt2,
            self.im_rat + o.im_rat,
            self.im_sqrt2 + o.im_sqrt2,
        )

    __radd__ = __add__

    def __neg__(self) -> "Amplitude":
        return Amplitude(-self.re_rat, -self.re_sqrt2, -self.im_rat, -self.im_sqrt2)

    def __sub__(self, other: object) -> "Amplitude":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Amplitude":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "Amplitude":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._parts()
        e, f, g, h = o._parts()
        # (A + iC)(E + iG) with A, C, E, G in Q(sqrt2).
        re1 = _mul2(a, b, e, f)
        re2 = _mul2(c, d, g, h)
        im1 = _mul2(a, b, g, h)
        im2 = _mul2(c, d, e, f)
        return Amplitude(re1[0] - re2[0], re1[1] - re2[1], im1[0] + im2[0], im1[1] + im2[1])

    __rmul__ = __mul__

    def conjugate(self) -> "Amplitude":
        return Amplitude(self.re_rat, self.re_sqrt2, -self.im_rat, -self.im_sqrt2)

    def abs2(self) -> tuple[Fraction, Fraction]:
        """|z|^2 as an element (rat, coef) = rat + coef*sqrt2 of Q(sqrt2)."""
        a, b, c, d = self._parts()
        rat = a * a + 2 * b * b + c * c + 2 * d * d
        coef = 2 * (a * b + c * d)
        return rat, coef

    def is_zero(self) -> bool:
        return not (self.re_rat or self.re_sqrt2 or self.im_rat or self.im_sqrt2)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._parts() == o._parts()

    def __hash__(self) -> int:
        return hash(self._parts())

    def __repr__(self) -> str:
        return "Amplitude(%s, %s, %s, %s)" % self._parts()


AMP_ZERO = Amplitude()
AMP_ONE = Amplitude(1)
AMP_HALF = Amplitude(Fraction(1, 2))
AMP_INV_SQRT2 = Amplitude(0, Fraction(1, 2))  # 1/sqrt2 == (1/2)*sqrt2
