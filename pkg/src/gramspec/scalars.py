"""Exact arithmetic in the Gaussian rationals Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DivisionByZero, InvalidInput

__all__ = ["GaussianRational", "I", "ZERO", "ONE", "arith", "conj", "as_gr"]

Scalar = Union["GaussianRational", int, Fraction]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational number")


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Both parts are :class:`fractions.Fraction` and therefore always in lowest
    terms with a positive denominator. Instances are immutable and hashable;
    a value with zero imaginary part hashes like the corresponding Fraction,
    so ``GaussianRational(3) == 3`` and both hash alike.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "_re", _frac(re))
        object.__setattr__(self, "_im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "_re", re)
        object.__setattr__(obj, "_im", im)
        return obj

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_real(self) -> bool:
        return not self._im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def conj(self) -> GaussianRational:
        return GaussianRational._raw(self._re, -self._im)

    def norm(self) -> Fraction:
        """``|z|^2``, always a non-negative rational."""
        return self._re * self._re + self._im * self._im

    def __neg__(self) -> GaussianRational:
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self) -> GaussianRational:
        return self

    def __add__(self, other):
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        if not b and not d:
            return GaussianRational._raw(a * c, Fraction(0))
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise DivisionByZero("division by zero in Q(i)")
        return GaussianRational._raw(self._re / n, -self._im / n)

    def __truediv__(self, other):
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> GaussianRational:
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(n)):
            result = result * base
        return result

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other) -> bool:
        o = as_gr(other, strict=False)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self._re, self._im)

    # -- presentation -------------------------------------------------------
    def __repr__(self) -> str:
        return f"GaussianRational({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self) -> str:
        if not self._im:
            return str(self._re)
        im = self._im
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}*i"
        if not self._re:
            return ims
        sign = "+" if im > 0 else "-"
        ims = ims.lstrip("-")
        return f"{self._re}{sign}{ims}"

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> list[str]:
        return [
            str(self._re.numerator),
            str(self._re.denominator),
            str(self._im.numerator),
            str(self._im.denominator),
        ]

    @classmethod
    def from_json(cls, data) -> GaussianRational:
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls(Fraction(data))
        try:
            rn, rd, in_, id_ = (int(v) for v in data)
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"bad scalar encoding {data!r}") from exc
        if rd <= 0 or id_ <= 0:
            raise InvalidInput(f"scalar denominators must be positive: {data!r}")
        return cls(Fraction(rn, rd), Fraction(in_, id_))


def as_gr(value, strict: bool = True):
    """Coerce ints, Fractions and GaussianRationals to GaussianRational."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational._raw(Fraction(value), Fraction(0))
    if strict:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def arith(a: Scalar, b: Scalar, op: str) -> GaussianRational:
    try:
        fn = _OPS[op]
    except KeyError:
        raise InvalidInput(f"unknown operation {op!r}") from None
    return fn(as_gr(a), as_gr(b))


def conj(a: Scalar) -> GaussianRational:
    return as_gr(a).conj()
