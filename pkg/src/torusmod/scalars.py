"""Exact Gaussian-rational scalars and integer exponent vectors.

Every number in this package is a Gaussian rational re + im*i with both
components stored as ``fractions.Fraction`` (lowest terms, positive
denominator).  There is no floating point anywhere: all identity checks
downstream rely on exact equality.

Exponent vectors (the degrees of Laurent monomials) are plain tuples of
ints; coefficient vectors are tuples of Scalar.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple, Union

Rat = Union[int, Fraction]
ExpVec = Tuple[int, ...]
CoefVec = Tuple["Scalar", ...]

_FR_ZERO = Fraction(0)
_FR_ONE = Fraction(1)


class Scalar:
    """A Gaussian rational ``re + im*i``; treated as immutable everywhere.

    (No write guard: these sit in the innermost loops of every sweep.)
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rat = 0, im: Rat = _FR_ZERO):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if self.im or other.im:
            return Scalar(self.re + other.re, self.im + other.im)
        return Scalar(self.re + other.re)

    def __sub__(self, other: "Scalar") -> "Scalar":
        if self.im or other.im:
            return Scalar(self.re - other.re, self.im - other.im)
        return Scalar(self.re - other.re)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: Union["Scalar", int, Fraction]) -> "Scalar":
        if type(other) is Scalar:
            # fast path for the (typical) purely real case
            if not self.im and not other.im:
                return Scalar(self.re * other.re)
            a, b, c, d = self.re, self.im, other.re, other.im
            return Scalar(a * c - b * d, a * d + b * c)
        return Scalar(self.re * other, self.im * other)

    def __rmul__(self, other: Union[int, Fraction]) -> "Scalar":
        return Scalar(self.re * other, self.im * other)

    def __truediv__(self, other: Union["Scalar", int, Fraction]) -> "Scalar":
        if type(other) is not Scalar:
            return Scalar(self.re / other, self.im / other)
        if not other.im:
            return Scalar(self.re / other.re, self.im / other.re)
        norm = other.re * other.re + other.im * other.im
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar((a * c + b * d) / norm, (b * c - a * d) / norm)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if type(other) is Scalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    # -- presentation --------------------------------------------------------

    def __repr__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @staticmethod
    def from_json(obj) -> "Scalar":
        if isinstance(obj, dict):
            return Scalar(Fraction(obj.get("re", "0")), Fraction(obj.get("im", "0")))
        if isinstance(obj, str):
            return Scalar(Fraction(obj))
        if isinstance(obj, int):
            return Scalar(obj)
        raise ValueError(f"not a scalar encoding: {obj!r}")


SC_ZERO = Scalar(0)
SC_ONE = Scalar(1)


def as_scalar(x: Union[Scalar, int, Fraction]) -> Scalar:
    return x if type(x) is Scalar else Scalar(x)


def coef_vec(entries: Sequence[Union[Scalar, int, Fraction]]) -> CoefVec:
    """Coerce a sequence of numbers to a tuple of Scalar."""
    return tuple(as_scalar(x) for x in entries)


def exp_vec(entries: Sequence[int]) -> ExpVec:
    if not all(isinstance(e, int) for e in entries):
        raise ValueError(f"exponent vector must be integral: {entries!r}")
    return tuple(entries)


def pair(u: Sequence[Union[Scalar, int, Fraction]], r: Sequence[Union[Scalar, int, Fraction]]) -> Scalar:
    """The standard bilinear dot product sum(u_i * r_i), exactly.

    Both slot conventions of the literature, (u|r) and (u,r), are this one
    pairing.  Either argument may mix ints, Fractions and Scalars.
    """
    if len(u) != len(r):
        raise ValueError(f"length mismatch in pairing: {len(u)} vs {len(r)}")
    acc = SC_ZERO
    for a, b in zip(u, r):
        acc = acc + as_scalar(a) * as_scalar(b)
    return acc


def bar(r: ExpVec) -> ExpVec:
    """Symplectic rotation (r_{m+1},...,r_{2m}, -r_1,...,-r_m); needs even length.

    Satisfies bar(bar(r)) == -r and pair(bar(r), r) == 0.
    """
    n = len(r)
    if n % 2 != 0:
        raise ValueError(f"bar map needs an even number of components, got {n}")
    m = n // 2
    return tuple(r[m:]) + tuple(-x for x in r[:m])


def vec_add(r: ExpVec, s: ExpVec) -> ExpVec:
    return tuple(a + b for a, b in zip(r, s))


def vec_neg(r: ExpVec) -> ExpVec:
    return tuple(-a for a in r)


def is_zero_vec(r: ExpVec) -> bool:
    return all(a == 0 for a in r)


def in_box(r: ExpVec, k: int) -> bool:
    return all(-k <= a <= k for a in r)
