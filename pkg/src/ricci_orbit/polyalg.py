"""Dense univariate polynomials and reduced rational functions over exact rationals.

Coefficients are ``fractions.Fraction`` throughout; list index = power of the
variable.  Everything here is immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence, Union

RatLike = Union[Fraction, int, str]


def as_fraction(value: RatLike) -> Fraction:
    """Coerce ints, Fractions and strings like '3/2', '0.25' or '1e-4' exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            try:
                return Fraction(Decimal(value))
            except InvalidOperation:
                raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_fraction(q: Fraction) -> str:
    """Render as 'p/q', or plain 'p' when the denominator is 1."""
    return str(q)


class Poly:
    """Dense polynomial over Q.

    ``coeffs`` is a tuple with no trailing zeros; the zero polynomial is the
    empty tuple and reports degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: RatLike) -> "Poly":
        return cls((as_fraction(c),))

    @classmethod
    def monomial(cls, c: RatLike, power: int) -> "Poly":
        return cls((0,) * power + (as_fraction(c),))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        """Leading coefficient; 0 for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: RatLike) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def divrem(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Long division: self = divisor * quotient + remainder, deg rem < deg divisor."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.degree < divisor.degree:
            return Poly(), self
        rem = list(self.coeffs)
        dlc = divisor.lc
        dd = divisor.degree
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / dlc
            quot[i - dd] = q
            for j, dc in enumerate(divisor.coeffs):
                rem[i - dd + j] -= q * dc
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def exact_div(self, divisor: "Poly"):
        """Quotient when division is exact, else None."""
        q, r = self.divrem(divisor)
        return q if r.is_zero else None

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor, with per-step content normalization."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, (a % b).primitive_part()
        if a.is_zero:
            return a
        return a * (1 / a.lc)

    # -- normal forms ------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c an integer polynomial of content 1."""
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = _int_gcd(num, c.numerator)
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "Poly":
        """self / content(); sign of the leading coefficient preserved."""
        if self.is_zero:
            return self
        return self * (1 / self.content())

    def squarefree_part(self) -> "Poly":
        """self / gcd(self, self'); same root set, all roots simple."""
        if self.degree <= 0:
            return self
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self
        q = self.exact_div(g)
        assert q is not None
        return q

    def compose_linear(self, a0: RatLike, a1: RatLike) -> "Poly":
        """self evaluated at (a0 + a1*x), as a polynomial in x."""
        shift = Poly((as_fraction(a0), as_fraction(a1)))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * shift + Poly.constant(c)
        return acc

    def reverse(self) -> "Poly":
        """Coefficient reversal: x^deg * self(1/x)."""
        return Poly(tuple(reversed(self.coeffs)))

    # -- serialization / display -------------------------------------------

    def to_json(self) -> list[str]:
        return [format_fraction(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[RatLike]) -> "Poly":
        return cls(tuple(as_fraction(c) for c in data))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


class RatFunc:
    """Reduced quotient of two Polys.

    Canonical form: gcd(num, den) = 1 and the denominator is monic, which in
    particular makes its leading coefficient positive.  Two RatFuncs are equal
    as functions iff their canonical forms compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly((1,))):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num = Poly()
            self.den = Poly.one()
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        scale = 1 / den.lc
        self.num = num * scale
        self.den = den * scale

    @classmethod
    def constant(cls, c: RatLike) -> "RatFunc":
        return cls(Poly.constant(c))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant rational function")
        return self.num.coeff(0) / self.den.coeff(0)

    @property
    def degree_gap(self) -> int:
        """deg(den) - deg(num); decay order at infinity."""
        return self.den.degree - self.num.degree

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x: RatLike) -> Fraction:
        x = as_fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at x = {x}")
        return self.num(x) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))

    def __str__(self) -> str:
        if self.den == Poly.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def ratfunc_reduce(num: Poly, den: Poly) -> RatFunc:
    """Reduce num/den to the canonical coprime, monic-denominator form.

    Reduction to lowest terms is what detects polynomiality of a quotient:
    the result has a constant denominator iff den divides num.
    """
    return RatFunc(num, den)
