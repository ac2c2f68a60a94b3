"""Radial Kahler geometry on CP^1 in exact arithmetic.

A radial (1,1)-form on the affine chart {z0 != 0} is written

    omega = (i/2) * v(x) * dz ^ dzbar,      x = |z|^2,

and is represented by its density v, a reduced rational function.  For a
potential phi = log(f/h) the density is

    v = (Dop(f) h^2 - Dop(h) f^2) / (f h)^2,
    Dop(P) = P'P + x P''P - x (P')^2,

and the Ricci form of a density v = A/B has density

    w = -2 (Dop(A) B^2 - Dop(B) A^2) / (A B)^2.

The form extends positively to CP^1 iff the numerator of v is strictly
positive on [0, oo), deg den - deg num = 2, and the leading coefficient
ratio is positive; the chart-at-infinity density is then v(1/y)/y^2 with a
removable point at y = 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .polyalg import Poly, RatFunc, RatLike, as_fraction, format_fraction
from .sturm import (
    IsolatingInterval,
    Positivity,
    is_positive_on_nonneg_axis,
)


class NotAMetricError(ValueError):
    """The candidate potential or density does not define a metric."""


class NonPositiveAtOriginError(ValueError):
    """No diastasis-normalized potential exists at the base point."""


def d_op(p: Poly) -> Poly:
    """P'P + x P''P - x (P')^2, the numerator of the radial Hessian of log P."""
    dp = p.derivative()
    x = Poly.x()
    return dp * p + x * p.derivative().derivative() * p - x * dp * dp


class RadialDensity:
    """Density v of a radial (1,1)-form omega = (i/2) v dz ^ dzbar; v != 0."""

    __slots__ = ("v",)

    def __init__(self, v: RatFunc):
        if v.is_zero:
            raise ValueError("zero density is not a (1,1)-form representative")
        self.v = v

    def scaled(self, c: RatLike) -> "RadialDensity":
        c = as_fraction(c)
        if c == 0:
            raise ValueError("scaling a density by zero")
        return RadialDensity(self.v * c)

    def __eq__(self, other) -> bool:
        return isinstance(other, RadialDensity) and self.v == other.v

    def __hash__(self) -> int:
        return hash(self.v)

    def __call__(self, x: RatLike) -> Fraction:
        return self.v(x)

    def to_json(self) -> dict:
        return self.v.to_json()

    @classmethod
    def from_json(cls, data: dict) -> "RadialDensity":
        return cls(RatFunc.from_json(data))

    def __repr__(self) -> str:
        return f"RadialDensity({self.v})"


@dataclass(frozen=True)
class RicciFlat:
    """Sentinel for an identically vanishing Ricci form (flat input)."""

    def __repr__(self) -> str:
        return "RicciFlat()"


class RadialLogPotential:
    """Potential phi(x) = log(f(x)/h(x)) with the diastasis normalization.

    Invariants: f(0) = h(0) = 1 and gcd(f, h) = 1.  The constructor reduces a
    common polynomial factor and rescales so both values at 0 are 1; inputs
    vanishing at the origin are rejected.
    """

    __slots__ = ("f", "h")

    def __init__(self, f: Poly, h: Poly = Poly((1,))):
        if f.is_zero or h.is_zero:
            raise ValueError("potential requires nonzero f and h")
        if f(0) == 0 or h(0) == 0:
            raise ValueError("potential must be finite and normalizable at x = 0")
        g = f.gcd(h)
        if g.degree > 0:
            f = f.exact_div(g)
            h = h.exact_div(g)
        self.f = f * (1 / f(0))
        self.h = h * (1 / h(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, RadialLogPotential) and self.f == other.f and self.h == other.h

    def __hash__(self) -> int:
        return hash((self.f, self.h))

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "h": self.h.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RadialLogPotential":
        return cls(Poly.from_json(data["f"]), Poly.from_json(data.get("h", [1])))

    def __repr__(self) -> str:
        return f"RadialLogPotential(log(({self.f}) / ({self.h})))"


def hessian_density(pot: RadialLogPotential) -> RadialDensity:
    """Density of (i/2) ddbar log(f/h); raises NotAMetricError when it vanishes."""
    f, h = pot.f, pot.h
    num = d_op(f) * h * h - d_op(h) * f * f
    if num.is_zero:
        raise NotAMetricError("potential is pluriharmonic; the form vanishes")
    den = (f * h) ** 2
    return RadialDensity(RatFunc(num, den))


def ricci(v: RadialDensity) -> Union[RadialDensity, RicciFlat]:
    """Ricci density of omega = (i/2) v dz ^ dzbar.

    Scale-invariant: ricci(c*v) = ricci(v) for every nonzero rational c.  A
    vanishing result is reported as the RicciFlat sentinel, not an error.
    """
    a, b = v.v.num, v.v.den
    w_num = d_op(a) * b * b - d_op(b) * a * a
    if w_num.is_zero:
        return RicciFlat()
    return RadialDensity(RatFunc(w_num * (-2), (a * b) ** 2))


class KahlerStatus(enum.Enum):
    KAHLER = "kahler"
    DEGENERATE_AT_FINITE_X = "degenerate-at-finite-x"
    DEGENERATE_AT_INFINITY = "degenerate-at-infinity"
    NOT_POSITIVE = "not-positive"


@dataclass(frozen=True)
class KahlerVerdict:
    """Outcome of the CP^1 extension-and-positivity check.

    ``witness`` carries a rational point where the density is negative, or an
    isolating interval of a zero/pole on [0, oo); ``degree_gap`` is
    deg(den) - deg(num), which must equal 2 for the form to close up at the
    point at infinity.
    """

    status: KahlerStatus
    degree_gap: int
    witness: Union[Fraction, IsolatingInterval, None] = None
    note: str = ""

    @property
    def is_kahler(self) -> bool:
        return self.status is KahlerStatus.KAHLER

    def to_json(self) -> dict:
        if self.witness is None:
            wit = None
        elif isinstance(self.witness, IsolatingInterval):
            wit = self.witness.to_json()
        else:
            wit = format_fraction(self.witness)
        return {
            "status": self.status.value,
            "degree_gap": self.degree_gap,
            "witness": wit,
            "note": self.note,
        }


def check_kahler_cp1(v: RadialDensity) -> KahlerVerdict:
    """Certify whether the radial form extends to a Kahler form on CP^1.

    Kahler requires: numerator strictly positive on [0, oo), denominator
    strictly positive on [0, oo) (no poles), degree gap exactly 2, positive
    leading-coefficient ratio.  Failures come back with exact witnesses.
    """
    num, den = v.v.num, v.v.den
    gap = v.v.degree_gap

    num_report = is_positive_on_nonneg_axis(num)
    if num_report.kind is Positivity.NOT_NONNEG:
        return KahlerVerdict(
            KahlerStatus.NOT_POSITIVE,
            gap,
            witness=num_report.witness,
            note="density is negative at the witness point",
        )
    if num_report.kind is Positivity.NONNEG_WITH_ZEROS:
        return KahlerVerdict(
            KahlerStatus.DEGENERATE_AT_FINITE_X,
            gap,
            witness=num_report.zeros[0],
            note="density vanishes at a point of [0, oo)",
        )

    if den.degree > 0:
        den_report = is_positive_on_nonneg_axis(den)
        if den_report.kind is Positivity.NOT_NONNEG:
            return KahlerVerdict(
                KahlerStatus.NOT_POSITIVE,
                gap,
                witness=den_report.witness,
                note="denominator changes sign on [0, oo)",
            )
        if den_report.kind is Positivity.NONNEG_WITH_ZEROS:
            return KahlerVerdict(
                KahlerStatus.DEGENERATE_AT_FINITE_X,
                gap,
                witness=den_report.zeros[0],
                note="density has a pole on [0, oo)",
            )

    if gap != 2:
        note = (
            "form vanishes at the point at infinity"
            if gap > 2
            else "form blows up at the point at infinity"
        )
        return KahlerVerdict(KahlerStatus.DEGENERATE_AT_INFINITY, gap, note=note)

    # strict positivity of the numerator forces a positive leading ratio,
    # and the denominator is monic by canonical form
    assert num.lc > 0 and den.lc == 1
    return KahlerVerdict(KahlerStatus.KAHLER, gap)


@dataclass(frozen=True)
class IterationOrbit:
    """Orbit of the Ricci operator with per-step Kahler certification.

    ``densities[k+1] = ricci(densities[k])`` whenever present; ``halted_at``
    is the first index whose verdict is non-Kahler (after applying the
    iteration sign) and no densities follow it.  ``ricci_flat`` is a defensive
    flag for a vanishing Ricci form mid-orbit; it cannot fire after a Kahler
    verdict on CP^1 since those forms integrate to 4*pi.
    """

    densities: tuple[RadialDensity, ...]
    verdicts: tuple[KahlerVerdict, ...]
    halted_at: Optional[int] = None
    ricci_flat: bool = False

    @property
    def completed(self) -> bool:
        return self.halted_at is None and not self.ricci_flat

    def to_json(self) -> dict:
        return {
            "densities": [d.to_json() for d in self.densities],
            "verdicts": [v.to_json() for v in self.verdicts],
            "halted_at": self.halted_at,
            "ricci_flat": self.ricci_flat,
        }


def iterate(v0: RadialDensity, k_max: int, sign: int = 1) -> IterationOrbit:
    """Run the Kahler-Ricci iteration from v0 for up to k_max Ricci steps.

    At every index k the density sign*v_k must certify as Kahler on CP^1 for
    the iteration to continue; the first failing index halts the orbit.  The
    Ricci map itself is insensitive to the sign, which only gates positivity.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    densities = [v0]
    verdicts: list[KahlerVerdict] = []
    halted_at: Optional[int] = None
    ricci_flat = False
    k = 0
    while True:
        checked = densities[k] if sign == 1 else densities[k].scaled(-1)
        verdict = check_kahler_cp1(checked)
        verdicts.append(verdict)
        if not verdict.is_kahler:
            halted_at = k
            break
        if k == k_max:
            break
        nxt = ricci(densities[k])
        if isinstance(nxt, RicciFlat):
            ricci_flat = True
            break
        densities.append(nxt)
        k += 1
    return IterationOrbit(tuple(densities), tuple(verdicts), halted_at, ricci_flat)


def is_einstein(v: RadialDensity) -> Optional[Fraction]:
    """The constant lambda with ricci(v) = lambda * v exactly, if one exists.

    Ricci-flat densities are Einstein with lambda = 0.  Returns None when the
    ratio of the Ricci density to v is a nonconstant rational function.
    """
    w = ricci(v)
    if isinstance(w, RicciFlat):
        return Fraction(0)
    ratio = w.v / v.v
    if ratio.is_constant:
        return ratio.constant_value
    return None
