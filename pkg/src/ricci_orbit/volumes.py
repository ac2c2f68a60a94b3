"""Volume computations for radial densities.

Finiteness of the symplectic volume pi * int_0^oo v(x) dx is decided exactly
from the degree gap of the rational density; values are produced by adaptive
Gauss-Kronrod quadrature on a compactified head interval plus an analytic
tail from the Laurent expansion at infinity with a rigorous rational
remainder bound.  Reported values are Decimals (50-digit context); the error
field always accompanies the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Callable, Optional

from .polyalg import Poly, RatFunc, format_fraction
from .sturm import Positivity, is_positive_on_nonneg_axis, smallest_positive_root
from .geometry import (
    RadialDensity,
    RadialLogPotential,
    RicciFlat,
    check_kahler_cp1,
    hessian_density,
    ricci,
)
from .inducedness import bochner_scale

_DEC = Context(prec=50)

#: 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1]:
#: (node, Gauss weight, Kronrod weight).
_GK15 = (
    (+0.991455371120813, 0.0, 0.022935322010529),
    (-0.991455371120813, 0.0, 0.022935322010529),
    (+0.949107912342759, 0.129484966168870, 0.063092092629979),
    (-0.949107912342759, 0.129484966168870, 0.063092092629979),
    (+0.864864423359769, 0.0, 0.104790010322250),
    (-0.864864423359769, 0.0, 0.104790010322250),
    (+0.741531185599394, 0.279705391489277, 0.140653259715525),
    (-0.741531185599394, 0.279705391489277, 0.140653259715525),
    (+0.586087235467691, 0.0, 0.169004726639267),
    (-0.586087235467691, 0.0, 0.169004726639267),
    (+0.405845151377397, 0.381830050505119, 0.190350578064785),
    (-0.405845151377397, 0.381830050505119, 0.190350578064785),
    (+0.207784955007898, 0.0, 0.204432940075298),
    (-0.207784955007898, 0.0, 0.204432940075298),
    (0.0, 0.417959183673469, 0.209482141084728),
)


def _gk15_panel(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    half = (b - a) / 2.0
    mid = (a + b) / 2.0
    g7 = 0.0
    k15 = 0.0
    for node, wg, wk in _GK15:
        fx = f(mid + half * node)
        g7 += wg * fx
        k15 += wk * fx
    err = half * (200.0 * abs(g7 - k15)) ** 1.5
    return k15 * half, err


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    panel_tol: float = 1e-10,
    max_depth: int = 48,
) -> tuple[float, float]:
    """Adaptive bisection with the embedded G7/K15 pair.

    A panel is accepted once its error estimate drops below panel_tol (or the
    depth cap is hit); panels are summed in a fixed left-to-right order, so
    results are deterministic.  Returns (integral, error_estimate_sum).
    """
    total = 0.0
    err_total = 0.0
    stack = [(a, b, 0)]
    pending: list[tuple[float, float]] = []
    while stack:
        lo, hi, depth = stack.pop()
        val, err = _gk15_panel(f, lo, hi)
        if err <= panel_tol or depth >= max_depth:
            pending.append((lo, val))
            err_total += err
        else:
            mid = (lo + hi) / 2.0
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    for _, val in sorted(pending, key=lambda p: p[0]):
        total += val
    return total, err_total


def float_evaluator(v: RatFunc) -> Callable[[float], float]:
    """Fast float evaluation of a rational function, with an exact fallback.

    Horner in doubles overflows for high degrees at large arguments even when
    the ratio itself is tame; any non-finite intermediate reroutes through
    exact rational evaluation of the ratio.
    """
    try:
        num = [float(c) for c in v.num.coeffs]
        den = [float(c) for c in v.den.coeffs]
    except OverflowError:
        num = den = None

    def ev(x: float) -> float:
        if num is not None:
            n = 0.0
            for c in reversed(num):
                n = n * x + c
            d = 0.0
            for c in reversed(den):
                d = d * x + c
            if math.isfinite(n) and math.isfinite(d) and d != 0.0:
                return n / d
        fx = Fraction(x)
        return float(v.num(fx) / v.den(fx))

    return ev


def _series_quotient(num: Poly, den: Poly, terms: int) -> tuple[list[Fraction], Poly]:
    """First ``terms`` power-series coefficients of num/den at 0 plus the exact
    remainder polynomial r with num - den * sum = y^terms * r."""
    d0 = den.coeff(0)
    assert d0 != 0
    q: list[Fraction] = []
    for i in range(terms):
        acc = num.coeff(i)
        for j in range(1, i + 1):
            if j <= den.degree and i - j < len(q):
                acc -= den.coeff(j) * q[i - j]
        q.append(acc / d0)
    diff = num - den * Poly(q)
    assert all(diff.coeff(i) == 0 for i in range(min(terms, diff.degree + 1)))
    rem = Poly(diff.coeffs[terms:]) if diff.degree >= terms else Poly()
    return q, rem


def _tail_integral(v: RatFunc, cut: Fraction, terms: int = 10):
    """Exact value-and-bound for int_cut^oo v(x) dx when the degree gap is >= 2.

    Substituting x = 1/y turns the tail into int_0^eps y^(gap-2) R(y) dy with
    R = rev(num)/rev(den) regular at 0; the first ``terms`` series
    coefficients integrate exactly and the remainder is bounded by a crude
    interval estimate of the remainder quotient on [0, eps].  Returns
    (value, bound) as Fractions, or None when the denominator lower bound
    fails at this cut (caller should enlarge the cut).
    """
    gap = v.degree_gap
    assert gap >= 2
    eps = Fraction(1) / cut
    rev_n = v.num.reverse()
    rev_d = v.den.reverse()
    # rev_d(0) = leading coefficient of den = 1 by canonical form
    series, rem = _series_quotient(rev_n, rev_d, terms)
    den_lower = rev_d.coeff(0) - sum(abs(rev_d.coeff(j)) * eps**j for j in range(1, rev_d.degree + 1))
    if den_lower <= 0:
        return None
    value = Fraction(0)
    for i, qi in enumerate(series):
        k = gap - 1 + i
        value += qi * eps**k / k
    rem_bound = sum(abs(c) * eps**i for i, c in enumerate(rem.coeffs))
    k = gap - 1 + terms
    bound = (rem_bound / den_lower) * eps**k / k
    return value, bound


def _integral_zero_to_inf(v: RatFunc, tol: float = 1e-10) -> tuple[float, float, Fraction]:
    """int_0^oo v(x) dx for a pole-free integrand with degree gap >= 2.

    Returns (value, error_bound, tail_cut) with error_bound <= tol.  The head
    integral runs over the compactified variable t = x/(1+x); the tail is
    analytic.  Panel tolerances tighten until the accumulated bound meets tol.
    """
    if v.degree_gap < 2:
        raise ValueError("integral diverges: degree gap < 2")
    cut = Fraction(16)
    while True:
        tail = _tail_integral(v, cut)
        if tail is not None and float(tail[1]) <= tol / 4:
            break
        cut *= 2
        if cut > 2**64:
            raise RuntimeError("tail bound did not converge")
    tail_value, tail_bound = tail

    ev = float_evaluator(v)

    def head(t: float) -> float:
        x = t / (1.0 - t)
        return ev(x) / (1.0 - t) ** 2

    t_cut = float(cut / (1 + cut))
    panel_tol = tol / 16
    for _ in range(4):
        head_value, head_err = adaptive_quadrature(head, 0.0, t_cut, panel_tol=panel_tol)
        value = head_value + float(tail_value)
        # allowance for float roundoff in the head accumulation
        err = head_err + float(tail_bound) + 1e-13 * (abs(value) + 1.0)
        if err <= tol:
            return value, err, cut
        panel_tol /= 16
    raise RuntimeError(f"quadrature error bound {err} did not reach {tol}")


def _decimal(x: float) -> Decimal:
    return _DEC.create_decimal(repr(x))


@dataclass(frozen=True)
class VolumeReport:
    """Symplectic volume with finiteness decided exactly by the degree gap."""

    finite: bool
    value: Optional[Decimal] = None
    abs_error_bound: Optional[Decimal] = None
    tail_cut: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "finite": self.finite,
            "value": None if self.value is None else str(self.value),
            "err": None if self.abs_error_bound is None else str(self.abs_error_bound),
            "tail_cut": None if self.tail_cut is None else format_fraction(self.tail_cut),
        }


def _require_integrable(v: RatFunc) -> None:
    if v.den.degree > 0:
        den_report = is_positive_on_nonneg_axis(v.den)
        if den_report.kind is not Positivity.STRICTLY_POSITIVE:
            raise ValueError("density has a pole on [0, oo); volume undefined")


def symplectic_volume(v: RadialDensity, tol: float = 1e-9) -> VolumeReport:
    """vol = int omega = pi * int_0^oo v(x) dx for a nonnegative density.

    Finiteness is decided exactly: the integral converges iff the degree gap
    is at least 2.  Linear in the density: symplectic_volume(c*v) scales by c.
    """
    report = is_positive_on_nonneg_axis(v.v.num)
    if report.kind is Positivity.NOT_NONNEG:
        raise ValueError("negative density rejected; symplectic volume needs v >= 0")
    _require_integrable(v.v)
    if v.v.degree_gap < 2:
        return VolumeReport(finite=False)
    raw, err, cut = _integral_zero_to_inf(v.v, tol=tol / math.pi)
    return VolumeReport(
        finite=True,
        value=_decimal(math.pi * raw),
        abs_error_bound=_decimal(math.pi * err),
        tail_cut=cut,
    )


def chern_check(v: RadialDensity, tol: float = 1e-9) -> Decimal:
    """|int ricci(v) - 4*pi| for a certified-Kahler density on CP^1.

    The Ricci form of any Kahler form on CP^1 integrates to 4*pi under the
    (i/2) density convention; the residual is a global cross-check of the
    whole Ricci pipeline.  The Ricci density may dip negative, so the
    integral is taken directly without the nonnegativity gate.
    """
    if not check_kahler_cp1(v).is_kahler:
        raise ValueError("chern_check requires a certified Kahler density")
    w = ricci(v)
    assert not isinstance(w, RicciFlat)
    _require_integrable(w.v)
    raw, _, _ = _integral_zero_to_inf(w.v, tol=tol / math.pi)
    return _decimal(abs(math.pi * raw - 4.0 * math.pi))


@dataclass(frozen=True)
class EuclideanVolumeReport:
    """Lebesgue volume of the image of the extended Bochner coordinate map.

    On CP^1 the radial Bochner coordinate w = sqrt(c) z ranges over the whole
    affine chart (the complement of one point), so the definitional volume is
    infinite.  The literal integral pi * int_0^oo v dx of the density as
    written is reported alongside; when it converges the discrepancy with the
    definitional verdict is flagged in ``note``.
    """

    infinite: bool
    basis: str  # "bochner-chart-covers-plane" | "quadrature-of-literal-integral"
    value: Optional[Decimal] = None
    abs_error_bound: Optional[Decimal] = None
    literal_integral: Optional[VolumeReport] = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "classification": "infinite" if self.infinite else "finite",
            "basis": self.basis,
            "value": None if self.value is None else str(self.value),
            "err": None if self.abs_error_bound is None else str(self.abs_error_bound),
            "literal_integral": None
            if self.literal_integral is None
            else self.literal_integral.to_json(),
            "note": self.note,
        }


def _literal_integral(v: RadialDensity, tol: float) -> Optional[VolumeReport]:
    # pi * int_0^oo v dx taken literally, without a sign gate
    try:
        _require_integrable(v.v)
    except ValueError:
        return None
    if v.v.degree_gap < 2:
        return VolumeReport(finite=False)
    raw, err, cut = _integral_zero_to_inf(v.v, tol=tol / math.pi)
    return VolumeReport(
        finite=True,
        value=_decimal(math.pi * raw),
        abs_error_bound=_decimal(math.pi * err),
        tail_cut=cut,
    )


def euclidean_volume(
    pot: RadialLogPotential, on_cp1: bool = True, tol: float = 1e-9
) -> EuclideanVolumeReport:
    """Bochner-Euclidean volume of the radial metric with potential log(f/h).

    ``on_cp1 = True``: the Bochner chart is the full affine chart, so the
    volume is infinite; the literal integral of the density is reported for
    transparency.  ``on_cp1 = False``: the chart extends to the largest disc
    x < x_max on which the potential stays finite, where x_max is the
    smallest positive root of f*h; the image then has area pi * c * x_max.
    """
    scale = bochner_scale(pot).scale
    density = hessian_density(pot)

    if on_cp1:
        literal = _literal_integral(density, tol)
        note = ""
        if literal is not None and literal.finite:
            note = (
                "literal integral of the density converges although the "
                "definitional Bochner-Euclidean volume is infinite"
            )
        return EuclideanVolumeReport(
            infinite=True,
            basis="bochner-chart-covers-plane",
            literal_integral=literal,
            note=note,
        )

    boundary = smallest_positive_root(pot.f * pot.h)
    if boundary is None:
        return EuclideanVolumeReport(
            infinite=True,
            basis="bochner-chart-covers-plane",
            note="potential is finite on all of the plane",
        )
    if boundary.is_exact:
        x_max_lo = x_max_hi = boundary.lo
    else:
        x_max_lo, x_max_hi = boundary.lo, boundary.hi
    value = math.pi * float(scale) * float((x_max_lo + x_max_hi) / 2)
    err = math.pi * float(scale) * float(x_max_hi - x_max_lo) / 2 + 1e-13 * (abs(value) + 1.0)
    return EuclideanVolumeReport(
        infinite=False,
        basis="quadrature-of-literal-integral",
        value=_decimal(value),
        abs_error_bound=_decimal(err),
    )
