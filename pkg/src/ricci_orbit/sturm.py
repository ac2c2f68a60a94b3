"""Sturm chains, exact real-root counting and positivity certificates.

All decisions here are made in exact rational arithmetic; no floating point
enters any certificate.  Root counts follow the half-open convention: a chain
built from a squarefree polynomial counts distinct roots in (lo, hi].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .polyalg import Poly, RatLike, as_fraction, format_fraction

NEG_INF = float("-inf")
POS_INF = float("inf")

#: Rational endpoint, or +-infinity as a float sentinel.
Endpoint = Union[Fraction, int, float]


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open interval (lo, hi] holding exactly ``root_count`` distinct roots.

    ``lo == hi`` marks an exact rational root found during refinement.
    """

    lo: Fraction
    hi: Fraction
    root_count: int = 1

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("isolating interval with lo > hi")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def to_json(self) -> dict:
        return {
            "lo": format_fraction(self.lo),
            "hi": format_fraction(self.hi),
            "root_count": self.root_count,
        }


class SturmChain:
    """Signed-remainder sequence p, p', -rem(...), ... of a nonzero polynomial.

    Remainders are normalized to primitive form (positive content divided out)
    at every step to control coefficient blowup; signs are preserved, so sign
    variation counts are unaffected.
    """

    __slots__ = ("chain",)

    def __init__(self, p: Poly):
        if p.is_zero:
            raise ValueError("Sturm chain of the zero polynomial")
        chain = [p]
        d = p.derivative()
        if not d.is_zero:
            chain.append(d.primitive_part())
            while True:
                r = chain[-2] % chain[-1]
                if r.is_zero:
                    break
                chain.append((-r).primitive_part())
        self.chain: tuple[Poly, ...] = tuple(chain)

    def variations_at(self, x: Endpoint) -> int:
        if isinstance(x, float):
            if x == NEG_INF:
                signs = [_sign(p.lc) * (-1) ** p.degree for p in self.chain]
            elif x == POS_INF:
                signs = [_sign(p.lc) for p in self.chain]
            else:
                raise ValueError("float endpoints must be +-inf")
        else:
            x = as_fraction(x)
            signs = [_sign(p(x)) for p in self.chain]
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_root_bound(p: Poly) -> Fraction:
    """Rational U with every real root of p strictly inside (-U, U)."""
    if p.degree <= 0:
        return Fraction(1)
    lc = abs(p.lc)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1])


def sturm_count_roots(p: Poly, lo: Endpoint, hi: Endpoint) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    Endpoints may be +-infinity (float sentinels); leading-term signs are used
    there.  Multiple roots are counted once (squarefree part taken first).
    """
    if p.is_zero:
        raise ValueError("root count of the zero polynomial")
    lo_v = lo if isinstance(lo, float) else as_fraction(lo)
    hi_v = hi if isinstance(hi, float) else as_fraction(hi)
    if not _endpoint_lt(lo_v, hi_v):
        raise ValueError("need lo < hi")
    if p.degree == 0:
        return 0
    chain = SturmChain(p.squarefree_part())
    return chain.variations_at(lo_v) - chain.variations_at(hi_v)


def _endpoint_lt(a: Endpoint, b: Endpoint) -> bool:
    af = a if isinstance(a, float) else float(a)
    bf = b if isinstance(b, float) else float(b)
    if af != bf or isinstance(a, float) or isinstance(b, float):
        return af < bf
    return a < b


def _nonroot_point(sf: Poly, a: Fraction, b: Fraction) -> Fraction:
    # Rational point strictly inside (a, b) avoiding the finitely many roots.
    t = Fraction(1, 2)
    while True:
        m = a + (b - a) * t
        if sf(m) != 0:
            return m
        t /= 2


class _RootLocator:
    """Isolates the distinct positive roots of a polynomial into disjoint,
    non-touching half-open intervals whose endpoints are not roots."""

    def __init__(self, p: Poly):
        self.sf = p.squarefree_part()
        self.chain = SturmChain(self.sf)

    def count(self, a: Fraction, b: Endpoint) -> int:
        return self.chain.variations_at(a) - self.chain.variations_at(b)

    def _split(self, a: Fraction, b: Fraction, n: int) -> list[tuple[Fraction, Fraction, int]]:
        out = []
        stack = [(a, b, n)]
        while stack:
            lo, hi, k = stack.pop()
            if k == 0:
                continue
            if k == 1:
                out.append((lo, hi, 1))
                continue
            m = _nonroot_point(self.sf, lo, hi)
            kl = self.count(lo, m)
            stack.append((m, hi, k - kl))
            stack.append((lo, m, kl))
        out.sort(key=lambda piece: piece[0])
        return out

    def _shrink(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        # One refinement step of an interval holding exactly one root; the
        # midpoint never lands on the root (exact roots handled by caller).
        m = _nonroot_point(self.sf, lo, hi)
        if self.count(lo, m) == 1:
            return lo, m
        return m, hi

    def isolate_positive(self) -> list[IsolatingInterval]:
        if self.sf.degree <= 0:
            return []
        bound = cauchy_root_bound(self.sf)
        total = self.count(Fraction(0), bound)
        pieces = self._split(Fraction(0), bound, total)
        # ensure the first interval is bounded away from 0
        while pieces and pieces[0][0] == 0:
            lo, hi, _ = pieces[0]
            pieces[0] = (*self._shrink(lo, hi), 1)
        # ensure consecutive intervals do not share an endpoint
        for i in range(len(pieces) - 1):
            while pieces[i][1] == pieces[i + 1][0]:
                lo, hi, _ = pieces[i]
                pieces[i] = (*self._shrink(lo, hi), 1)
        return [IsolatingInterval(lo, hi, 1) for lo, hi, _ in pieces]

    def refine(self, iv: IsolatingInterval, width: Fraction) -> IsolatingInterval:
        lo, hi = iv.lo, iv.hi
        while hi - lo > width:
            lo, hi = self._shrink(lo, hi)
        return IsolatingInterval(lo, hi, iv.root_count)


def isolate_positive_roots(p: Poly) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, one per distinct root of p in (0, oo)."""
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    return _RootLocator(p).isolate_positive()


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational strictly inside (lo, hi); 0 <= lo < hi."""
    if not 0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")
    floor_lo = lo.numerator // lo.denominator
    if lo < floor_lo + 1 < hi:
        return Fraction(floor_lo + 1)
    lo_frac = lo - floor_lo
    hi_frac = hi - floor_lo
    if lo_frac == 0:
        # interval (floor_lo, hi): take the largest unit fraction below hi_frac
        n = hi_frac.denominator // hi_frac.numerator + 1
        return floor_lo + Fraction(1, n)
    return floor_lo + 1 / simplest_between(1 / hi_frac, 1 / lo_frac)


def smallest_positive_root(p: Poly, width: Fraction = Fraction(1, 10**12)):
    """Refined isolating interval of the smallest positive root, or None.

    Returns an IsolatingInterval; ``is_exact`` marks a rational root detected
    exactly (the simplest rational inside a tight bracket is tested).
    """
    loc = _RootLocator(p)
    pieces = loc.isolate_positive()
    if not pieces:
        return None
    first = pieces[0]
    lo, hi = first.lo, first.hi
    while hi - lo > width:
        m = (lo + hi) / 2
        if loc.sf(m) == 0:
            return IsolatingInterval(m, m, 1)
        if loc.count(lo, m) == 1:
            hi = m
        else:
            lo = m
    for candidate in (hi, simplest_between(lo, hi)):
        if loc.sf(candidate) == 0:
            return IsolatingInterval(candidate, candidate, 1)
    return IsolatingInterval(lo, hi, 1)


class Positivity(enum.Enum):
    STRICTLY_POSITIVE = "strictly-positive"
    NONNEG_WITH_ZEROS = "nonneg-with-zeros"
    NOT_NONNEG = "not-nonneg"


@dataclass(frozen=True)
class PositivityReport:
    """Verdict of is_positive_on_nonneg_axis with exact witnesses.

    ``zeros`` lists isolating intervals of the zeros on [0, oo) when the
    polynomial is nonnegative but not strict; ``witness`` is a rational point
    with a strictly negative value when it is not nonnegative.
    """

    kind: Positivity
    zeros: tuple[IsolatingInterval, ...] = ()
    witness: Optional[Fraction] = None

    @property
    def is_strictly_positive(self) -> bool:
        return self.kind is Positivity.STRICTLY_POSITIVE

    @property
    def is_nonneg(self) -> bool:
        return self.kind is not Positivity.NOT_NONNEG

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "zeros": [z.to_json() for z in self.zeros],
            "witness": None if self.witness is None else format_fraction(self.witness),
        }


def is_positive_on_nonneg_axis(p: Poly) -> PositivityReport:
    """Decide the sign behavior of p on [0, oo), exactly.

    The distinct positive roots are isolated with Sturm counts; p is then
    sampled at rational points strictly between consecutive root intervals,
    where it cannot vanish, so one sample decides the sign of the whole gap.
    """
    if p.is_zero:
        raise ValueError("positivity of the zero polynomial is undefined")
    v0 = p(0)
    if v0 < 0:
        return PositivityReport(Positivity.NOT_NONNEG, witness=Fraction(0))
    zero_at_origin = v0 == 0
    if p.degree == 0:
        return PositivityReport(Positivity.STRICTLY_POSITIVE)

    locator = _RootLocator(p)
    pieces = locator.isolate_positive()

    samples: list[Fraction] = []
    if pieces:
        samples.append(pieces[0].lo)
        samples.extend(iv.hi for iv in pieces[:-1])
    elif zero_at_origin:
        samples.append(Fraction(1))
    for s in samples:
        if p(s) < 0:
            return PositivityReport(Positivity.NOT_NONNEG, witness=s)
    if p.lc < 0:
        x = max(cauchy_root_bound(p), Fraction(1)) + 1
        assert p(x) < 0
        return PositivityReport(Positivity.NOT_NONNEG, witness=x)

    zeros: list[IsolatingInterval] = []
    if zero_at_origin:
        zeros.append(IsolatingInterval(Fraction(0), Fraction(0), 1))
    zeros.extend(pieces)
    if zeros:
        return PositivityReport(Positivity.NONNEG_WITH_ZEROS, zeros=tuple(zeros))
    return PositivityReport(Positivity.STRICTLY_POSITIVE)


def eval_mod_quadratic(p: Poly, modulus: Poly) -> tuple[Fraction, Fraction]:
    """Reduce p modulo a monic quadratic, returning (c0, c1) with p = c0 + c1*a.

    Used to evaluate polynomials exactly at quadratic algebraic points such as
    a = sqrt(2) via the modulus a^2 - 2.
    """
    if modulus.degree != 2 or modulus.lc != 1:
        raise ValueError("modulus must be a monic quadratic")
    r = p % modulus
    return r.coeff(0), r.coeff(1)


def sign_at_sqrt(c0: Fraction, c1: Fraction, radicand: RatLike) -> int:
    """Exact sign of c0 + c1*sqrt(radicand) for a positive rational radicand."""
    r = as_fraction(radicand)
    if r <= 0:
        raise ValueError("radicand must be positive")
    if c1 == 0:
        return _sign(c0)
    if c0 == 0:
        return _sign(c1)
    if c0 > 0 and c1 > 0:
        return 1
    if c0 < 0 and c1 < 0:
        return -1
    # mixed signs: compare c0^2 against c1^2 * r
    lhs, rhs = c0 * c0, c1 * c1 * r
    if c0 > 0:  # c1 < 0
        return _sign(lhs - rhs)
    return _sign(rhs - lhs)  # c0 < 0, c1 > 0
