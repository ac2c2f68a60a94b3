"""Decision procedures for radial projective inducedness and Bochner rescaling.

A radial metric with potential log Q, Q a polynomial with Q(0) = 1 and
nonnegative coefficients a_j, is the pullback of the ambient projective
metric under the monomial map z -> [sqrt(a_0) : sqrt(a_1) z : ... :
sqrt(a_n) z^n].  Inducedness of a radial potential log(f/h) therefore
reduces to: f/h is a polynomial with nonnegative coefficients and value 1
at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polyalg import Poly, RatFunc, format_fraction
from .geometry import (
    NonPositiveAtOriginError,
    NotAMetricError,
    RadialLogPotential,
    RicciFlat,
    hessian_density,
    ricci,
)


@dataclass(frozen=True)
class EmbeddingData:
    """Squared moduli a_j of a radial monomial map into projective n-space.

    Normalization: a_0 = 1 and a_n > 0 (the top coefficient is recorded, not
    forced to 1, since rescaling it would leave the rational coefficient
    field).  ``full`` means every intermediate coefficient is nonzero.
    """

    n: int
    alphas_squared: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.alphas_squared) != self.n + 1:
            raise ValueError("need n + 1 squared moduli")
        if self.alphas_squared[0] != 1:
            raise ValueError("normalization requires a_0 = 1")
        if self.alphas_squared[-1] <= 0:
            raise ValueError("top coefficient a_n must be positive")
        if any(a < 0 for a in self.alphas_squared):
            raise ValueError("squared moduli must be nonnegative")

    @property
    def full(self) -> bool:
        return all(a > 0 for a in self.alphas_squared)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": [format_fraction(a) for a in self.alphas_squared],
            "full": self.full,
        }


@dataclass(frozen=True)
class InducednessVerdict:
    """Some(EmbeddingData), or a reason code why the metric is not induced."""

    embedding: Optional[EmbeddingData]
    reason: Optional[str] = None  # "not-polynomial" | "negative-coefficient"
    coefficient_index: Optional[int] = None

    @property
    def induced(self) -> bool:
        return self.embedding is not None

    def to_json(self) -> dict:
        out: dict = {"induced": self.induced}
        if self.embedding is not None:
            out["embedding"] = self.embedding.to_json()
        else:
            out["reason"] = self.reason
            if self.coefficient_index is not None:
                out["coefficient_index"] = self.coefficient_index
        return out


def is_projectively_induced_radial(pot: RadialLogPotential) -> InducednessVerdict:
    """Decide whether log(f/h) is the potential of a radial monomial pullback.

    Necessity: the reduced f/h must be a polynomial Q.  Sufficiency: Q(0) = 1
    with all coefficients nonnegative realizes Q as a sum of squared moduli
    of a monomial embedding.
    """
    q = RatFunc(pot.f, pot.h)
    if q.den.degree > 0:
        return InducednessVerdict(None, reason="not-polynomial")
    poly = q.num * (1 / q.den.coeff(0))
    assert poly(0) == 1
    for j, c in enumerate(poly.coeffs):
        if c < 0:
            return InducednessVerdict(None, reason="negative-coefficient", coefficient_index=j)
    data = EmbeddingData(poly.degree, tuple(poly.coeffs))
    return InducednessVerdict(data)


def binomial_test(q: Poly) -> Optional[tuple[int, Fraction]]:
    """Some((n, 1)) iff q equals (1+x)^n exactly; detects multiples of the
    round metric among induced ones."""
    if q.is_zero or q(0) != 1:
        raise ValueError("binomial test requires Q(0) = 1")
    n = q.degree
    if q == Poly((1, 1)) ** n:
        return n, Fraction(1)
    return None


def ricci_potential(pot: RadialLogPotential) -> RadialLogPotential:
    """Diastasis-normalized potential of the Ricci form of log(f/h).

    For the density v = A/B of the input, the Ricci form is
    (i/2) ddbar log(B^2/A^2); the pair (B^2, A^2) is renormalized to value 1
    at the origin.  The construction is exact: hessian_density of the result
    reproduces ricci(v) identically.
    """
    v = hessian_density(pot)
    w = ricci(v)
    if isinstance(w, RicciFlat):
        raise NotAMetricError("Ricci form vanishes identically")
    if w.v.den(0) == 0 or w.v(0) <= 0:
        raise NonPositiveAtOriginError(
            "Ricci form is not positive at the origin; no diastasis potential there"
        )
    a, b = v.v.num, v.v.den
    # w(0) finite and positive forces a, b nonzero at the origin
    assert a(0) != 0 and b(0) != 0
    f = (b * b) * (1 / b(0) ** 2)
    h = (a * a) * (1 / a(0) ** 2)
    return RadialLogPotential(f, h)


@dataclass(frozen=True)
class BochnerScale:
    """Homothety w = sqrt(c) z bringing a radial potential to Bochner form.

    ``scale`` is the coefficient of x in the series of log(f/h) at 0, i.e.
    f'(0) - h'(0); the normalized potential phi(x/c) has unit coefficient.
    """

    scale: Fraction
    normalized_potential: RadialLogPotential

    def to_json(self) -> dict:
        return {
            "c": format_fraction(self.scale),
            "normalized": self.normalized_potential.to_json(),
        }


def bochner_scale(pot: RadialLogPotential) -> BochnerScale:
    """Compute the Bochner homothety of a radial potential.

    Raises NonPositiveAtOriginError when the metric coefficient at the origin
    c = f'(0) - h'(0) is not positive.  Idempotent: the normalized potential
    has scale 1.
    """
    c = pot.f.derivative()(0) - pot.h.derivative()(0)
    if c <= 0:
        raise NonPositiveAtOriginError("metric is not positive at the origin")
    f = pot.f.compose_linear(0, 1 / c)
    h = pot.h.compose_linear(0, 1 / c)
    return BochnerScale(c, RadialLogPotential(f, h))
