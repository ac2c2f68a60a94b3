import random
from fractions import Fraction

import pytest

from ricci_orbit import Poly, RadialLogPotential, RatFunc


def family_potential(a: Fraction) -> RadialLogPotential:
    """Potential log(1 + a*x + x^2)."""
    return RadialLogPotential(Poly((1, a, 1)))


def fs_density():
    """Round-metric density 1/(1+x)^2."""
    from ricci_orbit import RadialDensity

    return RadialDensity(RatFunc(Poly((1,)), Poly((1, 1)) ** 2))


def random_fraction(rng: random.Random, lo=-6, hi=6, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_poly(rng: random.Random, max_degree=5, nonzero=True) -> Poly:
    while True:
        deg = rng.randint(0, max_degree)
        p = Poly([random_fraction(rng) for _ in range(deg + 1)])
        if not nonzero or not p.is_zero:
            return p


def random_positive_poly(rng: random.Random, degree: int) -> Poly:
    """All coefficients positive, value 1 at the origin."""
    coeffs = [Fraction(1)]
    coeffs += [Fraction(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(degree)]
    return Poly(coeffs)


@pytest.fixture
def rng():
    return random.Random(20240817)
