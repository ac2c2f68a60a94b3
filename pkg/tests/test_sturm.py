import random
from fractions import Fraction

import pytest

from ricci_orbit import (
    Poly,
    Positivity,
    SturmChain,
    eval_mod_quadratic,
    is_positive_on_nonneg_axis,
    isolate_positive_roots,
    sign_at_sqrt,
    sturm_count_roots,
)
from ricci_orbit.sturm import NEG_INF, POS_INF, smallest_positive_root


def poly_from_roots(roots_with_mult, lc=1):
    p = Poly((lc,))
    for r, m in roots_with_mult:
        p = p * Poly((-r, 1)) ** m
    return p


def test_count_simple_cases():
    assert sturm_count_roots(Poly((-2, 0, 1)), 1, 2) == 1  # sqrt(2) in (1, 2]
    assert sturm_count_roots(Poly((1, 0, 1)), NEG_INF, POS_INF) == 0  # x^2 + 1
    # multiple root counted once: (x-1)^2 (x-3) on (0, 2]
    p = poly_from_roots([(Fraction(1), 2), (Fraction(3), 1)])
    assert sturm_count_roots(p, 0, 2) == 1


def test_count_half_open_convention():
    p = poly_from_roots([(Fraction(0), 1), (Fraction(1), 1)])
    assert sturm_count_roots(p, -1, 0) == 1  # root at 0 included on the right
    assert sturm_count_roots(p, 0, 1) == 1  # ... and excluded on the left
    assert sturm_count_roots(p, 1, 2) == 0


def test_count_with_infinite_endpoints():
    p = poly_from_roots([(Fraction(-5), 1), (Fraction(2), 1), (Fraction(7), 3)])
    assert sturm_count_roots(p, NEG_INF, POS_INF) == 3
    assert sturm_count_roots(p, 0, POS_INF) == 2
    assert sturm_count_roots(p, NEG_INF, 0) == 1


def test_count_rejects_bad_input():
    with pytest.raises(ValueError):
        sturm_count_roots(Poly(), 0, 1)
    with pytest.raises(ValueError):
        sturm_count_roots(Poly((1, 1)), 2, 1)


def test_planted_roots_oracle():
    # oracle: build the polynomial from its factors, count what was planted
    rng = random.Random(1234)
    for _ in range(200):
        n_roots = rng.randint(1, 5)
        roots = sorted(rng.sample(range(0, 21), n_roots))
        planted = [(Fraction(r, 2), rng.randint(1, 3)) for r in roots]
        p = poly_from_roots(planted, lc=rng.choice([1, -2, Fraction(1, 3)]))
        lo = Fraction(rng.randint(-2, 4), 2)
        hi = lo + Fraction(rng.randint(1, 12), 2)
        expected = sum(1 for r, _ in planted if lo < r <= hi)
        assert sturm_count_roots(p, lo, hi) == expected


def test_sturm_chain_shape():
    p = Poly((-2, 0, 1))
    chain = SturmChain(p).chain
    assert chain[0] == p
    assert chain[1] == p.derivative().primitive_part()
    assert chain[-1].degree == 0  # squarefree input ends in a constant


def test_isolating_intervals_are_disjoint_and_positive():
    p = poly_from_roots([(Fraction(1, 2), 1), (Fraction(1), 2), (Fraction(7, 2), 1)])
    pieces = isolate_positive_roots(p)
    assert len(pieces) == 3
    assert all(piece.lo > 0 for piece in pieces)
    for left, right in zip(pieces, pieces[1:]):
        assert left.hi < right.lo
    for piece, root in zip(pieces, (Fraction(1, 2), Fraction(1), Fraction(7, 2))):
        assert piece.lo < root <= piece.hi


def test_positivity_verdicts():
    assert is_positive_on_nonneg_axis(Poly((1, 1))).kind is Positivity.STRICTLY_POSITIVE
    # x^2 - 3x + 1 has roots (3 +- sqrt(5))/2, both positive
    report = is_positive_on_nonneg_axis(Poly((1, -3, 1)))
    assert report.kind is Positivity.NOT_NONNEG
    assert Poly((1, -3, 1))(report.witness) < 0
    # x^2 touches zero at the origin
    report = is_positive_on_nonneg_axis(Poly((0, 0, 1)))
    assert report.kind is Positivity.NONNEG_WITH_ZEROS
    assert report.zeros[0].lo == 0 and report.zeros[0].hi == 0


def test_positivity_more_cases():
    # negative at origin
    assert is_positive_on_nonneg_axis(Poly((-1, 1))).witness == 0
    # touching zero inside (0, oo): (x-1)^2 + nothing else
    p = Poly((1, -2, 1))
    report = is_positive_on_nonneg_axis(p)
    assert report.kind is Positivity.NONNEG_WITH_ZEROS
    z = report.zeros[0]
    assert z.lo < 1 <= z.hi
    # negative leading coefficient eventually loses
    report = is_positive_on_nonneg_axis(Poly((1, 0, -1)))
    assert report.kind is Positivity.NOT_NONNEG
    # negative only on a window bracketed by roots
    p = poly_from_roots([(Fraction(1), 1), (Fraction(2), 1)])
    report = is_positive_on_nonneg_axis(p)
    assert report.kind is Positivity.NOT_NONNEG
    assert 1 < report.witness < 2
    with pytest.raises(ValueError):
        is_positive_on_nonneg_axis(Poly())


def test_positivity_sampling_oracle_both_directions():
    # verdicts must agree with dense rational sampling on [0, 10^4]
    rng = random.Random(99)
    for _ in range(60):
        p = Poly([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 7))])
        if p.is_zero:
            continue
        report = is_positive_on_nonneg_axis(p)
        samples = [Fraction(rng.randint(0, 10**6), rng.randint(1, 100)) for _ in range(300)]
        if report.kind is Positivity.STRICTLY_POSITIVE:
            assert all(p(x) > 0 for x in samples)
        if any(p(x) < 0 for x in samples):
            assert report.kind is Positivity.NOT_NONNEG


def test_dense_sampling_certificate_for_strict_positivity():
    # 10^4 random rational points against a certified strict verdict
    p = Poly((1, 1)) ** 4 + Poly((0, 0, 1))
    assert is_positive_on_nonneg_axis(p).kind is Positivity.STRICTLY_POSITIVE
    rng = random.Random(5)
    for _ in range(10**4):
        x = Fraction(rng.randint(0, 10**8), rng.randint(1, 10**4))
        assert p(x) > 0


def test_eval_mod_quadratic():
    m = Poly((-2, 0, 1))  # a^2 - 2
    assert eval_mod_quadratic(Poly((0, 0, 0, 1)), m) == (0, 2)  # a^3 = 2a
    p = Poly((0, 2)) * Poly((-2, 0, 1))  # 2a (a^2 - 2)
    assert eval_mod_quadratic(p, m) == (0, 0)
    assert eval_mod_quadratic(Poly((-1, 0, 1)), m) == (1, 0)
    with pytest.raises(ValueError):
        eval_mod_quadratic(Poly((1,)), Poly((1, 1)))
    with pytest.raises(ValueError):
        eval_mod_quadratic(Poly((1,)), Poly((1, 0, 2)))


def test_sign_at_sqrt():
    # sign of c0 + c1*sqrt(2)
    assert sign_at_sqrt(Fraction(0), Fraction(0), 2) == 0
    assert sign_at_sqrt(Fraction(1), Fraction(1), 2) == 1
    assert sign_at_sqrt(Fraction(-1), Fraction(-1), 2) == -1
    assert sign_at_sqrt(Fraction(3), Fraction(-2), 2) == 1  # 3 > 2*sqrt(2)
    assert sign_at_sqrt(Fraction(-3), Fraction(2), 2) == -1
    assert sign_at_sqrt(Fraction(-7, 5), Fraction(1), 2) == 1  # sqrt(2) > 7/5
    assert sign_at_sqrt(Fraction(-3, 2), Fraction(1), 2) == -1  # sqrt(2) < 3/2


def test_smallest_positive_root():
    assert smallest_positive_root(Poly((1, 1))) is None
    exact = smallest_positive_root(Poly((1, -1)))
    assert exact.is_exact and exact.lo == 1
    iv = smallest_positive_root(Poly((-2, 0, 1)), width=Fraction(1, 10**9))
    assert iv.hi - iv.lo <= Fraction(1, 10**9)
    assert iv.lo**2 < 2 < iv.hi**2
    # non-dyadic rational roots are still detected exactly
    third = smallest_positive_root(Poly((1, 3)) * Poly((Fraction(-1, 3), 1)))
    assert third.is_exact and third.lo == Fraction(1, 3)


def test_cauchy_bound_contains_all_roots():
    from ricci_orbit.sturm import cauchy_root_bound

    rng = random.Random(41)
    for _ in range(50):
        roots = [Fraction(rng.randint(-40, 40), rng.randint(1, 5)) for _ in range(rng.randint(1, 4))]
        p = poly_from_roots([(r, 1) for r in set(roots)], lc=Fraction(rng.randint(1, 5)))
        bound = cauchy_root_bound(p)
        assert all(abs(r) < bound for r in roots)


def test_simplest_between_is_simplest():
    from ricci_orbit.sturm import simplest_between

    rng = random.Random(43)
    for _ in range(200):
        lo = Fraction(rng.randint(0, 500), rng.randint(1, 40))
        hi = lo + Fraction(rng.randint(1, 10), rng.randint(1, 500))
        q = simplest_between(lo, hi)
        assert lo < q < hi
        for d in range(1, q.denominator):
            base = (lo * d).numerator // (lo * d).denominator
            for n in (base, base + 1, base + 2):
                cand = Fraction(n, d)
                assert not lo < cand < hi
