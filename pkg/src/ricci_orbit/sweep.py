"""Symbolic Ricci iteration over the family P_a = 1 + a*x + x^2 and certified
positivity intervals in the parameter a.

Densities along the orbit are kept as scale * N / prod F_i^2 with N and the
F_i bivariate polynomials (coefficients in Q[a]); taking a Ricci step maps

    log v = log N - sum m_i log F_i
    w = -2 [ Dop(N) / N^2 - sum m_i Dop(F_i) / F_i^2 ],

so the new denominator is N^2 * prod F_i^2 in factored form and only the new
numerator needs expansion.  Reduction uses rational content extraction plus
trial exact division by the known factors; no general bivariate gcd is ever
needed.  All interval certificates are Sturm-based and exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Optional, Sequence

from .polyalg import Poly, RatFunc, format_fraction
from .sturm import (
    Positivity,
    SturmChain,
    eval_mod_quadratic,
    is_positive_on_nonneg_axis,
    sturm_count_roots,
)
from .geometry import RadialDensity

DEFAULT_K_CAP = 4
DEFAULT_SIZE_LIMIT = 200_000
SIZE_LIMIT_ENV = "RICCI_ORBIT_SIZE_LIMIT"


class SizeLimitError(RuntimeError):
    """Raised when a symbolic iterate exceeds the coefficient-slot budget."""


def default_size_limit() -> int:
    raw = os.environ.get(SIZE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_SIZE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SIZE_LIMIT_ENV} must be an integer, got {raw!r}") from None


class BivarPoly:
    """Polynomial in x whose coefficients are Polys in the parameter a.

    ``coeffs[i]`` is the coefficient of x^i; trailing zero coefficients are
    trimmed.  Immutable by convention.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Poly] = ()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs: tuple[Poly, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls(())

    @classmethod
    def from_x_poly(cls, p: Poly) -> "BivarPoly":
        return cls(tuple(Poly.constant(c) for c in p.coeffs))

    @property
    def degree_x(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Poly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Poly()

    @property
    def slots(self) -> int:
        return sum(len(c.coeffs) for c in self.coeffs)

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return BivarPoly(out)

    def __neg__(self) -> "BivarPoly":
        return BivarPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BivarPoly(tuple(c * other for c in self.coeffs))
        if isinstance(other, Poly):  # multiply by a polynomial in a
            return BivarPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, BivarPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return BivarPoly()
        out = [Poly() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivarPoly":
        result = BivarPoly.from_x_poly(Poly.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def derivative_x(self) -> "BivarPoly":
        return BivarPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    def shift_x(self) -> "BivarPoly":
        """Multiply by x."""
        if self.is_zero:
            return self
        return BivarPoly((Poly(),) + self.coeffs)

    def eval_a(self, a: Fraction) -> Poly:
        """Specialize the parameter, returning a Poly in x."""
        return Poly(tuple(c(a) for c in self.coeffs))

    def eval_x(self, x: Fraction) -> Poly:
        """Evaluate at a rational x, returning a Poly in a."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> Fraction:
        """Positive rational content over all coefficients; 0 for zero."""
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for cp in self.coeffs:
            for c in cp.coeffs:
                num = _int_gcd(num, c.numerator)
                den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def exact_div(self, divisor: "BivarPoly") -> Optional["BivarPoly"]:
        """Quotient in Q[a][x] if division is exact (including in Q[a]); else None."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero bivariate polynomial")
        if self.is_zero:
            return BivarPoly()
        if self.degree_x < divisor.degree_x:
            return None
        rem = list(self.coeffs)
        dlc = divisor.coeffs[-1]
        dd = divisor.degree_x
        quot = [Poly() for _ in range(len(rem) - dd)]
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c.is_zero:
                continue
            q = c.exact_div(dlc)
            if q is None:
                return None
            quot[i - dd] = q
            for j, dcoef in enumerate(divisor.coeffs):
                rem[i - dd + j] = rem[i - dd + j] - q * dcoef
        if any(not c.is_zero for c in rem):
            return None
        return BivarPoly(quot)

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "BivarPoly":
        return cls(tuple(Poly.from_json(c) for c in data))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                terms.append(f"({c})*x^{i}")
        return "BivarPoly(" + (" + ".join(terms) if terms else "0") + ")"


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    num = _int_gcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // _int_gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def d_op_bivar(p: BivarPoly) -> BivarPoly:
    """P'P + x P''P - x (P')^2 with derivatives in x."""
    dp = p.derivative_x()
    ddp = dp.derivative_x()
    return dp * p + (ddp * p).shift_x() - (dp * dp).shift_x()


# the family density: potential log(1 + a*x + x^2) on the affine chart
FAMILY_P = BivarPoly((Poly((1,)), Poly((0, 1)), Poly((1,))))       # 1 + a x + x^2
FAMILY_A = BivarPoly((Poly((0, 1)), Poly((4,)), Poly((0, 1))))     # a + 4x + a x^2


@dataclass(frozen=True)
class SymbolicStep:
    """k-th Ricci iterate of the family density, in factored form.

    The density is scale * numerator / prod(factor^mult); ``as_fraction``
    expands the pair with coprime integer contents.
    """

    k: int
    numerator: BivarPoly
    factors: tuple[tuple[BivarPoly, int], ...]
    scale: Fraction

    @property
    def denominator(self) -> BivarPoly:
        out = BivarPoly.from_x_poly(Poly.one())
        for f, m in self.factors:
            out = out * f**m
        return out

    def as_fraction(self) -> tuple[BivarPoly, BivarPoly]:
        num = self.numerator * self.scale.numerator
        den = self.denominator * self.scale.denominator
        g = _fraction_gcd(num.content(), den.content())
        if g != 0:
            num = num * (1 / g)
            den = den * (1 / g)
        return num, den

    def specialize(self, a: Fraction) -> RadialDensity:
        num = self.numerator.eval_a(a) * self.scale
        den = Poly.one()
        for f, m in self.factors:
            den = den * f.eval_a(a) ** m
        return RadialDensity(RatFunc(num, den))

    def degree_table(self) -> dict:
        num, den = self.as_fraction()
        return {"k": self.k, "deg_num_x": num.degree_x, "deg_den_x": den.degree_x}


def symbolic_iterate(k: int, size_limit: Optional[int] = None) -> list[SymbolicStep]:
    """Exact bivariate Ricci iterates 1..k of the family density.

    The step-0 density is A / P^2 with P = 1 + a x + x^2 and
    A = a + 4x + a x^2.  k is capped at 4 by default: numerator degrees grow
    roughly threefold per step.  Raises SizeLimitError when an iterate
    exceeds the coefficient-slot budget.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > DEFAULT_K_CAP:
        raise ValueError(f"k capped at {DEFAULT_K_CAP}; coefficient sizes grow ~3^k")
    limit = default_size_limit() if size_limit is None else size_limit
    steps: list[SymbolicStep] = []
    num = FAMILY_A
    factors: list[tuple[BivarPoly, int]] = [(FAMILY_P, 2)]
    for step_index in range(1, k + 1):
        # product of squared factors and the per-factor complements
        full = BivarPoly.from_x_poly(Poly.one())
        for f, m in factors:
            full = full * f**m
        sigma = BivarPoly.zero()
        for i, (f, m) in enumerate(factors):
            others = BivarPoly.from_x_poly(Poly.one())
            for j, (g, mg) in enumerate(factors):
                if j != i:
                    others = others * g**mg
            sigma = sigma + d_op_bivar(f) * others * m
        w_num = (d_op_bivar(num) * full - (num * num) * sigma) * (-2)
        if w_num.is_zero:
            raise ValueError("symbolic Ricci form vanished; family degenerated")
        if w_num.slots > limit:
            raise SizeLimitError(
                f"iterate {step_index} needs {w_num.slots} coefficient slots "
                f"(limit {limit})"
            )
        new_factors: list[tuple[BivarPoly, int]] = [(num, 2)] + [(f, 2) for f, _ in factors]
        # reduction: rational content, then trial exact division by known factors
        scale = w_num.content()
        new_num = w_num * (1 / scale)
        reduced: list[tuple[BivarPoly, int]] = []
        for f, m in new_factors:
            while m > 0:
                q = new_num.exact_div(f)
                if q is None:
                    break
                new_num = q
                m -= 1
            if m > 0:
                reduced.append((f, m))
        steps.append(SymbolicStep(step_index, new_num, tuple(reduced), scale))
        num, factors = new_num, reduced
    return steps


@dataclass(frozen=True)
class CertifiedInterval:
    """An a-interval with a machine-checkable property.

    ``all-x-coeffs-positive``: every x-coefficient of every tracked iterate
    numerator is certified > 0 on [lo, hi] (no Sturm roots in the interval
    plus a positive left endpoint value).  ``not-kahler``: a fixed x-witness
    makes some iterate numerator certifiably negative for every a in the
    interval.  ``kahler-at-all-samples``: no interval certificate at this
    resolution; pointwise exact verdicts at the recorded samples only.
    """

    lo: Fraction
    hi: Fraction
    property: str
    certificate: tuple = ()
    witness: Optional[dict] = None

    def to_json(self, evidence: bool = False) -> dict:
        out = {
            "a_lo": format_fraction(self.lo),
            "a_hi": format_fraction(self.hi),
            "property": self.property,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if evidence:
            out["certificate"] = list(self.certificate)
        return out


def _certify_coeff_positive(
    c: Poly, lo: Fraction, hi: Fraction, include_chain: bool = False
) -> Optional[dict]:
    """Certificate that c(a) > 0 on [lo, hi], or None.

    c(lo) > 0 plus zero Sturm roots in (lo, hi] forces positivity on the
    closed interval.  ``include_chain`` embeds the full Sturm payload so the
    certificate can be rechecked without rerunning the sweep.
    """
    if c.is_zero or c(lo) <= 0:
        return None
    if sturm_count_roots(c, lo, hi) != 0:
        return None
    mid = (lo + hi) / 2
    val = c(mid)
    assert val > 0
    cert = {
        "value_at_lo": format_fraction(c(lo)),
        "sample_at": format_fraction(mid),
        "sample_value": format_fraction(val),
        "roots_in_interval": 0,
    }
    if include_chain:
        chain = SturmChain(c.squarefree_part())
        cert["sturm_chain"] = [p.to_json() for p in chain.chain]
        cert["variations_at_lo"] = chain.variations_at(lo)
        cert["variations_at_hi"] = chain.variations_at(hi)
    return cert


def coeff_positivity_interval(
    n: BivarPoly, lo: Fraction, hi: Fraction, include_chain: bool = False
) -> CertifiedInterval:
    """Certify every x-coefficient of n positive on [lo, hi], or produce a
    counterexample.

    The counterexample is either a rational point a* with a nonpositive
    coefficient value or, for a touching zero, the index of the offending
    coefficient with a root in the interval.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    certs = []
    for k_idx in range(n.degree_x + 1):
        c = n.coeff(k_idx)
        cert = _certify_coeff_positive(c, lo, hi, include_chain=include_chain)
        if cert is None:
            point = _find_nonpositive_point(c, lo, hi)
            witness = {"coefficient_index": k_idx}
            if point is not None:
                witness["a"] = format_fraction(point)
                witness["value"] = format_fraction(c(point))
            else:
                witness["reason"] = "coefficient has a zero in the interval"
            return CertifiedInterval(lo, hi, "not-kahler", witness=witness)
        cert["coefficient_index"] = k_idx
        certs.append(cert)
    return CertifiedInterval(lo, hi, "all-x-coeffs-positive", certificate=tuple(certs))


def _find_nonpositive_point(c: Poly, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    if c.is_zero:
        return lo
    for endpoint in (lo, hi):
        if c(endpoint) <= 0:
            return endpoint
    # bisect toward a sign change; roots are known to exist in (lo, hi)
    budget = 64
    stack = [(lo, hi)]
    while stack and budget > 0:
        a, b = stack.pop()
        m = (a + b) / 2
        if c(m) <= 0:
            return m
        budget -= 1
        if sturm_count_roots(c, a, m) > 0:
            stack.append((a, m))
        if sturm_count_roots(c, m, b) > 0:
            stack.append((m, b))
    return None  # even-multiplicity touching zero; no nonpositive rational point


def _certify_coeff_negative(c: Poly, lo: Fraction, hi: Fraction) -> bool:
    return (not c.is_zero) and c(lo) < 0 and sturm_count_roots(c, lo, hi) == 0


@dataclass(frozen=True)
class SweepResult:
    """Certified decomposition of an a-interval for the k-step iteration."""

    k: int
    resolution: Fraction
    lo: Fraction
    hi: Fraction
    inner: tuple[CertifiedInterval, ...]
    gaps: tuple[CertifiedInterval, ...]
    unresolved: tuple[CertifiedInterval, ...]

    def to_json(self, evidence: bool = False) -> dict:
        return {
            "k": self.k,
            "resolution": format_fraction(self.resolution),
            "domain": [format_fraction(self.lo), format_fraction(self.hi)],
            "inner": [c.to_json(evidence) for c in self.inner],
            "gaps": [c.to_json(evidence) for c in self.gaps],
            "unresolved": [c.to_json(evidence) for c in self.unresolved],
        }

    def csv_rows(self) -> list[tuple[str, str, int, str, str]]:
        rows = []
        for group in (self.inner, self.gaps, self.unresolved):
            for c in group:
                wit = "" if c.witness is None else _witness_str(c.witness)
                rows.append(
                    (format_fraction(c.lo), format_fraction(c.hi), self.k, c.property, wit)
                )
        rows.sort(key=lambda r: Fraction(r[0]))
        return rows


def _witness_str(witness: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(witness.items()))


class _SweepEngine:
    def __init__(self, k: int, numerators: list[BivarPoly]):
        self.k = k
        self.numerators = numerators  # N_1..N_k plus base factors to keep positive

    def certify_inner(self, lo: Fraction, hi: Fraction) -> Optional[list]:
        certs = []
        for idx, n in enumerate(self.numerators):
            cert = coeff_positivity_interval(n, lo, hi)
            if cert.property != "all-x-coeffs-positive":
                return None
            certs.append({"iterate": idx, "coefficients": len(cert.certificate)})
        return certs

    def pointwise(self, a: Fraction):
        """Exact per-a verdicts for each tracked numerator; returns the first
        failure as (index, x-witness Poly-in-a, kind) or None if all Kahler."""
        for idx, n in enumerate(self.numerators):
            p = n.eval_a(a)
            if p.is_zero:
                return idx, None, "degenerate"
            report = is_positive_on_nonneg_axis(p)
            if report.kind is Positivity.NOT_NONNEG:
                return idx, report.witness, "negative"
            if report.kind is Positivity.NONNEG_WITH_ZEROS:
                z = report.zeros[0]
                return idx, z.hi, "zero"
            if p.degree < n.degree_x:
                return idx, None, "degenerate"
        return None

    def refute(self, lo: Fraction, hi: Fraction) -> Optional[dict]:
        """Certificate that the iteration fails for every a in [lo, hi]."""
        mid = (lo + hi) / 2
        failure = self.pointwise(mid)
        if failure is None:
            return None
        idx, x_wit, kind = failure
        if kind != "negative" or x_wit is None:
            return None
        c = self.numerators[idx].eval_x(x_wit)
        if _certify_coeff_negative(c, lo, hi):
            return {
                "iterate": idx,
                "x": format_fraction(x_wit),
                "reason": "numerator certified negative at x for all a in the interval",
            }
        return None

    def run(self, lo: Fraction, hi: Fraction, resolution: Fraction):
        inner: list[CertifiedInterval] = []
        gaps: list[CertifiedInterval] = []
        unresolved: list[CertifiedInterval] = []
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            certs = self.certify_inner(a, b)
            if certs is not None:
                inner.append(
                    CertifiedInterval(a, b, "all-x-coeffs-positive", certificate=tuple(certs))
                )
                continue
            refutation = self.refute(a, b)
            if refutation is not None:
                gaps.append(CertifiedInterval(a, b, "not-kahler", witness=refutation))
                continue
            if b - a <= resolution:
                mid = (a + b) / 2
                failure = self.pointwise(mid)
                witness = {"sample": format_fraction(mid)}
                if failure is None:
                    witness["sample_verdict"] = "kahler"
                else:
                    witness["sample_verdict"] = "not-kahler"
                unresolved.append(
                    CertifiedInterval(a, b, "kahler-at-all-samples", witness=witness)
                )
                continue
            m = (a + b) / 2
            stack.append((m, b))
            stack.append((a, m))
        return _merge(inner), _merge(gaps), tuple(sorted(unresolved, key=lambda c: c.lo))


def _merge(pieces: list[CertifiedInterval]) -> tuple[CertifiedInterval, ...]:
    pieces = sorted(pieces, key=lambda c: c.lo)
    out: list[CertifiedInterval] = []
    for p in pieces:
        if out and out[-1].hi == p.lo and out[-1].property == p.property:
            prev = out.pop()
            out.append(
                CertifiedInterval(
                    prev.lo,
                    p.hi,
                    prev.property,
                    certificate=prev.certificate + p.certificate,
                    witness=prev.witness if prev.witness is not None else p.witness,
                )
            )
        else:
            out.append(p)
    return tuple(out)


def tracked_numerators(k: int, size_limit: Optional[int] = None) -> list[BivarPoly]:
    """The bivariate polynomials whose positivity governs a depth-k orbit:
    the base factors P and A, then the iterate numerators N_1..N_k."""
    steps = symbolic_iterate(k, size_limit=size_limit)
    return [FAMILY_P, FAMILY_A] + [s.numerator for s in steps]


def kahler_interval(
    k: int,
    resolution: Fraction,
    lo: Fraction = Fraction(1),
    hi: Fraction = Fraction(2),
    size_limit: Optional[int] = None,
    jobs: int = 1,
) -> SweepResult:
    """Certified a-intervals on which the first k Ricci iterates stay Kahler.

    ``inner`` pieces carry all-coefficients-positive certificates for every
    iterate numerator (a sufficient positivity criterion); ``gaps`` carry
    fixed-x negativity certificates; pieces narrower than the resolution that
    admit neither certificate are reported as unresolved with pointwise
    sample verdicts.  Connectedness of the inner region is not assumed.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if not lo < hi:
        raise ValueError("need lo < hi")
    numerators = tracked_numerators(k, size_limit=size_limit)
    engine = _SweepEngine(k, numerators)
    if jobs > 1:
        inner, gaps, unresolved = _run_parallel(engine, lo, hi, resolution, jobs)
    else:
        inner, gaps, unresolved = engine.run(lo, hi, resolution)
    return SweepResult(k, resolution, lo, hi, inner, gaps, unresolved)


def _run_parallel(engine: "_SweepEngine", lo: Fraction, hi: Fraction, resolution: Fraction, jobs: int):
    # fixed partition independent of job count keeps output identical to the
    # sequential run of the same cells
    from concurrent.futures import ProcessPoolExecutor

    cells = 4 * jobs
    bounds = [lo + (hi - lo) * Fraction(i, cells) for i in range(cells + 1)]
    tasks = [(engine, bounds[i], bounds[i + 1], resolution) for i in range(cells)]
    inner: list[CertifiedInterval] = []
    gaps: list[CertifiedInterval] = []
    unresolved: list[CertifiedInterval] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for cell_inner, cell_gaps, cell_unresolved in pool.map(_run_cell, tasks):
            inner.extend(cell_inner)
            gaps.extend(cell_gaps)
            unresolved.extend(cell_unresolved)
    return _merge(list(inner)), _merge(list(gaps)), tuple(sorted(unresolved, key=lambda c: c.lo))


def _run_cell(task):
    engine, lo, hi, resolution = task
    return engine.run(lo, hi, resolution)


def sqrt2_boundary_values(n: BivarPoly) -> dict:
    """Exact values of the constant and leading x-coefficients at a = sqrt(2),
    reduced modulo a^2 - 2; (0, 0) certifies an exact boundary zero."""
    modulus = Poly((-2, 0, 1))
    c0 = eval_mod_quadratic(n.coeff(0), modulus)
    ctop = eval_mod_quadratic(n.coeff(n.degree_x), modulus)
    return {
        "constant": tuple(format_fraction(c) for c in c0),
        "leading": tuple(format_fraction(c) for c in ctop),
    }
