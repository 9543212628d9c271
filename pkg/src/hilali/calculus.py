"""Poincaré polynomials of maps and the Hilali-type inequalities.

For a map f: X → Y that is rationally elliptic with respect to kernel,

    P_f(t)   = 1 + Σ_{i>=2} dim Ker H_i(f; Q) t^i
    P^π_f(t) =     Σ_{i>=2} dim Ker(π_i(f) ⊗ Q) t^i

and the relative inequality asks whether P^π_f(1) <= P_f(1).  For products
f^n the homotopical side is additive (n·P^π_f) while the homological side is
bounded below by (P_f)^n, which drives :func:`product_threshold`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DegreeOutOfWindow,
    NegativeEvaluationPoint,
    NotApplicable,
    NotEllipticWrtKernel,
    UnboundedSupport,
)
from .graded import GradedDims
from .maps import KernelProfile, MapEllipticity, MapModel, ellipticity_of_map, kernel_profile, product_map
from .series import PolynomialQ, TruncatedSeriesQ, evaluate
from .spaces import EllipticityClass, SpaceModel, classify, homotopy_poincare, poincare_polynomial

Series = Union[PolynomialQ, TruncatedSeriesQ]


def _kernel_series(dims: GradedDims) -> Series:
    upper = {d: r for d, r in dims.dims.items() if d >= 2}
    if dims.truncated:
        return TruncatedSeriesQ.from_mapping(upper, dims.bound)
    return PolynomialQ(upper)


def ker_poincare(f: MapModel, profile: Optional[KernelProfile] = None) -> Series:
    return _kernel_series((profile or kernel_profile(f)).h_kernel)


def ker_poincare_pi(f: MapModel, profile: Optional[KernelProfile] = None) -> Series:
    return _kernel_series((profile or kernel_profile(f)).pi_kernel)


def cok_poincare(f: MapModel, profile: Optional[KernelProfile] = None) -> Series:
    return _kernel_series((profile or kernel_profile(f)).h_cokernel)


def cok_poincare_pi(f: MapModel, profile: Optional[KernelProfile] = None) -> Series:
    return _kernel_series((profile or kernel_profile(f)).pi_cokernel)


@dataclass(frozen=True)
class MapPolynomials:
    p: PolynomialQ
    p_pi: PolynomialQ
    profile: KernelProfile
    ellipticity: MapEllipticity


def map_polynomials(f: MapModel) -> MapPolynomials:
    """P_f and P^π_f together; raises unless f is elliptic with respect to kernel."""
    profile = kernel_profile(f)
    ell = ellipticity_of_map(f, profile)
    if not ell.elliptic_wrt_kernel:
        raise NotEllipticWrtKernel(f"{f.name} is not rationally elliptic with respect to kernel "
                                   f"({ell.kernel.value})")
    kp, kpi = ker_poincare(f, profile), ker_poincare_pi(f, profile)
    if isinstance(kp, TruncatedSeriesQ) or isinstance(kpi, TruncatedSeriesQ):
        raise DegreeOutOfWindow(f"{f.name}: kernels are finite but the target truncation hides some; "
                                "raise the truncation")
    return MapPolynomials(1 + kp, kpi, profile, ell)


def homology_p_of_map(f: MapModel) -> PolynomialQ:
    """1 + Ker P_f without asking for finite homotopy kernels (hyperbolic maps)."""
    kp = ker_poincare(f)
    if isinstance(kp, TruncatedSeriesQ):
        raise DegreeOutOfWindow(f"{f.name}: homology kernel is not known to be finite")
    return 1 + kp


def p_of_map(f: MapModel) -> PolynomialQ:
    return map_polynomials(f).p


def p_pi_of_map(f: MapModel) -> PolynomialQ:
    return map_polynomials(f).p_pi


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of Ker P - P_X + P_Y - Cok P on homology and homotopy."""

    homology_residual: PolynomialQ
    homotopy_residual: PolynomialQ
    surjective: bool
    surjective_residuals: Optional[tuple] = None

    @property
    def holds(self) -> bool:
        ok = self.homology_residual == 0 and self.homotopy_residual == 0
        if self.surjective_residuals is not None:
            ok = ok and all(r == 0 for r in self.surjective_residuals)
        return ok


def verify_exact_identities(f: MapModel) -> IdentityReport:
    for side, space in (("source", f.source), ("target", f.target)):
        if classify(space) is not EllipticityClass.ELLIPTIC:
            raise NotApplicable(f"{side} {space.name} is not rationally elliptic "
                                f"({classify(space).value}); the identities need finite data on both sides")
    profile = kernel_profile(f)
    ker, ker_pi = ker_poincare(f, profile), ker_poincare_pi(f, profile)
    cok, cok_pi = cok_poincare(f, profile), cok_poincare_pi(f, profile)
    px, py = poincare_polynomial(f.source), poincare_polynomial(f.target)
    qx, qy = homotopy_poincare(f.source), homotopy_poincare(f.target)
    h_res = ker - px + py - cok
    pi_res = ker_pi - qx + qy - cok_pi
    surjective = cok == 0 and cok_pi == 0
    special = (ker - px + py, ker_pi - qx + qy) if surjective else None
    return IdentityReport(h_res, pi_res, surjective, special)


@dataclass(frozen=True)
class HilaliVerdict:
    lhs: Fraction
    rhs: Fraction
    context: str
    at: Fraction = Fraction(1)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def strict(self) -> bool:
        return self.lhs < self.rhs

    def __str__(self):
        rel = "<" if self.strict else ("=" if self.lhs == self.rhs else ">")
        return f"{self.context}: P^π({self.at}) = {self.lhs} {rel} {self.rhs} = P({self.at})"


def _nonnegative(s) -> Fraction:
    s = Fraction(s)
    if s < 0:
        raise NegativeEvaluationPoint(f"evaluation point {s} < 0: the product bound needs t >= 0")
    return s


def hilali_check(x: SpaceModel, at=1) -> HilaliVerdict:
    if classify(x) is not EllipticityClass.ELLIPTIC:
        raise NotApplicable(f"{x.name} is not rationally elliptic ({classify(x).value})")
    at = Fraction(at)
    return HilaliVerdict(evaluate(homotopy_poincare(x), at), evaluate(poincare_polynomial(x), at), x.name, at)


def relative_hilali_check(f: MapModel, at=1) -> HilaliVerdict:
    polys = map_polynomials(f)
    at = Fraction(at)
    return HilaliVerdict(evaluate(polys.p_pi, at), evaluate(polys.p, at), f.name, at)


@dataclass(frozen=True)
class ThresholdReport:
    """Outcome of the search for n with P^π_{f^n}(s) < P_{f^n}(s).

    ``analytic_bound`` is the least n with n·P^π_f(s) < P_f(s)^n;
    ``exact_minimum`` the least n <= max_n where the strict inequality holds
    for the actual power map (None when not found, or not searched).
    ``per_n`` rows are (n, lhs, rhs).
    """

    evaluation_point: Union[Fraction, float]
    analytic_bound: Optional[int]
    exact_minimum: Optional[int]
    max_n: int
    verified_range: Optional[tuple]
    per_n: tuple = ()
    exact_searched: bool = True
    notes: str = ""

    @property
    def strict_throughout(self) -> bool:
        if self.verified_range is None:
            return False
        lo, hi = self.verified_range
        return all(lhs < rhs for n, lhs, rhs in self.per_n if lo <= n <= hi)

    @property
    def consistent(self) -> bool:
        """exact_minimum <= analytic_bound whenever both exist."""
        if self.exact_minimum is None or self.analytic_bound is None:
            return True
        return self.exact_minimum <= self.analytic_bound


VERIFY_SPAN = 5


def analytic_bound(p_pi_value, p_value) -> int:
    """Least n >= 1 with n * p_pi_value < p_value ** n.

    Terminates whenever p_value > 1 or p_pi_value == 0.
    """
    if p_value <= 1 and p_pi_value > 0:
        raise NotApplicable("no analytic bound: P_f(s) <= 1 while P^π_f(s) > 0")
    n = 1
    while not n * p_pi_value < p_value ** n:
        n += 1
    return n


def product_threshold(f: MapModel, s=1, max_n: int = 12) -> ThresholdReport:
    s = _nonnegative(s)
    if f.source.homology.truncated:
        raise UnboundedSupport(f"{f.name}: source homology must be FiniteUpTo")
    polys = map_polynomials(f)
    if s > 0 and evaluate(polys.p, 1) == 1:
        raise NotApplicable(f"{f.name}: P_f(1) = 1, homology is injective; "
                            "the product threshold needs a non-injective H_i(f)")
    bound = analytic_bound(evaluate(polys.p_pi, s), evaluate(polys.p, s))

    rows = []
    exact = None
    stop = max_n
    current = f
    for n in range(1, max_n + 1):
        if n > 1:
            current = product_map(current, f, exact=True)
        cur = polys if n == 1 else map_polynomials(current)
        lhs, rhs = evaluate(cur.p_pi, s), evaluate(cur.p, s)
        rows.append((n, lhs, rhs))
        if exact is None and lhs < rhs:
            exact = n
            stop = min(n + VERIFY_SPAN, max_n)
        if n >= stop:
            break
    verified = (exact, stop) if exact is not None else None
    notes = "" if exact is not None else f"strict inequality not reached for n <= {max_n}"
    return ThresholdReport(s, bound, exact, max_n, verified, tuple(rows), True, notes)


CASE_PRODUCTS_OF_BIG = "case-1"
CASE_ZERO_HOMOTOPY = "case-2"
CASE_UNDETERMINED = "undetermined"
CASE_PREMISE_FAILS = "premise-fails"


@dataclass(frozen=True)
class CorollaryReport:
    case: str
    factor_verdicts: tuple
    product_verdict: HilaliVerdict

    @property
    def verified(self) -> Optional[bool]:
        """Product inequality when a covered case applies, else None."""
        if self.case in (CASE_PRODUCTS_OF_BIG, CASE_ZERO_HOMOTOPY):
            return self.product_verdict.holds
        return None


def corollary_case_check(f1: MapModel, f2: MapModel) -> CorollaryReport:
    """Which case of the product corollary covers f1 × f2, plus the exact product verdict.

    Given P^π_{f_i}(1) <= P_{f_i}(1), the product inequality follows when
    both P_{f_i}(1) >= 2, or when one P^π_{f_i}(1) vanishes.  The remaining
    case (some P_{f_i}(1) = P^π_{f_i}(1) = 1) is reported, not decided.
    """
    for f in (f1, f2):
        if f.source.homology.truncated:
            raise UnboundedSupport(f"{f.name}: source homology must be FiniteUpTo")
    v1, v2 = relative_hilali_check(f1), relative_hilali_check(f2)
    product = relative_hilali_check(product_map(f1, f2, exact=True))
    if not (v1.holds and v2.holds):
        case = CASE_PREMISE_FAILS
    elif v1.rhs >= 2 and v2.rhs >= 2:
        case = CASE_PRODUCTS_OF_BIG
    elif v1.lhs == 0 or v2.lhs == 0:
        case = CASE_ZERO_HOMOTOPY
    else:
        case = CASE_UNDETERMINED
    return CorollaryReport(case, (v1, v2), product)


@dataclass(frozen=True)
class InjectivityReport:
    """Does homological injectivity come with homotopical injectivity here?

    ``None`` entries mean the declared windows cannot tell.  The conjecture
    only speaks about rationally elliptic maps; ``in_scope`` records that.
    """

    h_injective: Optional[bool]
    pi_injective: Optional[bool]
    ellipticity: MapEllipticity
    in_scope: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "in_scope", self.ellipticity.elliptic)

    @property
    def consistent(self) -> Optional[bool]:
        if self.h_injective is False or self.pi_injective is True:
            return True
        if self.h_injective is True and self.pi_injective is False:
            return False
        return None

    @property
    def status(self) -> str:
        if not self.in_scope:
            return "out of scope"
        return {True: "consistent", False: "counterexample", None: "undecided"}[self.consistent]


def _injective(kernel: GradedDims) -> Optional[bool]:
    if kernel.dims:
        return False
    return None if kernel.truncated else True


def injectivity_probe(f: MapModel) -> InjectivityReport:
    profile = kernel_profile(f)
    return InjectivityReport(_injective(profile.h_kernel), _injective(profile.pi_kernel),
                             ellipticity_of_map(f, profile))
