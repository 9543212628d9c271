"""Experiments with homotopical Hilbert–Poincaré series of hyperbolic spaces and maps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .calculus import ThresholdReport, homology_p_of_map
from .errors import NegativeEvaluationPoint, NotApplicable, NotHyperbolic, RadiusExceeded, TooShort
from .maps import MapModel, ellipticity_of_map, kernel_profile
from .series import (
    CONVERGES,
    DIVERGENCE_SUSPECTED,
    ConvergenceVerdict,
    RadiusEstimate,
    TruncatedSeriesQ,
    evaluate,
    radius_estimate,
    series_from_terms,
)
from .spaces import EllipticityClass, SpaceModel, classify, default_truncation, poincare_polynomial

Subject = Union[SpaceModel, MapModel]

MIN_FELIX_TRUNCATION = 20
RADIUS_SOURCES = ("rX", "rf")


def hp_series_pi(obj: Subject, n: int) -> TruncatedSeriesQ:
    """Homotopy ranks of a space, or π-kernel ranks of a map, through degree n."""
    if isinstance(obj, MapModel):
        return TruncatedSeriesQ.from_dims(kernel_profile(obj).pi_kernel, n)
    return TruncatedSeriesQ.from_dims(obj.homotopy, n)


@dataclass(frozen=True)
class HyperbolicReport:
    subject: str
    experiment: str
    truncation: int
    estimate: RadiusEstimate
    convergence: Optional[ConvergenceVerdict]
    comparison: Optional[tuple] = None
    conclusion: str = ""
    notes: tuple = ()

    @property
    def radius(self) -> float:
        return self.estimate.radius

    @property
    def felix_bound_satisfied(self) -> bool:
        return self.estimate.radius < 1


def _hyperbolic_series(obj: Subject, n: int) -> TruncatedSeriesQ:
    if isinstance(obj, MapModel):
        if ellipticity_of_map(obj).kernel is not EllipticityClass.HYPERBOLIC:
            raise NotHyperbolic(f"{obj.name} is not hyperbolic with respect to kernel")
    elif classify(obj) is not EllipticityClass.HYPERBOLIC:
        raise NotHyperbolic(f"{obj.name} is not hyperbolic ({classify(obj).value})")
    return hp_series_pi(obj, n)


def _default_n(obj: Subject) -> int:
    space = obj.source if isinstance(obj, MapModel) else obj
    return space.homotopy.bound if space.homotopy.truncated else default_truncation()


def felix_check(obj: Subject, n: Optional[int] = None) -> HyperbolicReport:
    """Estimate the radius of HP^π and compare it with 1.

    For a map the kernel series is dominated coefficientwise by the source's,
    so its radius is at least the source's; both are reported.
    """
    n = _default_n(obj) if n is None else n
    if n < MIN_FELIX_TRUNCATION:
        raise TooShort(f"need at least {MIN_FELIX_TRUNCATION} terms, got {n}")
    series = _hyperbolic_series(obj, n)
    est = radius_estimate(series)
    notes = []
    if isinstance(obj, MapModel) and classify(obj.source) is EllipticityClass.HYPERBOLIC:
        source = radius_estimate(hp_series_pi(obj.source, n), check_convergence=False)
        notes.append(f"source radius {source.radius:.6g} <= kernel radius {est.radius:.6g}"
                     if source.radius <= est.radius * 1.05 else
                     f"source radius {source.radius:.6g} exceeds kernel radius {est.radius:.6g}")
    verdict = "bound satisfied" if est.radius < 1 else "bound NOT satisfied"
    return HyperbolicReport(obj.name, "felix", n, est, est.verdict,
                            conclusion=f"r̂ = {est.radius:.6g} < 1: {verdict}", notes=tuple(notes))


def question_experiment(obj: Union[Subject, TruncatedSeriesQ], n: Optional[int] = None,
                        name: Optional[str] = None) -> HyperbolicReport:
    """Gather evidence on HP^π(r̂) <= P(r̂) where HP^π seems to converge at r̂.

    ``obj`` may also be a bare coefficient stream, used to calibrate the
    convergence heuristic; then no homology side exists to compare against.
    """
    if isinstance(obj, TruncatedSeriesQ):
        series = obj if n is None else obj.truncate(n)
        label, poincare = name or "series", None
    else:
        n = _default_n(obj) if n is None else n
        series = _hyperbolic_series(obj, n)
        label = obj.name
        poincare = homology_p_of_map(obj) if isinstance(obj, MapModel) else poincare_polynomial(obj)
    est = radius_estimate(series)
    verdict = est.verdict
    comparison = None
    if verdict.kind == CONVERGES:
        if poincare is None:
            conclusion = f"converges to ≈ {verdict.value:.10g} at r̂ = {est.radius:.6g} (heuristic)"
        else:
            p_value = float(evaluate(poincare, Fraction(est.radius)))
            comparison = (verdict.value, p_value)
            rel = "<=" if verdict.value <= p_value else ">"
            conclusion = f"HP^π(r̂) ≈ {verdict.value:.10g} {rel} {p_value:.10g} = P(r̂) (heuristic evidence)"
    elif verdict.kind == DIVERGENCE_SUSPECTED:
        conclusion = "divergence suspected at r̂: question vacuous here"
    else:
        conclusion = "inconclusive at r̂"
    return HyperbolicReport(label, "question", series.n, est, verdict, comparison, conclusion)


def hyperbolic_threshold(f: MapModel, r: float, max_n: int = 12, radius_source: str = "rX",
                         n: Optional[int] = None) -> ThresholdReport:
    """Least n with n·HP^π_f(r) < P_f(r)^n, below the chosen radius.

    Additivity of HP^π under products and the lower bound (P_f)^n <= P_{f^n}
    make this n a threshold for HP^π_{f^n}(r) < P_{f^n}(r).  HP^π_f(r) is
    the partial sum through the truncation.
    """
    if radius_source not in RADIUS_SOURCES:
        raise ValueError(f"radius source must be one of {RADIUS_SOURCES}")
    if r <= 0:
        raise NegativeEvaluationPoint(f"evaluation point must be positive, got {r}")
    n = _default_n(f) if n is None else n
    series = _hyperbolic_series(f, n)
    p = homology_p_of_map(f)
    if evaluate(p, 1) <= 1:
        raise NotApplicable(f"{f.name}: P_f(1) = 1; the threshold needs P_f(1) > 1")
    if radius_source == "rf":
        radius = radius_estimate(series, check_convergence=False).radius
    else:
        radius = radius_estimate(_hyperbolic_series(f.source, n), check_convergence=False).radius
    if r >= radius:
        raise RadiusExceeded(f"r = {r} is not below the estimated radius {radius:.6g} ({radius_source})")

    hp = float(evaluate(series, float(r)))
    pr = float(evaluate(p, float(r)))
    rows = []
    found = None
    stop = max_n
    k = 0
    while k < stop:
        k += 1
        lhs, rhs = k * hp, pr ** k
        rows.append((k, lhs, rhs))
        if found is None and lhs < rhs:
            found = k
            stop = k + 5
    verified = (found, stop) if found is not None else None
    notes = f"radius {radius_source} ≈ {radius:.6g}; lhs is the partial sum through degree {n}"
    if found is None:
        notes += f"; not reached for n <= {max_n}"
    return ThresholdReport(float(r), found, None, max_n, verified, tuple(rows), False, notes)


def calibration_series(kind: str, n: int, d: int = 1) -> TruncatedSeriesQ:
    """Test streams with known behaviour at their radius.

    p1 = Σ_{k>=1} t^k/k², p2 = Σ (d t)^k/k² converge at the radius to π²/6;
    p3 = Σ t^k and p4 = Σ (d t)^k diverge there.
    """
    if kind == "p1":
        return series_from_terms([0] + [Fraction(1, k * k) for k in range(1, n + 1)])
    if kind == "p2":
        return series_from_terms([0] + [Fraction(d ** k, k * k) for k in range(1, n + 1)])
    if kind == "p3":
        return series_from_terms([1] * (n + 1))
    if kind == "p4":
        return series_from_terms([d ** k for k in range(n + 1)])
    raise ValueError(f"unknown calibration series {kind!r}")


BASEL = math.pi ** 2 / 6
