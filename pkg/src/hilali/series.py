"""Exact polynomials and truncated power series over the rationals.

Also hosts two numerical tools for generating series: radius-of-convergence
estimation and a heuristic convergence test at a given point, plus the
Poincaré–Birkhoff–Witt inversion that reads graded Lie generator counts off a
tensor-algebra Hilbert series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import DegreeOutOfWindow, NotRealizable, TooShort
from .graded import GradedDims

Number = Union[int, Fraction, float]


def _superscript(n: int) -> str:
    return f"t^{n}" if n > 1 else ("t" if n == 1 else "")


def _format_terms(items) -> str:
    parts = []
    for deg, c in items:
        mono = _superscript(deg)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True, eq=False)
class PolynomialQ:
    """Polynomial in one variable with Fraction coefficients."""

    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for deg, c in sorted(self.coeffs.items()):
            if int(deg) < 0:
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c:
                clean[int(deg)] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_dims(cls, dims: GradedDims, start: int = 0) -> "PolynomialQ":
        return cls({d: r for d, r in dims.dims.items() if d >= start})

    @classmethod
    def one(cls) -> "PolynomialQ":
        return cls({0: 1})

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "PolynomialQ":
        return cls({degree: c})

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def coefficient(self, degree: int) -> Fraction:
        return self.coeffs.get(degree, Fraction(0))

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return PolynomialQ(out)

    __radd__ = __add__

    def __neg__(self):
        return PolynomialQ({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return PolynomialQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = PolynomialQ.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, k: Number) -> "PolynomialQ":
        return PolynomialQ({d: c * k for d, c in self.coeffs.items()})

    def __call__(self, t):
        return evaluate(self, t)

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __str__(self):
        return _format_terms(self.coeffs.items())

    def __repr__(self):
        return f"PolynomialQ({self})"


def _as_poly(x) -> Optional[PolynomialQ]:
    if isinstance(x, PolynomialQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolynomialQ({0: x})
    return None


@dataclass(frozen=True, eq=False)
class TruncatedSeriesQ:
    """Power series known through degree ``n``.

    Coefficients beyond ``n`` are unknown unless ``polynomial`` is set, which
    records FiniteUpTo provenance (every later coefficient is zero).
    """

    coeffs: tuple
    polynomial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, Number], n: int, polynomial: bool = False):
        if any(d > n for d, c in coeffs.items() if c):
            raise DegreeOutOfWindow("coefficient beyond the truncation degree")
        return cls(tuple(coeffs.get(i, 0) for i in range(n + 1)), polynomial)

    @classmethod
    def from_dims(cls, dims: GradedDims, n: int) -> "TruncatedSeriesQ":
        if dims.truncated and dims.bound < n:
            raise DegreeOutOfWindow(f"ranks known through degree {dims.bound}, series requested through {n}")
        complete = not dims.truncated and dims.bound <= n
        return cls.from_mapping({d: r for d, r in dims.dims.items() if d <= n}, n, polynomial=complete)

    @classmethod
    def from_polynomial(cls, p: PolynomialQ, n: Optional[int] = None) -> "TruncatedSeriesQ":
        n = max(p.degree, 0) if n is None else n
        return cls.from_mapping(p.coeffs, n, polynomial=True)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, degree: int) -> Fraction:
        if degree <= self.n:
            return self.coeffs[degree]
        if self.polynomial:
            return Fraction(0)
        raise DegreeOutOfWindow(f"coefficient {degree} is beyond truncation {self.n}")

    def truncate(self, n: int) -> "TruncatedSeriesQ":
        if n > self.n and not self.polynomial:
            raise DegreeOutOfWindow(f"cannot extend a series truncated at {self.n} to {n}")
        return TruncatedSeriesQ(tuple(self.coefficient(i) for i in range(n + 1)),
                                self.polynomial and n >= self._last_nonzero())

    def _last_nonzero(self) -> int:
        return max((i for i, c in enumerate(self.coeffs) if c), default=0)

    def to_polynomial(self) -> PolynomialQ:
        if not self.polynomial:
            raise DegreeOutOfWindow("series is truncated; no polynomial form")
        return PolynomialQ(dict(enumerate(self.coeffs)))

    def _common(self, other: "TruncatedSeriesQ") -> int:
        candidates = [s.n for s in (self, other) if not s.polynomial]
        return min(candidates) if candidates else max(self.n, other.n)

    def __add__(self, other):
        if isinstance(other, PolynomialQ):
            other = TruncatedSeriesQ.from_polynomial(other)
        n = self._common(other)
        return TruncatedSeriesQ(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n + 1)),
                                self.polynomial and other.polynomial)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, PolynomialQ):
            other = TruncatedSeriesQ.from_polynomial(other)
        if self.polynomial and other.polynomial:
            return TruncatedSeriesQ.from_polynomial(self.to_polynomial() * other.to_polynomial())
        n = self._common(other)
        a = [self.coefficient(i) for i in range(n + 1)]
        b = [other.coefficient(i) for i in range(n + 1)]
        return TruncatedSeriesQ(tuple(sum(a[j] * b[i - j] for j in range(i + 1)) for i in range(n + 1)))

    __rmul__ = __mul__

    def scale(self, k: Number) -> "TruncatedSeriesQ":
        return TruncatedSeriesQ(tuple(c * k for c in self.coeffs), self.polynomial)

    def __call__(self, t):
        return evaluate(self, t)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeriesQ):
            return NotImplemented
        return self.coeffs == other.coeffs and self.polynomial == other.polynomial

    def __hash__(self):
        return hash((self.coeffs, self.polynomial))

    def __str__(self):
        body = _format_terms((i, c) for i, c in enumerate(self.coeffs) if c)
        return body if self.polynomial else f"{body} + O(t^{self.n + 1})"


def evaluate(p: Union[PolynomialQ, TruncatedSeriesQ], t: Number):
    """Horner evaluation; exact for rational ``t``, a partial sum for truncated series."""
    if isinstance(p, PolynomialQ):
        coeffs = [p.coefficient(i) for i in range(p.degree + 1)]
    else:
        coeffs = list(p.coeffs)
    exact = isinstance(t, (int, Fraction))
    acc = Fraction(0) if exact else 0.0
    for c in reversed(coeffs):
        acc = acc * t + (c if exact else float(c))
    return acc


# -- radius of convergence ---------------------------------------------------


CONVERGES = "converges"
DIVERGENCE_SUSPECTED = "divergence-suspected"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Tri-state heuristic verdict on convergence at a point.

    Never a proof: ``value`` is an extrapolation from partial sums over
    doubling prefixes, ``tail_bound`` the geometric tail estimate added to it.
    """

    kind: str
    point: float
    value: Optional[float] = None
    tail_bound: Optional[float] = None
    partial_sums: tuple = ()
    increment_ratios: tuple = ()
    heuristic: bool = True

    @property
    def converges(self) -> bool:
        return self.kind == CONVERGES


@dataclass(frozen=True)
class RadiusEstimate:
    """Estimates of the radius of convergence of a truncated series.

    ``root_test`` is 1 / max |a_n|^(1/n) over the trailing window,
    ``ratio_test`` the last coefficient ratio along the support stride, and
    ``fit`` the radius from a least-squares fit of
    log|a_n| ~ n*log(1/r) + k*log(n) + c over the same window.  ``radius`` is
    the value reported as r̂: the fit when available, else the root test.
    """

    root_test: float
    ratio_test: Optional[float]
    fit: Optional[float]
    window: tuple
    infinite: bool = False
    verdict: Optional[ConvergenceVerdict] = None

    @property
    def radius(self) -> float:
        if self.infinite:
            return math.inf
        return self.fit if self.fit is not None else self.root_test


MIN_TRUNCATION = 8
MIN_WINDOW = 4


def _log_abs(c: Fraction) -> float:
    return math.log(abs(c.numerator)) - math.log(c.denominator)


def radius_estimate(s: TruncatedSeriesQ, window_fraction: float = 0.25,
                    check_convergence: bool = True) -> RadiusEstimate:
    n = s.n
    if n < MIN_TRUNCATION:
        raise TooShort(f"radius estimation needs truncation >= {MIN_TRUNCATION}, got {n}")
    width = max(math.ceil(window_fraction * n), MIN_WINDOW)
    lo = max(n - width + 1, 1)
    window = (lo, n)
    usable = [i for i in range(lo, n + 1) if s.coeffs[i]]
    if s.polynomial or not usable:
        return RadiusEstimate(math.inf, None, None, window, infinite=True)

    logs = {i: _log_abs(s.coeffs[i]) for i in usable}
    root = 1.0 / max(math.exp(logs[i] / i) for i in usable)

    ratio = None
    if len(usable) >= 2:
        gaps = {b - a for a, b in zip(usable, usable[1:])}
        if len(gaps) == 1:
            step = gaps.pop()
            last, prev = usable[-1], usable[-2]
            ratio = math.exp((logs[prev] - logs[last]) / step)

    fit = None
    if len(usable) >= MIN_WINDOW:
        x = np.array([[i, math.log(i), 1.0] for i in usable])
        y = np.array([logs[i] for i in usable])
        slope = np.linalg.lstsq(x, y, rcond=None)[0][0]
        if np.isfinite(slope):
            fit = math.exp(-slope)

    est = RadiusEstimate(root, ratio, fit, window)
    if check_convergence:
        est = RadiusEstimate(root, ratio, fit, window, verdict=converges_at_radius(s, est.radius))
    return est


SHRINKING = 0.75
NOT_SHRINKING = 0.9


def converges_at_radius(s: TruncatedSeriesQ, r: float, min_prefix: int = 4) -> ConvergenceVerdict:
    """Heuristic convergence test of the series at ``r`` from its prefixes.

    Partial sums are taken at n, n/2, n/4, ... (down to ``min_prefix``).
    Increments between consecutive prefixes that shrink geometrically give
    CONVERGES with a geometric tail extrapolation; increments that do not
    shrink give DIVERGENCE_SUSPECTED; anything else is INCONCLUSIVE.
    """
    if r <= 0:
        raise ValueError("evaluation point must be positive")
    prefixes = []
    m = s.n
    while m >= min_prefix:
        prefixes.append(m)
        m //= 2
    prefixes.reverse()
    log_r = math.log(r)
    sums = []
    acc = 0.0
    j = 0
    for i, c in enumerate(s.coeffs):
        if c:
            term = math.exp(_log_abs(c) + i * log_r) if i else float(abs(c))
            acc += term if c > 0 else -term
        if j < len(prefixes) and i == prefixes[j]:
            sums.append((i, acc))
            j += 1
    if s.polynomial:
        return ConvergenceVerdict(CONVERGES, r, acc, 0.0, tuple(sums))
    increments = [b[1] - a[1] for a, b in zip(sums, sums[1:])]
    ratios = tuple(b / a if a else math.inf for a, b in zip(increments, increments[1:]))
    if not ratios:
        return ConvergenceVerdict(INCONCLUSIVE, r, partial_sums=tuple(sums))
    recent = ratios[-2:]
    if all(0 <= q <= SHRINKING for q in recent):
        q = recent[-1]
        tail = increments[-1] * q / (1 - q)
        return ConvergenceVerdict(CONVERGES, r, acc + tail, abs(tail), tuple(sums), ratios)
    if all(q >= NOT_SHRINKING for q in recent):
        return ConvergenceVerdict(DIVERGENCE_SUSPECTED, r, partial_sums=tuple(sums), increment_ratios=ratios)
    return ConvergenceVerdict(INCONCLUSIVE, r, partial_sums=tuple(sums), increment_ratios=ratios)


# -- Poincaré–Birkhoff–Witt --------------------------------------------------


def _times_pbw_factor(q: list, k: int, count: int) -> list:
    """Multiply q in place by (1 + t^k)^count (k odd) or (1 - t^k)^(-count) (k even)."""
    n = len(q) - 1
    if count == 0:
        return q
    # coefficient of t^(k*j) in the factor
    factor = [1]
    for j in range(1, n // k + 1):
        if k % 2:
            factor.append(math.comb(count, j))
        else:
            factor.append(math.comb(count + j - 1, j))
    out = [0] * (n + 1)
    for i, a in enumerate(q):
        if not a:
            continue
        for j, b in enumerate(factor):
            d = i + k * j
            if d > n:
                break
            out[d] += a * b
    return out


def pbw_expand(generators: Mapping[int, int], n: int) -> TruncatedSeriesQ:
    """Hilbert series of U(L) through degree n given generator counts l_k."""
    q = [1] + [0] * n
    for k in range(1, n + 1):
        q = _times_pbw_factor(q, k, generators.get(k, 0))
    return TruncatedSeriesQ(tuple(q))


def pbw_extract(u: TruncatedSeriesQ) -> GradedDims:
    """Generator counts l_k (k >= 1) whose PBW product matches ``u``.

    Odd-degree generators contribute exterior factors (1 + t^k), even-degree
    ones polynomial factors 1/(1 - t^k).  The result is TruncatedAt(u.n).
    """
    n = u.n
    if u.coeffs[0] != 1:
        raise NotRealizable("series must have constant term 1")
    target = []
    for i, c in enumerate(u.coeffs):
        if c.denominator != 1 or c < 0:
            raise NotRealizable(f"coefficient {c} at degree {i} is not a nonnegative integer")
        target.append(int(c))
    q = [1] + [0] * n
    counts = {}
    for k in range(1, n + 1):
        lk = target[k] - q[k]
        if lk < 0:
            raise NotRealizable(f"negative generator count {lk} in degree {k}")
        if lk:
            counts[k] = lk
            q = _times_pbw_factor(q, k, lk)
    return GradedDims.truncated_at(counts, n)


def geometric_inverse(p: PolynomialQ, n: int) -> TruncatedSeriesQ:
    """Series of 1 / p through degree n; p must have constant term 1."""
    if p.coefficient(0) != 1:
        raise ValueError("constant term must be 1")
    out = [Fraction(1)] + [Fraction(0)] * n
    for i in range(1, n + 1):
        out[i] = -sum(p.coefficient(j) * out[i - j] for j in range(1, min(i, p.degree) + 1))
    return TruncatedSeriesQ(tuple(out))


def series_from_terms(terms: Sequence[Number]) -> TruncatedSeriesQ:
    return TruncatedSeriesQ(tuple(Fraction(t) for t in terms))
