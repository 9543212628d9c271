"""Rational models of simply connected spaces.

A :class:`SpaceModel` records only degreewise ranks: rational homology and
rational homotopy.  The catalog constructors encode standard rational
homotopy data; each carries a provenance note naming where the ranks come
from.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InvalidDegree, NotHyperbolic, ShapeMismatch, TooShort, UnboundedSupport
from .graded import GradedDims, add_dims, convolve_dims
from .series import PolynomialQ, TruncatedSeriesQ, evaluate, geometric_inverse, pbw_extract

TRUNCATION_ENV = "HILALI_TRUNCATION"


def default_truncation() -> int:
    """Truncation degree for infinite-support catalog entries (env override)."""
    return int(os.environ.get(TRUNCATION_ENV, 24))


class EllipticityClass(enum.Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    UNDETERMINED_TRUNCATED = "undetermined-truncated"
    # maps only: a homology kernel or cokernel known to be infinite
    NEITHER = "neither"


@dataclass(frozen=True)
class SpaceModel:
    name: str
    homology: GradedDims
    homotopy: GradedDims
    notes: str = ""

    def __post_init__(self):
        if self.homology.rank(0) != 1:
            raise ShapeMismatch(f"{self.name}: H_0 must have rank 1 (path-connected)")
        if self.homology.knows(1) and self.homology.rank(1) != 0:
            raise ShapeMismatch(f"{self.name}: H_1 must vanish (simply connected)")
        if any(d < 2 for d in self.homotopy.dims):
            raise ShapeMismatch(f"{self.name}: no rational homotopy below degree 2")


def point() -> SpaceModel:
    return SpaceModel("point", GradedDims({0: 1}, 0), GradedDims({}, 0), "contractible")


def sphere(n: int) -> SpaceModel:
    if n < 2:
        raise InvalidDegree("spheres of dimension < 2 are not simply connected")
    homology = GradedDims({0: 1, n: 1}, n)
    if n % 2:
        return SpaceModel(f"S^{n}", homology, GradedDims({n: 1}, n), "minimal model (Λ(x), 0)")
    return SpaceModel(f"S^{n}", homology, GradedDims({n: 1, 2 * n - 1: 1}, 2 * n - 1),
                      "minimal model (Λ(x, y), dy = x^2)")


def complex_projective(n: int) -> SpaceModel:
    if n < 1:
        raise InvalidDegree("CP^n needs n >= 1")
    homology = GradedDims({2 * i: 1 for i in range(n + 1)}, 2 * n)
    homotopy = GradedDims({2: 1, 2 * n + 1: 1}, 2 * n + 1)
    return SpaceModel(f"CP^{n}", homology, homotopy, f"minimal model (Λ(x, y), dy = x^{n + 1})")


def eilenberg_maclane_q(n: int, truncation: int = None) -> SpaceModel:
    """K(Q, n); for even n the homology is polynomial, hence infinite."""
    if n < 2:
        raise InvalidDegree("K(Q, n) needs n >= 2 to be simply connected")
    homotopy = GradedDims({n: 1}, n)
    if n % 2:
        return SpaceModel(f"K(Q,{n})", GradedDims({0: 1, n: 1}, n), homotopy,
                          "exterior cohomology Λ(x); rationally S^n")
    d = default_truncation() if truncation is None else truncation
    homology = GradedDims.truncated_at({k: 1 for k in range(0, d + 1, n)}, d, infinite=True)
    return SpaceModel(f"K(Q,{n})", homology, homotopy,
                      f"polynomial cohomology Q[x], |x| = {n}; homology infinite, truncated at {d}")


def wedge_of_spheres(degrees: Sequence[int], truncation: int = None) -> SpaceModel:
    """Wedge of spheres; homotopy read off the loop-space tensor algebra by PBW.

    H_*(ΩX) = T(V) with one generator in degree n_j - 1 per sphere, so its
    Hilbert series is 1 / (1 - Σ t^(n_j - 1)); generator counts l_k of the
    homotopy Lie algebra give dim π_(k+1).
    """
    degrees = sorted(int(n) for n in degrees)
    if not degrees:
        return point()
    if degrees[0] < 2:
        raise InvalidDegree("wedge summands must be simply connected spheres")
    d = default_truncation() if truncation is None else truncation
    if d < degrees[-1]:
        raise TooShort(f"truncation {d} is below the top sphere dimension {degrees[-1]}")
    homology = {0: 1}
    for n in degrees:
        homology[n] = homology.get(n, 0) + 1
    loop = PolynomialQ({0: 1}) - PolynomialQ({n - 1: degrees.count(n) for n in set(degrees)})
    counts = pbw_extract(geometric_inverse(loop, d - 1))
    homotopy = GradedDims.truncated_at({k + 1: r for k, r in counts.dims.items()}, d,
                                       infinite=len(degrees) >= 2)
    name = "∨".join(f"S^{n}" for n in degrees)
    return SpaceModel(name, GradedDims(homology, degrees[-1]), homotopy,
                      f"PBW inversion of 1/(1 - Σ t^(n-1)) for loop homology, truncated at {d}")


def product(x: SpaceModel, y: SpaceModel) -> SpaceModel:
    """Cartesian product: Künneth convolution on homology, sum on homotopy."""
    if is_contractible(y):
        return x
    if is_contractible(x):
        return y
    notes = "; ".join(n for n in (x.notes, y.notes) if n)
    return SpaceModel(f"{x.name}×{y.name}", convolve_dims(x.homology, y.homology),
                      add_dims(x.homotopy, y.homotopy), notes)


def is_contractible(x: SpaceModel) -> bool:
    return (not x.homology.truncated and x.homology.dims == {0: 1}
            and not x.homotopy.truncated and not x.homotopy.dims)


def power(x: SpaceModel, n: int) -> SpaceModel:
    if n < 1:
        raise InvalidDegree("power needs n >= 1")
    result = x
    for _ in range(n - 1):
        result = product(result, x)
    return result


def _generating(dims: GradedDims) -> Union[PolynomialQ, TruncatedSeriesQ]:
    if dims.truncated:
        return TruncatedSeriesQ.from_dims(dims, dims.bound)
    return PolynomialQ.from_dims(dims)


def poincare_polynomial(x: SpaceModel) -> Union[PolynomialQ, TruncatedSeriesQ]:
    return _generating(x.homology)


def homotopy_poincare(x: SpaceModel) -> Union[PolynomialQ, TruncatedSeriesQ]:
    return _generating(x.homotopy)


def euler(x: SpaceModel) -> int:
    if x.homology.truncated:
        raise UnboundedSupport(f"{x.name}: homology is not FiniteUpTo")
    return int(evaluate(poincare_polynomial(x), -1))


def euler_pi(x: SpaceModel) -> int:
    if x.homotopy.truncated:
        raise UnboundedSupport(f"{x.name}: homotopy is not FiniteUpTo")
    return int(evaluate(homotopy_poincare(x), -1))


def classify(x: SpaceModel) -> EllipticityClass:
    if not x.homology.truncated and not x.homotopy.truncated:
        return EllipticityClass.ELLIPTIC
    if not x.homology.truncated and x.homotopy.infinite:
        return EllipticityClass.HYPERBOLIC
    return EllipticityClass.UNDETERMINED_TRUNCATED


def classification_note(x: SpaceModel) -> str:
    cls = classify(x)
    if cls is not EllipticityClass.UNDETERMINED_TRUNCATED:
        return ""
    if x.homology.infinite and not x.homotopy.truncated:
        return "finite homotopy rank but infinite homology: neither elliptic nor hyperbolic"
    if x.homology.infinite:
        return "infinite homology"
    return "truncated data without a finiteness declaration"


def hyperbolic_growth_probe(x: SpaceModel, start: int) -> float:
    """max over k in [start, D] of (Σ_{i<=k} dim π_i)^(1/k).

    Empirical stand-in for the constant C > 1 bounding the cumulative
    homotopy rank of a hyperbolic space from below by C^k.
    """
    if classify(x) is not EllipticityClass.HYPERBOLIC:
        raise NotHyperbolic(f"{x.name} is not declared hyperbolic")
    d = x.homotopy.bound
    if d < start:
        raise TooShort(f"homotopy known through {d}, probe starts at {start}")
    best = 0.0
    total = 0
    for k in range(d + 1):
        total += x.homotopy.dims.get(k, 0)
        if k >= max(start, 1) and total:
            best = max(best, math.exp(math.log(total) / k))
    return best
