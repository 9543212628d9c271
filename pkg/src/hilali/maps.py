"""Rational models of maps between simply connected spaces.

A :class:`MapModel` carries the induced maps on rational homology and on
rational homotopy as :class:`GradedLinearMap` values.  Products of maps use
the Künneth tensor product on homology and the direct sum on homotopy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidDegree, ShapeMismatch, UnboundedSupport
from .graded import (
    GradedDims,
    GradedLinearMap,
    RationalMatrix,
    cokernel_dims,
    direct_sum,
    kernel_dims,
    kunneth_tensor,
)
from .spaces import (
    EllipticityClass,
    SpaceModel,
    classify,
    default_truncation,
    eilenberg_maclane_q,
    point,
    product,
    sphere,
    wedge_of_spheres,
)


@dataclass(frozen=True)
class MapModel:
    name: str
    source: SpaceModel
    target: SpaceModel
    h: GradedLinearMap
    pi: GradedLinearMap
    notes: str = ""

    def __post_init__(self):
        if self.h.source != self.source.homology or self.h.target != self.target.homology:
            raise ShapeMismatch(f"{self.name}: homology map does not match the spaces' homology")
        if self.pi.source != self.source.homotopy or self.pi.target != self.target.homotopy:
            raise ShapeMismatch(f"{self.name}: homotopy map does not match the spaces' homotopy")
        if self.h.rank_at(0) != 1:
            raise ShapeMismatch(f"{self.name}: H_0 must map isomorphically")
        if any(d < 2 for d in self.pi.blocks):
            raise ShapeMismatch(f"{self.name}: no homotopy blocks below degree 2")


@dataclass(frozen=True)
class KernelProfile:
    h_kernel: GradedDims
    h_cokernel: GradedDims
    pi_kernel: GradedDims
    pi_cokernel: GradedDims


@dataclass(frozen=True)
class MapEllipticity:
    """Classification of a map with respect to kernel and to cokernel."""

    kernel: EllipticityClass
    cokernel: EllipticityClass

    @property
    def elliptic(self) -> bool:
        return self.kernel is EllipticityClass.ELLIPTIC and self.cokernel is EllipticityClass.ELLIPTIC

    @property
    def elliptic_wrt_kernel(self) -> bool:
        return self.kernel is EllipticityClass.ELLIPTIC

    @property
    def elliptic_wrt_cokernel(self) -> bool:
        return self.cokernel is EllipticityClass.ELLIPTIC


def constant_map(x: SpaceModel, y: Optional[SpaceModel] = None) -> MapModel:
    y = point() if y is None else y
    h = GradedLinearMap(x.homology, y.homology, {0: RationalMatrix.scalar(1)})
    pi = GradedLinearMap(x.homotopy, y.homotopy)
    return MapModel(f"const({x.name}→{y.name})", x, y, h, pi)


def _identity_blocks(dims: GradedDims) -> dict:
    return {d: RationalMatrix.identity(r) for d, r in dims.dims.items()}


def identity_map(x: SpaceModel) -> MapModel:
    h = GradedLinearMap(x.homology, x.homology, _identity_blocks(x.homology))
    pi = GradedLinearMap(x.homotopy, x.homotopy, _identity_blocks(x.homotopy))
    return MapModel(f"id({x.name})", x, x, h, pi)


def product_map(f: MapModel, g: MapModel, exact: bool = False) -> MapModel:
    """f × g.  ``exact`` demands FiniteUpTo homology on both sources."""
    if exact and (f.source.homology.truncated or g.source.homology.truncated):
        raise UnboundedSupport("product of maps needs finite source homology")
    finite = not any(d.truncated for d in (f.h.source, f.h.target, g.h.source, g.h.target))
    h = kunneth_tensor(f.h, g.h, exact=finite)
    pi = direct_sum(f.pi, g.pi)
    source = product(f.source, g.source)
    target = product(f.target, g.target)
    return MapModel(f"{f.name}×{g.name}", source, target, h, pi,
                    "; ".join(n for n in (f.notes, g.notes) if n))


def power_map(f: MapModel, n: int, exact: bool = False) -> MapModel:
    """f^n : X^n → Y^n, built by left-associated binary products."""
    if n < 1:
        raise InvalidDegree("power needs n >= 1")
    result = f
    for _ in range(n - 1):
        result = product_map(result, f, exact=exact)
    if n > 1:
        result = MapModel(f"({f.name})^{n}", result.source, result.target, result.h, result.pi,
                          result.notes)
    return result


def sphere_self_map(n: int, d: int) -> MapModel:
    """Degree-d self map of S^n.

    On an even sphere S^(2k) the class in π_(4k-1) is hit with factor d^2:
    in the minimal model (Λ(x, y), dy = x^2), x ↦ d·x forces y ↦ d^2·y.
    """
    s = sphere(n)
    h = GradedLinearMap(s.homology, s.homology, {0: RationalMatrix.scalar(1), n: RationalMatrix.scalar(d)})
    pi_blocks = {n: RationalMatrix.scalar(d)}
    if n % 2 == 0:
        pi_blocks[2 * n - 1] = RationalMatrix.scalar(d * d)
    pi = GradedLinearMap(s.homotopy, s.homotopy, pi_blocks)
    note = "π_(2n-1) factor d^2 from the minimal model" if n % 2 == 0 else ""
    return MapModel(f"deg{d}(S^{n})", s, s, h, pi, note)


def fundamental_class_map(n: int, truncation: Optional[int] = None) -> MapModel:
    """S^n → K(Q, n) classifying a generator of H^n(S^n; Q)."""
    s = sphere(n)
    k = eilenberg_maclane_q(n, truncation)
    h = GradedLinearMap(s.homology, k.homology, {0: RationalMatrix.scalar(1), n: RationalMatrix.scalar(1)})
    pi = GradedLinearMap(s.homotopy, k.homotopy, {n: RationalMatrix.scalar(1)})
    return MapModel(f"ι({s.name}→{k.name})", s, k, h, pi)


def referee_counterexample(truncation: Optional[int] = None) -> MapModel:
    """a × b : S^4 × S^6 → K(Q,4) × K(Q,6), a and b classifying generators.

    Homology is injective on every source class while π_7 and π_11 die.
    """
    d = default_truncation() if truncation is None else truncation
    if d < 10:
        raise InvalidDegree("truncation must reach the top source class in degree 10")
    f = product_map(fundamental_class_map(4, d), fundamental_class_map(6, d))
    return MapModel("referee: S^4×S^6→K(Q,4)×K(Q,6)", f.source, f.target, f.h, f.pi,
                    "target homology truncated; only the source classes' images are modeled")


def _check_odd_sphere_degree(n: int):
    if n < 3 or n % 2 == 0:
        raise InvalidDegree("odd sphere dimension >= 3 required")


def wedge_inclusion(n: int, truncation: Optional[int] = None) -> MapModel:
    """Canonical inclusion S^n ∨ S^n → S^n × S^n for odd n.

    The target has no homotopy above degree n, so the homotopy map vanishes
    there and its kernel is the whole of the wedge's higher homotopy.
    """
    _check_odd_sphere_degree(n)
    d = default_truncation() if truncation is None else truncation
    if d < 2 * n:
        raise InvalidDegree(f"truncation must be at least {2 * n}")
    wedge = wedge_of_spheres([n, n], d)
    target = product(sphere(n), sphere(n))
    # Künneth order in degree n of the target: 1⊗x₂ (j = 0) before x₁⊗1 (j = n)
    h = GradedLinearMap(wedge.homology, target.homology,
                        {0: RationalMatrix.scalar(1), n: RationalMatrix.from_rows([[0, 1], [1, 0]])})
    pi = GradedLinearMap(wedge.homotopy, target.homotopy, {n: RationalMatrix.identity(2)})
    return MapModel(f"incl({wedge.name}→{target.name})", wedge, target, h, pi)


def fold_map(n: int, truncation: Optional[int] = None) -> MapModel:
    """Fold map S^n ∨ S^n → S^n for odd n: both summands map by the identity."""
    _check_odd_sphere_degree(n)
    d = default_truncation() if truncation is None else truncation
    wedge = wedge_of_spheres([n, n], d)
    s = sphere(n)
    h = GradedLinearMap(wedge.homology, s.homology,
                        {0: RationalMatrix.scalar(1), n: RationalMatrix.from_rows([[1, 1]])})
    pi = GradedLinearMap(wedge.homotopy, s.homotopy, {n: RationalMatrix.from_rows([[1, 1]])})
    return MapModel(f"fold({wedge.name}→{s.name})", wedge, s, h, pi)


def kernel_profile(f: MapModel) -> KernelProfile:
    return KernelProfile(kernel_dims(f.h), cokernel_dims(f.h), kernel_dims(f.pi), cokernel_dims(f.pi))


def _side(hom: GradedDims, pi: GradedDims, near_homology: GradedDims, near_homotopy: GradedDims) -> EllipticityClass:
    # kernels (cokernels) of a map out of (into) finite data are finite whatever the windows show
    h_finite = not hom.truncated or not near_homology.truncated
    pi_finite = not pi.truncated or not near_homotopy.truncated
    if h_finite and pi_finite:
        return EllipticityClass.ELLIPTIC
    if h_finite and pi.infinite:
        return EllipticityClass.HYPERBOLIC
    if hom.infinite:
        return EllipticityClass.NEITHER
    return EllipticityClass.UNDETERMINED_TRUNCATED


def ellipticity_of_map(f: MapModel, profile: Optional[KernelProfile] = None) -> MapEllipticity:
    """Classify f with respect to kernel and cokernel.

    Kernels are bounded by the source and cokernels by the target, so an
    elliptic source forces ellipticity with respect to kernel, and an
    elliptic target ellipticity with respect to cokernel.
    """
    p = kernel_profile(f) if profile is None else profile
    kernel = _side(p.h_kernel, p.pi_kernel, f.source.homology, f.source.homotopy)
    cokernel = _side(p.h_cokernel, p.pi_cokernel, f.target.homology, f.target.homotopy)
    if classify(f.source) is EllipticityClass.ELLIPTIC:
        kernel = EllipticityClass.ELLIPTIC
    if classify(f.target) is EllipticityClass.ELLIPTIC:
        cokernel = EllipticityClass.ELLIPTIC
    return MapEllipticity(kernel, cokernel)


def catalog_maps(truncation: Optional[int] = None) -> dict:
    """Named maps used across checks and tests."""
    from .spaces import complex_projective

    d = default_truncation() if truncation is None else truncation
    maps = {}
    for n in (2, 3, 4, 5, 6):
        maps[f"constant:sphere:{n}"] = constant_map(sphere(n))
        maps[f"identity:sphere:{n}"] = identity_map(sphere(n))
        for deg in (0, 2):
            maps[f"degree:{n}:{deg}"] = sphere_self_map(n, deg)
    for n in (1, 2, 3):
        maps[f"constant:cp:{n}"] = constant_map(complex_projective(n))
    maps["constant:product:sphere:2*sphere:3"] = constant_map(product(sphere(2), sphere(3)))
    maps["constant:product:sphere:4*sphere:6"] = constant_map(product(sphere(4), sphere(6)))
    maps["product:constant:sphere:2*identity:sphere:3"] = product_map(constant_map(sphere(2)),
                                                                     identity_map(sphere(3)))
    maps["counterexample:referee"] = referee_counterexample(d)
    maps["wedge-inclusion:3"] = wedge_inclusion(3, d)
    maps["fold:3"] = fold_map(3, d)
    return maps
