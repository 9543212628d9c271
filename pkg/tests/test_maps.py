import pytest

from hilali.errors import ShapeMismatch, UnboundedSupport
from hilali.graded import GradedLinearMap, RationalMatrix
from hilali.maps import (
    MapModel,
    catalog_maps,
    constant_map,
    ellipticity_of_map,
    fold_map,
    identity_map,
    kernel_profile,
    power_map,
    product_map,
    referee_counterexample,
    sphere_self_map,
    wedge_inclusion,
)
from hilali.spaces import EllipticityClass, sphere


def test_constant_map_kernels_are_source():
    f = constant_map(sphere(2))
    p = kernel_profile(f)
    assert p.h_kernel.dims == {2: 1}
    assert p.pi_kernel.dims == {2: 1, 3: 1}
    assert ellipticity_of_map(f).elliptic


def test_identity_has_no_kernel():
    p = kernel_profile(identity_map(sphere(4)))
    assert not any(d.dims for d in (p.h_kernel, p.h_cokernel, p.pi_kernel, p.pi_cokernel))


def test_degree_map_on_even_sphere():
    f = sphere_self_map(4, 3)
    assert f.pi.block(7).to_rows() == [[9]]
    assert kernel_profile(sphere_self_map(4, 0)).pi_kernel.dims == {4: 1, 7: 1}


def test_map_validation():
    s = sphere(2)
    with pytest.raises(ShapeMismatch):
        MapModel("bad", s, s, GradedLinearMap(s.homology, s.homology), GradedLinearMap(s.homotopy, s.homotopy))


def test_referee_profile():
    f = referee_counterexample(16)
    p = kernel_profile(f)
    assert p.h_kernel.dims == {} and not p.h_kernel.truncated
    assert p.pi_kernel.dims == {7: 1, 11: 1}
    ell = ellipticity_of_map(f)
    assert ell.elliptic_wrt_kernel and not ell.elliptic_wrt_cokernel
    assert ell.cokernel is EllipticityClass.NEITHER


def test_wedge_inclusion_profile():
    g = wedge_inclusion(3, 10)
    p = kernel_profile(g)
    assert p.h_kernel.dims == {}
    assert p.pi_kernel.dims == {5: 1, 7: 2, 9: 3}
    assert ellipticity_of_map(g).kernel is EllipticityClass.HYPERBOLIC


def test_fold_map_kills_one_class():
    p = kernel_profile(fold_map(3, 12))
    assert p.h_kernel.dims == {3: 1}
    assert p.pi_kernel.dims[3] == 1


def test_product_and_power():
    f = constant_map(sphere(2))
    g = identity_map(sphere(3))
    fg = product_map(f, g)
    assert kernel_profile(fg).h_kernel.dims == {2: 1, 5: 1}
    f3 = power_map(f, 3)
    assert kernel_profile(f3).h_kernel.dims == {2: 3, 4: 3, 6: 1}
    assert f3.name == "(const(S^2→point))^3"


def test_exact_product_needs_finite_source_homology():
    k = referee_counterexample(12).target
    h = GradedLinearMap(k.homology, k.homology, {0: RationalMatrix.scalar(1)})
    f = MapModel("const-like", k, k, h, GradedLinearMap(k.homotopy, k.homotopy))
    with pytest.raises(UnboundedSupport):
        product_map(f, constant_map(sphere(2)), exact=True)


def test_catalog_builds():
    maps = catalog_maps(12)
    assert "counterexample:referee" in maps and "wedge-inclusion:3" in maps
