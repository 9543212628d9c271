import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilali.errors import DegreeOutOfWindow, NotRealizable, TooShort
from hilali.graded import GradedDims
from hilali.series import (
    CONVERGES,
    DIVERGENCE_SUSPECTED,
    PolynomialQ,
    TruncatedSeriesQ,
    converges_at_radius,
    evaluate,
    geometric_inverse,
    pbw_expand,
    pbw_extract,
    radius_estimate,
    series_from_terms,
)

coeff_maps = st.dictionaries(st.integers(0, 8), st.fractions(min_value=-5, max_value=5, max_denominator=6),
                             max_size=5)


@given(coeff_maps, coeff_maps, st.fractions(min_value=-3, max_value=3, max_denominator=4))
@settings(max_examples=100, deadline=None)
def test_polynomial_ring_laws_under_evaluation(a, b, t):
    p, q = PolynomialQ(a), PolynomialQ(b)
    assert (p * q)(t) == p(t) * q(t)
    assert (p + q)(t) == p(t) + q(t)
    assert (p - p) == 0


def test_polynomial_printing_and_degree():
    p = PolynomialQ({0: 1, 2: 1})
    assert str(p) == "1 + t^2"
    assert str(PolynomialQ({})) == "0"
    assert p.degree == 2 and PolynomialQ({}).degree < 0
    assert (p ** 3).coefficient(4) == 3


def test_evaluate_exact_and_float():
    p = PolynomialQ({0: 1, 4: 1})
    assert evaluate(p, -1) == 2
    assert evaluate(p, Fraction(1, 2)) == Fraction(17, 16)
    assert evaluate(p, 0.5) == pytest.approx(1.0625)


def test_truncated_series_bounds():
    s = TruncatedSeriesQ.from_mapping({1: 2, 3: 1}, 5)
    assert s.coefficient(3) == 1
    with pytest.raises(DegreeOutOfWindow):
        s.coefficient(6)
    with pytest.raises(DegreeOutOfWindow):
        TruncatedSeriesQ.from_dims(GradedDims.truncated_at({}, 4), 6)
    poly = TruncatedSeriesQ.from_dims(GradedDims.finite({0: 1, 2: 1}), 6)
    assert poly.polynomial and poly.coefficient(40) == 0
    assert "O(t^6)" in str(s)


def test_series_product_truncates():
    a = series_from_terms([1, 1, 1])
    b = series_from_terms([1, -1, 0, 0])
    assert (a * b).coeffs == (1, 0, 0)


def test_geometric_inverse():
    inv = geometric_inverse(PolynomialQ({0: 1, 1: -2}), 6)
    assert inv.coeffs == tuple(2 ** i for i in range(7))


@given(st.dictionaries(st.integers(1, 9), st.integers(0, 3), max_size=4))
@settings(max_examples=100, deadline=None)
def test_pbw_roundtrip(gens):
    u = pbw_expand(gens, 10)
    extracted = pbw_extract(u)
    assert extracted.dims == {k: v for k, v in gens.items() if v}
    assert pbw_expand(extracted.dims, 10) == u


def test_pbw_rejects_unrealizable():
    with pytest.raises(NotRealizable):
        pbw_extract(series_from_terms([1, Fraction(1, 2)]))
    with pytest.raises(NotRealizable):
        pbw_extract(series_from_terms([2, 1]))
    # two odd generators in degree 1 force t^2 coefficient 1, so 0 needs l_2 = -1
    with pytest.raises(NotRealizable):
        pbw_extract(series_from_terms([1, 2, 0]))


def test_pbw_single_odd_and_even_generator():
    assert pbw_expand({1: 1}, 4).coeffs == (1, 1, 0, 0, 0)
    assert pbw_expand({2: 1}, 4).coeffs == (1, 0, 1, 0, 1)


def test_radius_too_short():
    with pytest.raises(TooShort):
        radius_estimate(series_from_terms([1] * 5))


def test_radius_of_polynomial_is_infinite():
    est = radius_estimate(TruncatedSeriesQ.from_polynomial(PolynomialQ({0: 1, 3: 2}), 20))
    assert est.infinite and est.radius == math.inf


@pytest.mark.parametrize("d", [2, 3, 5])
def test_radius_geometric(d):
    est = radius_estimate(series_from_terms([d ** k for k in range(41)]))
    assert est.radius == pytest.approx(1 / d, rel=1e-9)
    assert est.ratio_test == pytest.approx(1 / d, rel=1e-9)


def test_root_test_window_monotone():
    # coefficients k*2^k: the root-test estimate approaches 1/2 from below as the window moves out
    prev = 0.0
    for n in (16, 32, 64):
        est = radius_estimate(series_from_terms([k * 2 ** k for k in range(n + 1)]), check_convergence=False)
        assert prev <= est.root_test <= 0.5
        prev = est.root_test


def test_convergence_verdicts():
    basel = series_from_terms([0] + [Fraction(1, k * k) for k in range(1, 2001)])
    v = converges_at_radius(basel, 1.0)
    assert v.kind == CONVERGES and v.heuristic
    assert v.value == pytest.approx(math.pi ** 2 / 6, abs=1e-3)
    assert converges_at_radius(series_from_terms([1] * 200), 1.0).kind == DIVERGENCE_SUSPECTED
    harmonic = series_from_terms([0] + [Fraction(1, k) for k in range(1, 500)])
    assert converges_at_radius(harmonic, 1.0).kind == DIVERGENCE_SUSPECTED
