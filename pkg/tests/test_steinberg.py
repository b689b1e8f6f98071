from fractions import Fraction

import pytest

from conftest import prism
from coxgrowth.catalog import FiniteTypeLabel, label_matrix
from coxgrowth.coxeter import INF, ContractibleEdgeSpec, CoxeterMatrix, GrowthType, polygon_matrix
from coxgrowth.errors import InputError
from coxgrowth.oracle import oracle_coefficients
from coxgrowth.poly import IntPolynomial, RationalFunction, bracket_poly
from coxgrowth.steinberg import (
    coefficients,
    edge_rate_sweep,
    eval_F,
    growth_rate,
    growth_series,
    normal_convergence_sweep,
    rate_convergence_sweep,
    rate_difference,
    ratio_estimate,
    steinberg_F,
    sweep_csv,
)

z = IntPolynomial.z()


def test_infinite_dihedral_series():
    s = growth_series(CoxeterMatrix.dihedral(INF))
    assert not s.finite
    assert s.rational == RationalFunction(1 + z, 1 - z)
    assert str(s) == "(1 + z)/(1 - z)"


def test_free_product_of_three_involutions():
    # f = (1 + z) / (1 - 2z): one element of length 0, then 3 * 2^(m-1)
    F = steinberg_F(polygon_matrix((INF, INF, INF)))
    assert F == RationalFunction(1 - 2 * z, 1 + z)
    assert coefficients(polygon_matrix((INF, INF, INF)), 5) == [1, 3, 6, 12, 24, 48]


def test_finite_series_is_the_solomon_polynomial():
    s = growth_series(label_matrix(FiniteTypeLabel("A", 3)))
    assert s.finite and s.polynomial == bracket_poly([2, 3, 4])
    with pytest.raises(InputError):
        steinberg_F(label_matrix(FiniteTypeLabel("A", 3)))


def test_triangle_237_series():
    f = growth_series(polygon_matrix((2, 3, 7))).rational
    assert f.denominator == IntPolynomial([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    assert coefficients(polygon_matrix((2, 3, 7)), 6) == oracle_coefficients(polygon_matrix((2, 3, 7)), 6)


@pytest.mark.parametrize(
    "M",
    [
        polygon_matrix((2, 4, INF)),
        polygon_matrix((3, 3, 3, 3)),
        CoxeterMatrix.from_pairs(4, {(0, 1): 3, (1, 2): 4, (2, 3): INF}),
        CoxeterMatrix.from_pairs(4, {(0, 1): 3, (1, 2): 3, (2, 3): 3, (0, 3): 3}),
    ],
)
def test_series_matches_oracle_on_more_matrices(M):
    assert coefficients(M, 7) == oracle_coefficients(M, 7)


@pytest.mark.parametrize(
    "n, pairs",
    [
        (2, {(0, 1): INF}),
        (3, {(0, 1): 3, (1, 2): 3, (0, 2): 3}),
        (3, {(0, 1): 4, (1, 2): 4}),
        (3, {(0, 1): 3, (1, 2): 6}),
        (4, {(0, 1): 3, (1, 2): 3, (2, 3): 3, (0, 3): 3}),
        (4, {(0, 1): 4, (1, 2): 3, (2, 3): 4}),
        (4, {(0, 2): 3, (1, 2): 3, (2, 3): 4}),
        (4, {(0, 1): INF, (2, 3): INF}),
        (4, {(0, 1): INF, (2, 3): 3, (3, 1): 2}),
    ],
)
def test_affine_systems_have_rate_exactly_one(n, pairs):
    res = growth_rate(CoxeterMatrix.from_pairs(n, pairs))
    assert res.growth_type is GrowthType.AFFINE
    assert res.exactly_one and res.rate == 1


def test_elliptic_rate_is_one():
    res = growth_rate(polygon_matrix((2, 3, 5)))
    assert res.growth_type is GrowthType.ELLIPTIC and res.exactly_one


@pytest.mark.parametrize(
    "angles, approx",
    [((2, 3, INF), 1.324717957), ((INF, INF, INF), 2.0), ((2, 4, 5), 1.280638156), ((3, 3, 4), 1.401268368)],
)
def test_rates_against_coefficient_ratios(angles, approx):
    M = polygon_matrix(angles)
    res = growth_rate(M)
    assert abs(res.rate - approx) < 1e-9
    assert abs(ratio_estimate(M, 60) - res.rate) < 1e-3


def test_plastic_number_is_the_limit_rate():
    # the real root of x^3 = x + 1
    w = growth_rate(polygon_matrix((2, 3, INF))).rate
    assert abs(w**3 - w - 1) < 1e-11


def test_rate_difference_orders_close_rates():
    a = growth_rate(polygon_matrix((2, 3, 100)))
    b = growth_rate(polygon_matrix((2, 3, INF)))
    lo, hi = rate_difference(a, b)
    assert 0 < lo <= hi
    lo2, hi2 = rate_difference(b, a)
    assert hi2 < 0
    assert rate_difference(b, b)[0] <= 0 <= rate_difference(b, b)[1]


def test_eval_F_inside_the_disk():
    assert eval_F(CoxeterMatrix.dihedral(INF), 0.5) == pytest.approx((1 - 0.5) / (1 + 0.5))
    # elliptic systems evaluate 1/f
    assert eval_F(CoxeterMatrix.dihedral(3), 0.5) == pytest.approx(1 / ((1 + 0.5) * (1 + 0.5 + 0.25)))
    with pytest.raises(InputError):
        eval_F(CoxeterMatrix.dihedral(INF), 1.0)


def test_normal_sweep_rank_two():
    sups = [r.sup_dev for r in normal_convergence_sweep(CoxeterMatrix.dihedral(INF), 0.9, (6, 12, 24))]
    assert sups[0] > sups[1] > sups[2]


def test_normal_sweep_preconditions():
    with pytest.raises(InputError):
        normal_convergence_sweep(polygon_matrix((2, 3, 7)))
    with pytest.raises(InputError):
        normal_convergence_sweep(polygon_matrix((2, 3, INF)), rho=1.0)
    with pytest.raises(InputError):
        normal_convergence_sweep(polygon_matrix((2, 3, INF)), l_list=(5, 12))


def test_rate_sweep_csv():
    rows = rate_convergence_sweep(polygon_matrix((2, 3, INF)), (7, 10))
    text = sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "l,rate_low,rate_high,rate_decimal"
    assert lines[1].startswith("7,") and lines[1].endswith(",1.176280818")
    assert lines[-1].startswith("inf,")
    low, high = (Fraction(x) for x in lines[1].split(",")[1:3])
    assert low < high


def test_edge_family_rates_increase_to_the_contracted_limit():
    spec = ContractibleEdgeSpec((2, 3), (2, 2, 4, 2, 2))
    rows = edge_rate_sweep(prism(), spec, (4, 5, 6, 8, 12, 24))
    rates = [r.rate for r in rows]
    for a, b in zip(rates, rates[1:]):
        assert rate_difference(a, b)[0] > 0
    assert rows[-1].l is INF
    assert abs(rates[-2].rate - rates[-1].rate) < abs(rates[0].rate - rates[-1].rate) / 10
