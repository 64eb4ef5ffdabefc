from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quotgenera.closedforms import bl, bl_corank_one, ubar
from quotgenera.errors import InvalidSpec, PoleAtOne
from quotgenera.exactalg import QRatFun, RatFunc, Y, YZ, wcoeff_limit
from quotgenera.localization import (
    Affine,
    IntegrandSpec,
    WeightVector,
    build_integrand,
    closed_form_series,
    compare_series,
    equivariant_coefficients,
    gentype,
    oracle_series,
    punctual,
    weight_independence_check,
    xclass,
)

yz = RatFunc.gen(YZ, "y")
z = RatFunc.gen(YZ, "z")
y = RatFunc.gen(Y, "y")
q = QRatFun.gen()
Yq = QRatFun.y()


def _naive_xclass(deg):
    """(1 - y + y x - y x^2/2 + ...)(1 + x/2 + x^2/12) multiplied out by hand to x^2."""
    assert deg == 2
    return [1 - yz, (1 + yz) / 2, (1 - yz) / 12]


def test_xclass_at_zero():
    p = xclass(Affine((0,)), (3,))
    assert p.terms == {(0,): 1 - yz}


def test_xclass_second_order():
    p = xclass(Affine((1,)), (2,))
    assert [p.extract((k,)) for k in range(3)] == _naive_xclass(2)


def test_xclass_shifted_constant_term():
    p = xclass(Affine((-1,), 1), (2,))
    assert p.extract((0,)) == (1 - yz * z) / (1 - z)


def test_xclass_shifted_inverse():
    a = Affine((1, -1), 3)
    p = xclass(a, (2, 2)) * xclass(a, (2, 2), invert=True)
    assert p.terms == {(0, 0): 1}


def test_xclass_rejects_malformed_argument():
    with pytest.raises(InvalidSpec):
        xclass(Affine((1, 1)), (2, 2))
    with pytest.raises(InvalidSpec):
        xclass(Affine((1,)), (2, 2))


def test_integrand_punctual_constant():
    p = build_integrand(IntegrandSpec(1, (0,)))
    assert p.terms == {(0,): 1}


def test_integrand_punctual_second_coefficient():
    p = build_integrand(IntegrandSpec(1, (2,)))
    assert p.extract((2,)) * (1 - yz) == -yz * (1 - yz)


def test_integrand_gentype_empty_J():
    p = build_integrand(IntegrandSpec(1, (), "gentype", {0}))
    assert p.terms == {(): 1}


def test_integrand_two_summands_constant():
    # the pair factors cancel the unit constants at h = 0
    p = build_integrand(IntegrandSpec(2, (0, 0)), WeightVector((0, 1)))
    assert p.terms == {(0, 0): 1}


def test_integrand_spec_validation():
    with pytest.raises(InvalidSpec):
        IntegrandSpec(2, (1,))
    with pytest.raises(InvalidSpec):
        IntegrandSpec(1, (1,), "punctual", {0})
    with pytest.raises(InvalidSpec):
        WeightVector((1, 1))


def test_oracle_punctual_one():
    s = oracle_series(punctual(1), 2)
    assert [s.coefficient(k) for k in range(3)] == [1, 0, -y]


@pytest.mark.parametrize("T", [0, 2, 4])
def test_oracle_gentype_ell_n(T):
    s = oracle_series(gentype(2, 2), T)
    assert s.coefficients() == {0: 1}


def test_oracle_gentype_two_one():
    expected = ((1 - Yq**2) - (1 - Yq**4) * q) / ((1 - Yq) * (1 - q) * (1 - Yq**2 * q))
    assert oracle_series(gentype(2, 1), 2) == expected.series(2)


@pytest.mark.parametrize("n,T", [(1, 6), (2, 5), (3, 4)])
def test_oracle_equals_inverse_ubar(n, T):
    assert oracle_series(punctual(n), T) == ubar(n).inverse().series(T)


@pytest.mark.parametrize("n", [1, 2])
def test_oracle_equals_blowup(n):
    for ell in range(n + 1):
        assert oracle_series(gentype(n, ell), 3) == bl(n, ell).series(3)


def test_weight_independence_examples():
    assert weight_independence_check(punctual(2), 3, WeightVector((0, 1)), WeightVector((1, 5)))
    assert weight_independence_check(punctual(1), 3, WeightVector((0,)), WeightVector((7,)))
    assert weight_independence_check(gentype(2, 1), 2, WeightVector((0, 1)), WeightVector((2, 9)))


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2, unique=True))
@settings(max_examples=8, deadline=None)
def test_weight_independence_random(weights):
    w = WeightVector(tuple(weights))
    assert oracle_series(punctual(2), 3, w) == oracle_series(punctual(2), 3)


@pytest.mark.parametrize("w", [(0, 1, 3), (0, 2, 5)])
def test_regularity_three_summands(w):
    coeffs = equivariant_coefficients(punctual(3), 5, WeightVector(w))
    for c in coeffs:
        wcoeff_limit(c)


def test_single_partition_may_have_pole():
    fam = gentype(2, 1)
    for J in fam.partitions():
        with pytest.raises(PoleAtOne):
            [wcoeff_limit(c) for c in equivariant_coefficients(fam, 2, None, [J])]
    # the sum over partitions is regular
    oracle_series(fam, 2)


def test_euler_specialization_of_oracle():
    s = oracle_series(punctual(2), 4)
    at_one = {k: c.subs({"y": 1}).to_fraction() for k, c in s.items()}
    closed = ubar(2).inverse().at_y(1).series(4)
    assert at_one == {k: c.to_fraction() if isinstance(c, RatFunc) else Fraction(c) for k, c in closed.items()}


def test_compare_reports_first_mismatch():
    a = closed_form_series(punctual(1), 3)
    b = (1 / (1 - q)).series(3)
    cmp = compare_series(a, b)
    assert not cmp and cmp.first_mismatch == 1
    assert cmp.diff()[0][0] == 1


def test_closed_form_series_gentype_corank_one():
    assert closed_form_series(gentype(3, 2), 3) == bl_corank_one(3).series(3)
