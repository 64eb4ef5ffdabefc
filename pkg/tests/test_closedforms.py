import pytest
import sympy as sp

from quotgenera import closedforms
from quotgenera.closedforms import (
    aj_power_sum,
    aj_term,
    bl,
    bl_corank_one,
    functional_equation_check,
    g_series,
    pn,
    pn_coefficients,
    roots,
    ubar,
)
from quotgenera.errors import InvalidSpec
from quotgenera.exactalg import QRatFun, root_field

q = QRatFun.gen()
y = QRatFun.y()

_T, _Q, _Y = sp.symbols("t q y")


def pn_by_resultant(n: int) -> QRatFun:
    """P_N via Res_t(t^N - q, (1-(1+y)t)^N - (-y)^N q^2) / ((1-q)(1-y^N q)).

    For fixed i, prod_j (a + b t_j) = a^N - (-b)^N q over the roots of t^N = q;
    dividing out j = i leaves (1 - t_i)(1 - y t_i), whose product is (1-q)(1-y^N q).
    """
    g = (1 - (1 + _Y) * _T) ** n - (-_Y) ** n * _Q**2
    r = sp.cancel(sp.resultant(_T**n - _Q, g, _T) / ((1 - _Q) * (1 - _Y**n * _Q)))
    poly = sp.Poly(sp.expand(r), _Q, _Y)
    out = QRatFun.const(0)
    for (a, b), c in poly.terms():
        out = out + int(c) * q**a * y**b
    return out


def test_pn_one():
    assert pn(1) == 1


def test_pn_two_table():
    assert pn(2) == 1 - (1 + 4 * y + y**2) * q + y**2 * q**2


def test_pn_three_table():
    expected = (1 - (2 + 9 * y + 9 * y**2 + 2 * y**3) * q
                + (1 + 9 * y + 36 * y**2 + 58 * y**3 + 36 * y**4 + 9 * y**5 + y**6) * q**2
                - (2 + 9 * y + 9 * y**2 + 2 * y**3) * y**3 * q**3
                + y**6 * q**4)
    assert pn(3) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_pn_matches_resultant(n):
    assert pn(n) == pn_by_resultant(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_functional_equation(n):
    assert functional_equation_check(n)


def test_functional_equation_detects_perturbation():
    assert not functional_equation_check(2, pn(2) + q)


def test_pn_coefficients_are_polynomials():
    coeffs = pn_coefficients(3)
    assert len(coeffs) == 5
    assert all(c.is_polynomial() for c in coeffs)


def test_roots_satisfy_defining_polynomial():
    # prod_i (X - t_i) = X^3 - q at X = 2
    F = root_field(3)
    acc = F.const(1)
    for t in roots(3):
        acc = acc * (2 - t)
    assert acc.descend() == 8 - q


def test_ubar_one():
    assert ubar(1) == (1 - q) * (1 - y * q) / (1 - (1 + y) * q)


def test_ubar_one_euler():
    assert ubar(1).at_y(1) == (1 - q) ** 2 / (1 - 2 * q)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ubar_constant_term(n):
    assert ubar(n).series(0).coefficient(0) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ubar_euler_denominator(n):
    f = ubar(n).at_y(1)
    # the remaining denominator divides (1 - 2^N q)^N
    assert (f * (1 - 2**n * q) ** n).is_polynomial()


def test_aj_empty_subset():
    for e in (-2, 0, 1, 3):
        assert aj_power_sum(3, 0, e) == 1


def test_aj_single_root_by_substitution():
    # N = 1: t_1 = q, so A_{1} = q (1-(1+y)q) / (q (1-q)(1-yq))
    direct = q * (1 - (1 + y) * q) / (q * (1 - q) * (1 - y * q))
    assert aj_power_sum(1, 1, 1) == direct


@pytest.mark.parametrize("n", [1, 2, 3])
def test_aj_full_set_inverts_ubar(n):
    assert aj_power_sum(n, n, 1) * ubar(n) == 1


def test_aj_negative_exponent_is_inverse():
    a = aj_term(2, (0,), 1)
    b = aj_term(2, (0,), -1)
    assert (a * b).descend() == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bl_top(n):
    assert bl(n, n) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bl_corank_one(n):
    expected = ((1 - y**n) - (1 - y ** (2 * n)) * q) / ((1 - y) * (1 - q) * (1 - y**n * q))
    assert bl(n, n - 1) == expected
    assert bl_corank_one(n) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bl_zero_is_inverse_ubar(n):
    assert bl(n, 0) == ubar(n).inverse()


def test_bl_middle_denominator_is_reported():
    # no product-of-(1 - y^k q) shape: P_3 itself shows up
    f = bl(3, 1)
    assert (f * (1 - q) * (1 - y**3 * q) * pn(3)).is_polynomial()


def test_g_series_examples():
    assert g_series(2, 2, 3) == 1
    assert g_series(1, 0, 1) == 1
    assert g_series(1, 0, 2) == (1 - q) * (1 - y * q) / (1 - (1 + y) * q)


def test_g_series_genus_one_counts_subsets():
    assert g_series(3, 1, 1) == 3


def test_range_checks():
    with pytest.raises(InvalidSpec):
        bl(2, 3)
    with pytest.raises(InvalidSpec):
        g_series(2, 1, 0)
    with pytest.raises(InvalidSpec):
        pn(0)


def test_descent_of_all_subset_sums():
    for n in (2, 3):
        for s in range(n + 1):
            for e in (-1, 1, 2):
                assert isinstance(aj_power_sum(n, s, e), QRatFun)


def test_module_pn_is_patchable(monkeypatch):
    monkeypatch.setattr(closedforms, "pn", lambda n: q)
    assert not functional_equation_check(2)
