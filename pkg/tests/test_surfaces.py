import itertools
from fractions import Fraction
from math import factorial, lcm

import pytest
from hypothesis import given, settings, strategies as st

from quotgenera.closedforms import bl, g_series, ubar
from quotgenera.errors import InvalidSpec, NonrepresentableClass, UnsupportedGeometry
from quotgenera.exactalg import QRatFun, pade_reconstruct
from quotgenera.surfaces import (
    FiberClass,
    SurfaceSpec,
    Vanishing,
    assemble,
    fiber_representations,
    gbinom,
    sw_fiber,
    z_blowup,
    z_elliptic,
    z_gentype,
    z_punctual,
)

q = QRatFun.gen()
y = QRatFun.y()


def falling_binom(n, d):
    num = 1
    for i in range(d):
        num *= n - i
    return Fraction(num, factorial(d))


def brute_elliptic(n, c, chi, gC, mults):
    """Sum over N-tuples of (d, a) choices with total value c, term by term."""
    c = Fraction(c)
    e = 2 * gC - 2 + chi
    pieces = [(d, a) for d in range(int(c) + 1) for a in itertools.product(*(range(m) for m in mults))]
    total = Fraction(0)
    for tup in itertools.product(pieces, repeat=n):
        value = sum(d + sum(Fraction(x, m) for x, m in zip(a, mults)) for d, a in tup)
        if value == c:
            term = Fraction(1)
            for d, _ in tup:
                term *= (-1) ** d * falling_binom(e, d)
            total += term
    return total


def test_gbinom_negative_top():
    assert gbinom(-1, 2) == 1
    assert gbinom(-2, 3) == -4
    assert gbinom(0, 1) == 0
    assert gbinom(5, 7) == 0


def test_fiber_class_validation():
    assert FiberClass(1, (1,), (2,)).value == Fraction(3, 2)
    with pytest.raises(InvalidSpec):
        FiberClass(0, (2,), (2,))


def test_fiber_representations():
    reps = fiber_representations(Fraction(1), (2, 3))
    assert [(r.d, r.a) for r in reps] == [(1, (0, 0))]
    reps = fiber_representations(Fraction(3, 2), (2, 2))
    assert sorted((r.d, r.a) for r in reps) == [(1, (0, 1)), (1, (1, 0))]
    assert fiber_representations(Fraction(-1), (2,)) == []


def test_sw_fiber_examples():
    assert sw_fiber(0, 5, 3, (2, 3)) == 1
    assert sw_fiber(1, 2, 0) == 0
    assert sw_fiber(2, 1, 0) == 1


def test_sw_fiber_nonrepresentable():
    assert sw_fiber(Fraction(1, 3), 1, 0, (2,)) == 0
    with pytest.raises(NonrepresentableClass):
        sw_fiber(Fraction(1, 3), 1, 0, (2,), strict=True)


def test_z_elliptic_examples():
    assert z_elliptic(3, 0, 1, 0) == 1
    assert z_elliptic(2, 1, 1, 0) == 2
    assert z_elliptic(1, 1, 2, 0) == 0


@given(
    st.integers(1, 3),
    st.sampled_from([(), (2,), (3,), (2, 3), (6,), (2, 2)]),
    st.integers(0, 3),
    st.integers(-1, 3),
    st.integers(0, 2),
    st.data(),
)
@settings(max_examples=40, deadline=None)
def test_z_elliptic_matches_brute_force(n, mults, whole, chi, gC, data):
    L = lcm(*mults) if mults else 1
    c = Fraction(data.draw(st.integers(0, whole * L)), L)
    assert z_elliptic(n, c, chi, gC, mults) == brute_elliptic(n, c, chi, gC, mults)


@given(st.permutations([2, 3, 4]), st.integers(1, 2), st.integers(0, 4))
@settings(max_examples=20, deadline=None)
def test_z_elliptic_symmetric_in_mults(perm, n, k):
    c = Fraction(k, 2)
    assert z_elliptic(n, c, 1, 1, tuple(perm)) == z_elliptic(n, c, 1, 1, (2, 3, 4))


def test_z_elliptic_nonrepresentable_vanishes():
    assert z_elliptic(2, Fraction(1, 5), 1, 0, (2, 3)) == 0


def test_z_punctual_examples():
    assert z_punctual(3, 0) == 1
    assert z_punctual(1, -1) == (1 - (1 + y) * q) / ((1 - q) * (1 - y * q))
    assert z_punctual(2, 1) == ubar(2)


def test_z_gentype_examples():
    for chi in (1, 2):
        assert z_gentype(2, 2, 3, chi) == q ** (-6) * (-1) ** (chi * 2)
    assert z_gentype(1, 0, 2, 1) == ubar(1) ** 2
    assert z_gentype(1, 1, 1, 3) == -(q ** -1)
    assert z_gentype(3, 1, 1, 1) == -(q ** -1) * g_series(3, 1, 2)


def test_z_gentype_vanishing():
    v = z_gentype(1, 2, 1, 1)
    assert isinstance(v, Vanishing) and v == 0 and "ell=2" in v.reason
    with pytest.raises(InvalidSpec):
        z_gentype(1, 1, 0, 1)


def test_z_blowup_examples():
    z = ubar(2)
    assert z_blowup(z, 2, 2) == q**2 * z
    assert z_blowup(QRatFun.const(1), 2, 1) == q * ((1 - y**2) - (1 - y**4) * q) / ((1 - y) * (1 - q) * (1 - y**2 * q))
    assert isinstance(z_blowup(z, 2, 3), Vanishing)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k2", [-1, 0, 1])
def test_blowup_at_zero_lowers_k2(n, k2):
    assert z_blowup(z_punctual(n, k2), n, 0) == z_punctual(n, k2 - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_assemble_repeated_blowups(n, k):
    spec = SurfaceSpec("abstract", k2=1, chi=1, blowups=(0,) * k)
    assert assemble(spec, n).value == z_punctual(n, 1 - k)


def test_assemble_examples():
    assert assemble(SurfaceSpec("k3"), 2).value == 1
    out = assemble(SurfaceSpec("k3", blowups=(0,)), 2)
    assert out.value == ubar(2).inverse()
    assert len(out.trace) == 2
    gt = SurfaceSpec("general_type", k2=1, chi=3)
    assert assemble(gt, 1, {"type": "canonical", "ell": 1}).value == -(q ** -1)


def test_assemble_fiber_class_with_blowup():
    spec = SurfaceSpec("elliptic", chi=1, mults=(2,), blowups=(1,))
    out = assemble(spec, 2, {"type": "fiber", "c": "1/2"})
    assert out.value == z_elliptic(2, Fraction(1, 2), 1, 0, (2,)) * q * bl(2, 1)


def test_assemble_unsupported():
    with pytest.raises(UnsupportedGeometry):
        assemble(SurfaceSpec("abstract", k2=2), 1, {"type": "fiber", "c": "1"})
    with pytest.raises(UnsupportedGeometry):
        assemble(SurfaceSpec("elliptic", chi=1), 1, {"type": "other"})
    v = assemble(SurfaceSpec("general_type", k2=1, chi=1), 1, {"type": "other"}).value
    assert isinstance(v, Vanishing)


def test_spec_from_json():
    spec = SurfaceSpec.from_json({"kind": "elliptic", "chi": 1, "mults": [2, 3], "blowups": [{"ell": 1}]})
    assert spec.mults == (2, 3) and spec.blowups == (1,)
    with pytest.raises(InvalidSpec):
        SurfaceSpec.from_json({"kind": "elliptic", "chi": 1, "mults": [1]})
    with pytest.raises(InvalidSpec):
        SurfaceSpec("k3", k2=1)


@pytest.mark.parametrize("spec,cls", [
    (SurfaceSpec("abstract", k2=2, blowups=(0, 1)), None),
    (SurfaceSpec("general_type", k2=1, chi=1, blowups=(1,)), {"type": "canonical", "ell": 1}),
    (SurfaceSpec("k3", blowups=(2,)), None),
])
def test_assembled_outputs_are_rational(spec, cls):
    f = assemble(spec, 2, cls).value
    dn, dd = f.degrees()
    assert pade_reconstruct(f.series(f.qshift + dn + dd + 5), dn, dd).ratfun == f
    f.at_y(1)
