"""Theta and discriminant expansions and the primitive-class K3 series.

Series in q are stored as ``q**offset * prefactor * unit`` where the offset
is a rational number, the prefactor a ratio of Laurent polynomials in
(t, u) with u = sqrt(y), and the unit a truncated power series with
constant term 1.  Fractional exponents (q^(1/8), y^(1/4), t^(1/2)) only
ever appear in offsets and prefactors, and are checked to cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import FractionalPowerResidue, InvalidSpec, OddHalfPower, PadeMismatch
from .exactalg import QRatFun, QSeries, RatFunc, U, UT, Y, YT, pade_reconstruct
from .exactalg.laurent import LaurentPoly

NAMES = ("t", "u")


def lp(terms) -> LaurentPoly:
    return LaurentPoly(NAMES, terms)


def mono(et, eu, c=1) -> LaurentPoly:
    return LaurentPoly.monomial(NAMES, (et, eu), c)


ONE = mono(0, 0)


# truncated unit series: lists of LaurentPoly, index = power of q

def _series_mul(a: Sequence[LaurentPoly], b: Sequence[LaurentPoly], G: int) -> list[LaurentPoly]:
    out = [lp({}) for _ in range(G + 1)]
    for i, x in enumerate(a[: G + 1]):
        if x.is_zero():
            continue
        for j, z in enumerate(b[: G + 1 - i]):
            if not z.is_zero():
                out[i + j] = out[i + j] + x * z
    return out


def _series_inv(a: Sequence[LaurentPoly], G: int) -> list[LaurentPoly]:
    if a[0] != ONE:
        raise ValueError("unit series must start with 1")
    out = [ONE]
    for k in range(1, G + 1):
        acc = lp({})
        for i in range(1, k + 1):
            if i < len(a) and not a[i].is_zero():
                acc = acc + a[i] * out[k - i]
        out.append(-acc)
    return out


def _one_minus(n: int, x: LaurentPoly, G: int) -> list[LaurentPoly]:
    """1 - q^n x."""
    out = [ONE] + [lp({}) for _ in range(G)]
    if n <= G:
        out[n] = out[n] - x
    return out


def _geometric(n: int, x: LaurentPoly, G: int) -> list[LaurentPoly]:
    """1 / (1 - q^n x)."""
    out = [lp({}) for _ in range(G + 1)]
    power = ONE
    for k in range(0, G // n + 1):
        out[n * k] = power
        power = power * x
    return out


def _product(factors: Sequence[Sequence[LaurentPoly]], G: int) -> list[LaurentPoly]:
    acc = [ONE] + [lp({}) for _ in range(G)]
    for f in factors:
        acc = _series_mul(acc, f, G)
    return acc


@dataclass(frozen=True)
class GradedSeries:
    offset: Fraction
    pre_num: LaurentPoly
    pre_den: LaurentPoly
    unit: tuple[LaurentPoly, ...]

    @property
    def order(self) -> int:
        return len(self.unit) - 1

    def __mul__(self, other: GradedSeries) -> GradedSeries:
        G = min(self.order, other.order)
        return GradedSeries(self.offset + other.offset, self.pre_num * other.pre_num,
                            self.pre_den * other.pre_den, tuple(_series_mul(self.unit, other.unit, G)))

    def inverse(self) -> GradedSeries:
        return GradedSeries(-self.offset, self.pre_den, self.pre_num, tuple(_series_inv(self.unit, self.order)))

    def __truediv__(self, other: GradedSeries) -> GradedSeries:
        return self * other.inverse()

    def __pow__(self, k: int) -> GradedSeries:
        if k < 0:
            return self.inverse() ** (-k)
        out = GradedSeries(Fraction(0), ONE, ONE, tuple([ONE] + [lp({})] * self.order))
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: LaurentPoly) -> GradedSeries:
        return GradedSeries(self.offset, self.pre_num * c, self.pre_den, self.unit)

    def leading(self) -> tuple[Fraction, LaurentPoly]:
        if self.pre_den != ONE:
            raise ValueError("leading term of a series with a prefactor denominator")
        return self.offset, self.pre_num

    def coefficients(self) -> list[LaurentPoly]:
        """Coefficients of q^(offset + k) for a polynomial prefactor."""
        if self.pre_den != ONE:
            raise ValueError("series has a non-polynomial prefactor")
        return [self.pre_num * c for c in self.unit]


def _euler(power: int, G: int) -> list[LaurentPoly]:
    """prod_{n>=1} (1 - q^n)^power, truncated."""
    factors = []
    for n in range(1, G + 1):
        f = _one_minus(n, ONE, G) if power >= 0 else _geometric(n, ONE, G)
        factors.extend([f] * abs(power))
    return _product(factors, G)


def delta(G: int) -> GradedSeries:
    return GradedSeries(Fraction(1), ONE, ONE, tuple(_euler(24, G)))


def theta(x: tuple, G: int) -> GradedSeries:
    """theta at the monomial with exponents x = (e_t, e_u)."""
    et, eu = Fraction(x[0]), Fraction(x[1])
    pre = mono(et / 2, eu / 2) - mono(-et / 2, -eu / 2)
    xm = mono(et, eu)
    xinv = mono(-et, -eu)
    factors = []
    for n in range(1, G + 1):
        factors += [_one_minus(n, ONE, G), _one_minus(n, xm, G), _one_minus(n, xinv, G)]
    return GradedSeries(Fraction(1, 8), pre, ONE, tuple(_product(factors, G)))


def euler_derivative_at_one(s: GradedSeries) -> GradedSeries:
    """y d/dy at y = 1 of a series in u = sqrt(y) with no t-dependence."""
    coeffs = []
    for c in s.coefficients():
        total = Fraction(0)
        for (et, eu), v in c.terms.items():
            if et:
                raise ValueError("series depends on t")
            total += Fraction(v) * eu / 2
        coeffs.append(total)
    lead = coeffs[0]
    if lead == 0:
        raise ValueError("derivative vanishes at q^offset")
    unit = tuple(LaurentPoly.const(NAMES, c / lead) for c in coeffs)
    return GradedSeries(s.offset, LaurentPoly.const(NAMES, lead), ONE, unit)


@dataclass(frozen=True)
class ThetaData:
    delta: GradedSeries
    theta_y: GradedSeries
    theta_u_over_t: GradedSeries
    theta_tu: GradedSeries
    theta_prime_one: GradedSeries


def theta_delta_series(G: int) -> ThetaData:
    if G < 1:
        raise InvalidSpec("order must be at least 1")
    th_y = theta((0, 2), G)
    return ThetaData(
        delta=delta(G),
        theta_y=th_y,
        theta_u_over_t=theta((-1, 1), G),
        theta_tu=theta((1, 1), G),
        theta_prime_one=euler_derivative_at_one(th_y),
    )


_KY_ARGS = ((0, 2), (0, -2), (-1, 1), (1, -1), (1, 1), (-1, -1))


def ky_product(G: int) -> list[LaurentPoly]:
    """prod_{n=1}^{G} 1/((1-q^n)^18 (1-q^n y)(1-q^n/y)(1-q^n u/t)(1-q^n t/u)(1-q^n t u)(1-q^n/(t u)))."""
    factors = [_euler(-18, G)]
    for n in range(1, G + 1):
        for x in _KY_ARGS:
            factors.append(_geometric(n, mono(*x), G))
    return _product(factors, G)


# 1 / (t + 1/t - u - 1/u)
_KY_PRE_DEN = mono(1, 0) + mono(-1, 0) - mono(0, 1) - mono(0, -1)


def ky_theta_side(G: int) -> GradedSeries:
    d = theta_delta_series(G)
    numer = d.theta_prime_one ** 3
    numer = numer.scale(mono(0, -1) - mono(0, 1))
    denom = d.delta * d.theta_u_over_t * d.theta_tu * d.theta_y
    return numer / denom


def ky_product_side(G: int) -> GradedSeries:
    return GradedSeries(Fraction(-1), ONE, _KY_PRE_DEN, tuple(ky_product(G)))


def ky_identity_check(G: int) -> bool:
    """Theta quotient equals the product form through q^G, fractional powers cancelling."""
    if G < 2:
        raise InvalidSpec("order must be at least 2")
    lhs = ky_theta_side(G)
    rhs = ky_product_side(G)
    if lhs.offset.denominator != 1:
        raise FractionalPowerResidue(f"q^{lhs.offset} survives")
    cross_l = lhs.pre_num * rhs.pre_den
    cross_r = rhs.pre_num * lhs.pre_den
    for c in (cross_l, cross_r, *lhs.unit):
        if not c.has_integer_exponents():
            raise FractionalPowerResidue("a half-integer exponent survives in the theta quotient")
    return lhs.offset == rhs.offset and cross_l == cross_r and lhs.unit == rhs.unit


# t-rational functions

@dataclass(frozen=True)
class TRatFun:
    """Rational function of t over Q(u), expanded around t = 0."""

    frac: RatFunc

    def __post_init__(self):
        if self.frac.ring is not UT:
            object.__setattr__(self, "frac", self.frac.to_ring(UT))

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly = ONE) -> TRatFun:
        return cls(num.to_ratfunc(UT) / den.to_ratfunc(UT))

    def t_series(self, order: int) -> QSeries:
        """Laurent expansion in t through t**order, coefficients in Q(u)."""
        a = _t_coeffs(self.frac.num)
        b = _t_coeffs(self.frac.den)
        va = min(a)
        vb = min(b)
        shift = va - vb
        A = QSeries({k - va: c for k, c in a.items()}, None, "t")
        B = QSeries({k - vb: c for k, c in b.items()}, None, "t")
        n = order - shift
        if n < 0:
            return QSeries({}, order, "t")
        S = A.truncate(n) * B.inverse(n)
        return S.shift(shift)

    def at_u(self, value) -> TRatFun:
        return TRatFun(self.frac.subs({"u": value}))

    def to_y(self) -> QRatFun:
        """As a rational function of t over Q(y); needs even powers of u."""
        num = _halve_u(self.frac.num)
        den = _halve_u(self.frac.den)
        return QRatFun(RatFunc(YT, num, den), None, 0, "t")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TRatFun):
            return NotImplemented
        return self.frac == other.frac

    def __hash__(self) -> int:
        return hash(self.frac)

    def __repr__(self) -> str:
        return f"TRatFun({self.frac})"


def _t_coeffs(p) -> dict[int, RatFunc]:
    buckets: dict[int, dict] = {}
    for (eu, et), c in p.terms():
        buckets.setdefault(et, {})[(eu,)] = c
    return {k: RatFunc(U, U.ctx.from_dict(v)) for k, v in buckets.items()}


def _halve_u(p):
    terms = {}
    for (eu, et), c in p.terms():
        if eu % 2:
            raise OddHalfPower("odd power of u where a function of y = u^2 is required")
        terms[(eu // 2, et)] = c
    return YT.ctx.from_dict(terms)


def u_to_y(c: RatFunc) -> RatFunc:
    """An even element of Q(u) as an element of Q(y)."""
    out = []
    for p in (c.num, c.den):
        terms = {}
        for (eu,), v in p.terms():
            if eu % 2:
                raise OddHalfPower(f"{c} has an odd power of u")
            terms[(eu // 2,)] = v
        out.append(Y.ctx.from_dict(terms))
    return RatFunc(Y, out[0], out[1])


def ky_numerator(g: int) -> LaurentPoly:
    """Coefficient of q^g in the theta-product identity for K3."""
    if g < 0:
        raise InvalidSpec("genus must be nonnegative")
    if g == 0:
        return ONE
    return ky_product(g)[g]


@lru_cache(maxsize=None)
def ky_coefficient(g: int) -> TRatFun:
    """Shifted reduced series of a primitive class of genus g, as a function of t."""
    return TRatFun.from_laurent(ky_numerator(g), _KY_PRE_DEN)


def _u_power(k: int) -> RatFunc:
    return RatFunc.gen(U, "u") ** k


def shift_convert(series: QSeries, g: int, direction: str) -> QSeries:
    """Move between shifted and unshifted genera: coefficient of t^n times u^(n+2g-1)."""
    if direction not in ("to-shifted", "to-unshifted"):
        raise InvalidSpec(f"unknown direction {direction!r}")
    sign = 1 if direction == "to-unshifted" else -1

    def conv(n, c):
        c = c if isinstance(c, RatFunc) else RatFunc.const(U, c)
        out = c * _u_power(sign * (n + 2 * g - 1))
        if direction == "to-unshifted":
            u_to_y(out)
        return out

    return QSeries({n: conv(n, c) for n, c in series.items()}, series.prec, series.var)


def unshifted_primitive(g: int) -> QRatFun:
    """The unshifted series u^(2g-1) f(u t) as a rational function of t over Q(y)."""
    num = ky_numerator(g).substitute_monomials([(1, 1), (0, 1)]) * mono(0, 2 * g - 1)
    den = _KY_PRE_DEN.substitute_monomials([(1, 1), (0, 1)])
    return TRatFun.from_laurent(num, den).to_y()


TRED_DEGREES = (3, 2)


def tred_closed_form() -> QRatFun:
    t = QRatFun.gen("t")
    y = QRatFun.y("t")
    return t * (2 + 20 * y + 2 * y * y) / ((1 - y * t) * (1 - t))


def reduced_punctual_series(Tmax: int) -> QSeries:
    """The t-series of the punctual reduced genera derived from the genus-1 coefficient."""
    if Tmax < 3:
        raise InvalidSpec("Tmax must be at least 3")
    s = ky_coefficient(1).t_series(Tmax)
    out = {}
    for n, c in s.items():
        if n == 0:
            continue
        out[n] = u_to_y(c * _u_power(n + 1))
    return QSeries(out, Tmax, "t")


def reduced_punctual(Tmax: int, *, check: bool = True) -> QRatFun:
    """Rational function of t reconstructed from the series above.

    The series is expanded far enough for a (3, 2) reconstruction with at
    least one surplus coefficient, whatever the requested Tmax.
    """
    if Tmax < 3:
        raise InvalidSpec("Tmax must be at least 3")
    dn, dd = TRED_DEGREES
    order = max(Tmax, dn + dd + 3)
    series = reduced_punctual_series(order)
    f = pade_reconstruct(series, dn, dd).ratfun
    if check and f != tred_closed_form():
        raise PadeMismatch(f"reconstructed {f} differs from the expected closed form")
    return f
