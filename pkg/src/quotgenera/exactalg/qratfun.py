"""Rational functions in one main variable (q or t) over Q(y), with a q**k prefactor."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rings import YQ, YT, Y, PolyRing, RatFunc, to_fmpq
from .series import QSeries

_RINGS = {"q": YQ, "t": YT}


def _ring_for(var: str) -> PolyRing:
    try:
        return _RINGS[var]
    except KeyError:
        raise ValueError(f"unsupported main variable {var!r}") from None


def _split_power(p, idx: int) -> tuple[int, object]:
    """(k, p / var**k) with k the lowest exponent of the main variable in p."""
    if p.is_zero():
        return 0, p
    k = int(min(e[idx] for e in p.monoms()))
    if k == 0:
        return 0, p
    exps = [0] * len(p.degrees())
    exps[idx] = k
    mono = p.context().from_dict({tuple(exps): 1})
    return k, p / mono


class QRatFun:
    """``var**qshift * num / den`` with num, den in Q[y, var], reduced.

    Neither num nor den is divisible by the main variable, so den has a
    nonzero constant term as a polynomial in the main variable.
    """

    __slots__ = ("var", "frac", "qshift")

    def __init__(self, num, den=None, qshift: int = 0, var: str = "q"):
        ring = _ring_for(var)
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            frac = _as_rat(ring, num)
            if den is not None:
                frac = frac / _as_rat(ring, den)
        else:
            frac = RatFunc(ring, ring.coerce(num), None if den is None else ring.coerce(den))
        self.var = var
        if frac.is_zero():
            self.frac, self.qshift = frac, 0
            return
        idx = ring.index(var)
        kn, n = _split_power(frac.num, idx)
        kd, d = _split_power(frac.den, idx)
        if kn or kd:
            frac = RatFunc._raw(ring, n, d)
        self.frac = frac
        self.qshift = int(qshift) + kn - kd

    @property
    def ring(self) -> PolyRing:
        return self.frac.ring

    @property
    def num(self):
        return self.frac.num

    @property
    def den(self):
        return self.frac.den

    @classmethod
    def const(cls, c, var: str = "q") -> QRatFun:
        return cls(c, None, 0, var)

    @classmethod
    def gen(cls, var: str = "q") -> QRatFun:
        return cls(1, None, 1, var)

    @classmethod
    def y(cls, var: str = "q") -> QRatFun:
        return cls(RatFunc.gen(_ring_for(var), "y"), None, 0, var)

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,), qshift: int = 0, var: str = "q") -> QRatFun:
        """Build from coefficient lists in the main variable; entries are YRat/int/Fraction."""
        ring = _ring_for(var)
        return cls(_poly_from_coeffs(ring, var, num) / _poly_from_coeffs(ring, var, den), None, qshift, var)

    def is_zero(self) -> bool:
        return self.frac.is_zero()

    def __bool__(self) -> bool:
        return not self.frac.is_zero()

    # arithmetic

    def _lift_other(self, other) -> QRatFun:
        if isinstance(other, QRatFun):
            if other.var != self.var:
                raise ValueError(f"main variable {self.var} vs {other.var}")
            return other
        if isinstance(other, RatFunc):
            return QRatFun(other.to_ring(self.ring), None, 0, self.var)
        return QRatFun.const(other, self.var)

    def _mono(self, k: int) -> RatFunc:
        return RatFunc.gen(self.ring, self.var) ** k

    def __add__(self, other) -> QRatFun:
        other = self._lift_other(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        m = min(self.qshift, other.qshift)
        a = self.frac if self.qshift == m else self.frac * self._mono(self.qshift - m)
        b = other.frac if other.qshift == m else other.frac * self._mono(other.qshift - m)
        return QRatFun(a + b, None, m, self.var)

    __radd__ = __add__

    def __neg__(self) -> QRatFun:
        return QRatFun(-self.frac, None, self.qshift, self.var)

    def __sub__(self, other) -> QRatFun:
        return self + (-self._lift_other(other))

    def __rsub__(self, other) -> QRatFun:
        return self._lift_other(other) + (-self)

    def __mul__(self, other) -> QRatFun:
        other = self._lift_other(other)
        return QRatFun(self.frac * other.frac, None, self.qshift + other.qshift, self.var)

    __rmul__ = __mul__

    def inverse(self) -> QRatFun:
        return QRatFun(self.frac.inverse(), None, -self.qshift, self.var)

    def __truediv__(self, other) -> QRatFun:
        return self * self._lift_other(other).inverse()

    def __rtruediv__(self, other) -> QRatFun:
        return self._lift_other(other) * self.inverse()

    def __pow__(self, k: int) -> QRatFun:
        if self.is_zero():
            if k <= 0:
                raise ZeroDivisionError("power of zero")
            return self
        return QRatFun(self.frac**k, None, self.qshift * k, self.var)

    def __eq__(self, other) -> bool:
        try:
            other = self._lift_other(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.qshift == other.qshift and self.frac == other.frac

    def __hash__(self) -> int:
        return hash((self.var, self.qshift, self.frac))

    # views

    def coeff_lists(self) -> tuple[list[RatFunc], list[RatFunc]]:
        """Numerator and denominator as lists of Q(y) coefficients, den[0] == 1."""
        idx = self.ring.index(self.var)
        yidx = self.ring.index("y")
        num = _collect(self.num, idx, yidx)
        den = _collect(self.den, idx, yidx)
        d0 = den[0]
        return [c / d0 for c in num], [c / d0 for c in den]

    def series(self, prec: int) -> QSeries:
        """Expansion in the main variable through ``var**prec`` with Q(y) coefficients."""
        num, den = self.coeff_lists()
        n = prec - self.qshift
        out = []
        for k in range(n + 1):
            acc = num[k] if k < len(num) else 0
            for i in range(1, min(k, len(den) - 1) + 1):
                acc = acc - den[i] * out[k - i]
            out.append(acc if isinstance(acc, RatFunc) else RatFunc.const(Y, acc))
        return QSeries({k + self.qshift: c for k, c in enumerate(out)}, prec, self.var)

    def at_y(self, value) -> QRatFun:
        """Specialize y to a rational number (on the reduced form)."""
        v = to_fmpq(value)
        den = self.den.subs({"y": v})
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes identically at y={value}")
        return QRatFun(RatFunc(self.ring, self.num.subs({"y": v}), den), None, self.qshift, self.var)

    def is_polynomial(self) -> bool:
        return self.frac.is_polynomial() and self.qshift >= 0

    def degrees(self) -> tuple[int, int]:
        """Degrees in the main variable of (num, den), excluding the prefactor."""
        idx = self.ring.index(self.var)
        return (int(max((e[idx] for e in self.num.monoms()), default=0)),
                int(max((e[idx] for e in self.den.monoms()), default=0)))

    def __repr__(self) -> str:
        pre = f"{self.var}^{self.qshift}*" if self.qshift else ""
        return f"{pre}({self.num})/({self.den})"


def _as_rat(ring: PolyRing, x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x if x.ring is ring else x.to_ring(ring)
    return RatFunc(ring, ring.coerce(x))


def _collect(p, idx: int, yidx: int) -> list[RatFunc]:
    deg = max((e[idx] for e in p.monoms()), default=0)
    buckets: list[dict] = [dict() for _ in range(deg + 1)]
    for e, c in p.terms():
        buckets[e[idx]][(e[yidx],)] = c
    return [RatFunc(Y, Y.ctx.from_dict(b)) if b else RatFunc.const(Y, 0) for b in buckets]


def _poly_from_coeffs(ring: PolyRing, var: str, coeffs: Sequence) -> RatFunc:
    out = RatFunc.const(ring, 0)
    x = RatFunc.gen(ring, var)
    power = RatFunc.const(ring, 1)
    for c in coeffs:
        if isinstance(c, RatFunc):
            c = c.to_ring(ring)
        out = out + power * c
        power = power * x
    return out


def q_poly(coeffs: Sequence, var: str = "q") -> QRatFun:
    """Polynomial in the main variable from ascending coefficients."""
    return QRatFun.from_coeffs(coeffs, (1,), 0, var)


def as_fraction_coeffs(f: QRatFun) -> tuple[list[Fraction], list[Fraction]]:
    """Coefficient lists when f has constant (y-free) coefficients."""
    num, den = f.coeff_lists()
    return [c.to_fraction() for c in num], [c.to_fraction() for c in den]
