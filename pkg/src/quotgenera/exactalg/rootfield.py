"""The field L = Q(zeta_N)(y, q)[s] / (s^N - q).

An element is stored as a common denominator ``den`` in Q[y, q] and a
numerator ``coords[k][c]`` in Q[y, q] for the basis element ``s**k * zeta**c``.
Inversion uses the Galois norm: the group acts by s -> zeta^a s,
zeta -> zeta^b, and the product of all conjugates lies in Q(y, q).
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import NotGaloisInvariant
from .cyclo import euler_phi, units, zeta_power
from .qratfun import QRatFun
from .rings import YQ, RatFunc


class RootField:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("N must be positive")
        self.n = n
        self.phi = euler_phi(n)
        self.ring = YQ
        self.q = YQ.gen("q")
        self.zero_poly = YQ.zero()
        self._zeta = [zeta_power(n, e) for e in range(n)]

    def __repr__(self) -> str:
        return f"RootField({self.n})"

    def _empty(self) -> list[list]:
        return [[self.zero_poly] * self.phi for _ in range(self.n)]

    def element(self, coords, den=None) -> RootFieldElem:
        return RootFieldElem(self, coords, den)

    def const(self, c) -> RootFieldElem:
        """Embed a scalar: int, Fraction, polynomial in (y, q), or RatFunc over (y, q)."""
        coords = self._empty()
        if isinstance(c, RatFunc):
            c = c.to_ring(YQ)
            coords[0][0] = c.num
            return RootFieldElem(self, coords, c.den)
        coords[0][0] = YQ.coerce(c)
        return RootFieldElem(self, coords)

    def embed(self, f: QRatFun) -> RootFieldElem:
        if f.var != "q":
            raise ValueError("only q-rational functions embed")
        base = self.const(f.frac)
        if f.qshift:
            base = base * self.const(self.q) ** f.qshift
        return base

    @property
    def y(self) -> RootFieldElem:
        return self.const(YQ.gen("y"))

    def s_power(self, k: int) -> RootFieldElem:
        return self.root_power(0, k)

    def root(self, i: int) -> RootFieldElem:
        """t_i = zeta**(i-1) * s for i = 1..N."""
        return self.root_power(i - 1, 1)

    def root_power(self, a: int, k: int) -> RootFieldElem:
        """(zeta**a * s)**k for k >= 0."""
        coords = self._empty()
        qk, r = divmod(k, self.n)
        z = self._zeta[(a * k) % self.n]
        qpow = self.q**qk
        for c, v in enumerate(z):
            if v:
                coords[r][c] = qpow * v
        return RootFieldElem(self, coords)

    def zeta(self, e: int = 1) -> RootFieldElem:
        coords = self._empty()
        for c, v in enumerate(self._zeta[e % self.n]):
            if v:
                coords[0][c] = YQ.const(v)
        return RootFieldElem(self, coords)


@lru_cache(maxsize=None)
def root_field(n: int) -> RootField:
    return RootField(n)


class RootFieldElem:
    __slots__ = ("field", "coords", "den")

    def __init__(self, field: RootField, coords, den=None):
        self.field = field
        coords = [list(row) for row in coords]
        den = YQ.one() if den is None else YQ.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not den.is_constant():
            g = den
            for row in coords:
                for p in row:
                    if not p.is_zero():
                        g = g.gcd(p)
                        if g.is_constant():
                            break
                if g.is_constant():
                    break
            if not g.is_constant():
                den = den / g
                coords = [[p / g for p in row] for row in coords]
        lc = den.leading_coefficient()
        if lc != 1:
            den = den / lc
            coords = [[p / lc for p in row] for row in coords]
        self.coords = tuple(tuple(row) for row in coords)
        self.den = den

    def _lift(self, other) -> RootFieldElem:
        if isinstance(other, RootFieldElem):
            if other.field is not self.field:
                raise ValueError("elements of different root fields")
            return other
        if isinstance(other, QRatFun):
            return self.field.embed(other)
        return self.field.const(other)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.coords for p in row)

    def __add__(self, other) -> RootFieldElem:
        other = self._lift(other)
        if self.den == other.den:
            coords = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.coords, other.coords)]
            return RootFieldElem(self.field, coords, self.den)
        g = self.den.gcd(other.den)
        da = self.den / g
        db = other.den / g
        coords = [[a * db + b * da for a, b in zip(r1, r2)] for r1, r2 in zip(self.coords, other.coords)]
        return RootFieldElem(self.field, coords, self.den * db)

    __radd__ = __add__

    def __neg__(self) -> RootFieldElem:
        return RootFieldElem(self.field, [[-p for p in row] for row in self.coords], self.den)

    def __sub__(self, other) -> RootFieldElem:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> RootFieldElem:
        return self._lift(other) + (-self)

    def _numer_product(self, other: RootFieldElem) -> list[list]:
        f = self.field
        n, phi = f.n, f.phi
        # accumulate by (s-degree, zeta-exponent) before reducing zeta powers
        acc: dict[tuple[int, int], object] = {}
        for k1, r1 in enumerate(self.coords):
            for c1, p1 in enumerate(r1):
                if p1.is_zero():
                    continue
                for k2, r2 in enumerate(other.coords):
                    for c2, p2 in enumerate(r2):
                        if p2.is_zero():
                            continue
                        k = k1 + k2
                        prod = p1 * p2
                        if k >= n:
                            k -= n
                            prod = prod * f.q
                        key = (k, c1 + c2)
                        acc[key] = acc[key] + prod if key in acc else prod
        coords = f._empty()
        for (k, e), p in acc.items():
            for c, v in enumerate(zeta_power(n, e)):
                if v:
                    coords[k][c] = coords[k][c] + p * v
        return coords

    def __mul__(self, other) -> RootFieldElem:
        other = self._lift(other)
        return RootFieldElem(self.field, self._numer_product(other), self.den * other.den)

    __rmul__ = __mul__

    def conjugate(self, a: int, b: int) -> RootFieldElem:
        """Image under s -> zeta**a * s, zeta -> zeta**b (gcd(b, N) = 1)."""
        f = self.field
        coords = f._empty()
        for k, row in enumerate(self.coords):
            for c, p in enumerate(row):
                if p.is_zero():
                    continue
                for c2, v in enumerate(zeta_power(f.n, b * c + a * k)):
                    if v:
                        coords[k][c2] = coords[k][c2] + p * v
        return RootFieldElem(f, coords, self.den)

    def norm(self):
        """The product of all Galois conjugates of the numerator part, as a polynomial in (y, q)."""
        return self._norm_parts()[1]

    def _norm_parts(self):
        f = self.field
        numer = RootFieldElem(f, self.coords)
        others = None
        for a in range(f.n):
            for b in units(f.n):
                if a == 0 and b == 1:
                    continue
                c = numer.conjugate(a, b)
                others = c if others is None else others * c
        if others is None:
            others = f.const(1)
        full = numer * others
        if not full.is_rational():
            raise NotGaloisInvariant("norm is not rational; field arithmetic is inconsistent")
        # numer and its conjugates have denominator 1, hence so does the norm
        return others, full.coords[0][0]

    def inverse(self) -> RootFieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others, nrm = self._norm_parts()
        coords = [[p * self.den * others.den for p in row] for row in others.coords]
        return RootFieldElem(self.field, coords, nrm * others.den)

    def __truediv__(self, other) -> RootFieldElem:
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> RootFieldElem:
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> RootFieldElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_rational(self) -> bool:
        """True when only the s**0 zeta**0 coordinate is nonzero."""
        for k, row in enumerate(self.coords):
            for c, p in enumerate(row):
                if (k or c) and not p.is_zero():
                    return False
        return True

    def descend(self) -> QRatFun:
        if not self.is_rational():
            raise NotGaloisInvariant("element has irrational coordinates; it is not symmetric in the roots")
        return QRatFun(RatFunc(YQ, self.coords[0][0], self.den))

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        return self.den == other.den and self.coords == other.coords

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        for k, row in enumerate(self.coords):
            for c, p in enumerate(row):
                if not p.is_zero():
                    parts.append(f"({p})*s^{k}*zeta^{c}")
        return f"[{' + '.join(parts) or '0'}] / ({self.den})"

