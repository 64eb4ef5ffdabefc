"""The cyclotomic field Q(zeta_N) in the power basis modulo Phi_N."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .upoly import UPoly


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of Phi_n."""
    if n < 1:
        raise ValueError("n must be positive")
    p = UPoly([-1] + [0] * (n - 1) + [1], 0, "x")
    for d in range(1, n):
        if n % d == 0:
            p = p // UPoly(cyclotomic_poly(d), 0, "x")
    return tuple(int(c) for c in (p[k] for k in range(p.degree + 1)))


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def zeta_power(n: int, e: int) -> tuple[int, ...]:
    """Coordinates of zeta_n**e in the basis 1, zeta, ..., zeta**(phi-1)."""
    phi = euler_phi(n)
    e %= n
    if e < phi:
        v = [0] * phi
        v[e] = 1
        return tuple(v)
    prev = zeta_power(n, e - 1)
    cyc = cyclotomic_poly(n)
    # multiply by zeta and reduce zeta**phi = -sum cyc[i] zeta**i
    top = prev[-1]
    v = [0] + list(prev[:-1])
    return tuple(v[i] - top * cyc[i] for i in range(phi))


def units(n: int) -> list[int]:
    return [b for b in range(1, n + 1) if gcd(b, n) == 1] if n > 1 else [1]


class CycloElem:
    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords):
        phi = euler_phi(n)
        coords = [Fraction(c) for c in coords]
        if len(coords) > phi:
            # reduce an arbitrary polynomial in zeta
            red = [Fraction(0)] * phi
            for e, c in enumerate(coords):
                if c:
                    for i, z in enumerate(zeta_power(n, e)):
                        red[i] += c * z
            coords = red
        coords += [Fraction(0)] * (phi - len(coords))
        self.n = n
        self.coords = tuple(coords)

    @classmethod
    def zeta(cls, n: int, e: int = 1) -> CycloElem:
        return cls(n, zeta_power(n, e))

    @classmethod
    def rational(cls, n: int, c) -> CycloElem:
        return cls(n, [c])

    def _lift(self, other) -> CycloElem:
        if isinstance(other, CycloElem):
            if other.n != self.n:
                raise ValueError("different cyclotomic fields")
            return other
        return CycloElem(self.n, [other])

    def __add__(self, other) -> CycloElem:
        other = self._lift(other)
        return CycloElem(self.n, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self) -> CycloElem:
        return CycloElem(self.n, [-a for a in self.coords])

    def __sub__(self, other) -> CycloElem:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> CycloElem:
        return self._lift(other) - self

    def __mul__(self, other) -> CycloElem:
        other = self._lift(other)
        prod = [Fraction(0)] * (2 * len(self.coords))
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        return CycloElem(self.n, prod)

    __rmul__ = __mul__

    def _as_upoly(self) -> UPoly:
        return UPoly(self.coords, 0, "zeta")

    def inverse(self) -> CycloElem:
        if not any(self.coords):
            raise ZeroDivisionError("inverse of zero")
        g, a, _ = self._as_upoly().xgcd(UPoly(cyclotomic_poly(self.n), 0, "zeta"))
        assert g.degree == 0
        return CycloElem(self.n, [a[k] for k in range(max(a.degree, 0) + 1)])

    def __truediv__(self, other) -> CycloElem:
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> CycloElem:
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> CycloElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloElem(self.n, [1])
        for _ in range(k):
            result = result * self
        return result

    def conjugate(self, b: int) -> CycloElem:
        """Image under zeta -> zeta**b."""
        out = [Fraction(0)] * len(self.coords)
        for e, c in enumerate(self.coords):
            if c:
                for i, z in enumerate(zeta_power(self.n, b * e)):
                    out[i] += c * z
        return CycloElem(self.n, out)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloElem):
            return self.n == other.n and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.coords))

    def __repr__(self) -> str:
        return f"CycloElem({self.n}, {[str(c) for c in self.coords]})"
