"""Dense univariate Laurent polynomials over an exact field."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _strip(coeffs: list, low: int) -> tuple[tuple, int]:
    start = 0
    while start < len(coeffs) and coeffs[start] == 0:
        start += 1
    end = len(coeffs)
    while end > start and coeffs[end - 1] == 0:
        end -= 1
    if start == end:
        return (), 0
    return tuple(coeffs[start:end]), low + start


class UPoly:
    """``sum(c[i] * var**(low + i))``; leading and trailing coefficients nonzero."""

    __slots__ = ("var", "coeffs", "low")

    def __init__(self, coeffs: Iterable = (), low: int = 0, var: str = "x"):
        self.coeffs, self.low = _strip(list(coeffs), low)
        self.var = var

    @classmethod
    def monomial(cls, c, k: int, var: str = "x") -> UPoly:
        return cls([c], k, var)

    @classmethod
    def from_dict(cls, terms: dict[int, object], var: str = "x") -> UPoly:
        if not terms:
            return cls((), 0, var)
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo, var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return self.low + len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        return self.low

    def lc(self):
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        i = k - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def items(self):
        return [(self.low + i, c) for i, c in enumerate(self.coeffs) if c != 0]

    def _check(self, other: UPoly) -> None:
        if other.var != self.var:
            from ..errors import VariableMismatch

            raise VariableMismatch(f"{self.var} vs {other.var}")

    def _lift(self, other) -> UPoly:
        if isinstance(other, UPoly):
            self._check(other)
            return other
        return UPoly([other], 0, self.var)

    def __add__(self, other) -> UPoly:
        other = self._lift(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.degree, other.degree)
        return UPoly([self[k] + other[k] for k in range(lo, hi + 1)], lo, self.var)

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly([-c for c in self.coeffs], self.low, self.var)

    def __sub__(self, other) -> UPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> UPoly:
        return self._lift(other) + (-self)

    def __mul__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs], self.low, self.var)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return UPoly((), 0, self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out, self.low + other.low, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly([1], 0, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> UPoly:
        return UPoly(self.coeffs, self.low + k, self.var)

    def __divmod__(self, other: UPoly) -> tuple[UPoly, UPoly]:
        """Euclidean division of genuine polynomials (valuation >= 0)."""
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        if self.low < 0 or other.low < 0:
            raise ValueError("divmod needs polynomials, not Laurent polynomials")
        rem = [self[k] for k in range(0, self.degree + 1)]
        d = [other[k] for k in range(0, other.degree + 1)]
        dn = len(d) - 1
        inv_lc = 1 / Fraction(d[-1]) if isinstance(d[-1], int) else 1 / d[-1]
        quot = [0] * max(len(rem) - dn, 0)
        for k in range(len(rem) - 1, dn - 1, -1):
            c = rem[k] * inv_lc
            if c == 0:
                continue
            quot[k - dn] = c
            for i in range(dn + 1):
                rem[k - dn + i] -= c * d[i]
        return UPoly(quot, 0, self.var), UPoly(rem[:dn] if dn else [], 0, self.var)

    def __floordiv__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[1]

    def monic(self) -> UPoly:
        if not self.coeffs:
            return self
        inv = 1 / Fraction(self.lc()) if isinstance(self.lc(), int) else 1 / self.lc()
        return self * inv

    def xgcd(self, other: UPoly) -> tuple[UPoly, UPoly, UPoly]:
        """(g, a, b) with a*self + b*other = g, g monic."""
        one = UPoly([1], 0, self.var)
        zero = UPoly((), 0, self.var)
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while r1:
            qt, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if not r0:
            return r0, s0, t0
        inv = 1 / Fraction(r0.lc()) if isinstance(r0.lc(), int) else 1 / r0.lc()
        return r0 * inv, s0 * inv, t0 * inv

    def gcd(self, other: UPoly) -> UPoly:
        return self.xgcd(other)[0]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low >= 0:
            return acc * x**self.low
        return acc / x ** (-self.low)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.var == other.var and self.low == other.low and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return self.low == 0 and self.coeffs == (other,)

    def __hash__(self) -> int:
        return hash((self.var, self.low, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({c})*{self.var}^{k}" for k, c in self.items()]
        return " + ".join(parts)


def as_upoly(seq: Sequence, var: str = "x") -> UPoly:
    return UPoly(list(seq), 0, var)
