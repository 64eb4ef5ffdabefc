"""Reduced rational functions over Q in a few named variables.

Polynomial arithmetic and gcds are delegated to FLINT (python-flint
``fmpq_mpoly``).  Everything here is exact; values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import flint

Number = int | Fraction


def to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, flint.fmpz):
        return flint.fmpq(c)
    raise TypeError(f"not a rational number: {c!r}")


def to_fraction(c) -> Fraction:
    c = to_fmpq(c)
    return Fraction(int(c.p), int(c.q))


class PolyRing:
    """Q[x_1, ..., x_k] with named generators; one instance per name tuple."""

    _instances: dict[tuple[str, ...], PolyRing] = {}

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        ring = cls._instances.get(names)
        if ring is None:
            ring = super().__new__(cls)
            ring.names = names
            ring.ctx = flint.fmpq_mpoly_ctx.get(names, "lex")
            ring._gens = ring.ctx.gens()
            ring._zero = ring.ctx.constant(0)
            ring._one = ring.ctx.constant(1)
            cls._instances[names] = ring
        return ring

    def __repr__(self) -> str:
        return f"PolyRing({self.names!r})"

    def __reduce__(self):
        return (PolyRing, (self.names,))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def gen(self, name: str):
        return self._gens[self.index(name)]

    def const(self, c):
        return self.ctx.constant(to_fmpq(c))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def poly(self, terms: Mapping[tuple[int, ...], Number]):
        return self.ctx.from_dict({e: to_fmpq(c) for e, c in terms.items() if c})

    def coerce(self, p):
        """Bring an int, Fraction or polynomial of a sub-ring into this ring."""
        if isinstance(p, flint.fmpq_mpoly):
            if p.context() is self.ctx:
                return p
            return p.project_to_context(self.ctx)
        return self.const(p)

    def terms(self, p) -> dict[tuple[int, ...], Fraction]:
        return {tuple(e): to_fraction(c) for e, c in p.terms()}


def _monic(num, den):
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _exact_div(a, b):
    if b.is_one():
        return a
    return a / b


class RatFunc:
    """An element of Q(x_1..x_k) stored as a reduced fraction with monic denominator.

    Monic means leading coefficient 1 in lex order of the ring's variables.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: PolyRing, num, den=None):
        num = ring.coerce(num)
        den = ring.one() if den is None else ring.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ring.zero(), ring.one()
        else:
            if not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num, den = num / g, den / g
            num, den = _monic(num, den)
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, ring: PolyRing, num, den) -> RatFunc:
        obj = cls.__new__(cls)
        obj.ring, obj.num, obj.den = ring, num, den
        return obj

    # construction helpers

    @classmethod
    def const(cls, ring: PolyRing, c) -> RatFunc:
        return cls._raw(ring, ring.const(c), ring.one())

    @classmethod
    def gen(cls, ring: PolyRing, name: str) -> RatFunc:
        return cls._raw(ring, ring.gen(name), ring.one())

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            if other.ring is self.ring:
                return other
            return RatFunc(self.ring, other.num, other.den)
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return RatFunc._raw(self.ring, self.ring.const(other), self.ring.one())
        if isinstance(other, flint.fmpq_mpoly):
            return RatFunc._raw(self.ring, self.ring.coerce(other), self.ring.one())
        return NotImplemented

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # arithmetic

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(self.ring, -self.num, self.den)

    def __pos__(self) -> RatFunc:
        return self

    def __add__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        ring = self.ring
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc._raw(ring, self.num + other.num, self.den)
            return RatFunc(ring, self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        da = _exact_div(self.den, g)
        db = _exact_div(other.den, g)
        return RatFunc(ring, self.num * db + other.num * da, self.den * db)

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc._raw(ring, ring.zero(), ring.one())
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(ring, self.num * other.num, ring.one())
        # cross-cancel so the product of reduced fractions stays reduced
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = _exact_div(self.num, g1) * _exact_div(other.num, g2)
        den = _exact_div(self.den, g2) * _exact_div(other.den, g1)
        num, den = _monic(num, den)
        return RatFunc._raw(ring, num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = _monic(self.den, self.num)
        return RatFunc._raw(self.ring, num, den)

    def __truediv__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        num, den = _monic(self.num**k, self.den**k)
        return RatFunc._raw(self.ring, num, den)

    # comparison

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.ring.names, _poly_key(self.num), _poly_key(self.den)))

    # evaluation and change of ring

    def subs(self, values: Mapping[str, Number]) -> RatFunc:
        """Substitute rational numbers for some variables (same ring)."""
        vals = {k: to_fmpq(v) for k, v in values.items()}
        den = self.den.subs(vals)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at {values}")
        return RatFunc(self.ring, self.num.subs(vals), den)

    def to_ring(self, ring: PolyRing) -> RatFunc:
        """Re-home into ``ring``; variables are matched by name and must all exist."""
        used = [n for n, d in zip(self.ring.names, self._degrees()) if d > 0]
        missing = [n for n in used if n not in ring.names]
        if missing:
            raise ValueError(f"variables {missing} not in target ring {ring.names}")
        return RatFunc(ring, self.num.project_to_context(ring.ctx), self.den.project_to_context(ring.ctx))

    def _degrees(self) -> tuple[int, ...]:
        dn = self.num.degrees() if not self.num.is_zero() else (0,) * self.ring.nvars
        dd = self.den.degrees()
        return tuple(max(a, b, 0) for a, b in zip(dn, dd))

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return to_fraction(self.num.coefficient(0)) if not self.num.is_zero() else Fraction(0)

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"{self.num}"
        return f"({self.num})/({self.den})"

    __str__ = __repr__


def _poly_key(p) -> tuple:
    return tuple(sorted((tuple(e), int(c.p), int(c.q)) for e, c in p.terms()))


# The rings used by the package.
Y = PolyRing(("y",))
U = PolyRing(("u",))
YZ = PolyRing(("y", "z"))
YQ = PolyRing(("y", "q"))
YT = PolyRing(("y", "t"))
UT = PolyRing(("u", "t"))


def yrat(num, den=None) -> RatFunc:
    """An element of Q(y); ``num``/``den`` may be ints, Fractions or y-polynomials."""
    return RatFunc(Y, num, den)


def wcoeff(num, den=None) -> RatFunc:
    """An element of Q(y, z)."""
    return RatFunc(YZ, num, den)


def ypoly(coeffs: Iterable[Number], ring: PolyRing = Y) -> RatFunc:
    """Polynomial in the ring's first variable from an ascending coefficient list."""
    pad = (0,) * (ring.nvars - 1)
    return RatFunc(ring, ring.poly({(i, *pad): c for i, c in enumerate(coeffs)}))
