"""Sparse Laurent polynomials in named variables with rational exponents.

Half-integer exponents appear in intermediate theta products; final
answers are checked to have integer exponents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .rings import PolyRing, RatFunc

Exps = tuple[Fraction, ...]


class LaurentPoly:
    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Sequence, object] = ()):
        self.names = tuple(names)
        out: dict[Exps, object] = {}
        for e, c in dict(terms).items():
            if c != 0:
                key = tuple(Fraction(x) for x in e)
                out[key] = out.get(key, 0) + c
        self.terms = {e: c for e, c in out.items() if c != 0}

    @classmethod
    def const(cls, names: Sequence[str], c) -> LaurentPoly:
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def monomial(cls, names: Sequence[str], exps: Sequence, c=1) -> LaurentPoly:
        return cls(names, {tuple(exps): c})

    def _like(self, terms) -> LaurentPoly:
        obj = LaurentPoly.__new__(LaurentPoly)
        obj.names, obj.terms = self.names, terms
        return obj

    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.names != self.names:
                raise ValueError(f"variables {self.names} vs {other.names}")
            return other
        return LaurentPoly.const(self.names, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> LaurentPoly:
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s != 0:
                out[e] = s
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._lift(other) + (-self)

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return self._like({})
            return self._like({e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        out: dict[Exps, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return self._like({e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return self._like({tuple(-x * (-k) for x in e): Fraction(1) / c ** (-k)})
        result = LaurentPoly.const(self.names, 1)
        for _ in range(k):
            result = result * self
        return result

    def substitute_monomials(self, images: Sequence[Sequence]) -> LaurentPoly:
        """Replace variable i by the monomial with exponent vector images[i]."""
        out: dict[Exps, object] = {}
        for e, c in self.terms.items():
            new = [Fraction(0)] * len(self.names)
            for i, x in enumerate(e):
                for j, a in enumerate(images[i]):
                    new[j] += x * Fraction(a)
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(self.names, out)

    def evaluate(self, values: Sequence) -> object:
        """Numeric value; variables with value 1 accept rational exponents."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, v in zip(e, values):
                if v == 1:
                    continue
                if x.denominator != 1:
                    raise ValueError("rational exponent at a value other than 1")
                term = term * Fraction(v) ** int(x)
            total = total + term
        return total

    def has_integer_exponents(self) -> bool:
        return all(x.denominator == 1 for e in self.terms for x in e)

    def min_exponents(self) -> Exps:
        if not self.terms:
            return (Fraction(0),) * len(self.names)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.names)))

    def to_ratfunc(self, ring: PolyRing) -> RatFunc:
        """As a reduced fraction over ``ring`` (same variables in any order; integer exponents only)."""
        if not self.has_integer_exponents():
            raise ValueError("rational exponents do not define a rational function")
        if sorted(ring.names) != sorted(self.names):
            raise ValueError(f"ring {ring.names} does not match {self.names}")
        perm = [self.names.index(n) for n in ring.names]
        low = self.min_exponents()
        shift = tuple(min(int(low[i]), 0) for i in perm)
        num = ring.poly({tuple(int(e[i]) - s for i, s in zip(perm, shift)): c for e, c in self.terms.items()})
        den = ring.poly({tuple(-s for s in shift): 1})
        return RatFunc(ring, num, den)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.names == other.names and self.terms == other.terms
        return self == self._lift(other)

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{n}^{x}" for n, x in zip(self.names, e) if x)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)
