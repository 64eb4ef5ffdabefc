"""Truncated Laurent series in one variable over an exact field.

A series carries an inclusive truncation order ``prec``: it is known
modulo ``var**(prec + 1)``.  ``prec=None`` marks an exact (finite) series.
Coefficients can be any exact field elements that mix with ``int``
(Fraction, RatFunc, ...).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ..errors import ExpOfUnit, NotInvertible, VariableMismatch


def _min_prec(*precs):
    known = [p for p in precs if p is not None]
    return min(known) if known else None


class QSeries:
    __slots__ = ("var", "prec", "_c")

    def __init__(self, coeffs: Mapping[int, object] | Iterable = (), prec: int | None = None,
                 var: str = "q", start: int = 0):
        if not isinstance(coeffs, Mapping):
            coeffs = {start + i: c for i, c in enumerate(coeffs)}
        self.var = var
        self.prec = prec
        self._c = {k: c for k, c in sorted(coeffs.items())
                   if c != 0 and (prec is None or k <= prec)}

    @classmethod
    def one(cls, prec: int | None = None, var: str = "q") -> QSeries:
        return cls({0: 1}, prec, var)

    @classmethod
    def monomial(cls, c, k: int, prec: int | None = None, var: str = "q") -> QSeries:
        return cls({k: c}, prec, var)

    # access

    def coefficients(self) -> dict[int, object]:
        return dict(self._c)

    def items(self):
        return list(self._c.items())

    @property
    def valuation(self) -> int | None:
        """Lowest exponent with nonzero coefficient, None for a zero series."""
        return next(iter(self._c), None)

    def _val_bound(self) -> int | None:
        # the order of the error term is prec + 1 for a zero series
        v = self.valuation
        if v is not None:
            return v
        return None if self.prec is None else self.prec + 1

    def coefficient(self, k: int):
        if self.prec is not None and k > self.prec:
            raise IndexError(f"coefficient {k} beyond truncation order {self.prec}")
        return self._c.get(k, 0)

    __getitem__ = coefficient

    def is_zero(self) -> bool:
        return not self._c

    # arithmetic

    def _check(self, other: QSeries) -> None:
        if other.var != self.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")

    def _lift(self, other) -> QSeries:
        if isinstance(other, QSeries):
            self._check(other)
            return other
        return QSeries({0: other}, None, self.var)

    def __add__(self, other) -> QSeries:
        other = self._lift(other)
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return QSeries(out, _min_prec(self.prec, other.prec), self.var)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries({k: -c for k, c in self._c.items()}, self.prec, self.var)

    def __sub__(self, other) -> QSeries:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> QSeries:
        return self._lift(other) + (-self)

    def scale(self, c) -> QSeries:
        return QSeries({k: v * c for k, v in self._c.items()}, self.prec, self.var)

    def __mul__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check(other)
        va, vb = self._val_bound(), other._val_bound()
        candidates = []
        if self.prec is not None and vb is not None:
            candidates.append(self.prec + vb)
        if other.prec is not None and va is not None:
            candidates.append(other.prec + va)
        prec = min(candidates) if candidates else None
        out: dict[int, object] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                k = i + j
                if prec is not None and k > prec:
                    break
                out[k] = out.get(k, 0) + a * b
        return QSeries(out, prec, self.var)

    def __rmul__(self, other) -> QSeries:
        return self.scale(other)

    def shift(self, k: int) -> QSeries:
        """Multiply by var**k."""
        return QSeries({e + k: c for e, c in self._c.items()},
                       None if self.prec is None else self.prec + k, self.var)

    def truncate(self, prec: int) -> QSeries:
        return QSeries(self._c, _min_prec(self.prec, prec), self.var)

    def inverse(self, prec: int | None = None) -> QSeries:
        """Reciprocal; the lowest coefficient must be invertible."""
        v = self.valuation
        if v is None:
            raise NotInvertible("inverse of a zero series")
        lead = self._c[v]
        try:
            inv_lead = 1 / (Fraction(lead) if isinstance(lead, int) else lead)
        except ZeroDivisionError as exc:
            raise NotInvertible(f"lowest coefficient {lead} is not invertible") from exc
        if self.prec is not None:
            prec = _min_prec(prec, self.prec - 2 * v)
        if prec is None:
            raise ValueError("inverse of an exact series needs an explicit prec")
        n = prec + v
        a = [self._c.get(v + i, 0) for i in range(n + 1)]
        b = [0] * (n + 1)
        if n >= 0:
            b[0] = inv_lead
        for k in range(1, n + 1):
            acc = 0
            for i in range(1, k + 1):
                if a[i] != 0 and b[k - i] != 0:
                    acc = acc + a[i] * b[k - i]
            b[k] = -acc * inv_lead
        return QSeries({k - v: c for k, c in enumerate(b)}, prec, self.var)

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return self * other.inverse()
        inv = 1 / (Fraction(other) if isinstance(other, int) else other)
        return self.scale(inv)

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one(None, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exp(self, prec: int | None = None) -> QSeries:
        v = self.valuation
        if v is not None and v < 1:
            raise ExpOfUnit("exp needs valuation >= 1")
        prec = _min_prec(prec, self.prec)
        if prec is None:
            raise ValueError("exp of an exact series needs an explicit prec")
        a = [self._c.get(i, 0) for i in range(prec + 1)]
        f = [0] * (prec + 1)
        f[0] = 1
        for k in range(1, prec + 1):
            acc = 0
            for i in range(1, k + 1):
                if a[i] != 0 and f[k - i] != 0:
                    acc = acc + a[i] * f[k - i] * i
            f[k] = acc * Fraction(1, k)
        return QSeries(f, prec, self.var)

    def map(self, fn: Callable) -> QSeries:
        return QSeries({k: fn(c) for k, c in self._c.items()}, self.prec, self.var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.var == other.var and self.prec == other.prec and self._c == other._c

    def agrees_with(self, other: QSeries) -> bool:
        """Equal up to the smaller of the two truncation orders."""
        self._check(other)
        prec = _min_prec(self.prec, other.prec)
        return self.truncate(prec)._c == other.truncate(prec)._c if prec is not None else self._c == other._c

    def first_difference(self, other: QSeries) -> int | None:
        prec = _min_prec(self.prec, other.prec)
        keys = sorted(set(self._c) | set(other._c))
        for k in keys:
            if prec is not None and k > prec:
                break
            if self._c.get(k, 0) != other._c.get(k, 0):
                return k
        return None

    __hash__ = None

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})*{self.var}^{k}" for k, c in self._c.items()) or "0"
        tail = f" + O({self.var}^{self.prec + 1})" if self.prec is not None else ""
        return terms + tail
