"""Truncated multivariate power series in h_1..h_n with per-variable degree caps."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import ExpOfUnit, ExponentOutOfRange, VariableMismatch


class MTrunc:
    """Sparse map exponent-vector -> coefficient, kept below ``caps`` (and ``total``).

    ``total`` optionally bounds the total degree as well.
    """

    __slots__ = ("caps", "total", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], object], caps: Sequence[int],
                 total: int | None = None):
        self.caps = tuple(caps)
        self.total = total
        self.terms = {e: c for e, c in terms.items() if c != 0 and self._fits(e)}

    def _fits(self, e: tuple[int, ...]) -> bool:
        if len(e) != len(self.caps):
            raise ExponentOutOfRange(f"exponent {e} has wrong length for caps {self.caps}")
        if any(a > m or a < 0 for a, m in zip(e, self.caps)):
            return False
        return self.total is None or sum(e) <= self.total

    @property
    def nvars(self) -> int:
        return len(self.caps)

    def _like(self, terms) -> MTrunc:
        obj = MTrunc.__new__(MTrunc)
        obj.caps, obj.total, obj.terms = self.caps, self.total, terms
        return obj

    @classmethod
    def const(cls, c, caps: Sequence[int], total: int | None = None) -> MTrunc:
        return cls({(0,) * len(caps): c}, caps, total)

    @classmethod
    def var(cls, i: int, caps: Sequence[int], total: int | None = None) -> MTrunc:
        e = [0] * len(caps)
        e[i] = 1
        return cls({tuple(e): 1}, caps, total)

    @classmethod
    def linear(cls, coeffs: Sequence[int], caps: Sequence[int], total: int | None = None) -> MTrunc:
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * len(caps)
                e[i] = 1
                terms[tuple(e)] = c
        return cls(terms, caps, total)

    def _check(self, other: MTrunc) -> None:
        if other.caps != self.caps or other.total != self.total:
            raise VariableMismatch(f"caps {self.caps}/{self.total} vs {other.caps}/{other.total}")

    def extract(self, e: Sequence[int]):
        e = tuple(e)
        if len(e) != len(self.caps) or any(a > m or a < 0 for a, m in zip(e, self.caps)):
            raise ExponentOutOfRange(f"{e} outside caps {self.caps}")
        if self.total is not None and sum(e) > self.total:
            raise ExponentOutOfRange(f"{e} beyond total degree {self.total}")
        return self.terms.get(e, 0)

    def constant_term(self):
        return self.terms.get((0,) * len(self.caps), 0)

    def __add__(self, other) -> MTrunc:
        if not isinstance(other, MTrunc):
            other = MTrunc.const(other, self.caps, self.total)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s != 0:
                out[e] = s
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> MTrunc:
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MTrunc:
        if not isinstance(other, MTrunc):
            other = MTrunc.const(other, self.caps, self.total)
        return self + (-other)

    def scale(self, c) -> MTrunc:
        if c == 0:
            return self._like({})
        return self._like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> MTrunc:
        if not isinstance(other, MTrunc):
            return self.scale(other)
        self._check(other)
        caps, total = self.caps, self.total
        n = len(caps)
        out: dict[tuple[int, ...], object] = {}
        right = sorted(other.terms.items(), key=lambda kv: sum(kv[0]))
        for ea, ca in self.terms.items():
            sa = sum(ea)
            for eb, cb in right:
                if total is not None and sa + sum(eb) > total:
                    break
                e = tuple(ea[i] + eb[i] for i in range(n))
                if any(e[i] > caps[i] for i in range(n)):
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return self._like({e: c for e, c in out.items() if c != 0})

    def __rmul__(self, other) -> MTrunc:
        return self.scale(other)

    def __pow__(self, k: int) -> MTrunc:
        if k < 0:
            return self.inverse() ** (-k)
        result = MTrunc.const(1, self.caps, self.total)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _max_degree(self) -> int:
        bound = sum(self.caps)
        return bound if self.total is None else min(bound, self.total)

    def compose(self, coeffs: Sequence) -> MTrunc:
        """sum(coeffs[k] * self**k); self must have zero constant term."""
        if self.constant_term() != 0:
            raise ValueError("composition needs an argument without constant term")
        result = self._like({})
        power = MTrunc.const(1, self.caps, self.total)
        for k, c in enumerate(coeffs[: self._max_degree() + 1]):
            if k:
                power = power * self
                if not power.terms:
                    break
            if c != 0:
                result = result + power.scale(c)
        return result

    def exp(self) -> MTrunc:
        if self.constant_term() != 0:
            raise ExpOfUnit("exp needs zero constant term")
        d = self._max_degree()
        coeffs = [Fraction(1)]
        for k in range(1, d + 1):
            coeffs.append(coeffs[-1] / k)
        return self.compose(coeffs)

    def inverse(self) -> MTrunc:
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("constant term is not invertible")
        inv0 = 1 / (Fraction(c0) if isinstance(c0, int) else c0)
        rest = (self - MTrunc.const(c0, self.caps, self.total)).scale(inv0)
        d = self._max_degree()
        # 1/(c0 (1 + r)) = inv0 * sum (-r)^k
        return rest.compose([(-1) ** k for k in range(d + 1)]).scale(inv0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MTrunc):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * len(self.caps): other} if other != 0 else not self.terms
        return self.caps == other.caps and self.total == other.total and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*h^{e}" for e, c in sorted(self.terms.items())) or "0"
        return f"MTrunc[{body}; caps={self.caps}, total={self.total}]"
