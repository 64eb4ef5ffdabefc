"""Coefficient-extraction oracle for the punctual and canonical-class series.

Equivariant weights are realized as powers of one formal variable:
e^{w_i} = z**v_i.  Each q-coefficient is an exact element of Q(y, z) and
the non-equivariant answer is its value at z = 1.

Indices of the N summands run over 0..N-1.  An affine argument
``x = L(h) + (w_a - w_b)`` is described by the coefficients of L and
``zpow = v_b - v_a``, so that ``e^{-x} = z**zpow * e^{-L(h)}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidSpec
from .exactalg import MTrunc, QSeries, RatFunc, YZ, wcoeff_limit

_DEFAULT_WEIGHTS = (0, 1, 3, 7)


@dataclass(frozen=True)
class WeightVector:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(set(self.values)) != len(self.values):
            raise InvalidSpec(f"weights must be pairwise distinct: {self.values}")
        if not self.values:
            raise InvalidSpec("empty weight vector")

    @classmethod
    def default(cls, n: int) -> WeightVector:
        if n < 1:
            raise InvalidSpec("N must be positive")
        if n <= len(_DEFAULT_WEIGHTS):
            return cls(_DEFAULT_WEIGHTS[:n])
        # keep differences distinct beyond the tabulated ones
        return cls(tuple(2**i - 1 for i in range(n)))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]


@dataclass(frozen=True)
class Affine:
    """x = sum(h[i] * hcoeffs[i]) plus a weight shift with e^{-shift} = z**zpow."""

    hcoeffs: tuple[int, ...]
    zpow: int = 0


@dataclass(frozen=True)
class IntegrandSpec:
    """One fixed-locus integrand.

    ``I`` is the set of summands carrying the canonical class (empty for the
    punctual kind); ``m`` lists the degree caps for the summands in J, the
    complement of I, in increasing order.
    """

    n: int
    m: tuple[int, ...]
    kind: str = "punctual"
    I: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "I", frozenset(self.I))
        if self.kind not in ("punctual", "gentype"):
            raise InvalidSpec(f"unknown integrand kind {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec("N must be positive")
        if any(i < 0 or i >= self.n for i in self.I):
            raise InvalidSpec(f"I must be a subset of 0..{self.n - 1}")
        if self.kind == "punctual" and self.I:
            raise InvalidSpec("the punctual integrand has I empty")
        if len(self.m) != len(self.J):
            raise InvalidSpec(f"need {len(self.J)} caps, got {len(self.m)}")
        if any(k < 0 for k in self.m):
            raise InvalidSpec("caps must be nonnegative")

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if j not in self.I)


@dataclass(frozen=True)
class Family:
    kind: str
    n: int
    ell: int = 0

    def __post_init__(self):
        if self.kind not in ("punctual", "gentype"):
            raise InvalidSpec(f"unknown family {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec("N must be positive")
        if not 0 <= self.ell <= self.n:
            raise InvalidSpec(f"ell must lie in [0, {self.n}]")
        if self.kind == "punctual" and self.ell:
            raise InvalidSpec("the punctual family has ell = 0")

    def partitions(self) -> list[tuple[int, ...]]:
        """The index sets J (complements of I, |I| = ell) summed over."""
        return [J for J in itertools.combinations(range(self.n), self.n - self.ell)]


def punctual(n: int) -> Family:
    return Family("punctual", n)


def gentype(n: int, ell: int) -> Family:
    return Family("gentype", n, ell)


# univariate building blocks, as coefficient lists in a formal variable x

_Y = RatFunc.gen(YZ, "y")
_Z = RatFunc.gen(YZ, "z")
_ONE = RatFunc.const(YZ, 1)


@lru_cache(maxsize=None)
def _exp_neg(deg: int) -> tuple[Fraction, ...]:
    """Coefficients of e^{-x}."""
    out = [Fraction(1)]
    for k in range(1, deg + 1):
        out.append(-out[-1] / k)
    return tuple(out)


@lru_cache(maxsize=None)
def xclass_coeffs(deg: int) -> tuple[RatFunc, ...]:
    """Coefficients of X(x) = x (1 - y e^{-x}) / (1 - e^{-x}) through x**deg."""
    e = _exp_neg(deg + 1)
    # (1 - e^{-x}) / x
    todd_inv = QSeries([-e[k + 1] for k in range(deg + 1)], deg, "x")
    todd = todd_inv.inverse()
    numer = QSeries([_ONE - _Y * e[0]] + [-_Y * e[k] for k in range(1, deg + 1)], deg, "x")
    prod = numer * todd.map(lambda c: RatFunc.const(YZ, c))
    return tuple(prod.coefficient(k) if prod.coefficient(k) != 0 else RatFunc.const(YZ, 0)
                 for k in range(deg + 1))


@lru_cache(maxsize=None)
def unit_coeffs(zpow: int, deg: int, invert: bool = False) -> tuple[RatFunc, ...]:
    """Coefficients of (1 - y c e^{-x}) / (1 - c e^{-x}), c = z**zpow (or its reciprocal)."""
    if zpow == 0:
        raise ValueError("the shifted unit needs a nonzero z exponent")
    c = _Z**zpow
    e = _exp_neg(deg)
    a = QSeries([_ONE - _Y * c] + [-_Y * c * e[k] for k in range(1, deg + 1)], deg, "x")
    b = QSeries([_ONE - c] + [-c * e[k] for k in range(1, deg + 1)], deg, "x")
    if invert:
        a, b = b, a
    ratio = a * b.inverse()
    return tuple(ratio.coefficient(k) if ratio.coefficient(k) != 0 else RatFunc.const(YZ, 0)
                 for k in range(deg + 1))


def xclass(arg: Affine, caps: Sequence[int], total: int | None = None, *, invert: bool = False) -> MTrunc:
    """Truncated expansion of X(x) (shift 0) or of X(x)/x (shift != 0).

    With ``invert`` the reciprocal x/X(x) of the shifted unit is returned.
    """
    caps = tuple(caps)
    if len(arg.hcoeffs) != len(caps):
        raise InvalidSpec("argument and caps disagree on the number of variables")
    lin = MTrunc.linear(arg.hcoeffs, caps, total)
    deg = sum(caps) if total is None else min(total, sum(caps))
    if arg.zpow == 0:
        nonzero = [c for c in arg.hcoeffs if c]
        if invert:
            raise InvalidSpec("only shifted arguments have an inverted form here")
        if not nonzero:
            return MTrunc.const(_ONE - _Y, caps, total)
        if len(nonzero) != 1:
            raise InvalidSpec("an unshifted argument must be a single h-variable")
        return lin.compose(xclass_coeffs(deg))
    return lin.compose(unit_coeffs(arg.zpow, deg, invert))


def _hvec(n: int, entries: dict[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for i, c in entries.items():
        v[i] += c
    return tuple(v)


def phi_series(j: int, n: int, w: WeightVector, deg: int) -> MTrunc:
    """Phi_j = X(-h_j) * prod_{k != j} X(-h_j + w_j - w_k)/(-h_j + w_j - w_k), in one variable."""
    caps = (deg,)
    out = xclass(Affine((-1,)), caps)
    for k in range(n):
        if k != j:
            out = out * xclass(Affine((-1,), w[k] - w[j]), caps)
    return out


def psi_series(n: int, J: Sequence[int], w: WeightVector, caps: Sequence[int],
               total: int | None = None) -> MTrunc:
    """Psi for the partition with summands J carrying h-variables (positions in J order)."""
    caps = tuple(caps)
    s = len(J)
    out = MTrunc.const(_ONE, caps, total)
    for p, j in enumerate(J):
        out = out * xclass(Affine(_hvec(s, {p: 1})), caps, total)
        for k in range(n):
            if k != j:
                # X(h_j - w_j + w_k)/(h_j - w_j + w_k)
                out = out * xclass(Affine(_hvec(s, {p: 1}), w[j] - w[k]), caps, total)
    for p1, j1 in enumerate(J):
        for p2, j2 in enumerate(J):
            if j1 != j2:
                # (h_j1 - h_j2 - w_j1 + w_j2)/X(same)
                arg = Affine(_hvec(s, {p1: 1, p2: -1}), w[j1] - w[j2])
                out = out * xclass(arg, caps, total, invert=True)
    return out


def _normalizer(s: int) -> RatFunc:
    return (_ONE - _Y) ** (-s)


def build_integrand(spec: IntegrandSpec, w: WeightVector | None = None) -> MTrunc:
    """prod_j Phi_j^{m_j} * Psi / (1-y)^s, truncated at the caps m."""
    w = WeightVector.default(spec.n) if w is None else w
    if len(w) != spec.n:
        raise InvalidSpec(f"need {spec.n} weights, got {len(w)}")
    J = spec.J
    caps = spec.m
    s = len(J)
    out = psi_series(spec.n, J, w, caps)
    for p, (j, mj) in enumerate(zip(J, caps)):
        if mj == 0:
            continue
        phi = phi_series(j, spec.n, w, mj) ** mj
        # lift the univariate series into slot p
        lifted = MTrunc({_hvec(s, {p: e[0]}): c for e, c in phi.terms.items()}, caps)
        out = out * lifted
    return out.scale(_normalizer(s))


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """Vectors of `parts` nonnegative integers summing to `total`, in lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def equivariant_coefficients(family: Family, T: int, w: WeightVector | None = None,
                             partitions: Sequence[Sequence[int]] | None = None) -> list[RatFunc]:
    """q-coefficients 0..T as elements of Q(y, z), summed over the partitions."""
    if T < 0:
        raise InvalidSpec("T must be nonnegative")
    n = family.n
    w = WeightVector.default(n) if w is None else w
    if len(w) != n:
        raise InvalidSpec(f"need {n} weights, got {len(w)}")
    parts = family.partitions() if partitions is None else [tuple(J) for J in partitions]
    totals = [RatFunc.const(YZ, 0) for _ in range(T + 1)]
    for J in parts:
        s = len(J)
        caps = (T,) * s
        psi = psi_series(n, J, w, caps, T)
        phis = [phi_series(j, n, w, T) for j in J]
        # phi_pows[p][k][a] = [h^a] Phi_{J[p]}^k
        phi_pows = []
        for phi in phis:
            row = []
            acc = MTrunc.const(_ONE, (T,))
            for k in range(T + 1):
                if k:
                    acc = acc * phi
                row.append([acc.terms.get((a,), 0) for a in range(T + 1)])
            phi_pows.append(row)
        norm = _normalizer(s)
        for deg in range(T + 1):
            acc = RatFunc.const(YZ, 0)
            for m in _compositions(deg, s):
                for a in itertools.product(*(range(mi + 1) for mi in m)):
                    b = tuple(mi - ai for mi, ai in zip(m, a))
                    coeff = psi.terms.get(b, 0)
                    if coeff == 0:
                        continue
                    for p in range(s):
                        coeff = coeff * phi_pows[p][m[p]][a[p]]
                        if coeff == 0:
                            break
                    if coeff != 0:
                        acc = acc + coeff
            if acc != 0:
                sign = -1 if deg % 2 else 1
                totals[deg] = totals[deg] + acc * norm * sign
    return totals


def oracle_series(family: Family, T: int, w: WeightVector | None = None) -> QSeries:
    """sum over m of (-q)^{|m|} [h^m] (integrand), summed over partitions, then z -> 1."""
    coeffs = equivariant_coefficients(family, T, w)
    return QSeries({k: wcoeff_limit(c) for k, c in enumerate(coeffs)}, T, "q")


@dataclass(frozen=True)
class Comparison:
    match: bool
    first_mismatch: int | None
    left: QSeries
    right: QSeries

    def __bool__(self) -> bool:
        return self.match

    def diff(self) -> list[tuple[int, str, str]]:
        keys = sorted(set(self.left.coefficients()) | set(self.right.coefficients()))
        return [(k, str(self.left[k]), str(self.right[k])) for k in keys
                if self.left[k] != self.right[k]]


def compare_series(a: QSeries, b: QSeries) -> Comparison:
    k = a.first_difference(b)
    return Comparison(k is None, k, a, b)


def weight_independence_check(family: Family, T: int, w1: WeightVector, w2: WeightVector) -> Comparison:
    return compare_series(oracle_series(family, T, w1), oracle_series(family, T, w2))


def closed_form_series(family: Family, T: int) -> QSeries:
    """The series the oracle must reproduce: 1/Ubar_N or Bl_{N, ell}."""
    from .closedforms import bl, ubar

    if family.kind == "punctual":
        return ubar(family.n).inverse().series(T)
    return bl(family.n, family.ell).series(T)
