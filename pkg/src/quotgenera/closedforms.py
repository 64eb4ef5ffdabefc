"""Closed-form universal series, computed symmetrically in the roots of t^N = q.

All values are QRatFun in q over Q(y).  The roots t_i = zeta^(i-1) s live in
the root field Q(zeta_N)(y, q)[s]/(s^N - q); symmetric expressions are
descended back to Q(y)(q).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .errors import InvalidSpec, NotGaloisInvariant
from .exactalg import QRatFun, RootFieldElem, YQ, root_field
from .exactalg.rings import RatFunc

_q = QRatFun.gen()
_y = QRatFun.y()


def roots(n: int) -> list[RootFieldElem]:
    F = root_field(n)
    return [F.root(i) for i in range(1, n + 1)]


def _check_n(n: int) -> None:
    if n < 1:
        raise InvalidSpec("N must be positive")


def _pair_factor(F, ti, tj) -> RootFieldElem:
    """1 - (1+y) t_i + y t_i t_j."""
    y = F.y
    return 1 - (1 + y) * ti + y * ti * tj


def _descend(x: RootFieldElem, what: str) -> QRatFun:
    try:
        return x.descend()
    except NotGaloisInvariant as exc:
        raise NotGaloisInvariant(f"{what} failed to descend: {exc}") from None


@lru_cache(maxsize=None)
def pn(n: int) -> QRatFun:
    """prod_{i != j} (1 - (1+y) t_i + y t_i t_j); a polynomial in q and y."""
    _check_n(n)
    F = root_field(n)
    t = roots(n)
    acc = F.const(1)
    for i in range(n):
        for j in range(n):
            if i != j:
                acc = acc * _pair_factor(F, t[i], t[j])
    return _descend(acc, f"P_{n}")


@lru_cache(maxsize=None)
def ubar(n: int) -> QRatFun:
    _check_n(n)
    lead = (1 - _q) * (1 - _y**n * _q) / (1 - (1 + _y) ** n * _q) ** n
    return lead * pn(n)


def _aj_parts(n: int, J: tuple[int, ...]) -> tuple[RootFieldElem, RootFieldElem]:
    """(numerator, denominator) in the root field with A_J = numerator / denominator."""
    F = root_field(n)
    t = roots(n)
    y = F.y
    s = len(J)
    num = F.const((-1) ** (s * (n + 1)))
    den = F.const(YQ.const(n**s) * YQ.gen("q") ** s)
    for j in J:
        num = num * t[j] * (1 - (1 + y) * t[j]) ** n
        den = den * (1 - t[j]) * (1 - y * t[j])
    for j1 in J:
        for j2 in J:
            if j1 != j2:
                num = num * (t[j2] - t[j1])
                den = den * _pair_factor(F, t[j1], t[j2])
    return num, den


def aj_term(n: int, J: tuple[int, ...], e: int = 1) -> RootFieldElem:
    """A_J ** e as an element of the root field (J uses indices 0..N-1)."""
    if not J:
        return root_field(n).const(1)
    num, den = _aj_parts(n, tuple(J))
    if e >= 0:
        return num**e * den.inverse() ** e
    return den ** (-e) * num.inverse() ** (-e)


@lru_cache(maxsize=None)
def aj_power_sum(n: int, s: int, e: int) -> QRatFun:
    """sum over |J| = s of A_J ** e, descended to Q(y)(q)."""
    _check_n(n)
    if not 0 <= s <= n:
        raise InvalidSpec(f"subset size must lie in [0, {n}]")
    if s == 0 or e == 0:
        return QRatFun.const(comb(n, s))
    F = root_field(n)
    acc = F.const(0)
    for J in itertools.combinations(range(n), s):
        acc = acc + aj_term(n, J, e)
    return _descend(acc, f"sum of A_J^{e} over |J|={s}")


def bl(n: int, ell: int) -> QRatFun:
    _check_n(n)
    if not 0 <= ell <= n:
        raise InvalidSpec(f"ell must lie in [0, {n}]")
    return aj_power_sum(n, n - ell, 1)


def bl_corank_one(n: int) -> QRatFun:
    """The explicit form of Bl_{N, N-1}."""
    _check_n(n)
    yn = _y**n
    return ((1 - yn) - (1 - yn * yn) * _q) / ((1 - _y) * (1 - _q) * (1 - yn * _q))


def g_series(n: int, ell: int, g: int) -> QRatFun:
    _check_n(n)
    if not 0 <= ell <= n:
        raise InvalidSpec(f"ell must lie in [0, {n}]")
    if g < 1:
        raise InvalidSpec("g must be at least 1")
    return aj_power_sum(n, n - ell, 1 - g)


def functional_equation_check(n: int, p: QRatFun | None = None) -> bool:
    """P_N(q, y) == (y^N q^2)^(N-1) P_N(1/q, 1/y) as polynomials."""
    p = pn(n) if p is None else p
    if not p.is_polynomial():
        return False
    dy = n * (n - 1)
    dq = 2 * (n - 1)
    shift = p.qshift
    terms = {}
    for (a, b), c in YQ.terms(p.num).items():
        terms[(a, b + shift)] = c
    mirrored = {}
    for (a, b), c in terms.items():
        if a > dy or b > dq:
            return False
        mirrored[(dy - a, dq - b)] = c
    return mirrored == terms


def pn_coefficients(n: int) -> list[RatFunc]:
    """Coefficients of P_N in q, lowest first, as polynomials in y."""
    p = pn(n)
    num, den = p.coeff_lists()
    assert len(den) == 1 and p.qshift == 0
    return num
