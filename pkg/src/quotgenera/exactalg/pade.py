"""Exact rational reconstruction of a truncated series over Q(y)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NoSolution, PadeMismatch
from .qratfun import QRatFun
from .rings import Y, RatFunc
from .series import QSeries


@dataclass(frozen=True)
class PadeResult:
    ratfun: QRatFun
    surplus_verified: int
    rank_deficient: bool


def _as_y(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c if c.ring is Y else c.to_ring(Y)
    return RatFunc.const(Y, c)


def solve_linear(rows: list[list], rhs: list) -> tuple[list, int]:
    """One solution of rows * x = rhs over a field (free variables set to 0) and the rank.

    Raises NoSolution when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            raise NoSolution("inconsistent linear system")
    x = [0] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][-1]
    return x, len(pivots)


def pade_reconstruct(s: QSeries, deg_num: int, deg_den: int) -> PadeResult:
    """P/Q with deg P <= deg_num, deg Q <= deg_den matching every known coefficient of s.

    Degrees refer to s divided by var**valuation.  The smallest denominator
    degree that fits all coefficients is used, with Q(0) = 1.
    """
    if s.prec is None:
        raise ValueError("pade_reconstruct needs a truncated series")
    var = s.var
    v = s.valuation
    if v is None:
        v = 0
    known = s.prec - v + 1
    if known < deg_num + deg_den + 2:
        raise ValueError(f"need {deg_num + deg_den + 2} coefficients beyond the valuation, have {known}")
    c = [_as_y(s.coefficient(v + k)) for k in range(known)]
    M = known - 1

    def cc(k):
        return c[k] if k >= 0 else 0

    for dd in range(deg_den + 1):
        rows = [[cc(k - i) for i in range(1, dd + 1)] for k in range(deg_num + 1, M + 1)]
        rhs = [-cc(k) for k in range(deg_num + 1, M + 1)]
        if dd == 0:
            if any(b != 0 for b in rhs):
                continue
            qs, rank = [], 0
        else:
            try:
                qs, rank = solve_linear(rows, rhs)
            except NoSolution:
                continue
        qcoef = [RatFunc.const(Y, 1)] + [_as_y(x) for x in qs]
        pcoef = []
        for k in range(deg_num + 1):
            acc = RatFunc.const(Y, 0)
            for i in range(min(k, dd) + 1):
                acc = acc + qcoef[i] * cc(k - i)
            pcoef.append(acc)
        f = QRatFun.from_coeffs(pcoef, qcoef, v, var)
        check = f.series(s.prec)
        if check != s.map(_as_y):
            raise PadeMismatch("reconstruction does not reproduce the input series")
        return PadeResult(f, M - deg_num - dd, rank < dd)
    raise NoSolution(f"no rational function of degrees ({deg_num}, {deg_den}) fits the series")


def series_coeffs_as_fractions(s: QSeries) -> dict[int, Fraction]:
    return {k: _as_y(c).to_fraction() for k, c in s.items()}
