"""Exact arithmetic: rational functions, truncated series, cyclotomic and radical extensions."""

from __future__ import annotations

from fractions import Fraction

from ..errors import PoleAtOne
from .cyclo import CycloElem, cyclotomic_poly, euler_phi
from .laurent import LaurentPoly
from .mtrunc import MTrunc
from .pade import PadeResult, pade_reconstruct
from .qratfun import QRatFun, q_poly
from .rings import U, UT, Y, YQ, YT, YZ, PolyRing, RatFunc, wcoeff, ypoly, yrat
from .rootfield import RootField, RootFieldElem, root_field
from .series import QSeries
from .upoly import UPoly

BigRat = Fraction


def wcoeff_limit(a: RatFunc) -> RatFunc:
    """Evaluate an element of Q(y, z) at z = 1, as an element of Q(y)."""
    if a.ring is not YZ:
        a = a.to_ring(YZ)
    den = a.den.subs({"z": 1})
    if den.is_zero():
        raise PoleAtOne(f"denominator {a.den} vanishes at z=1")
    return RatFunc(Y, a.num.subs({"z": 1}).project_to_context(Y.ctx), den.project_to_context(Y.ctx))


__all__ = [
    "BigRat", "CycloElem", "LaurentPoly", "MTrunc", "PadeResult", "PolyRing", "QRatFun", "QSeries",
    "RatFunc", "RootField", "RootFieldElem", "U", "UPoly", "UT", "Y", "YQ", "YT", "YZ",
    "cyclotomic_poly", "euler_phi", "pade_reconstruct", "q_poly", "root_field", "wcoeff",
    "wcoeff_limit", "ypoly", "yrat",
]
