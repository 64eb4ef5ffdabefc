"""Generating series of Quot-scheme invariants for specific surface classes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Mapping, Sequence

from .closedforms import bl, g_series, ubar
from .errors import InvalidSpec, NonrepresentableClass, UnsupportedGeometry
from .exactalg import QRatFun

_q = QRatFun.gen()


class Vanishing(QRatFun):
    """The zero series, tagged with the reason it vanishes."""

    __slots__ = ("reason",)

    def __init__(self, reason: str):
        super().__init__(0)
        self.reason = reason

    def __repr__(self) -> str:
        return f"Vanishing({self.reason!r})"


def gbinom(n: int, d: int) -> int:
    """n(n-1)...(n-d+1)/d!, defined for every integer n and d >= 0."""
    if d < 0:
        return 0
    num = 1
    for i in range(d):
        num *= n - i
    return num // factorial(d)


@dataclass(frozen=True)
class FiberClass:
    """d F + sum_j a_j F_j with 0 <= a_j < m_j."""

    d: int
    a: tuple[int, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        if self.d < 0:
            raise InvalidSpec("d must be nonnegative")
        if len(self.a) != len(self.mults):
            raise InvalidSpec("one a_j per multiple fiber")
        if any(not 0 <= a < m for a, m in zip(self.a, self.mults)):
            raise InvalidSpec("need 0 <= a_j < m_j")

    @property
    def value(self) -> Fraction:
        return self.d + sum((Fraction(a, m) for a, m in zip(self.a, self.mults)), Fraction(0))


def fiber_representations(c, mults: Sequence[int]) -> list[FiberClass]:
    """All (d, a) with d + sum a_j/m_j = c."""
    c = Fraction(c)
    mults = tuple(mults)
    if any(m < 2 for m in mults):
        raise InvalidSpec("multiplicities must be at least 2")
    out = []
    if c < 0:
        return out
    for a in itertools.product(*(range(m) for m in mults)):
        rest = c - sum((Fraction(x, m) for x, m in zip(a, mults)), Fraction(0))
        if rest >= 0 and rest.denominator == 1:
            out.append(FiberClass(int(rest), tuple(a), mults))
    return out


def is_representable(c, mults: Sequence[int]) -> bool:
    return bool(fiber_representations(c, mults))


def sw_fiber(c, chi: int, gC: int, mults: Sequence[int] = (), *, strict: bool = False) -> int:
    """Seiberg-Witten invariant of the fiber class with rational multiple c of F.

    Sums (-1)^d binom(2 gC - 2 + chi, d) over all representations.  A class
    that is not a sum of fiber components gives 0, or raises with ``strict``.
    """
    reps = fiber_representations(c, mults)
    if not reps:
        if strict:
            raise NonrepresentableClass(f"{c} is not a sum of fiber components for mults {list(mults)}")
        return 0
    n = 2 * gC - 2 + chi
    return sum((-1) ** r.d * gbinom(n, r.d) for r in reps)


def _fiber_denominator(mults: Sequence[int]) -> int:
    return lcm(*mults) if mults else 1


def z_elliptic(n: int, c, chi: int, gC: int, mults: Sequence[int] = ()) -> int:
    """sum over ordered c_1 + ... + c_N = c of prod_i SW(c_i F)."""
    if n < 1:
        raise InvalidSpec("N must be positive")
    c = Fraction(c)
    L = _fiber_denominator(mults)
    scaled = c * L
    if c < 0 or scaled.denominator != 1:
        return 0
    total = int(scaled)
    sw = {k: sw_fiber(Fraction(k, L), chi, gC, mults) for k in range(total + 1)}
    acc = 0
    for parts in _compositions(total, n):
        prod = 1
        for k in parts:
            prod *= sw[k]
            if not prod:
                break
        acc += prod
    return acc


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def z_punctual(n: int, K2: int) -> QRatFun:
    return ubar(n) ** K2


def z_gentype(n: int, ell: int, K2: int, chi: int) -> QRatFun:
    """q^(-ell K2) SW(K)^ell G_{N, ell, K2+1} with SW(K) = (-1)^chi."""
    if not 0 <= ell <= n:
        return Vanishing(f"a multiple ell={ell} of K outside [0, {n}] has no invariants")
    if K2 < 1:
        raise InvalidSpec("minimal general type needs K^2 >= 1")
    sign = -1 if (chi * ell) % 2 else 1
    return _q ** (-ell * K2) * g_series(n, ell, K2 + 1) * sign


def z_blowup(z: QRatFun, n: int, ell: int) -> QRatFun:
    """Series after blowing up a point, for the class pulled back plus ell E."""
    if not 0 <= ell <= n:
        return Vanishing(f"exceptional multiple ell={ell} outside [0, {n}]")
    if isinstance(z, Vanishing):
        return z
    return _q**ell * bl(n, ell) * z


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str
    k2: int = 0
    chi: int = 0
    gC: int = 0
    mults: tuple[int, ...] = ()
    blowups: tuple[int, ...] = field(default=())

    KINDS = ("abstract", "elliptic", "general_type", "k3", "abelian")

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))
        object.__setattr__(self, "blowups", tuple(self.blowups))
        if self.kind not in self.KINDS:
            raise InvalidSpec(f"unknown surface kind {self.kind!r}")
        if any(m < 2 for m in self.mults):
            raise InvalidSpec("multiplicities must be at least 2")
        if self.kind == "k3":
            if self.k2 != 0 or self.chi not in (0, 2):
                raise InvalidSpec("a K3 surface has K^2 = 0 and chi = 2")
            object.__setattr__(self, "chi", 2)
        if self.kind == "abelian" and (self.k2, self.chi) != (0, 0):
            raise InvalidSpec("an abelian surface has K^2 = 0 and chi = 0")
        if self.kind == "elliptic" and self.k2:
            raise InvalidSpec("a relatively minimal elliptic surface has K^2 = 0")

    @classmethod
    def from_json(cls, data: Mapping) -> SurfaceSpec:
        """Blow-ups may be listed as ``{"ell": k}`` objects or as bare integers."""
        try:
            kind = data["kind"]
            chi = data.get("chi", 2 if kind == "k3" else 0)
            blowups = tuple(int(b["ell"] if isinstance(b, Mapping) else b) for b in data.get("blowups", ()))
            return cls(
                kind=kind,
                k2=int(data.get("k2", 0)),
                chi=int(chi),
                gC=int(data.get("base_genus", data.get("gC", 0))),
                mults=tuple(int(m) for m in data.get("mults", ())),
                blowups=blowups,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed surface description: {exc!r}") from None


@dataclass(frozen=True)
class Assembly:
    value: QRatFun | int
    trace: tuple[str, ...]


def assemble(spec: SurfaceSpec, n: int, cls: Mapping | None = None) -> Assembly:
    """Series of the minimal model for the class ``cls``, folded through the blow-ups.

    ``cls`` is ``{"type": "punctual"}`` (default), ``{"type": "canonical", "ell": l}``
    or ``{"type": "fiber", "c": "3/2"}``.
    """
    cls = dict(cls or {"type": "punctual"})
    ctype = cls.get("type", "punctual")
    trace = []
    if ctype == "punctual":
        K2 = spec.k2
        value: QRatFun | int = z_punctual(n, K2)
        trace.append(f"punctual: Ubar_{n}^{K2}")
    elif ctype == "fiber":
        if spec.kind not in ("elliptic", "k3"):
            raise UnsupportedGeometry(f"fiber classes need an elliptic surface, not {spec.kind}")
        c = Fraction(cls["c"])
        const = z_elliptic(n, c, spec.chi, spec.gC, spec.mults)
        trace.append(f"elliptic fiber class c={c}: product of SW invariants, constant {const}")
        value = QRatFun.const(const)
    elif ctype == "canonical":
        ell = int(cls["ell"])
        if spec.kind != "general_type":
            raise UnsupportedGeometry(f"canonical multiples are resolved only on general type, not {spec.kind}")
        value = z_gentype(n, ell, spec.k2, spec.chi)
        trace.append(f"canonical multiple ell={ell}: q^(-ell K^2) SW(K)^ell G_{{{n},{ell},{spec.k2 + 1}}}")
    elif ctype == "other":
        if spec.kind in ("general_type", "k3", "abelian"):
            value = Vanishing("classes other than the resolved ones have vanishing invariants")
            trace.append("vanishing: class has no nonzero invariants")
        else:
            raise UnsupportedGeometry(f"class outside the resolved cases on {spec.kind}")
    else:
        raise InvalidSpec(f"unknown class type {ctype!r}")
    for i, ell in enumerate(spec.blowups, 1):
        value = z_blowup(value if isinstance(value, QRatFun) else QRatFun.const(value), n, ell)
        trace.append(f"blow-up {i}: times q^{ell} Bl_{{{n},{ell}}}")
    return Assembly(value, tuple(trace))
