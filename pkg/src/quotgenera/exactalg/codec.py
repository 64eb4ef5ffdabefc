"""Canonical JSON encoding of exact values, and LaTeX display.

Rationals are strings "a/b" (plain "a" when b = 1); polynomials are
``[[exponent, coefficient], ...]`` in ascending exponent order (exponent
vectors for several variables); rational functions are
``{"num": ..., "den": ..., "qshift": k}``.
"""

from __future__ import annotations

from fractions import Fraction

from .qratfun import QRatFun
from .rings import PolyRing, RatFunc, to_fraction
from .series import QSeries


def encode_rational(c) -> str:
    return str(Fraction(c) if not hasattr(c, "p") else to_fraction(c))


def decode_rational(s: str) -> Fraction:
    return Fraction(s)


def encode_poly(p, ring: PolyRing) -> list:
    terms = sorted((tuple(int(x) for x in e), c) for e, c in p.terms())
    if ring.nvars == 1:
        return [[e[0], encode_rational(c)] for e, c in terms]
    return [[list(e), encode_rational(c)] for e, c in terms]


def decode_poly(data: list, ring: PolyRing):
    terms = {}
    for e, c in data:
        key = (e,) if ring.nvars == 1 else tuple(e)
        terms[key] = decode_rational(c)
    return ring.poly(terms)


def encode_ratfunc(f: RatFunc) -> dict:
    return {"type": "ratfunc", "vars": list(f.ring.names),
            "num": encode_poly(f.num, f.ring), "den": encode_poly(f.den, f.ring)}


def decode_ratfunc(data: dict) -> RatFunc:
    ring = PolyRing(tuple(data["vars"]))
    return RatFunc(ring, decode_poly(data["num"], ring), decode_poly(data["den"], ring))


def _encode_coeff(c):
    if isinstance(c, RatFunc):
        return encode_ratfunc(c)
    return encode_rational(c)


def _decode_coeff(c):
    if isinstance(c, dict):
        return decode_ratfunc(c)
    return decode_rational(c)


def encode_qratfun(f: QRatFun) -> dict:
    num, den = f.coeff_lists()
    return {
        "type": "qratfun",
        "var": f.var,
        "num": [[k, encode_ratfunc(c)] for k, c in enumerate(num) if c],
        "den": [[k, encode_ratfunc(c)] for k, c in enumerate(den) if c],
        "qshift": f.qshift,
    }


def decode_qratfun(data: dict) -> QRatFun:
    var = data.get("var", "q")

    def expand(pairs):
        out = []
        for k, c in pairs:
            out.extend([0] * (k + 1 - len(out)))
            out[k] = decode_ratfunc(c)
        return out

    return QRatFun.from_coeffs(expand(data["num"]), expand(data["den"]), data["qshift"], var)


def encode_series(s: QSeries) -> dict:
    return {"type": "series", "var": s.var, "prec": s.prec,
            "coeffs": [[k, _encode_coeff(c)] for k, c in s.items()]}


def decode_series(data: dict) -> QSeries:
    return QSeries({k: _decode_coeff(c) for k, c in data["coeffs"]}, data["prec"], data["var"])


def encode(value):
    if isinstance(value, QRatFun):
        return encode_qratfun(value)
    if isinstance(value, QSeries):
        return encode_series(value)
    if isinstance(value, RatFunc):
        return encode_ratfunc(value)
    if isinstance(value, (int, Fraction)):
        return {"type": "rational", "value": encode_rational(value)}
    raise TypeError(f"no canonical encoding for {type(value).__name__}")


def decode(data):
    kind = data.get("type")
    if kind == "qratfun":
        return decode_qratfun(data)
    if kind == "series":
        return decode_series(data)
    if kind == "ratfunc":
        return decode_ratfunc(data)
    if kind == "rational":
        return decode_rational(data["value"])
    raise ValueError(f"unknown encoded type {kind!r}")


# LaTeX (display only)

def _latex_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _latex_mono(names, e) -> str:
    parts = []
    for n, x in zip(names, e):
        if x == 1:
            parts.append(n)
        elif x:
            parts.append(f"{n}^{{{x}}}")
    return " ".join(parts)


def latex_poly(p, ring: PolyRing) -> str:
    terms = sorted(((tuple(e), to_fraction(c)) for e, c in p.terms()), key=lambda t: (t[0][::-1]))
    if not terms:
        return "0"
    out = []
    for e, c in terms:
        mono = _latex_mono(ring.names, e)
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{_latex_rational(abs(c))} {mono}"
        else:
            body = _latex_rational(abs(c))
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def latex_qratfun(f: QRatFun) -> str:
    num_p, den_p = f.num, f.den
    # display with a positive lowest denominator term
    low = min(((tuple(e)[::-1], c) for e, c in den_p.terms()), key=lambda t: t[0])
    if to_fraction(low[1]) < 0:
        num_p, den_p = -num_p, -den_p
    num = latex_poly(num_p, f.ring)
    pre = ""
    if f.qshift == 1:
        pre = f"{f.var} "
    elif f.qshift:
        pre = f"{f.var}^{{{f.qshift}}} "
    if den_p.is_one():
        return f"{pre}\\left({num}\\right)" if pre else num
    den = latex_poly(den_p, f.ring)
    return f"{pre}\\frac{{{num}}}{{{den}}}"
