"""Named verification checks aggregated by ``verify-all``."""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Callable

from . import closedforms, k3, localization, surfaces
from .errors import InvalidSpec, PoleAtOne, QuotError
from .exactalg import QRatFun, pade_reconstruct

_q = QRatFun.gen()
_y = QRatFun.y()

# Displayed polynomials, entered coefficient by coefficient.
PN_TABLE = {
    1: QRatFun.const(1),
    2: 1 - (1 + 4 * _y + _y**2) * _q + _y**2 * _q**2,
    3: (1 - (2 + 9 * _y + 9 * _y**2 + 2 * _y**3) * _q
        + (1 + 9 * _y + 36 * _y**2 + 58 * _y**3 + 36 * _y**4 + 9 * _y**5 + _y**6) * _q**2
        - (2 + 9 * _y + 9 * _y**2 + 2 * _y**3) * _y**3 * _q**3
        + _y**6 * _q**4),
}

ALT_WEIGHTS = (0, 2, 5, 11)


@dataclass(frozen=True)
class Verdict:
    check: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"check": self.check, "pass": self.passed, "detail": self.detail}


def max_workers() -> int:
    raw = os.environ.get("QUOTGENERA_MAX_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def check_pn_tables(order: int) -> tuple[bool, str]:
    bad = [n for n in (2, 3) if closedforms.pn(n) != PN_TABLE[n]]
    return not bad, "P_2, P_3 match the tables" if not bad else f"mismatch at N={bad}"


def check_functional_equation(order: int) -> tuple[bool, str]:
    bad = [n for n in range(1, 6) if not closedforms.functional_equation_check(n, closedforms.pn(n))]
    return not bad, "N <= 5" if not bad else f"fails at N={bad}"


def _oracle_cases(order: int):
    return [(1, max(order, 6)), (2, order), (3, min(order, 4))]


def check_oracle_punctual(order: int) -> tuple[bool, str]:
    out = []
    for n, T in _oracle_cases(order):
        fam = localization.punctual(n)
        cmp = localization.compare_series(localization.oracle_series(fam, T),
                                          localization.closed_form_series(fam, T))
        if not cmp:
            return False, f"N={n}, T={T}: first mismatch at q^{cmp.first_mismatch}"
        out.append(f"({n},{T})")
    return True, "oracle equals 1/Ubar_N for " + ", ".join(out)


def check_weight_independence(order: int) -> tuple[bool, str]:
    T = min(order, 4)
    for n in (1, 2, 3):
        fam = localization.punctual(n)
        w1 = localization.WeightVector.default(n)
        w2 = localization.WeightVector(tuple(x + 5 for x in ALT_WEIGHTS[:n]) if n == 1 else ALT_WEIGHTS[:n])
        if not localization.weight_independence_check(fam, T, w1, w2):
            return False, f"weights {w1.values} and {w2.values} disagree at N={n}"
    return True, f"two weight vectors agree for N <= 3, T={T}"


def check_regularity(order: int) -> tuple[bool, str]:
    try:
        for n, T in _oracle_cases(order):
            localization.oracle_series(localization.punctual(n), T,
                                       localization.WeightVector(ALT_WEIGHTS[:n]))
    except PoleAtOne as exc:
        return False, f"pole at z=1: {exc}"
    return True, "no pole at coinciding weights"


def check_blowup_closed_forms(order: int) -> tuple[bool, str]:
    for n in range(1, 5):
        if closedforms.bl(n, n) != 1:
            return False, f"Bl_{{{n},{n}}} != 1"
        if closedforms.bl(n, n - 1) != closedforms.bl_corank_one(n):
            return False, f"Bl_{{{n},{n - 1}}} differs from the explicit form"
    return True, "Bl_{N,N} = 1 and Bl_{N,N-1} explicit for N <= 4"


def check_gentype_oracle(order: int) -> tuple[bool, str]:
    T = min(order, 3)
    for n in (1, 2):
        for ell in range(n + 1):
            fam = localization.gentype(n, ell)
            cmp = localization.compare_series(localization.oracle_series(fam, T),
                                              localization.closed_form_series(fam, T))
            if not cmp:
                return False, f"N={n}, ell={ell}: first mismatch at q^{cmp.first_mismatch}"
    return True, f"oracle equals Bl_(N,ell) for N <= 2, T={T}"


def check_structural(order: int) -> tuple[bool, str]:
    for n in (1, 2, 3):
        if closedforms.aj_power_sum(n, n, 1) * closedforms.ubar(n) != 1:
            return False, f"A-sum times Ubar_{n} != 1"
        for K2 in (-1, 0, 1):
            lhs = surfaces.z_blowup(surfaces.z_punctual(n, K2), n, 0)
            if lhs != surfaces.z_punctual(n, K2 - 1):
                return False, f"blow-up at ell=0 fails for N={n}, K2={K2}"
    return True, "N <= 3, K^2 in {-1, 0, 1}"


def check_ky_identity(order: int) -> tuple[bool, str]:
    G = max(order, 2)
    ok = k3.ky_identity_check(G)
    return ok, f"theta quotient equals product through q^{G}"


def check_reduced_punctual(order: int) -> tuple[bool, str]:
    f = k3.reduced_punctual(order)
    t = QRatFun.gen("t")
    euler = f.at_y(1) == 24 * t / (1 - t) ** 2
    return euler, "matches the closed form; y=1 gives 24t/(1-t)^2" if euler else "y=1 limit differs"


def naive_elliptic(n: int, c, chi: int, gC: int, mults=()) -> int:
    """Enumerate N-tuples of fiber classes d F + sum a_j F_j summing to c."""
    c = Fraction(c)
    e = 2 * gC - 2 + chi
    singles = []
    for d in range(int(c) + 1):
        for a in itertools.product(*(range(m) for m in mults)):
            v = d + sum((Fraction(x, m) for x, m in zip(a, mults)), Fraction(0))
            if v <= c:
                sign = (-1) ** d
                binom = 1 if d == 0 else (comb(e, d) if e >= 0 else sign * comb(d - e - 1, d))
                singles.append((v, sign * binom))
    total = 0
    for combo in itertools.product(singles, repeat=n):
        if sum(v for v, _ in combo) == c:
            prod = 1
            for _, s in combo:
                prod *= s
            total += prod
    return total


def elliptic_configs(seed: int = 20240601, count: int = 10):
    rng = random.Random(seed)
    pool = [(), (2,), (3,), (2, 3), (6,), (2, 2)]
    out = []
    while len(out) < count:
        mults = rng.choice(pool)
        L = lcm(*mults) if mults else 1
        c = Fraction(rng.randint(0, 3 * L), L)
        out.append((rng.randint(1, 3), c, rng.randint(-1, 3), rng.randint(0, 2), mults))
    return out


def check_elliptic_bruteforce(order: int) -> tuple[bool, str]:
    for n, c, chi, gC, mults in elliptic_configs():
        a = surfaces.z_elliptic(n, c, chi, gC, mults)
        b = naive_elliptic(n, c, chi, gC, mults)
        if a != b:
            return False, f"N={n}, c={c}, chi={chi}, g={gC}, mults={mults}: {a} vs {b}"
    return True, "10 seeded configurations agree with tuple enumeration"


def closed_form_functions() -> dict[str, QRatFun]:
    out = {f"P_{n}": closedforms.pn(n) for n in (2, 3)}
    out.update({f"Ubar_{n}": closedforms.ubar(n) for n in (1, 2, 3)})
    for n in (1, 2, 3):
        for ell in range(n + 1):
            out[f"Bl_{n},{ell}"] = closedforms.bl(n, ell)
    out["G_2,1,2"] = closedforms.g_series(2, 1, 2)
    out["T_red"] = k3.tred_closed_form()
    return out


def pade_roundtrip(f: QRatFun, extra: int = 6) -> bool:
    dn, dd = f.degrees()
    prec = f.qshift + dn + dd + 1 + extra
    res = pade_reconstruct(f.series(prec), dn, dd)
    return res.ratfun == f


def check_pade_roundtrip(order: int) -> tuple[bool, str]:
    fns = closed_form_functions()
    bad = [name for name, f in fns.items() if not pade_roundtrip(f)]
    return not bad, f"{len(fns)} functions re-verify" if not bad else f"fails for {bad}"


def check_euler_specialization(order: int) -> tuple[bool, str]:
    for n in (1, 2, 3):
        try:
            closedforms.ubar(n).at_y(1)
        except ZeroDivisionError:
            return False, f"Ubar_{n} has a pole at y=1"
    ok = closedforms.ubar(1).at_y(1) == (1 - _q) ** 2 / (1 - 2 * _q)
    return ok, "Ubar_N|_{y=1} defined for N <= 3; N=1 gives (1-q)^2/(1-2q)"


def check_shift_roundtrip(order: int) -> tuple[bool, str]:
    s = k3.ky_coefficient(1).t_series(order)
    back = k3.shift_convert(k3.shift_convert(s, 1, "to-unshifted"), 1, "to-shifted")
    return back == s, "to-shifted after to-unshifted is the identity"


CHECKS: dict[str, Callable[[int], tuple[bool, str]]] = {
    "pn-tables": check_pn_tables,
    "functional-equation": check_functional_equation,
    "oracle-punctual": check_oracle_punctual,
    "weight-independence": check_weight_independence,
    "regularity": check_regularity,
    "blowup-closed-forms": check_blowup_closed_forms,
    "gentype-oracle": check_gentype_oracle,
    "structural-identities": check_structural,
    "theta-product": check_ky_identity,
    "reduced-punctual": check_reduced_punctual,
    "elliptic-bruteforce": check_elliptic_bruteforce,
    "pade-roundtrip": check_pade_roundtrip,
    "euler-specialization": check_euler_specialization,
    "shift-roundtrip": check_shift_roundtrip,
}


def _run_one(name: str, order: int) -> Verdict:
    try:
        ok, detail = CHECKS[name](order)
    except QuotError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Verdict(name, bool(ok), detail)


def verify_all(order: int = 5) -> tuple[list[Verdict], float]:
    """Run every check at the given order; returns verdicts in a fixed order and elapsed seconds."""
    if order < 3:
        raise InvalidSpec("order must be at least 3")
    start = time.perf_counter()
    names = list(CHECKS)
    workers = max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(lambda n: _run_one(n, order), names))
    else:
        verdicts = [_run_one(n, order) for n in names]
    return verdicts, time.perf_counter() - start
