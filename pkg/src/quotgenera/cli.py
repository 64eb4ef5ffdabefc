"""Command-line front end.

Every command prints a JSON report::

    {"command": {...}, "result": ..., "checks": [{"check", "pass", "detail"}], "timing": {...}}

Everything except ``timing`` is deterministic.  Exit status is 0 on success,
1 when a verification fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import closedforms, k3, localization, surfaces
from .errors import InvalidSpec, QuotError, UnsupportedGeometry
from .exactalg import QRatFun
from .exactalg.codec import decode, encode, encode_ratfunc, latex_qratfun
from .exactalg.rings import YQ, to_fraction
from .verification import verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quotgenera", description="Virtual chi_-y genera of Quot schemes on surfaces.")
    p.add_argument("--output", help="write the report to this file instead of standard output")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("punctual", help="Ubar_N^(K^2)")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)

    s = sub.add_parser("elliptic", help="fiber-class constant on an elliptic surface")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--c", type=_fraction, required=True)
    s.add_argument("--chi", type=int, required=True)
    s.add_argument("--base-genus", type=int, default=0)
    s.add_argument("--mults", type=_int_list, default=[])

    s = sub.add_parser("gentype", help="canonical multiples on a minimal surface of general type")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--chi", type=int, required=True)

    s = sub.add_parser("blowup", help="apply the blow-up factor q^ell Bl_{N,ell}")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--pipe", action="store_true", help="read the series to transform as JSON from standard input")

    s = sub.add_parser("assemble", help="series for a surface described by a JSON file")
    s.add_argument("--spec", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--class", dest="cls", default=None, help='class descriptor, e.g. {"type": "fiber", "c": "1"}')

    s = sub.add_parser("closed-form", help="P_N, Ubar_N, Bl_{N,ell} or G_{N,ell,g}")
    s.add_argument("--which", choices=["pn", "ubar", "bl", "g"], required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--ell", type=int)
    s.add_argument("--genus", type=int)
    s.add_argument("--format", choices=["json", "latex", "csv"], default="json")

    s = sub.add_parser("verify-oracle", help="localization oracle against the closed form")
    s.add_argument("--kind", choices=["punctual", "gentype"], required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--ell", type=int)
    s.add_argument("--order", type=int, default=5)
    s.add_argument("--weights", type=_int_list)

    s = sub.add_parser("k3-primitive", help="reduced series of a primitive class of genus g")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--shifted", action="store_true")

    s = sub.add_parser("k3-hilb", help="reduced punctual series as a rational function of t")
    s.add_argument("--order", type=int, default=5)

    s = sub.add_parser("k3-verify", help="theta form against product form")
    s.add_argument("--order", type=int, default=5)

    s = sub.add_parser("verify-all", help="run every verification check")
    s.add_argument("--order", type=int, default=5)
    return p


def _check(name: str, ok: bool, detail: str = "") -> dict:
    return {"check": name, "pass": bool(ok), "detail": detail}


def _encode_value(value) -> object:
    data = encode(value)
    if isinstance(value, surfaces.Vanishing):
        data["vanishing"] = value.reason
    return data


def _cmd_punctual(a):
    return _encode_value(surfaces.z_punctual(a.N, a.k2)), []


def _cmd_elliptic(a):
    value = surfaces.z_elliptic(a.N, a.c, a.chi, a.base_genus, a.mults)
    return _encode_value(value), []


def _cmd_gentype(a):
    return _encode_value(surfaces.z_gentype(a.N, a.ell, a.k2, a.chi)), []


def _read_qratfun(text: str) -> QRatFun:
    data = json.loads(text)
    if isinstance(data, dict) and "result" in data:
        data = data["result"]
    if isinstance(data, dict) and "vanishing" in data:
        return surfaces.Vanishing(data["vanishing"])
    value = decode(data)
    if not isinstance(value, QRatFun):
        value = QRatFun.const(value)
    return value


def _cmd_blowup(a):
    z = _read_qratfun(sys.stdin.read()) if a.pipe else QRatFun.const(1)
    return _encode_value(surfaces.z_blowup(z, a.N, a.ell)), []


def _cmd_assemble(a):
    try:
        with open(a.spec) as fh:
            spec = surfaces.SurfaceSpec.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot read surface spec: {exc}") from None
    cls = json.loads(a.cls) if a.cls else None
    out = surfaces.assemble(spec, a.N, cls)
    value = out.value if isinstance(out.value, QRatFun) else QRatFun.const(out.value)
    return {"value": _encode_value(value), "trace": list(out.trace)}, []


def _closed_form_value(a) -> QRatFun:
    if a.which == "pn":
        return closedforms.pn(a.N)
    if a.which == "ubar":
        return closedforms.ubar(a.N)
    if a.ell is None:
        raise UsageError(f"--which {a.which} needs --ell")
    if a.which == "bl":
        return closedforms.bl(a.N, a.ell)
    if a.genus is None:
        raise UsageError("--which g needs --genus")
    return closedforms.g_series(a.N, a.ell, a.genus)


def csv_table(f: QRatFun) -> str:
    """Rows (part, q_power, y_power, coefficient) of the reduced numerator and denominator."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["part", "q_power", "y_power", "coefficient"])
    for part, poly in (("num", f.num), ("den", f.den)):
        shift = f.qshift if part == "num" else 0
        for (ey, eq), c in sorted(YQ.terms(poly).items(), key=lambda kv: (kv[0][1], kv[0][0])):
            w.writerow([part, eq + shift, ey, str(to_fraction(c))])
    return buf.getvalue()


def _cmd_closed_form(a):
    f = _closed_form_value(a)
    if a.format == "latex":
        return {"format": "latex", "text": latex_qratfun(f)}, []
    if a.format == "csv":
        return {"format": "csv", "text": csv_table(f)}, []
    return _encode_value(f), []


def _cmd_verify_oracle(a):
    if a.kind == "punctual":
        fam = localization.punctual(a.N)
    else:
        if a.ell is None:
            raise UsageError("--kind gentype needs --ell")
        fam = localization.gentype(a.N, a.ell)
    w = localization.WeightVector(tuple(a.weights)) if a.weights else localization.WeightVector.default(a.N)
    if len(w) != a.N:
        raise UsageError(f"--weights needs {a.N} entries")
    series = localization.oracle_series(fam, a.order, w)
    closed = localization.closed_form_series(fam, a.order)
    cmp = localization.compare_series(series, closed)
    result = {"series": encode(series), "closed_form": encode(closed),
              "match": cmp.match, "first_mismatch": cmp.first_mismatch}
    return result, [_check("oracle-vs-closed-form", cmp.match,
                           f"{fam.kind} N={a.N} through q^{a.order}")]


def _cmd_k3_primitive(a):
    if a.shifted:
        f = k3.ky_coefficient(a.genus)
        data = {"type": "tratfun", "expansion": "t=0", "value": encode_ratfunc(f.frac)}
        return data, []
    return _encode_value(k3.unshifted_primitive(a.genus)), []


def _cmd_k3_hilb(a):
    f = k3.reduced_punctual(a.order, check=False)
    t = QRatFun.gen("t")
    return _encode_value(f), [
        _check("closed-form", f == k3.tred_closed_form(), "t(2+20y+2y^2)/((1-yt)(1-t))"),
        _check("euler-specialization", f.at_y(1) == 24 * t / (1 - t) ** 2, "24t/(1-t)^2 at y=1"),
    ]


def _cmd_k3_verify(a):
    ok = k3.ky_identity_check(a.order)
    return {"order": a.order, "identity": ok}, [_check("theta-product", ok, f"through q^{a.order}")]


def _cmd_verify_all(a):
    verdicts, _ = verify_all(a.order)
    checks = [v.as_dict() for v in verdicts]
    return {"order": a.order, "passed": sum(c["pass"] for c in checks), "total": len(checks)}, checks


COMMANDS = {
    "punctual": _cmd_punctual,
    "elliptic": _cmd_elliptic,
    "gentype": _cmd_gentype,
    "blowup": _cmd_blowup,
    "assemble": _cmd_assemble,
    "closed-form": _cmd_closed_form,
    "verify-oracle": _cmd_verify_oracle,
    "k3-primitive": _cmd_k3_primitive,
    "k3-hilb": _cmd_k3_hilb,
    "k3-verify": _cmd_k3_verify,
    "verify-all": _cmd_verify_all,
}


def _echo(args: argparse.Namespace) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "output":
            continue
        out[k] = str(v) if isinstance(v, Fraction) else v
    return out


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        print(f"quotgenera: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    start = time.perf_counter()
    try:
        result, checks = COMMANDS[args.verb](args)
    except (UsageError, InvalidSpec, UnsupportedGeometry) as exc:
        parser.print_usage(sys.stderr)
        print(f"quotgenera: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuotError as exc:
        result = None
        checks = [_check(args.verb, False, f"{type(exc).__name__}: {exc}")]
    elapsed = time.perf_counter() - start

    report = {"command": _echo(args), "result": result, "checks": checks,
              "timing": {"seconds": round(elapsed, 6)}}
    text = render(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_FAIL


def main() -> None:
    sys.exit(run())
