import io
import json

import pytest

from quotgenera import cli, closedforms
from quotgenera.exactalg import QRatFun
from quotgenera.exactalg.codec import decode

q = QRatFun.gen()
y = QRatFun.y()


def invoke(*argv):
    buf = io.StringIO()
    rc = cli.run(list(argv), stdout=buf)
    return rc, (json.loads(buf.getvalue()) if buf.getvalue() else None)


def test_closed_form_pn_payload():
    rc, report = invoke("closed-form", "--which", "pn", "--N", "2")
    assert rc == 0
    assert decode(report["result"]) == 1 - (1 + 4 * y + y**2) * q + y**2 * q**2
    assert report["command"]["verb"] == "closed-form"
    assert set(report) == {"command", "result", "checks", "timing"}


def test_closed_form_latex_and_csv():
    rc, report = invoke("closed-form", "--which", "ubar", "--N", "1", "--format", "latex")
    assert rc == 0 and report["result"]["text"].startswith("\\frac")
    rc, report = invoke("closed-form", "--which", "pn", "--N", "2", "--format", "csv")
    rows = report["result"]["text"].splitlines()
    assert rows[0] == "part,q_power,y_power,coefficient"
    assert "num,1,1,-4" in rows and "den,0,0,1" in rows


def test_closed_form_needs_ell():
    rc, _ = invoke("closed-form", "--which", "bl", "--N", "2")
    assert rc == 2


def test_punctual_and_gentype():
    rc, report = invoke("punctual", "--N", "1", "--k2", "-1")
    assert decode(report["result"]) == (1 - (1 + y) * q) / ((1 - q) * (1 - y * q))
    rc, report = invoke("gentype", "--N", "1", "--ell", "2", "--k2", "1", "--chi", "1")
    assert rc == 0 and "vanishing" in report["result"]


def test_elliptic_constant():
    rc, report = invoke("elliptic", "--N", "2", "--c", "1", "--chi", "1")
    assert rc == 0 and decode(report["result"]) == 2


def test_verify_oracle_passes():
    rc, report = invoke("verify-oracle", "--kind", "punctual", "--N", "1", "--order", "4", "--weights", "0")
    assert rc == 0
    assert report["result"]["match"] and report["result"]["first_mismatch"] is None
    assert decode(report["result"]["series"]) == decode(report["result"]["closed_form"])


def test_verify_oracle_weight_count():
    rc, _ = invoke("verify-oracle", "--kind", "punctual", "--N", "2", "--weights", "0")
    assert rc == 2


def test_k3_hilb_payload():
    t = QRatFun.gen("t")
    ty = QRatFun.y("t")
    rc, report = invoke("k3-hilb", "--order", "4")
    assert rc == 0 and len(report["checks"]) == 2
    assert decode(report["result"]) == t * (2 + 20 * ty + 2 * ty**2) / ((1 - ty * t) * (1 - t))


def test_k3_primitive_forms():
    rc, report = invoke("k3-primitive", "--genus", "0")
    t = QRatFun.gen("t")
    ty = QRatFun.y("t")
    assert decode(report["result"]) == t / ((1 - t) * (1 - ty * t))
    rc, report = invoke("k3-primitive", "--genus", "1", "--shifted")
    assert report["result"]["type"] == "tratfun" and report["result"]["expansion"] == "t=0"


def test_k3_verify():
    rc, report = invoke("k3-verify", "--order", "3")
    assert rc == 0 and report["result"]["identity"]


def test_verify_all_green():
    rc, report = invoke("verify-all", "--order", "3")
    assert rc == 0
    assert len(report["checks"]) >= 12
    assert all(c["pass"] for c in report["checks"])


def test_verify_all_fails_on_perturbed_pn(monkeypatch):
    real = closedforms.pn
    monkeypatch.setattr(closedforms, "pn", lambda n: real(n) + q if n == 2 else real(n))
    rc, report = invoke("verify-all", "--order", "3")
    assert rc == 1
    failed = {c["check"] for c in report["checks"] if not c["pass"]}
    assert "functional-equation" in failed


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["punctual", "--N", "x", "--k2", "0"],
    ["punctual", "--N", "0", "--k2", "0"],
    ["elliptic", "--N", "1", "--c", "1", "--chi", "1", "--mults", "1"],
])
def test_usage_errors(argv):
    assert invoke(*argv)[0] == 2


def _strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def test_payload_is_deterministic():
    argv = ("closed-form", "--which", "bl", "--N", "3", "--ell", "1")
    assert _strip_timing(invoke(*argv)[1]) == _strip_timing(invoke(*argv)[1])


def test_json_round_trip():
    _, report = invoke("closed-form", "--which", "g", "--N", "2", "--ell", "1", "--genus", "2")
    assert json.loads(json.dumps(report)) == report
    assert decode(report["result"]) == closedforms.g_series(2, 1, 2)


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    rc, printed = invoke("--output", str(out), "punctual", "--N", "2", "--k2", "0")
    assert rc == 0 and printed is None
    assert decode(json.loads(out.read_text())["result"]) == 1


def test_blowup_pipe(monkeypatch):
    _, first = invoke("punctual", "--N", "2", "--k2", "1")
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(first)))
    rc, report = invoke("blowup", "--N", "2", "--ell", "0", "--pipe")
    assert rc == 0
    assert decode(report["result"]) == closedforms.ubar(2) * closedforms.ubar(2).inverse()


def test_blowup_pipe_keeps_vanishing(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"vanishing": "ell=2 > N=1"})))
    rc, report = invoke("blowup", "--N", "1", "--ell", "0", "--pipe")
    assert rc == 0 and "vanishing" in report["result"]


def test_assemble_from_file(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"kind": "k3", "blowups": [0]}))
    rc, report = invoke("assemble", "--spec", str(spec), "--N", "2")
    assert rc == 0
    assert decode(report["result"]["value"]) == closedforms.ubar(2).inverse()
    assert len(report["result"]["trace"]) == 2


def test_assemble_missing_file(tmp_path):
    assert invoke("assemble", "--spec", str(tmp_path / "none.json"), "--N", "1")[0] == 2
