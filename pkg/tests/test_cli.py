import json
import shutil
import subprocess
from pathlib import Path

import pytest

from twistconj.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def d(name):
    return str(DATA / name)


def test_freenil_writes_heisenberg(tmp_path):
    out = tmp_path / "h.pc"
    res = run(["freenil", "2", "2", "-o", str(out)])
    assert res.exit_code == 0
    text = out.read_text()
    assert "gens a1 a2 c1" in text and "conj a2 a1 = a2 c1" in text


def test_reidemeister_reps():
    res = run(["reidemeister", d("heisenberg.pc"), d("heis_swap.aut"), "--reps"])
    assert res.exit_code == 0
    lines = res.text.splitlines()
    assert lines[0] == "R = 2" and [l.strip() for l in lines[2:]] == ["1", "c"]


def test_reidemeister_on_freenil_output(tmp_path):
    out = tmp_path / "h.pc"
    run(["freenil", "2", "2", "-o", str(out)])
    aut = tmp_path / "phi.aut"
    aut.write_text("aut phi on N2_2\nimage a1 = a2\nimage a2 = a1 a2\n")
    res = run(["reidemeister", str(out), str(aut), "--reps", "--json"])
    data = json.loads(res.text)
    assert data["count"] == 2 and data["representatives"] == ["1", "c1"]


def test_identity_on_z2_is_infinite():
    res = run(["reidemeister", d("z2.pc"), d("z2_id.aut")])
    assert res.exit_code == 0
    assert res.text.startswith("R = infinite (layer 1, kernel witness")


def test_json_matches_text():
    args = ["reidemeister", d("heisenberg.pc"), d("heis_r4.aut"), "--reps"]
    text = run(args).text
    data = json.loads(run(args + ["--json"]).text)
    assert text.splitlines()[0] == f"R = {data['count']}"
    assert [l.strip() for l in text.splitlines()[2:]] == data["representatives"]
    for key in ("command", "group", "aut", "result", "count", "representatives", "witness", "seed"):
        assert key in data


def test_json_infinite():
    data = json.loads(run(["reidemeister", d("heisenberg.pc"), d("heis_shear.aut"), "--json"]).text)
    assert data["result"] == "infinite" and data["count"] == "infinite" and data["witness"]["layer"] == 1


def test_decide_and_fix():
    assert run(["decide", d("heisenberg.pc"), d("heis_swap.aut"), "1", "c^2"]).text == "twisted conjugate, x = c^-1"
    assert run(["decide", d("heisenberg.pc"), d("heis_swap.aut"), "1", "c"]).text == "not twisted conjugate"
    assert run(["fix", d("heisenberg.pc"), d("heis_shear.aut")]).text == "Fix = <b, c>"
    assert run(["fix", d("heisenberg.pc"), d("heis_swap.aut")]).text == "Fix = 1"


def test_rinf_commands():
    res = run(["rinf", d("heisenberg.pc"), d("heis_shear.aut")])
    assert res.exit_code == 0 and "upper central factor 0" in res.text
    assert run(["rinf", d("heisenberg.pc"), d("heis_swap.aut")]).data["result"] == "none"
    data = run(["rinf-formanek", "2", "8", "--json"]).data
    assert data["result"] == {"formanek_fixed": True, "rinf": True}


def test_spectrum_is_reproducible():
    args = ["spectrum", d("heisenberg.pc"), "--samples", "12", "--seed", "5", "--json"]
    a, b = run(args), run(args)
    assert a.exit_code == 0 and a.text == b.text
    assert json.loads(a.text)["seed"] == 5


def test_spectrum_requires_seed():
    assert run(["spectrum", d("heisenberg.pc")]).exit_code == 2


def test_oracle_command():
    res = run(["oracle", d("heis3.pc"), d("heis3_swap.aut")])
    assert res.exit_code == 0 and res.text.endswith("agree")
    assert run(["oracle", d("heisenberg.pc"), d("heis_swap.aut")]).exit_code == 1


def test_exit_codes(tmp_path):
    assert run(["check", str(tmp_path / "missing.pc")]).exit_code == 2
    bad = tmp_path / "bad.pc"
    bad.write_text("pcgroup bad\ngens a b\norders 0 0\nconj b a = a\n")
    assert run(["check", str(bad)]).exit_code == 2
    notaut = tmp_path / "sq.aut"
    notaut.write_text("aut sq on Heisenberg\nimage a = a^2\nimage b = b\n")
    assert run(["aut-check", d("heisenberg.pc"), str(notaut)]).exit_code == 1
    assert run(["decide", d("heisenberg.pc"), d("heis_swap.aut"), "1", "z"]).exit_code == 2
    assert run(["bogus"]).exit_code == 2
    assert run(["rinf-formanek", "1", "3"]).exit_code == 2
    assert run(["rinf-formanek", "2", "0"]).exit_code == 2


@pytest.mark.parametrize("rc", [(r, c) for r in (1, 2, 3) for c in range(1, 6)] + [(2, 8)])
def test_freenil_check_round_trip(tmp_path, rc):
    out = tmp_path / "f.pc"
    assert run(["freenil", str(rc[0]), str(rc[1]), "-o", str(out)]).exit_code == 0
    assert run(["check", str(out)]).exit_code == 0


@pytest.mark.skipif(shutil.which("tc") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["tc", "reidemeister", d("heisenberg.pc"), d("heis_swap.aut")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "R = 2"
