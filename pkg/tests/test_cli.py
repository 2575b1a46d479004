import json
import subprocess
import sys

import pytest

from lierack.cli import main
from lierack.grp import make_group
from lierack.rack import CollapseCertificate


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_lie_w0(capsys):
    code, out, _ = run(["lie", "w0", "--type", "D", "--rank", "5"], capsys)
    obj = json.loads(out)
    assert code == 0
    assert obj["length"] == obj["positive_roots"] == 20
    assert obj["is_minus_one"] is False


@pytest.mark.parametrize("kind,rank", [("C", 3), ("B", 2)])
def test_lie_centers(kind, rank, capsys):
    code, out, _ = run(["lie", "centers", "--type", kind, "--rank", str(rank), "--q", "3"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["order"] == obj["generated_order"] == 2


def test_lie_centers_needs_q(capsys):
    code, _, err = run(["lie", "centers", "--type", "A", "--rank", "2"], capsys)
    assert code == 2 and "--q" in err


def test_bad_group_spec_is_usage_error(capsys):
    code, _, _ = run(["survey", "--group", "xx9:1"], capsys)
    assert code == 2


def test_survey_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["survey", "--group", "sl2:7/z", "--out", str(a)]) == 0
    assert main(["survey", "--group", "sl2:7/z", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["order"] == 168 and rep["size_sum_ok"]
    assert rep["config"]["seed"] == 0


def test_classify_from_rows(tmp_path, capsys):
    p = tmp_path / "rep.json"
    p.write_text("[[1, 1], [0, 1]]")
    code, out, _ = run(["classify", "--group", "sl2:7/z", "--rep", str(p)], capsys)
    obj = json.loads(out)
    assert code == 0
    assert obj["size"] == 24 and obj["kind"] == "unipotent" and obj["certificate"] is None


def test_classify_rejects_non_member(tmp_path, capsys):
    p = tmp_path / "rep.json"
    p.write_text("[[1, 1], [1, 1]]")
    code, _, _ = run(["classify", "--group", "sl2:7", "--rep", str(p)], capsys)
    assert code == 2


def _certificate_file(tmp_path):
    G = make_group("sp4:3/z")
    M = G.matrix
    r = M([[1, 0, 0, 1], [0, 2, 1, 0], [0, 0, 2, 0], [0, 0, 0, 1]])
    g = M([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]]) @ \
        M([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    cert = CollapseCertificate("D", "sp4:3/z", [G.rep(r), G.rep(g.conj(r))], [g], {}, "constructed", True)
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(cert.to_json()))
    return p


def test_verify_ok_and_tampered(tmp_path, capsys):
    p = _certificate_file(tmp_path)
    code, out, _ = run(["verify", str(p)], capsys)
    assert code == 0 and json.loads(out)["ok"]
    obj = json.loads(p.read_text())
    e = obj["s"]["rows"][0][0]
    e["c"] = [(e["c"][0] + 1) % 3]
    p.write_text(json.dumps(obj))
    code, out, err = run(["verify", str(p)], capsys)
    assert code == 1 and not json.loads(out)["ok"] and "failed" in err


def test_verify_garbage(tmp_path, capsys):
    p = tmp_path / "cert.json"
    p.write_text('{"kind": "D"}')
    code, out, _ = run(["verify", str(p)], capsys)
    assert code == 1 and json.loads(out)["failed"] == ["parse"]


def test_witness_by_id(capsys):
    code, out, err = run(["witness", "run", "W-LABELPAIR"], capsys)
    assert code == 0 and "W-LABELPAIR: pass" in err
    assert all(json.loads(line)["passed"] for line in out.splitlines())


def test_witness_unknown(capsys):
    code, _, err = run(["witness", "run", "W-NOPE"], capsys)
    assert code == 2 and "unknown witness" in err


def test_witness_needs_id_or_all(capsys):
    code, _, _ = run(["witness", "run"], capsys)
    assert code == 2


def test_witness_filter_none(capsys):
    code, out, _ = run(["witness", "run", "--all", "--filter", "none"], capsys)
    assert code == 0 and out == ""


def test_braiding(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, _, err = run(["braiding", "lemma-uno", "--out", str(out)], capsys)
    assert code == 0 and "27/27" in err
    assert json.loads(out.read_text())["infinite"] == 27


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lierack", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
