import json

import pytest

from lcrid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ident(capsys):
    code, out, _ = run(capsys, "ident", "L1 & R1 & C1", "--seed", "1")
    js = json.loads(out)
    assert code == 0
    assert js["locally_identifiable"] and js["generic_rank"] == 3 and js["seed"] == 1


def test_type_and_text(capsys):
    code, out, _ = run(capsys, "type", "(R1|C1)&(R2|L1)", "--format", "text")
    assert code == 0 and out.strip() == "(0,0,0,0)"


def test_closure(capsys):
    code, out, _ = run(capsys, "closure")
    rows = json.loads(out)
    assert code == 0
    assert sum(not r["forbidden"] for r in rows) == 22
    assert sum(r["forbidden"] for r in rows) == 14


def test_consteq_json(capsys):
    code, out, _ = run(capsys, "consteq", "R1 & L1")
    js = json.loads(out)
    assert js["v"] == [{"order": 0, "poly": "1"}]
    assert js["monic"] == {"side": "V", "order": 0}


def test_refusals_and_usage_errors(capsys):
    assert run(capsys, "count-ident", "R1 & L1 & C1")[0] == 1
    assert run(capsys, "lc-class", "R1 & L1")[0] == 1
    code, _, err = run(capsys, "ident", "R1 &")
    assert code == 2 and "position" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "gh", "--shapes", "1,2,3")[0] == 2
    assert run(capsys, "enumerate", "--max-leaves", "9")[0] == 1


def test_default_seed_from_environment(capsys, monkeypatch):
    monkeypatch.delenv("LCRID_SEED", raising=False)
    assert json.loads(run(capsys, "ident", "R1 | L1")[1])["seed"] == 42
    monkeypatch.setenv("LCRID_SEED", "7")
    assert json.loads(run(capsys, "ident", "R1 | L1")[1])["seed"] == 7
    assert json.loads(run(capsys, "ident", "R1 | L1", "--seed", "3")[1])["seed"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["ident", "L1 | (R1 & (C1 | C2 | L2))"],
        ["relations", "(R1|C1)&(R2|L1)", "--cdeg", "2", "--ddeg", "2", "--wdeg", "4"],
        ["gh", "--shapes", "0,2,1,1,1,1,0,2"],
        ["enumerate", "--kinds", "LC", "--max-leaves", "4", "--check", "count-vs-rank"],
        ["lc-tables"],
    ],
)
def test_output_is_deterministic(capsys, argv):
    a = run(capsys, *argv, "--seed", "9")
    b = run(capsys, *argv, "--seed", "9")
    assert a[0] == 0 and a == b


def test_gh(capsys):
    js = json.loads(run(capsys, "gh", "--shapes", "0,2,1,1,1,1,0,2")[1])
    assert js["alternating_good"] and js["rows"] == js["cols"] == 3
    assert js["nonzero_determinants"] == js["trials"] == 100


def test_enumerate_checks(capsys):
    js = json.loads(run(capsys, "enumerate", "--kinds", "RL", "--max-leaves", "4", "--check", "count-vs-rank")[1])
    assert js["networks"] == 2 + 6 + 20 + 80 and js["failures"] == []
    js = json.loads(run(capsys, "enumerate", "--kinds", "RLC", "--max-leaves", "3", "--check", "invariants")[1])
    assert js["checked"] == 3 + 12 + 56 and js["failures"] == []


def test_dual(capsys):
    assert run(capsys, "dual", "(R1 & C1) | (R2 & L1)", "--format", "text")[1].strip() == "(R1' | L1') & (R2' | C1')"


def test_out_file(capsys, tmp_path):
    path = tmp_path / "o.json"
    code, out, _ = run(capsys, "type", "R1", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["type"] == [0, 0, 1, 1]
