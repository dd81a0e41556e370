import json

import pytest

from linkinv.cli import main
from linkinv.formats import parse, parse_gauss


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def hopf_file(tmp_path, capsys):
    p = tmp_path / "hopf.json"
    assert main(["families", "hopf", "-o", str(p)]) == 0
    capsys.readouterr()
    return p


# ---------------------------------------------------------------- families

def test_families_hopf(capsys):
    code, out, _ = run(capsys, "families", "hopf")
    assert code == 0
    d = parse(out)
    assert len(d) == 2
    assert d.provenance["family"]["family"] == "hopf"


def test_families_milnor_valid(capsys):
    code, out, _ = run(capsys, "families", "milnor", "--k", "2")
    assert code == 0
    assert parse(out).m == 2


def test_families_whitehead_three(capsys):
    from linkinv.diagram import linking_number
    code, out, _ = run(capsys, "families", "whitehead_iter", "--k", "3")
    assert code == 0
    assert linking_number(parse(out), 0, 1) == 0


def test_families_gauss_output(capsys):
    code, out, _ = run(capsys, "families", "whitehead_iter", "--k", "1", "--format", "gauss")
    assert code == 0
    assert out.startswith("# family: ")
    assert len(parse_gauss(out)) == 6


def test_families_bad_spec(capsys):
    code, _, err = run(capsys, "families", "milnor", "--k", "0")
    assert code == 3
    assert "usage error" in err
    code, _, _ = run(capsys, "families", "torus")
    assert code == 3
    code, _, _ = run(capsys, "families", "hopf", "--twists", "a,b")
    assert code == 3


# ---------------------------------------------------------------- invariants

def test_invariants_hopf(capsys, hopf_file):
    code, out, _ = run(capsys, "invariants", str(hopf_file))
    assert code == 0
    r = json.loads(out)
    assert r["format_version"] == 1
    assert r["linking_matrix"][0][1] == 1
    assert r["conway"]["seifert"]["polynomial"] == "z"
    assert r["conway"]["agree"] is True
    mu = {tuple(v["I"]): v for v in r["mu"]["values"]}
    assert mu[(1, 2)]["mu"] == 1
    assert r["complete"] is True


def test_invariants_w1_gauss(capsys, tmp_path):
    p = tmp_path / "w1.txt"
    main(["families", "whitehead_iter", "--k", "1", "--format", "gauss", "-o", str(p)])
    capsys.readouterr()
    code, out, _ = run(capsys, "invariants", str(p))
    assert code == 0
    r = json.loads(out)
    assert r["linking_matrix"][0][1] == 0
    assert r["conway"]["seifert"]["text"] == "2; 0 1"
    mu = {tuple(v["I"]): v for v in r["mu"]["values"]}
    assert abs(mu[(1, 1, 2, 2)]["mu"]) == 1 and mu[(1, 1, 2, 2)]["delta"] == 0


def test_invariants_selected_parts(capsys, hopf_file):
    code, out, _ = run(capsys, "invariants", str(hopf_file), "--linking")
    r = json.loads(out)
    assert "linking_matrix" in r and "conway" not in r and "mu" not in r
    code, out, _ = run(capsys, "invariants", str(hopf_file), "--mu-maxlen", "3")
    r = json.loads(out)
    assert r["mu"]["max_len"] == 3 and "conway" not in r


def test_invariants_pretty(capsys, hopf_file):
    code, out, _ = run(capsys, "invariants", str(hopf_file), "--pretty")
    assert code == 0
    assert "conway (seifert): z" in out
    assert "components: 2" in out


def test_invariants_byte_stable(capsys, hopf_file):
    _, a, _ = run(capsys, "invariants", str(hopf_file))
    _, b, _ = run(capsys, "invariants", str(hopf_file))
    assert a == b


def test_invariants_skein_budget(capsys, tmp_path):
    p = tmp_path / "m3.json"
    main(["families", "milnor", "--k", "3", "-o", str(p)])
    capsys.readouterr()
    code, out, _ = run(capsys, "invariants", str(p), "--conway", "--budget-crossings", "5")
    assert code == 4
    r = json.loads(out)
    assert "skipped" in r["conway"]["skein"]
    assert r["complete"] is False
    assert r["conway"]["seifert"]["polynomial"] == "-z^7"


def test_invariants_malformed(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"format_version": 1, "m": 1, "components": [[1, 2]],
                             "crossings": [{"id": 0, "pd": [1, 2, 1], "sign": 1}]}))
    code, _, err = run(capsys, "invariants", str(p))
    assert code == 2
    assert "crossing 0" in err


def test_invariants_bad_gauss(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("O1+U2+\nO2+\n")
    code, _, err = run(capsys, "invariants", str(p))
    assert code == 2
    assert "crossing 1" in err


def test_invariants_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "invariants", str(tmp_path / "nope.json"))
    assert code == 2
    assert "cannot read" in err


def test_invariants_mu_guard(capsys, hopf_file):
    code, _, _ = run(capsys, "invariants", str(hopf_file), "--mu-maxlen", "12")
    assert code == 2


# ---------------------------------------------------------------- verify

def test_verify_beta_milnor(capsys):
    code, out, _ = run(capsys, "verify", "beta-milnor", "--k", "2")
    assert code == 0
    r = json.loads(out)
    assert r["status"] == "pass"
    row = r["evidence"]["values"][0]
    assert row["mu"]["I"] == [1, 1, 1, 1, 2, 2]
    assert (row["mu"]["mu"], row["mu"]["delta"]) == (1, 0)
    assert "runtime_seconds" not in r


def test_verify_conway_congruence(capsys):
    code, out, _ = run(capsys, "verify", "conway-congruence", "--k", "1", "--twists", "0..2")
    assert code == 0
    r = json.loads(out)
    assert r["params"]["twists"] == [0, 1, 2]
    assert all(c["passed"] for c in r["evidence"]["checks"])


def test_verify_byte_stable(capsys):
    _, a, _ = run(capsys, "verify", "sharpness", "--k", "0")
    _, b, _ = run(capsys, "verify", "sharpness", "--k", "0")
    assert a == b


def test_verify_timing_flag(capsys):
    code, out, _ = run(capsys, "verify", "sharpness", "--k", "0", "--timing")
    assert code == 0
    assert json.loads(out)["runtime_seconds"] >= 0


def test_verify_pretty(capsys):
    code, out, _ = run(capsys, "verify", "sharpness", "--k", "0", "--pretty")
    assert code == 0
    assert out.startswith("sharpness: PASS")


def test_verify_unknown_claim(capsys):
    code, _, err = run(capsys, "verify", "unknown-claim")
    assert code == 3


def test_verify_needs_k(capsys):
    code, _, _ = run(capsys, "verify", "mu-2k3", "--k", "0")
    assert code == 3
    code, _, _ = run(capsys, "verify", "cabling", "--link", "trefoil")
    assert code == 3


def test_verify_bad_range(capsys):
    code, _, _ = run(capsys, "verify", "mu-2k3", "--k", "1", "--twists", "2..0")
    assert code == 3


def test_verify_budget_skips(capsys, monkeypatch):
    monkeypatch.setenv("LINKINV_VERIFY_BUDGET", "3")
    code, out, _ = run(capsys, "verify", "beta-milnor", "--k", "1")
    assert code == 4
    assert json.loads(out)["status"] == "skipped"


def test_output_file(tmp_path, capsys):
    p = tmp_path / "r.json"
    assert main(["verify", "sharpness", "--k", "0", "-o", str(p)]) == 0
    assert json.loads(p.read_text())["claim"] == "sharpness"


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 3
    assert run(capsys, "invariants")[0] == 3
