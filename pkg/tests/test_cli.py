import json

import pytest

from bruhat_ds import cli, verify
from bruhat_ds.verify import SUITES, VerificationReport, run_one, select_intervals, sweep
from conftest import P


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


def test_rpoly_text(capsys):
    code, out, _ = run(capsys, "rpoly", "--u", "1,2,3", "--v", "3,2,1")
    assert code == 0 and out.strip() == "q^3 + q"


def test_rpoly_json(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(capsys, "rpoly", "--u", "1,2,3", "--v", "3,2,1", "--json", str(path))[0] == 0
    assert json.loads(path.read_text())["rtilde"] == [0, 1, 0, 1]


def test_ds_symmetric_under_swap(capsys):
    code, out, _ = run(capsys, "ds", "--u", "1,2,3", "--v", "3,2,1", "--z", "3,1,2", "--zprime", "2,3,1")
    rec = lines(out)[0]
    assert code == 0 and rec["symmetric"] and rec["ds"] == rec["ds_swapped"]


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "--u", "1,2,3", "--v", "3,2,1")
    assert code == 0 and len(lines(out)[0]["classes"]) == 1


def test_verify_thm_s4_passes(capsys):
    code, out, _ = run(capsys, "verify", "thm-double-shortcuts", "--n", "4")
    recs = lines(out)
    assert code == 0
    assert recs[-1]["summary"] and recs[-1]["pass"] == 213 and recs[-1]["fail"] == 0
    assert all(r["status"] == "pass" for r in recs[:-1])
    assert set(recs[0]) == {"check", "n", "interval", "status", "details", "elapsed"}


@pytest.mark.parametrize("argv", [
    ["verify", "bijection", "--n", "8"],
    ["verify", "bijection", "--n", "0"],
    ["verify", "bijection"],
    ["verify", "no-such-check", "--n", "3"],
    ["verify", "bijection", "--n", "7"],
    ["rpoly", "--u", "1,1,3", "--v", "3,2,1"],
    ["rpoly", "--u", "3,2,1", "--v", "1,2,3"],
    ["rpoly", "--u", "1,2", "--v", "3,2,1"],
    ["ds", "--u", "1,2,3", "--v", "2,1,3", "--z", "3,2,1", "--zprime", "2,1,3"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def _strip(recs):
    return sorted(json.dumps({k: v for k, v in r.items() if k != "elapsed"}, sort_keys=True)
                  for r in recs if not r.get("summary"))


def test_deterministic_and_parallel_agree(capsys):
    args = ["verify", "shortcut-char", "--n", "5", "--sample", "40", "--seed", "7"]
    a = lines(run(capsys, *args, "--jobs", "1")[1])
    b = lines(run(capsys, *args, "--jobs", "1")[1])
    c = lines(run(capsys, *args, "--jobs", "2")[1])
    assert [r.get("interval") for r in a] == [r.get("interval") for r in b]
    assert _strip(a) == _strip(b) == _strip(c)


def test_sample_is_seeded_and_ordered():
    a, b = select_intervals(5, 30, seed=1), select_intervals(5, 30, seed=1)
    assert a == b and len(set(a)) == 30
    assert select_intervals(5, 30, seed=2) != a
    assert len(select_intervals(7, 5)) == 5
    with pytest.raises(ValueError):
        select_intervals(7)


def test_failures_replay(tmp_path, capsys, monkeypatch):
    def flaky(iv):
        bad = iv.v == P(3, 2, 1)
        return not bad, {"witness": str(iv.v)} if bad else {}

    monkeypatch.setitem(SUITES, "r-element", flaky)
    path = tmp_path / "rep.jsonl"
    code, _, _ = run(capsys, "verify", "r-element", "--n", "3", "--json", str(path))
    recs = lines(path.read_text())
    fails = [r for r in recs if r.get("status") == "fail"]
    assert code == 1 and fails and recs[-1]["fail"] == len(fails)
    code, out, _ = run(capsys, "verify", "r-element", "--replay", str(path))
    replayed = lines(out)
    assert code == 1
    assert [r["interval"] for r in replayed[:-1]] == [r["interval"] for r in fails]
    assert all(r["status"] == "fail" and r["details"] for r in replayed[:-1])


def test_single_interval_verify(capsys):
    code, out, _ = run(capsys, "verify", "bijection", "--u", "1,2,3,4", "--v", "4,3,2,1")
    recs = lines(out)
    assert code == 0 and recs[0]["details"]["standard"]["size_D"] == recs[0]["details"]["standard"]["size_Dbar"]


@pytest.mark.parametrize("check", sorted(SUITES))
def test_every_suite_passes_on_s3(check):
    reports = list(sweep(check, select_intervals(3)))
    assert len(reports) == 19
    assert all(isinstance(r, VerificationReport) and r.status == "pass" for r in reports)


def test_run_one_report_shape():
    rep = run_one("r-element", P(1, 2, 3), P(3, 2, 1)).to_json()
    assert rep["details"]["rtilde"] == [0, 1, 0, 1] and rep["details"]["text"] == "q^3 + q"
    assert verify.DEFAULT_SEED == 20240531
