import csv
import io
import json
import subprocess
import sys

import pytest

from qharmonic.cli import run
from qharmonic.compositions import compositions_up_to, format_composition


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, environ=env or {})
    return code, out.getvalue(), err.getvalue()


def test_dual_example():
    code, out, _ = call("dual", "--s", "2,2")
    assert code == 0
    assert out.splitlines() == ["1,2,1", "xyxy", "yxyy"]


def test_dual_round_trip():
    for s in compositions_up_to(6):
        text = format_composition(s)
        _, once, _ = call("dual", "--s", text)
        _, twice, _ = call("dual", "--s", once.splitlines()[0])
        assert twice.splitlines()[0] == text


def test_dual_json():
    code, out, _ = call("dual", "--s", "{1}^3", "--format", "json")
    assert json.loads(out) == {"s": "1,1,1", "dual": "3", "word": "yyy", "dual_word": "xxy"}


def test_verify_george():
    code, out, _ = call("verify", "--id", "GEORGE", "--n", "12")
    assert code == 0
    assert out.startswith("GEORGE holds (symbolic)")


def test_verify_failing_probe_exit_code():
    code, out, _ = call("verify", "--id", "THEOREM1", "--s", "2,2", "--n", "3", "--against", "2,2")
    assert code == 1
    assert "fails" in out and "lhs:" in out


def test_verify_json_matches_schema():
    code, out, _ = call("verify", "--id", "THEOREM1", "--s", "2,2", "--n", "3", "--against", "2,2",
                        "--format", "json")
    d = json.loads(out)
    assert code == 1
    assert d["verdict"] == "fails" and set(d) == {"id", "params", "method", "verdict", "witness"}


def test_verify_inconclusive_exit_code():
    # one term at q = 9/10 cannot separate the two sides within the crude bounds
    code, out, _ = call("verify", "--id", "COR_LIMIT_NINF", "--s", "2", "--q", "9/10", "--N", "1")
    assert code in (0, 3)
    assert ("inconclusive" in out) == (code == 3)


def test_eval_symbolic():
    code, out, _ = call("eval", "--kind", "Zw", "--s", "1", "--n", "2")
    assert code == 0
    assert out == "num: 0 1 2\nden: 1 1\n"


def test_eval_point():
    code, out, _ = call("eval", "--kind", "Zw", "--s", "1", "--n", "2", "--q", "1/2")
    assert (code, out) == (0, "2/3\n")


def test_eval_empty_weak_at_zero():
    code, out, _ = call("eval", "--kind", "Zw", "--s", "{1}^0", "--n", "0")
    assert code == 0
    assert out == "num: 0\nden: 1\n"
    assert call("eval", "--kind", "Zw", "--s", "{1}^0", "--n", "0", "--q", "1/3")[1] == "0\n"


def test_eval_pole_is_usage_error():
    code, _, err = call("eval", "--kind", "Aw", "--s", "1", "--n", "2", "--q", "-1")
    assert code == 2 and err.startswith("qharmonic: error: pole")


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["eval", "--kind", "Q", "--s", "1", "--n", "1"],
    ["eval", "--kind", "Zw", "--s", "1^2", "--n", "1"],
    ["eval", "--kind", "Zw", "--s", "1,,2", "--n", "1"],
    ["eval", "--kind", "Zw", "--s", "1", "--n", "x"],
    ["verify", "--id", "NOPE"],
    ["verify", "--id", "GEORGE"],
    ["dual", "--s", "1", "--unknown"],
    ["limit", "--kind", "qzeta", "--s", "1,2", "--q", "1/2", "--N", "3"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert len(err.strip().splitlines()) == 1 and err.startswith("qharmonic: error:")


def test_sweep_exit_and_summary():
    code, out, _ = call("sweep", "--id", "THEOREM1", "--max-weight", "3", "--max-n", "3")
    assert code == 0
    assert out.splitlines()[-1] == "THEOREM1: holds (21 checks)"


def test_sweep_failing_exit():
    code, out, _ = call("sweep", "--id", "WEAK_STRICT_EXPANSION", "--max-weight", "3", "--max-n", "3")
    assert code == 1


def test_sweep_thread_determinism():
    base = ["sweep", "--id", "FULAS", "--samples", "6", "--format", "json"]
    outs = {call(*base, "--threads", str(t), "--seed", "7")[1] for t in (1, 2, 4)}
    assert len(outs) == 1


def test_seed_env_override():
    base = ["verify", "--id", "FULAS", "--n", "2", "--m", "2", "--format", "json"]
    from_env = call(*base, "--seed", "1", env={"QHARMONIC_SEED": "5"})[1]
    from_flag = call(*base, "--seed", "5")[1]
    assert from_env == from_flag
    assert json.loads(from_flag)["seed"] == 5
    assert call(*base, env={"QHARMONIC_SEED": "x"})[0] == 2


def test_table_csv():
    code, out, _ = call("table", "--id", "THEOREM1", "--max-weight", "3", "--n", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["s", "dual", "Z", "A", "equal"]
    assert len(rows) == 1 + 7
    assert all(r[4] == "true" and r[2] == r[3] for r in rows[1:])
    assert '"1,1",2' in out  # commas inside a field get RFC-4180 quotes


def test_limit_fields():
    code, out, _ = call("limit", "--kind", "Z", "--s", "2", "--q", "1/2", "--N", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "value: 1/2" and lines[1] == "terms_used: 1" and lines[2].startswith("tail_bound: ")


def test_limit_qzeta_json():
    code, out, _ = call("limit", "--kind", "qzeta", "--s", "2", "--q", "1/2", "--N", "1", "--format", "json")
    assert json.loads(out)["value"] == "1/2"


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = call("verify", "--id", "AN01M", "--m", "2", "--n", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "holds"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qharmonic", "dual", "--s", "1,1,3,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "3,1,2"


def test_identical_runs_identical_output():
    argv = ["sweep", "--id", "PRODINGER_PAIR", "--samples", "5", "--max-n", "3", "--format", "json"]
    assert call(*argv)[1] == call(*argv)[1]
