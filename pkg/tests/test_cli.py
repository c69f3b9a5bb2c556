import json
import subprocess
import sys

import pytest

from offsetdeg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, degrees", [
    (["implicit", "y1^3+y2^3-3*y1*y2"], (14, 14, 14)),
    (["implicit", "y1^2+y2^2-r^2", "--param", "r=5"], (4, 4, 4)),
    (["implicit", "y1^2+y2^2-r^2", "--symbolic"], (4, 4, 4)),
    (["implicit", "y1^2/a^2+y2^2-1"], None),
    (["parametric", "--x", "t", "--y", "t^2", "--w", "1"], (6, 4, None)),
    (["parametric", "--x", "1-t^2", "--y", "2*t", "--w", "1+t^2"], (4, 4, None)),
])
def test_json_round_trip(capsys, argv, degrees):
    code, out, err = run(capsys, *argv, "--json")
    if degrees is None:
        assert code == 2 and "constant" in err
        return
    assert code == 0, err
    data = json.loads(out)
    assert data["schema"] == 1
    assert (data["delta1"], data["delta2"], data["delta_d"]) == degrees
    assert set(data) >= {"name", "method", "diagnostics", "pass"}
    assert set(data["diagnostics"]) >= {"resultant_degree", "content_degree", "ms"}
    assert json.loads(json.dumps(data)) == data


def test_text_output(capsys):
    code, out, _ = run(capsys, "parametric", "--x", "t", "--y", "t^2")
    assert code == 0
    assert "delta_d  unavailable" in out and "agree" in out


@pytest.mark.parametrize("argv, code, message", [
    (["implicit", "y1+y2"], 2, "curve is a line"),
    (["implicit", "(y1-y2)^2"], 2, "repeated factor"),
    (["implicit", "y1 +* y2"], 2, "parse error"),
    (["implicit", "y1+x1^2"], 2, "unknown variable"),
    (["parametric", "--x", "t", "--y", "t", "--w", "t"], 2, "share the nonconstant factor"),
    (["parametric", "--x", "t", "--y", "t", "--w", "0"], 2, "zero"),
    (["parametric", "--x", "1", "--y", "2", "--w", "1"], 3, "normal vector"),
    (["oracle-check", "y1^3+y2^3-3*y1*y2"], 4, "limited to degree 2"),
])
def test_exit_codes(capsys, argv, code, message):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert message in err


def test_reduce_divides_common_factor(capsys):
    code, out, _ = run(capsys, "parametric", "--x", "t^2", "--y", "t^3", "--w", "t", "--reduce", "--json")
    assert code == 0
    assert json.loads(out)["delta1"] == 6


def test_bad_param_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["implicit", "y1^2+y2^2-r", "--param", "r"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["implicit", "y1^2+y2^2-1", "--param", "d=2"])


def test_corpus_filter(capsys):
    code, out, _ = run(capsys, "corpus", "--filter", "Lemniscate", "--json", "--no-timings")
    data = json.loads(out)
    assert code == 0
    assert [e["name"] for e in data["entries"]] == ["Lemniscate"]
    e = data["entries"][0]
    assert (e["delta1"], e["delta2"], e["delta_d"]) == (12, 12, 12) and e["pass"] is True


def test_corpus_empty_fixture(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    code, out, _ = run(capsys, "corpus", str(path))
    assert code == 0 and "0 entries" in out


@pytest.mark.parametrize("content", ["{", '{"name": "x"}', '[{"name": "x"}]', '[{"name": "x", "implicit_src": "y1", "expected": {}}]'])
def test_corpus_bad_fixture(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "corpus", str(path))
    assert code == 2 and "error" in err


def test_corpus_entry_failures_do_not_abort(capsys, tmp_path):
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps([
        {"name": "line", "implicit_src": "y1+y2", "expected": {"delta1": 1, "delta2": 1}},
        {"name": "circle", "implicit_src": "y1^2+y2^2-1", "expected": {"delta1": 4, "delta2": 4, "delta_d": 4}},
    ]))
    code, out, _ = run(capsys, "corpus", str(path), "--json")
    data = json.loads(out)
    assert code == 1
    assert [e["status"] for e in data["entries"]] == ["ERROR", "PASS"]
    assert "IsLine" in data["entries"][0]["error"]


def test_parallel_output_is_identical(capsys):
    _, serial, _ = run(capsys, "corpus", "--json", "--no-timings")
    _, parallel, _ = run(capsys, "corpus", "--json", "--no-timings", "--parallel", "4")
    assert serial == parallel


def test_oracle_check_agrees(capsys):
    code, out, _ = run(capsys, "oracle-check", "y1^2+y2^2-1", "--json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["oracle"] == {"delta1": 4, "delta2": 4, "delta_d": 4}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "offsetdeg", "implicit", "y1*y2-1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "delta1   6" in proc.stdout
