import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from centerkit import io
from centerkit.cli import main
from centerkit.corpus import four_lines, standard_triangle
from centerkit.render import render_svg
from centerkit.report import analyze, collect_cases, run_corpus, thread_cap


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


TRI = {"lines": [[1, 0, 0], [0, 1, 0], [1, 1, -1]], "multiplicities": [1, 2, 3]}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_triangle_123(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, "t.json", TRI)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass"
    assert rep["h1_rank"] == 7 and rep["genus"] == 1
    assert rep["orbit"]["codimension"] == 2 and rep["orbit"]["equal"] is True
    assert rep["schema"] == "centerkit.report/1" and len(rep["input_hash"]) == 64


def test_analyze_triangle_111():
    rep, code = analyze(standard_triangle((1, 1, 1)))
    assert code == 0 and rep["h1_rank"] == 4 and rep["genus"] == 1
    assert "timings" not in rep


def test_analyze_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, "t.json", TRI)
    _, a, _ = run(["analyze", path], capsys)
    _, b, _ = run(["analyze", path], capsys)
    assert a == b


@pytest.mark.parametrize(
    "data,field",
    [
        ({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, -1]], "multiplicities": [2, 4, 6]}, "multiplicities"),
        ({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, 0]], "multiplicities": [1, 1, 1]}, "lines"),
        ({"lines": [[1, 0], [0, 1, 0], [1, 1, -1]], "multiplicities": [1, 1, 1]}, "lines/0"),
        ({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, -1]], "multiplicities": [1, 1]}, "multiplicities"),
        ({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, "x"]], "multiplicities": [1, 1, 1]}, "lines/2/2"),
        ({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, -1]]}, "(top level)"),
    ],
)
def test_input_errors_exit_1(tmp_path, capsys, data, field):
    code, out, err = run(["analyze", write(tmp_path, "bad.json", data)], capsys)
    assert code == 1 and out == ""
    assert f"field {field}" in err


def test_not_json(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("{")
    code, _, err = run(["analyze", str(p)], capsys)
    assert code == 1 and "not valid JSON" in err


def test_orbit_command(tmp_path, capsys):
    code, out, _ = run(["orbit", write(tmp_path, "t.json", TRI)], capsys)
    rep = json.loads(out)
    assert code == 0
    assert set(rep) >= {"b1", "d", "orbit_dim", "annihilator_dim", "equal", "genus", "delta_sum_zero"}


def test_orbit_refuses_non_coprime(tmp_path, capsys):
    data = four_lines((1, 2, 3, 4)).to_json()
    code, out, _ = run(["orbit", write(tmp_path, "f.json", data)], capsys)
    assert code == 1 and "pairwise coprime" in json.loads(out)["refused"]


def test_tangent_command(tmp_path, capsys):
    form = {"degree": 2, "coefficients": [str(k % 5 - 2) for k in range(12)]}
    code, out, _ = run(["tangent", write(tmp_path, "t.json", TRI), "--omega1", write(tmp_path, "w.json", form)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["kernel_dim"] == 3 and rep["image_dim"] == 9
    assert rep["membership"]["member"] is False


def test_melnikov_command(tmp_path, capsys):
    form = {"degree": 2, "coefficients": [str(k % 5 - 2) for k in range(12)]}
    code, out, _ = run(
        ["melnikov", write(tmp_path, "t.json", TRI), "--omega1", write(tmp_path, "w.json", form), "--tolerance-reject", "1e-3"],
        capsys,
    )
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "nonzero" and rep["t"] < 0


def test_melnikov_bad_face(tmp_path, capsys):
    form = {"degree": 2, "coefficients": [0] * 12}
    code, _, err = run(["melnikov", write(tmp_path, "t.json", TRI), "--face", "4", "--omega1", write(tmp_path, "w.json", form)], capsys)
    assert code == 1 and "face 4" in err


def test_quadratic_point(capsys):
    code, out, _ = run(["quadratic", "--point", "1", "1", "1", "0", "0", "0"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["g2"] == "1" and rep["components"] == []


def test_quadratic_verify(capsys):
    code, out, _ = run(["quadratic", "--verify", "--samples", "20"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["containments"]["ok"] and rep["singular_locus"]["ok"]


def test_local_model_command(capsys):
    code, out, _ = run(["local-model", "6", "9", "--state", "1", "0", "2", "0", "--steps", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and (rep["e"], rep["a"], rep["b"]) == (3, 2, 1)
    assert rep["rows"][1][1:5] == [2, 1, 0, 0]


def test_local_model_bad_state(capsys):
    code, _, err = run(["local-model", "2", "3", "--state", "9", "0", "0", "0"], capsys)
    assert code == 1 and "field state" in err


def test_render_counts_and_determinism(tmp_path, capsys):
    svg = render_svg(standard_triangle((1, 1, 1)), "Gcheck")
    assert 'data-vertices="3"' in svg and 'data-loops="3"' in svg and 'data-edges="6"' in svg
    assert svg.count('class="edge"') == 3
    path = write(tmp_path, "f.json", four_lines((1, 2, 3, 4)).to_json())
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["render-graph", path, str(out1), "--model", "G"]) == 0
    assert main(["render-graph", path, "--model", "G", "--output", str(out2)]) == 0
    text = out1.read_text()
    assert 'data-vertices="17"' in text and 'data-edges="37"' in text
    assert out1.read_bytes() == out2.read_bytes()


def test_corpus_isolates_bad_case(tmp_path, capsys):
    src = tmp_path / "in"
    src.mkdir()
    (src / "a.json").write_text(json.dumps(TRI))
    (src / "b.json").write_text(json.dumps({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, 0]], "multiplicities": [1, 1, 1]}))
    (src / "c.json").write_text("not json")
    out = tmp_path / "out"
    code, table, _ = run(["corpus", str(src), "--output", str(out)], capsys)
    summary = json.loads((out / "summary.json").read_text())
    status = {r["case"]: r["status"] for r in summary["cases"]}
    assert status == {"a": "pass", "b": "input-error", "c": "input-error"}
    assert code == 1 and "passed 1" in table
    assert json.loads((out / "a.json").read_text())["h1_rank"] == 7


def test_corpus_same_seed_identical(tmp_path):
    cases = collect_cases(None, seed=3, count=6, degrees=(2, 3), top=4)
    s1, c1 = run_corpus(cases, tmp_path / "r1", workers=1)
    s2, c2 = run_corpus(cases, tmp_path / "r2", workers=2)
    assert c1 == c2 == 0 and s1 == s2
    for p in sorted((tmp_path / "r1").iterdir()):
        assert p.read_bytes() == (tmp_path / "r2" / p.name).read_bytes()


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("CENTERKIT_THREADS", "1")
    assert thread_cap() == 1
    monkeypatch.setenv("CENTERKIT_THREADS", "many")
    with pytest.raises(io.InputError):
        thread_cap()
    monkeypatch.delenv("CENTERKIT_THREADS")
    assert thread_cap() >= 1


def test_console_script_entry_point(tmp_path):
    env = dict(os.environ, CENTERKIT_THREADS="1")
    res = subprocess.run(
        [sys.executable, "-m", "centerkit.cli", "analyze", write(tmp_path, "t.json", TRI)], capture_output=True, text=True, env=env
    )
    assert res.returncode == 0 and json.loads(res.stdout)["h1_rank"] == 7


def test_rational_strings_round_trip():
    data = {"lines": [["1/2", 0, 0], [0, "3", 0], [1, 1, "-1/3"]], "multiplicities": [1, 1, 1]}
    arr = io.arrangement_from_json(data)
    assert io.arrangement_from_json(arr.to_json()) == arr
    assert io.input_hash(arr) == io.input_hash(io.arrangement_from_json(arr.to_json()))


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["melnikov", "x.json", "--t"])
    assert exc.value.code == 1


def test_melnikov_explicit_negative_t(tmp_path, capsys):
    form = {"degree": 2, "coefficients": [str(k % 5 - 2) for k in range(12)]}
    code, out, _ = run(["melnikov", write(tmp_path, "t.json", TRI), "--omega1", write(tmp_path, "w.json", form), "--t=-1/1000"], capsys)
    assert code == 0 and json.loads(out)["t"] == -0.001
