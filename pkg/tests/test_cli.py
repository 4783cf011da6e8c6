import json

import pytest

from cli import main
from qholo.ladder import Ladder
from qholo.poly import A, Q, circle_value, quantum_integer
from utils import save_json_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_compute_homfly_checks_the_oracle(capsys):
    code, doc = run_json(capsys, "compute", "homfly", "--braid", "2;[1,1,1];[1,1]")
    assert code == 0
    assert doc["command"] == "compute homfly"
    assert doc["result"]["skein_oracle_agrees"] is True
    assert doc["result"]["framing"]["component_writhes"] == [3]
    assert doc["provenance"]["framing"] == "zero"
    assert "input_key" in doc["provenance"]


def test_compute_at_n(capsys):
    code, doc = run_json(capsys, "compute", "colored", "--braid", "s=1; w=[]", "--colors", "1^2", "--at", "3")
    assert code == 0
    assert doc["result"]["colors"] == "1^2"
    assert doc["result"]["value_at_N"]["N"] == 3


def test_web_eval_of_circle_file(capsys, tmp_path):
    path = tmp_path / "circle.json"
    save_json_file({"vertices": [], "edges": [], "loops": [{"color": 1, "count": 1}]}, path)
    code, doc = run_json(capsys, "compute", "web-eval", "--file", str(path))
    assert code == 0
    assert doc["result"]["value"]["text"] == str(circle_value(1))


def test_web_eval_of_ladder_at_n(capsys, tmp_path):
    path = tmp_path / "theta.json"
    save_json_file({"colors": [1, 1], "rungs": [[0, "E", 1], [0, "F", 1]]}, path)
    code, doc = run_json(capsys, "compute", "web-eval", "--file", str(path), "--at", "2")
    assert code == 0
    assert doc["result"]["value"]["text"] == str(Q + Q ** -1)
    assert doc["result"]["N"] == 2


def test_web_eval_of_square_web_file(capsys, tmp_path):
    path = tmp_path / "square.json"
    save_json_file(Ladder((2, 2), ((0, "E", 1), (0, "F", 1))).to_web().to_dict(), path)
    code, doc = run_json(capsys, "compute", "web-eval", "--file", str(path), "--at", "3")
    assert code == 0
    assert doc["result"]["value"]["text"] == str(quantum_integer(2) * quantum_integer(3))


def test_compute_table(capsys):
    code, doc = run_json(capsys, "compute", "table", "--braid", "s=1; w=[]", "--nmax", "0")
    assert code == 0
    assert len(doc["result"]["values"]) == 1


def test_parse_error_is_a_record(capsys):
    code, doc = run_json(capsys, "compute", "homfly", "--braid", "s=2; w=[1,3]")
    assert code == 1
    assert doc["error"]["code"] == "generator-range"
    assert doc["error"]["position"] == 1


def test_missing_input_is_a_record(capsys):
    code, doc = run_json(capsys, "compute", "web-eval")
    assert code == 1
    assert doc["error"]["code"] == "invalid-input"


def test_unknown_job(capsys):
    code, out = run(capsys, "compute", "homfly", "--job", "no-such-job")
    assert code == 1
    assert out == ""


def test_check_quick_suites(capsys):
    code, doc = run_json(capsys, "check", "algebra", "diagram", "--trials", "3", "--seed", "5")
    assert code == 0
    assert doc["result"]["passed"] is True
    assert [s["suite"] for s in doc["result"]["suites"]] == ["algebra", "diagram"]
    assert doc["provenance"]["seed"] == 5


def test_check_unknown_suite(capsys):
    code, doc = run_json(capsys, "check", "nonsense")
    assert code == 1
    assert doc["error"]["code"] == "invalid-input"


def test_convert_round_trip(capsys, tmp_path):
    path = tmp_path / "poly.json"
    save_json_file((A - A ** -1).to_dict(), path)
    code, doc = run_json(capsys, "convert", "--file", str(path))
    assert code == 0
    assert doc["result"]["kind"] == "poly"
    assert doc["result"]["text"] == str(A - A ** -1)
    assert doc["result"]["round_trip"] is True


def test_recur_unknot_job(capsys):
    code, doc = run_json(capsys, "recur", "--job", "unknot")
    assert code == 0
    result = doc["result"]
    assert result["search"]["found"] is True
    assert result["verify"]["passed"] is True
    assert result["specialization"]["passed"] is True


def test_recur_without_result_is_not_an_error(capsys):
    flags = ["--order", "0", "--mdeg", "0", "--adeg", "0", "--qdeg", "0"]
    code, doc = run_json(capsys, "recur", "--braid", "s=1; w=[]", "--nmax", "3", *flags)
    assert code == 0
    assert doc["result"]["search"]["found"] is False
    assert "verify" not in doc["result"]


def test_text_format_and_out_file(capsys, tmp_path):
    code, out = run(capsys, "compute", "homfly", "--braid", "s=1; w=[]", "--format", "text")
    assert code == 0
    assert "skein_oracle_agrees: yes" in out

    target = tmp_path / "out.json"
    code, out = run(capsys, "compute", "homfly", "--braid", "s=1; w=[]", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["command"] == "compute homfly"


@pytest.mark.slow
@pytest.mark.parametrize("job", ["trefoil", "figure8"])
def test_recur_knot_jobs_finish_with_an_outcome(capsys, job):
    code, doc = run_json(capsys, "recur", "--job", job)
    assert code == 0
    result = doc["result"]
    search = result["search"]
    if search["found"]:
        assert result["verify"]["passed"] is True
        assert result["specialization"]["passed"] is True
        assert result["specialization"]["q1_coincide"] is True
        assert "conjecture" in result
    else:
        # every order was either ruled out or reported as short of data
        settled = search["ranks_without_recursion"] + search["ranks_skipped_for_data"]
        assert sorted(r[0] for r in settled) == list(range(doc["input"]["ansatz"][0] + 1))
