import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from weakopt.cli import main
from weakopt.io import (InstanceError, data_from_json, data_to_json, load_instance,
                        parse_json_text, point_from_json)

from instances import random_instance

ROOT = Path(__file__).resolve().parents[1]
INSTANCES = ROOT / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_two_col(capsys):
    code, out, _ = run(capsys, "check", INSTANCES / "two_col.json")
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "weakly_optimal"
    assert report["witness"]["scenario"]["An"] == [[0, 2]]
    assert report["stats"]["lp_solves"] == 1


def test_check_ineq_extra(capsys):
    code, out, _ = run(capsys, "check", INSTANCES / "ineq_extra.json")
    assert code == 1
    assert json.loads(out)["verdict"] == "not_weakly_feasible"


def test_malformed_interval(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"An": [[[3, 1]]], "a": [1], "cn": [1], "point": {"xn": [1]}}')
    code, _, err = run(capsys, "check", bad)
    assert code == 2
    assert "interval lower bound exceeds upper" in err
    assert "An[0][0]" in err


def test_json_syntax_error_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n "a": [1,\n}')
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "line 3" in err


def test_float_rejected():
    with pytest.raises(InstanceError, match="floats"):
        data_from_json({"a": [1.5]})


def test_point_override(capsys):
    # optimality needs An_1 = 0, which forces x2 >= 1
    code, out, _ = run(capsys, "check", INSTANCES / "two_col.json", "--point", "2,1/2")
    assert code == 1
    assert json.loads(out)["verdict"] == "not_weakly_optimal"
    code, out, _ = run(capsys, "check", INSTANCES / "two_col.json", "--point", '{"xf": [], "xn": [1, 1]}')
    assert code == 0


def test_missing_point(tmp_path, capsys):
    f = tmp_path / "nopoint.json"
    f.write_text('{"cn": [1]}')
    code, _, err = run(capsys, "check", f)
    assert code == 2 and "point" in err


def check_then_verify(tmp_path, capsys, instance):
    code, out, _ = run(capsys, "check", instance)
    report = tmp_path / "report.json"
    report.write_text(out)
    return json.loads(out), report


def test_verify_round_trip(tmp_path, capsys):
    _, report = check_then_verify(tmp_path, capsys, INSTANCES / "two_col.json")
    code, out, _ = run(capsys, "verify", INSTANCES / "two_col.json", report)
    assert code == 0 and json.loads(out)["valid"]


def test_verify_tampered_cost(tmp_path, capsys):
    rep, report = check_then_verify(tmp_path, capsys, INSTANCES / "two_col.json")
    rep["witness"]["scenario"]["cn"] = [0, "1/2"]
    report.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "verify", INSTANCES / "two_col.json", report)
    assert code == 1 and not json.loads(out)["valid"]


def test_verify_scenario_outside(tmp_path, capsys):
    rep, report = check_then_verify(tmp_path, capsys, INSTANCES / "two_col.json")
    rep["witness"]["scenario"]["An"] = [[-1, 2]]
    report.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "verify", INSTANCES / "two_col.json", report)
    assert code == 1
    assert "scenario membership" in json.loads(out)["reasons"]


def test_verify_report_without_witness(tmp_path, capsys):
    _, report = check_then_verify(tmp_path, capsys, INSTANCES / "ineq_extra.json")
    code, out, _ = run(capsys, "verify", INSTANCES / "ineq_extra.json", report)
    assert code == 1 and json.loads(out)["reasons"] == ["no witness"]


def test_reduce_shapes(capsys):
    code, out, _ = run(capsys, "reduce", INSTANCES / "system_feasible.json")
    inst = json.loads(out)
    assert code == 0
    assert inst["An"] == [[1]] and inst["cn"] == [2] and inst["point"]["xn"] == [0]


def test_reduce_then_check(tmp_path, capsys):
    _, out, _ = run(capsys, "reduce", INSTANCES / "system_infeasible.json")
    f = tmp_path / "reduced.json"
    f.write_text(out)
    code, out, _ = run(capsys, "check", f)
    assert code == 1 and json.loads(out)["verdict"] == "not_weakly_optimal"


def test_reduce_empty_system(tmp_path, capsys):
    f = tmp_path / "empty.json"
    f.write_text('{"Bf": [], "b": []}')
    _, out, _ = run(capsys, "reduce", f)
    g = tmp_path / "reduced.json"
    g.write_text(out)
    assert json.loads(out)["dims"]["n"] == 0
    code, out, _ = run(capsys, "check", g)
    assert code == 0


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", INSTANCES / "two_col.json", "--depth", "0")
    assert code == 0 and json.loads(out)["result"] == "certified"
    code, out, _ = run(capsys, "oracle", INSTANCES / "ineq_extra.json")
    assert code == 1 and json.loads(out)["result"] == "inconclusive"
    code, out, _ = run(capsys, "oracle", "--system", INSTANCES / "system_infeasible.json")
    assert code == 1 and json.loads(out) == {"weakly_feasible": False}


def test_oracle_budget_is_input_error(capsys):
    code, _, err = run(capsys, "oracle", INSTANCES / "two_col.json", "--budget", "1")
    assert code == 2 and "budget" in err


def test_exhaustive_orthants(capsys):
    code, out, _ = run(capsys, "check", INSTANCES / "eq.json", "--exhaustive-orthants")
    rep = json.loads(out)
    assert rep["stats"]["orthants_tried"] == 4
    assert rep["stats"]["feasible_orthants"][0] == rep["witness"]["sigma"]


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "check", INSTANCES / "ineq.json", "--timing")
    assert "wall_time_ms" in json.loads(out)["stats"]


@pytest.mark.parametrize("seed", range(30))
def test_instance_round_trip(seed):
    data, x = random_instance(random.Random(seed))
    obj = json.loads(json.dumps(data_to_json(data, x)))
    assert load_instance(obj) == (data, x)


@given(st.lists(st.fractions(min_value=-100, max_value=100, max_denominator=50), max_size=5))
@settings(max_examples=50)
def test_point_round_trip(values):
    from weakopt.io import point_to_json
    from weakopt.model import Point

    p = Point(values, [abs(v) for v in values])
    assert point_from_json(json.loads(json.dumps(point_to_json(p)))) == p


def test_absent_blocks_default_to_zero():
    data = data_from_json(parse_json_text((INSTANCES / "two_col.json").read_text()))
    assert data.dims == (1, 0, 0, 2)
    assert data.Af.shape == (1, 0)
