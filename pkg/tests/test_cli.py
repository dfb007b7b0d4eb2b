import json
import shutil

import pytest
from click.testing import CliRunner

from fuzrank.cli import main
from fuzrank.graph import enumerate_paths
from fuzrank.scenario import bundled_scenario_path, load_scenario


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def scenario_file(tmp_path):
    dst = tmp_path / "scenario.json"
    shutil.copy(bundled_scenario_path(), dst)
    return dst


def test_rank_fuzzy_json_a4_extreme(runner, scenario_file):
    result = runner.invoke(
        main, ["rank", str(scenario_file), "--engine", "fuzzy", "--format", "json"]
    )
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    (ranking,) = doc["rankings"]
    assert ranking["engine"] == "fuzzy"
    costs = {e["action"]: e["cost"] for e in ranking["actions"]}
    assert len(costs) == 4
    assert max(costs, key=costs.get) == "A4"
    assert ranking["minimum_effort_action"] == "A4"
    assert ranking["cost_definition"] == "d_minus / (d_plus + d_minus)"


def test_rank_missing_file_exit_one(runner):
    result = runner.invoke(main, ["rank", "missing.json"])
    assert result.exit_code == 1
    assert "file not found" in result.output


def test_rank_both_engines_two_labeled_tables(runner, scenario_file):
    result = runner.invoke(main, ["rank", str(scenario_file), "--engine", "both"])
    assert result.exit_code == 0
    assert "== classic engine ==" in result.output
    assert "== fuzzy engine ==" in result.output
    assert "d_plus / (d_plus + d_minus)" in result.output
    assert "d_minus / (d_plus + d_minus)" in result.output


def test_rank_json_reports_are_byte_identical(runner, scenario_file):
    args = ["rank", str(scenario_file), "--engine", "both", "--format", "json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output
    assert json.loads(first.output)["scenario_fingerprint"].startswith("sha256:")


def test_rank_csv_format(runner, scenario_file):
    result = runner.invoke(
        main, ["rank", str(scenario_file), "--engine", "classic", "--format", "csv"]
    )
    assert result.exit_code == 0
    header, *rows = result.output.strip().split("\n")
    assert header == "engine,action,d_plus,d_minus,cost,benefit,rank"
    assert len(rows) == 4
    assert rows[0].startswith("classic,")


def test_rank_output_file_written_atomically(runner, scenario_file, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(
        main,
        ["rank", str(scenario_file), "--engine", "fuzzy", "--format", "json",
         "-o", str(out)],
    )
    assert result.exit_code == 0
    assert json.loads(out.read_text())["rankings"]
    leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".fuzrank-")]
    assert leftovers == []


def test_rank_unwritable_output_exit_one(runner, scenario_file, tmp_path):
    missing_dir = tmp_path / "nope" / "report.json"
    result = runner.invoke(
        main, ["rank", str(scenario_file), "-o", str(missing_dir)]
    )
    assert result.exit_code == 1
    assert "cannot write" in result.output
    assert not missing_dir.exists()


def test_rank_scenario_without_panel_fuzzy_fails(runner, tmp_path):
    doc = {
        "schema_version": "1",
        "criteria": [{"id": "C-1", "weight": 1.0}],
        "actions": ["A1"],
        "decision_matrix": {"A1": {"C-1": 2.0}},
    }
    path = tmp_path / "crisp_only.json"
    path.write_text(json.dumps(doc))
    ok = runner.invoke(main, ["rank", str(path), "--engine", "classic"])
    assert ok.exit_code == 0
    bad = runner.invoke(main, ["rank", str(path), "--engine", "fuzzy"])
    assert bad.exit_code == 1
    assert "needs a 'panel'" in bad.output


def test_rank_invalid_scenario_lists_paths(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{}")
    result = runner.invoke(main, ["rank", str(path)])
    assert result.exit_code == 1
    assert "missing schema_version" in result.output


def test_veability_table_and_csv(runner, scenario_file):
    table = runner.invoke(main, ["veability", str(scenario_file)])
    assert table.exit_code == 0
    assert "== VEA-bility ==" in table.output
    csv_out = runner.invoke(main, ["veability", str(scenario_file), "--format", "csv"])
    header, *rows = csv_out.output.strip().split("\n")
    assert header == "asset,V,E,A,veability"
    assert len(rows) == 6
    for row in rows:
        fields = row.split(",")
        for value in map(float, fields[1:]):
            assert 0.0 <= value <= 10.0


def test_veability_zero_vuln_asset_scores_ten(runner, tmp_path):
    doc = {
        "schema_version": "1",
        "assets": [{"id": "pristine", "services_on_asset": 0, "network_services_total": 3}],
    }
    path = tmp_path / "pristine.json"
    path.write_text(json.dumps(doc))
    result = runner.invoke(main, ["veability", str(path), "--format", "json"])
    assert result.exit_code == 0
    (asset,) = json.loads(result.output)["assets"]
    assert asset["veability"] == 10.0


def test_veability_requires_assets(runner, tmp_path):
    path = tmp_path / "no_assets.json"
    path.write_text(json.dumps({"schema_version": "1"}))
    result = runner.invoke(main, ["veability", str(path)])
    assert result.exit_code == 1
    assert "no 'assets'" in result.output


def test_graph_exports_six_final_boxes(runner, scenario_file, tmp_path):
    out = tmp_path / "graph.dot"
    result = runner.invoke(main, ["graph", str(scenario_file), "-o", str(out)])
    assert result.exit_code == 0
    text = out.read_text()
    assert text.count("shape=box") == 6
    assert text.startswith("digraph")


def test_graph_goal_filter_matches_enumeration(runner, scenario_file):
    result = runner.invoke(main, ["graph", str(scenario_file), "--goal", "RAN-control"])
    assert result.exit_code == 0
    scenario = load_scenario(bundled_scenario_path())
    expected = {
        nid for path in enumerate_paths(scenario.graph, "RAN-control") for nid in path
    }
    for nid in scenario.graph.nodes:
        present = f'"{nid}" [' in result.output
        assert present == (nid in expected)


def test_graph_unknown_goal_exit_one(runner, scenario_file):
    result = runner.invoke(main, ["graph", str(scenario_file), "--goal", "nowhere"])
    assert result.exit_code == 1
    assert "not in the graph" in result.output


def test_graph_empty_graph_minimal_dot(runner, tmp_path):
    path = tmp_path / "empty_graph.json"
    path.write_text(json.dumps({"schema_version": "1", "graph": {"nodes": [], "edges": [], "targets": []}}))
    result = runner.invoke(main, ["graph", str(path)])
    assert result.exit_code == 0
    body = result.output.strip().split("\n")
    assert body[0].startswith("digraph") and body[-1] == "}"
    assert len(body) == 2


def test_graph_path_cap_env(runner, scenario_file):
    result = runner.invoke(
        main,
        ["graph", str(scenario_file), "--goal", "RAN-control"],
        env={"FUZRANK_PATH_CAP": "1"},
    )
    assert result.exit_code == 2
    assert "more than 1" in result.output
    bad = runner.invoke(
        main,
        ["graph", str(scenario_file), "--goal", "RAN-control"],
        env={"FUZRANK_PATH_CAP": "zero"},
    )
    assert bad.exit_code == 1
    assert "FUZRANK_PATH_CAP" in bad.output


def test_validate_ok_and_strict(runner, scenario_file, tmp_path):
    ok = runner.invoke(main, ["validate", str(scenario_file), "--strict"])
    assert ok.exit_code == 0
    assert "OK" in ok.output

    lax = tmp_path / "lax.json"
    lax.write_text(json.dumps({"schema_version": "1", "surprise": True}))
    warned = runner.invoke(main, ["validate", str(lax)])
    assert warned.exit_code == 0
    assert "warning" in warned.output
    strict = runner.invoke(main, ["validate", str(lax), "--strict"])
    assert strict.exit_code == 1


def test_version_flag(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "fuzrank" in result.output
