import json

import pytest

from tightcycle.cli import main
from tightcycle.hypergraph import complete_3graph, write_hypergraph


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.3g"
    path.write_text(write_hypergraph(complete_3graph(5)))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info(capsys, k5_file):
    code, out, _ = run_cli(capsys, "info", k5_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 5
    assert payload["edges"] == 10
    assert payload["min_degree_1"] == 6
    assert payload["tightly_connected"] is True


def test_info_text_format(capsys, k5_file):
    code, out, _ = run_cli(capsys, "info", k5_file, "--format", "text")
    assert code == 0
    assert "min_degree_1: 6" in out


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.3g"
    bad.write_text("3 3\n1 2 3\n1 2 3\n")
    code, _, err = run_cli(capsys, "info", str(bad))
    assert code == 2
    assert "line 3" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run_cli(capsys, "info", "/nonexistent/file.3g")
    assert code == 2 and "cannot read" in err


def test_extremal_pipe_to_cycle(capsys, tmp_path, monkeypatch):
    code, out, _ = run_cli(capsys, "extremal", "--n", "9", "--a", "2")
    assert code == 0
    assert out.startswith("# generator: extremal")
    path = tmp_path / "ext.3g"
    path.write_text(out)
    code, out2, _ = run_cli(capsys, "cycle", str(path))
    assert code == 0
    assert json.loads(out2)["length"] == 6


def test_cycle_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(write_hypergraph(complete_3graph(5))))
    code, out, _ = run_cli(capsys, "cycle", "-")
    assert code == 0
    assert json.loads(out)["length"] == 5


def test_link_and_match_roundtrip(capsys, k5_file, tmp_path):
    code, out, _ = run_cli(capsys, "link", k5_file, "1")
    assert code == 0
    g = tmp_path / "link.2g"
    g.write_text(out)
    code, out2, _ = run_cli(capsys, "match", str(g))
    assert code == 0
    assert json.loads(out2)["size"] == 2


def test_components_command(capsys, k5_file):
    code, out, _ = run_cli(capsys, "components", k5_file)
    assert code == 0
    assert json.loads(out)["component_count"] == 1


def test_fracmatch_command(capsys, tmp_path):
    path = tmp_path / "k9.3g"
    path.write_text(write_hypergraph(complete_3graph(9)))
    code, out, _ = run_cli(capsys, "fracmatch", str(path))
    assert code == 0
    assert json.loads(out)["matching"]["total_weight"] == "3"


def test_fracmatch_precondition_exit_2(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "extremal", "--n", "9", "--a", "2")
    path = tmp_path / "ext.3g"
    path.write_text(out)
    code, _, err = run_cli(capsys, "fracmatch", str(path))
    assert code == 2 and "min degree" in err


def test_graphmeet_command(capsys, tmp_path):
    from tightcycle.hypergraph import complete_graph, write_graph

    path = tmp_path / "k9.2g"
    path.write_text(write_graph(complete_graph(9)))
    code, out, _ = run_cli(capsys, "graphmeet", str(path), str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["all_true"] and payload["shared_edge"] == [1, 2]


def test_egcheck_command(capsys, tmp_path):
    from tightcycle.hypergraph import complete_graph, write_graph

    path = tmp_path / "k6.2g"
    path.write_text(write_graph(complete_graph(6)))
    code, out, _ = run_cli(capsys, "egcheck", str(path))
    assert code == 0
    assert json.loads(out)["matching_number"] == 3


def test_random_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("TCL_SEED", "123")
    code, out1, _ = run_cli(capsys, "random", "--n", "8", "--p", "0.5")
    monkeypatch.setenv("TCL_SEED", "123")
    code, out2, _ = run_cli(capsys, "random", "--n", "8", "--p", "0.5")
    assert out1 == out2 and "seed=123" in out1


def test_verify_graphmeet_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "graphmeet", "--n", "9",
                           "--trials", "25", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] and payload["trials"] == 25


def test_verify_reduced_degree(capsys):
    code, out, _ = run_cli(capsys, "verify", "reduced-degree", "--trials", "200", "--seed", "1")
    assert code == 0 and json.loads(out)["passed"]


def test_pipeline_command_canonical(capsys, tmp_path):
    path = tmp_path / "k12.3g"
    path.write_text(write_hypergraph(complete_3graph(12)))
    code, out1, _ = run_cli(capsys, "pipeline", str(path), "--t", "6",
                            "--seed", "3", "--canonical")
    code2, out2, _ = run_cli(capsys, "pipeline", str(path), "--t", "6",
                             "--seed", "3", "--canonical")
    assert code == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["ok"]


def test_slice_and_reduce_commands(capsys, tmp_path):
    path = tmp_path / "k12.3g"
    path.write_text(write_hypergraph(complete_3graph(12)))
    code, out, _ = run_cli(capsys, "slice", str(path), "--t", "3", "--seed", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["t"] == 3 and payload["m"] == 4 and payload["deleted"] == []
    code, out, _ = run_cli(capsys, "reduce", str(path), "--t", "4", "--seed", "5")
    assert code == 0
    assert all(item["d"] == "1" for item in json.loads(out)["triples"])


def test_validate_command_verdict_exit(capsys, tmp_path):
    path = tmp_path / "k5.3g"
    path.write_text(write_hypergraph(complete_3graph(5)))
    code, out, _ = run_cli(capsys, "validate", str(path), "1,2,3,4,5")
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run_cli(capsys, "validate", str(path), "1,2,3,1")
    assert code == 1 and not json.loads(out)["valid"]
