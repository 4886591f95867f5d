import json

import pytest

import mutclust as mc
from mutclust.cli import main

SMALL_SPEC = mc.SyntheticSpec((60, 40), 633, 2533, 0.935, 0.808, seed=0)


@pytest.fixture
def graph_file(tmp_path):
    g, labels = mc.generate_planted(SMALL_SPEC)
    path = tmp_path / "graph.txt"
    with open(path, "w") as fh:
        mc.write_edge_list(g, fh)
    labels_path = tmp_path / "planted.csv"
    with open(labels_path, "w") as fh:
        fh.write("node,cluster\n")
        for node, lab in enumerate(labels):
            fh.write(f"{node},{lab}\n")
    return path, labels_path


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(SMALL_SPEC.to_json())
    return path


def test_census_roundtrip_of_synth(tmp_path, spec_file, capsys):
    graph_path = tmp_path / "g.txt"
    labels_path = tmp_path / "labels.csv"
    assert main(["synth", "--spec", str(spec_file), "--output", str(graph_path),
                 "--labels", str(labels_path)]) == 0
    out_path = tmp_path / "census.json"
    assert main(["census", "--input", str(graph_path), "--output", str(out_path)]) == 0
    payload = json.loads(out_path.read_text())
    assert payload["census"]["m"] == SMALL_SPEC.n_mutual_dyads
    assert payload["census"]["b"] == SMALL_SPEC.n_oneway_edges
    assert payload["nodes"] == SMALL_SPEC.n
    labels = labels_path.read_text().strip().splitlines()
    assert labels[0] == "node,cluster"
    assert len(labels) == SMALL_SPEC.n + 1


def test_census_three_node_example(tmp_path, capsys):
    path = tmp_path / "tiny.txt"
    path.write_text("0 1\n1 0\n0 2\n")
    assert main(["census", "--input", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["census"] == {"m": 1, "b": 1, "u": 1, "n_dyads": 3}
    assert payload["graph_tendency"]["theta_avg"] == pytest.approx(0.1667, abs=1e-4)


def test_cluster_json_and_labels_csv(tmp_path, graph_file):
    graph_path, _ = graph_file
    out = tmp_path / "result.json"
    assert main(["cluster", "--input", str(graph_path), "--method", "tendency",
                 "--k", "2", "--seed", "0", "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["method"] == "tendency"
    assert payload["k"] == 2
    assert sorted(payload["cluster_sizes"]) == [40, 60]

    csv_out = tmp_path / "labels.csv"
    assert main(["cluster", "--input", str(graph_path), "--method", "tendency",
                 "--k", "2", "--seed", "0", "--format", "csv",
                 "--output", str(csv_out)]) == 0
    lines = csv_out.read_text().strip().splitlines()
    assert lines[0] == "node,cluster"
    assert len(lines) == 101


def test_cluster_auto_k(tmp_path, graph_file):
    graph_path, _ = graph_file
    out = tmp_path / "auto.json"
    assert main(["cluster", "--input", str(graph_path), "--method", "tendency",
                 "--k", "auto", "--k-max", "8", "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["k"] == 2


def test_cluster_baseline_method(tmp_path, graph_file):
    graph_path, _ = graph_file
    out = tmp_path / "base.json"
    assert main(["cluster", "--input", str(graph_path), "--method", "baseline:average",
                 "--k", "2", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["method"] == "baseline:average"


def test_cluster_dot_export(tmp_path, graph_file):
    graph_path, _ = graph_file
    out = tmp_path / "graph.dot"
    assert main(["cluster", "--input", str(graph_path), "--k", "2",
                 "--format", "dot", "--output", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("digraph")
    assert "cluster=" in text


def test_eval_with_planted_labels(tmp_path, graph_file, capsys):
    graph_path, labels_path = graph_file
    assert main(["eval", "--input", str(graph_path), "--labels", str(labels_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["k"] == 2
    assert "trcut" in payload
    assert "rcut" in payload["cuts_average_symmetrization"]
    assert payload["tendency_report"]["graph"]["n_pairs"] == 100 * 99 // 2


def test_core_extract(tmp_path, capsys):
    edges = [(i, j) for i in range(6) for j in range(6) if i != j]
    edges += [(0, 6), (6, 0)]  # low-degree appendage
    g = mc.from_edges(edges)
    path = tmp_path / "core_in.txt"
    with open(path, "w") as fh:
        mc.write_edge_list(g, fh)
    out = tmp_path / "core.txt"
    assert main(["core-extract", "--input", str(path), "--core-threshold", "2",
                 "--output", str(out)]) == 0
    core = mc.load_edge_list(str(out))
    assert core.n == 6


def test_synth_preset(tmp_path):
    out = tmp_path / "preset.txt"
    assert main(["synth", "--preset", "two-cluster", "--seed", "1",
                 "--output", str(out)]) == 0
    g = mc.load_edge_list(str(out))
    census = mc.dyad_census(g)
    assert (g.n, census.m, census.b) == (1000, 6333, 25334)


def test_compare_command(tmp_path, spec_file, capsys):
    assert main(["compare", "--spec", str(spec_file), "--repeats", "2",
                 "--method", "tendency", "--seed", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["repeats"] == 2
    assert "tendency" in payload["methods"]


def test_identical_seed_gives_identical_output(tmp_path, graph_file):
    graph_path, _ = graph_file
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["cluster", "--input", str(graph_path), "--k", "2",
                     "--seed", "11", "--output", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_error_json_on_malformed_input(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\nbroken line here\n")
    assert main(["census", "--input", str(path)]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["code"] == "malformed-edge-line"


def test_error_json_on_missing_file(capsys):
    assert main(["census", "--input", "/nonexistent/file.txt"]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["code"] == "invalid-input"


def test_error_json_on_no_structure(tmp_path, capsys):
    edges = [(i, j) for i in range(5) for j in range(5) if i != j]
    path = tmp_path / "full.txt"
    with open(path, "w") as fh:
        mc.write_edge_list(mc.from_edges(edges), fh)
    assert main(["cluster", "--input", str(path), "--k", "2"]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["code"] == "no-tendency-structure"


def test_eval_csv_one_row_per_scope(tmp_path, graph_file, capsys):
    graph_path, labels_path = graph_file
    assert main(["eval", "--input", str(graph_path), "--labels", str(labels_path),
                 "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "scope,theta_total,n_pairs,theta_avg"
    scopes = [line.split(",")[0] for line in lines[1:]]
    assert scopes == ["graph", "cluster_0", "cluster_1", "cross"]


def test_csv_format_census(tmp_path, graph_file, capsys):
    graph_path, _ = graph_file
    assert main(["census", "--input", str(graph_path), "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "key,value"
    assert any(line.startswith("census.m,") for line in out.splitlines())
