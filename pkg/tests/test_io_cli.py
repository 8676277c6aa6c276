import json

import pytest

from rainbowconn.cli import main
from rainbowconn.errors import InvalidInputError
from rainbowconn.graph_io import (
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    to_dot,
    write_edge_list,
)
from rainbowconn.graphs import Multigraph, build_graph

from helpers import cycle


class TestEdgeListFormat:
    def test_round_trip(self, tmp_path):
        g = cycle(5)
        path = tmp_path / "g.txt"
        write_edge_list(g, path)
        assert read_edge_list(path).edges == g.edges

    def test_header_mismatch(self):
        with pytest.raises(InvalidInputError):
            parse_edge_list("2 2\n0 1\n")

    def test_bad_header(self):
        with pytest.raises(InvalidInputError):
            parse_edge_list("nope\n")

    def test_multigraph_serialized(self):
        mg = Multigraph(3, ((0, 0), (0, 1), (0, 1)))
        text = format_edge_list(mg)
        assert text.splitlines()[0] == "3 3"
        assert text.count("0 1") == 2

    def test_dot_contains_edges(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        dot = to_dot(g, edge_colours={(0, 1): 4})
        assert "0 -- 1" in dot and 'label="c4"' in dot


class TestCli:
    def test_generate_and_verify_flow(self, tmp_path):
        gpath = tmp_path / "g.txt"
        cpath = tmp_path / "c.json"
        assert (
            main(
                [
                    "generate",
                    "--model",
                    "regular",
                    "--n",
                    "30",
                    "--r",
                    "6",
                    "--seed",
                    "5",
                    "--out",
                    str(gpath),
                ]
            )
            == 0
        )
        assert (
            main(
                [
                    "color-edges",
                    "--input",
                    str(gpath),
                    "--method",
                    "mindeg",
                    "--out",
                    str(cpath),
                ]
            )
            == 0
        )
        payload = json.loads(cpath.read_text())
        assert payload["kind"] == "edge"
        assert payload["bound"] >= payload["colours_used"]
        assert (
            main(
                [
                    "verify",
                    "--graph",
                    str(gpath),
                    "--colouring",
                    str(cpath),
                    "--mode",
                    "certificate",
                ]
            )
            == 0
        )

    def test_verify_rejects_corrupted(self, tmp_path, capsys):
        gpath = tmp_path / "g.txt"
        cpath = tmp_path / "c.json"
        main(
            [
                "generate", "--model", "regular", "--n", "20", "--r", "6",
                "--seed", "1", "--out", str(gpath),
            ]
        )
        main(
            [
                "color-edges", "--input", str(gpath), "--method", "mindeg",
                "--out", str(cpath),
            ]
        )
        payload = json.loads(cpath.read_text())
        # Flatten every edge to colour 0: the certificate's parent edges no
        # longer match their layer palettes, a structural failure.
        for entry in payload["colors"]:
            entry[2] = 0
        cpath.write_text(json.dumps(payload))
        code = main(
            [
                "verify", "--graph", str(gpath), "--colouring", str(cpath),
                "--mode", "certificate",
            ]
        )
        assert code == 1

    def test_theorem5_record(self, tmp_path):
        out = tmp_path / "t5.txt"
        rec = tmp_path / "t5.json"
        assert (
            main(
                [
                    "generate", "--model", "theorem5", "--n", "40",
                    "--seed", "3", "--out", str(out), "--json", str(rec),
                ]
            )
            == 0
        )
        record = json.loads(rec.read_text())["record"]
        assert sum(record["gaps"]) == 40
        assert len(record["matching"]) == 10

    def test_lemma1_split_file(self, tmp_path):
        g = cycle(4)
        gpath = tmp_path / "g.txt"
        write_edge_list(g, gpath)
        spath = tmp_path / "split.json"
        spath.write_text(
            json.dumps(
                {
                    "edges1": [[0, 1], [1, 2], [2, 3]],
                    "edges2": [[0, 1], [0, 3], [2, 3]],
                }
            )
        )
        cpath = tmp_path / "c.json"
        assert (
            main(
                [
                    "color-edges", "--input", str(gpath), "--method", "lemma1",
                    "--split", str(spath), "--out", str(cpath),
                ]
            )
            == 0
        )
        assert json.loads(cpath.read_text())["bound"] == 8

    def test_color_vertices_and_verify(self, tmp_path):
        gpath = tmp_path / "g.txt"
        vpath = tmp_path / "vc.json"
        assert (
            main(
                [
                    "color-vertices", "--n", "100", "--r", "28", "--seed", "4",
                    "--out", str(vpath), "--graph-out", str(gpath),
                ]
            )
            == 0
        )
        assert (
            main(
                [
                    "verify", "--graph", str(gpath), "--colouring", str(vpath),
                    "--mode", "certificate",
                ]
            )
            == 0
        )
        payload = json.loads(vpath.read_text())
        assert payload["kind"] == "vertex"
        assert payload["colours_used"] <= payload["bound"]

    def test_experiment_report_figures(self, tmp_path):
        cfgpath = tmp_path / "exp.json"
        cfgpath.write_text(
            json.dumps(
                {
                    "experiment": "cli",
                    "pipeline": "regular",
                    "n_values": [32, 64],
                    "r_values": [5],
                    "trials": 2,
                    "base_seed": 3,
                    "verify": "certificate-sample",
                    "verify_pairs": 50,
                }
            )
        )
        csvpath = tmp_path / "res.csv"
        sumpath = tmp_path / "summary.json"
        figdir = tmp_path / "figs"
        assert main(["experiment", "--config", str(cfgpath), "--out", str(csvpath)]) == 0
        assert (
            main(
                [
                    "report", "--in", str(csvpath), "--out", str(sumpath),
                    "--plots-dir", str(figdir),
                ]
            )
            == 0
        )
        summary = json.loads(sumpath.read_text())
        assert summary["groups"]
        figures = sorted(p.name for p in figdir.iterdir())
        assert "colours_vs_n.png" in figures

    def test_generate_pairing_stdout(self, capsys):
        assert main(["generate", "--model", "pairing", "--n", "2", "--r", "2", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "2 2"

    def test_expander_cli(self, tmp_path):
        g = __import__("helpers").complete_graph(12)
        gpath = tmp_path / "k12.txt"
        write_edge_list(g, gpath)
        cpath = tmp_path / "c.json"
        assert (
            main(
                [
                    "color-edges", "--input", str(gpath), "--method", "expander",
                    "--lambda", "0.5", "--seed", "2", "--out", str(cpath),
                ]
            )
            == 0
        )
        assert json.loads(cpath.read_text())["colours_used"] >= 1

    def test_error_exit_code(self, tmp_path, capsys):
        gpath = tmp_path / "bad.txt"
        write_edge_list(cycle(6), gpath)  # min degree 2 < 4
        code = main(
            [
                "color-edges", "--input", str(gpath), "--method", "mindeg",
                "--out", str(tmp_path / "c.json"),
            ]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err
