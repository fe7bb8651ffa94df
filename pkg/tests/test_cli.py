"""The command-line surface: exit codes, JSON-lines output, error paths."""

import json

import pytest

from dualham.cli import main
from dualham.gen import gen_bipyramid, golden_two_squares


@pytest.fixture()
def octa_file(tmp_path, octahedron):
    p = tmp_path / "octa.json"
    p.write_text(octahedron.to_json())
    return str(p)


@pytest.fixture()
def bipyr_file(tmp_path, bipyramid6):
    p = tmp_path / "bipyr.json"
    p.write_text(bipyramid6.to_json())
    return str(p)


@pytest.fixture()
def squares_file(tmp_path):
    g = golden_two_squares()
    # alpha side of the typed bipartition, with an explicit colouring
    p = tmp_path / "squares.json"
    p.write_text(json.dumps({"edges": g.edges(), "a": {0: 1, 2: 2, 5: 1, 7: 2, 9: 1}}))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    rows = [json.loads(line) for line in captured.out.splitlines() if line]
    return code, rows, captured.err


class TestCheck:
    def test_even_tri_pass(self, capsys, octa_file):
        code, rows, err = run(capsys, ["check", octa_file, "--family", "even-tri"])
        assert code == 0
        assert rows[-1]["checks"][0]["passed"]
        assert "ok" in err

    def test_even_tri_fail(self, capsys, tmp_path):
        from dualham.embed import EmbeddedGraph
        from dualham.gen import TETRAHEDRON

        p = tmp_path / "tetra.json"
        p.write_text(EmbeddedGraph.build(TETRAHEDRON).to_json())
        code, rows, err = run(capsys, ["check", str(p), "--family", "even-tri"])
        assert code == 1
        assert "FAIL" in err

    def test_multi4_with_witness(self, capsys, tmp_path):
        p = tmp_path / "c6.json"
        p.write_text(json.dumps({"edges": [[i, (i + 1) % 6] for i in range(6)]}))
        code, rows, _ = run(capsys, ["check", str(p), "--family", "multi4"])
        assert code == 1
        (check,) = rows[-1]["checks"]
        assert len(check["witness"]) % 4 != 0

    def test_hypothesis_family(self, capsys, bipyr_file):
        code, rows, _ = run(
            capsys, ["check", bipyr_file, "--family", "barnette-hypothesis"]
        )
        assert code == 0
        assert all(c["passed"] for c in rows[-1]["checks"])

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["check", "/nonexistent", "--family", "even-tri"])
        assert code == 2
        assert "error" in err


class TestColor:
    def test_default_pin(self, capsys, squares_file):
        code, rows, _ = run(capsys, ["color", squares_file])
        assert code == 0
        assert set(rows[-1]["result"]["b"].values()) <= {1, 2}

    def test_explicit_pin(self, capsys, squares_file):
        code, rows, _ = run(capsys, ["color", squares_file, "--pin", "1=2"])
        assert code == 0
        assert rows[-1]["result"]["b"]["1"] == 2

    def test_pin_on_alpha_rejected(self, capsys, squares_file):
        code, _, err = run(capsys, ["color", squares_file, "--pin", "0=1"])
        assert code == 2

    def test_missing_alpha(self, capsys, tmp_path):
        p = tmp_path / "noa.json"
        p.write_text(json.dumps({"edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
        code, _, _ = run(capsys, ["color", str(p)])
        assert code == 2


class TestPartitionAndHamilton:
    def test_partition_face_sparse(self, capsys, bipyr_file):
        code, rows, _ = run(capsys, ["partition", bipyr_file])
        assert code == 0
        res = rows[-1]["result"]
        assert sorted(res["s"] + res["t"]) == list(range(8))

    def test_partition_with_edge(self, capsys, bipyr_file):
        code, rows, _ = run(capsys, ["partition", bipyr_file, "--with-edge", "6,0"])
        assert code == 0
        res = rows[-1]["result"]
        assert (6 in res["s"]) == (0 in res["s"])

    def test_partition_bad_edge_syntax(self, capsys, bipyr_file):
        code, _, _ = run(capsys, ["partition", bipyr_file, "--with-edge", "6;0"])
        assert code == 2

    def test_hamilton_face_sparse(self, capsys, bipyr_file, bipyramid6):
        code, rows, _ = run(capsys, ["hamilton", bipyr_file])
        assert code == 0
        cycle = rows[-1]["result"]["cycle"]
        assert len(cycle) == len(bipyramid6.faces.faces)

    def test_hamilton_avoid_edge(self, capsys, bipyr_file, bipyramid6):
        from dualham.embed import dual

        d = dual(bipyramid6)
        e_star = d.edge_map[(0, 6)]
        code, rows, _ = run(
            capsys, ["hamilton", bipyr_file, "--avoid-edge", f"{e_star[0]},{e_star[1]}"]
        )
        assert code == 0
        cycle = rows[-1]["result"]["cycle"]
        k = len(cycle)
        edges = {tuple(sorted((cycle[i], cycle[(i + 1) % k]))) for i in range(k)}
        assert tuple(sorted(e_star)) not in edges


class TestGenAndSurvey:
    def test_gen_bipyramid(self, capsys):
        code, rows, _ = run(capsys, ["gen", "--family", "bipyramid", "--size", "3"])
        assert code == 0
        assert rows[0]["rotation"] == [list(r) for r in gen_bipyramid(3).rotation]

    def test_gen_even_tri(self, capsys):
        code, rows, _ = run(capsys, ["gen", "--family", "even-tri", "--size", "8"])
        assert code == 0
        assert rows[-1]["result"]["count"] == 1

    def test_gen_multi4(self, capsys):
        code, rows, _ = run(
            capsys, ["gen", "--family", "multi4", "--size", "12", "--seed", "5"]
        )
        assert code == 0
        assert "edges" in rows[0]

    def test_gen_size_out_of_range(self, capsys):
        code, _, _ = run(capsys, ["gen", "--family", "even-tri", "--size", "99"])
        assert code == 2

    def test_survey_even_tri(self, capsys):
        code, rows, _ = run(
            capsys, ["survey", "--family", "even-tri", "--n-max", "8"]
        )
        assert code == 0
        summary = rows[-1]
        assert summary["result"]["instances"] == 2
        for row in rows[:-1]:
            assert all(row["checks"].values())

    def test_survey_multi4(self, capsys):
        code, rows, _ = run(
            capsys, ["survey", "--family", "multi4", "--count", "3", "--seed", "11"]
        )
        assert code == 0
        assert rows[-1]["result"]["instances"] == 3
