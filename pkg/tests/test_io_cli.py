import json
from pathlib import Path

import pytest

from lconvex import FileFormatError
from lconvex.convex import build_space
from lconvex.harness import io
from lconvex.harness.cli import main
from lconvex.lattice import named_lattice
from lconvex.order import lattice_order

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def test_lattice_file_round_trip():
    lat = io.load(DATA / "godel3.lat", "lattice")
    g3 = named_lattice("godel3")
    assert (lat.residuum_table == g3.residuum_table).all() and lat.labels == g3.labels
    again = io.parse_lattice(io.format_lattice(lat))
    assert (again.tensor == lat.tensor).all()


def test_order_and_space_round_trip(g3, ab):
    p = lattice_order(g3)
    assert io.parse_order(io.format_order(p)) == p
    x = build_space(ab, g3, [io.parse_subset_literal("subset A: a=1/2", ab, g3)[1]])
    assert io.parse_space(io.format_space(x), closed=True) == x


def test_subset_literal_by_index_and_label(g3, ab):
    _, a = io.parse_subset_literal("subset A: a=2 b=1/2", ab, g3)
    assert a.degrees == (2, 1)
    _, a = io.parse_subset_literal("subset A: a=1", ab, g3)     # the label "1" is the top
    assert a.degrees == (2, 0)
    with pytest.raises(FileFormatError):
        io.parse_subset_literal("subset A: c=1", ab, g3)
    with pytest.raises(FileFormatError):
        io.parse_subset_literal("subset A: a=3", ab, g3)


def test_order_over_lattice_file():
    p = io.load(DATA / "g3_chain.order", "order")
    assert p.lattice.name == "G3" and p.e.tolist() == [[2, 1], [0, 2]]


def test_bad_headers():
    with pytest.raises(FileFormatError):
        io.parse_space("order X over boolean\ncarrier a\n")
    with pytest.raises(FileFormatError):
        io.parse_order("order X over nowhere.lat\ncarrier a\ne\n1\n")


@pytest.mark.parametrize("argv, code", [
    (["check-lattice", str(DATA / "godel3.lat")], 0),
    (["check-lattice", str(DATA / "bad_monoid.lat")], 2),
    (["check-lattice", "lukasiewicz4"], 0),
    (["check-order", str(DATA / "not_antisymmetric.order")], 2),
    (["check-space", str(DATA / "chi_a.space")], 0),
    (["sobrify", str(DATA / "indiscrete.space"), "--oracle"], 0),
    (["specialize", str(DATA / "indiscrete.space")], 2),
    (["scott", str(DATA / "g3_chain.order")], 0),
    (["complete", str(DATA / "antichain.order"), "--verify-universal"], 0),
    (["complete", str(DATA / "antichain.order"), "--budget", "1"], 3),
    (["check-space", str(DATA / "missing.space")], 1),
    (["theorems", "--only", "Def-xf", "--budget", "0"], 0),
    (["search", "scott-inclusion", "--lattice", "boolean"], 0),
    (["no-such-command"], 1),
])
def test_cli_exit_codes(argv, code, capsys):
    with pytest.raises(SystemExit) if code == 1 and argv[0] == "no-such-command" else _null():
        assert main(argv) == code
    capsys.readouterr()


class _null:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def test_sobrify_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["sobrify", str(DATA / "chi_a.space"), "--report", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["space"] == "S" and doc["xi"] == {"a": "[1,0]", "b": "[1,1]"}
    assert doc["verdicts"]["xi_homeomorphism"] is True
    assert "X^F points" in capsys.readouterr().out


def test_theorems_json_is_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["theorems", "--only", "Def-sober", "Prop-sco-dir", "--json", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["summary"] == {"Fail": 0, "Pass": 2, "Skipped": 0}
    capsys.readouterr()
