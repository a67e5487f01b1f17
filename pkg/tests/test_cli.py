"""CLI surface: subcommands, definition files, exit codes, determinism."""

import json

import pytest

from vertexalg.cli import main
from vertexalg.deffiles import build_algebra, load_definition
from vertexalg.suites import run_suite


DEFINITION = {
    "lie": {
        "name": "my_sl2",
        "basis": [["H", "even"], ["Xp", "even"], ["Xm", "even"]],
        "constants": [
            [0, 1, [[1, "1"]]], [1, 0, [[1, "-1"]]],
            [0, 2, [[2, "-1"]]], [2, 0, [[2, "1"]]],
            [1, 2, [[0, "2"]]], [2, 1, [[0, "-2"]]],
        ],
        "form": [["1/2", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]],
    },
    "algebra": "affine:my_sl2@k * bc:1",
    "currents": {"J": "H - :b c:"},
    "elements": {"Gp": ":Xp b:"},
}


@pytest.fixture
def def_file(tmp_path):
    path = tmp_path / "n2.json"
    path.write_text(json.dumps(DEFINITION))
    return str(path)


def test_build_algebra_spec():
    P = build_algebra("affine:sl2@k * bc:1")
    assert [g.name for g in P.generators] == ["H", "Xp", "Xm", "b", "c"]
    P = build_algebra("betagamma:1")
    assert P.ngen == 2


def test_load_definition(def_file):
    definition = load_definition(def_file)
    P = definition.algebra
    assert P.ngen == 5
    J = definition.currents["J"]
    assert J == P.gen("H") - P.gen("b").no(P.gen("c"))


def test_cli_define(def_file, capsys):
    assert main(["define", "--file", def_file]) == 0
    out = capsys.readouterr().out
    assert "H" in out and "currents: J" in out


def test_cli_bracket(capsys):
    code = main(["bracket", "--algebra", "affine:sl2@k", "--left", "Xp", "--right", "Xm"])
    assert code == 0
    out = capsys.readouterr().out
    assert "(2)*H" in out and "(k)*1" in out


def test_cli_bracket_json(capsys):
    code = main(["--format", "json", "bracket", "--algebra", "heisenberg:1",
                 "--left", "a1", "--right", "a1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["coefficients"] == ["0", "(1)*1"]


def test_cli_nproduct(capsys):
    code = main(["nproduct", "--algebra", "bc:1", "--n", "0", "--left", "b", "--right", "c"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(1)*1"


def test_cli_normal_form(capsys):
    code = main(["normal-form", "--algebra", "bc:1", "--expr", ":c b:"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(-1)*:b c:"


def test_cli_commutant(def_file, capsys):
    # the weight-1 commutant of J = H - :bc: is spanned by F = H + (k/2):bc:
    code = main(["commutant", "--algebra", def_file, "--currents", "J", "--weight", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "kernel dimension 1" in out
    assert ":b c:" in out


def test_cli_find_relation(capsys):
    code = main([
        "find-relation", "--algebra", "heisenberg:1",
        "--target", ":a1 a1:", "--generators", ":a1 a1:",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "multiplier: (1)" in out


def test_cli_find_relation_obstruction(capsys):
    code = main([
        "find-relation", "--algebra", "heisenberg:1",
        "--target", "D^1(a1)", "--generators", ":a1 a1:",
    ])
    assert code == 1


def test_cli_nongeneric(capsys):
    code = main(["nongeneric", "--algebra", "affine:sl2@k", "--currents", "H",
                 "--weight", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "['0']" in out


def test_cli_usage_errors():
    assert main(["bracket", "--algebra", "nonsense:1", "--left", "x", "--right", "y"]) == 2
    assert main(["suite", "no-such-suite"]) == 2
    assert main(["normal-form", "--algebra", "bc:1", "--expr", ":b"]) == 2


def test_cli_suite_exit_code(capsys):
    assert main(["suite", "sl3-limit"]) == 0
    capsys.readouterr()


def test_suite_determinism():
    a = run_suite("parafermion-sl2").serialize(with_timing=False)
    b = run_suite("parafermion-sl2").serialize(with_timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "sugawara" in out and "affine:<lie>@<level>" in out


def test_cli_bad_lie_definition(tmp_path, capsys):
    # an invalid Lie section must fail cleanly with a usage-error exit code
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "lie": {
            "name": "x",
            "basis": [["a", "even"], ["b", "even"]],
            "constants": [[0, 1, [[0, "1"]]], [1, 0, [[0, "-1"]]],
                          [0, 0, [[1, "1"]]]],
            "form": [["1", "0"], ["0", "1"]],
        },
        "algebra": "affine:x@k",
    }))
    assert main(["define", "--file", str(bad)]) == 2
    assert "antisymmetry" in capsys.readouterr().err
