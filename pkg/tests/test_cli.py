from __future__ import annotations

import json

import pytest

from cli import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, run
from components.dsrg_core import verify_matrix
from components.search import SearchRecord


def salida(capsys: pytest.CaptureFixture) -> str:
    return capsys.readouterr().out


def test_verify_text(capsys: pytest.CaptureFixture) -> None:
    assert run(["verify", "--n", "3", "--x", "1", "--y", "1"]) == EXIT_OK
    assert salida(capsys).strip() == "(6,2,1,0,1)"


def test_verify_not_a_dsrg(capsys: pytest.CaptureFixture) -> None:
    assert run(["verify", "--n", "4", "--x", "1", "--y", "1"]) == EXIT_NEGATIVE
    assert salida(capsys).startswith("not a DSRG: ")


def test_verify_json(capsys: pytest.CaptureFixture) -> None:
    assert run(["verify", "--n", "9", "--x", "{1,4,7}", "--y", "{1,4,7}", "--format", "json"]) == EXIT_OK
    datos = json.loads(salida(capsys))
    assert datos["params"] == {"v": 18, "k": 6, "mu": 3, "lambda": 0, "t": 3}
    assert all(datos["verifiers"].values())
    assert datos["matched"] == ["C5.1"]


def test_verify_rejects_bad_sets(capsys: pytest.CaptureFixture) -> None:
    assert run(["verify", "--n", "3", "--x", "1,4", "--y", "1"]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("❌")
    assert run(["verify", "--n", "3", "--x", "uno", "--y", "1"]) == EXIT_USAGE


def test_params(capsys: pytest.CaptureFixture) -> None:
    assert run(["params", "--v", "18", "--k", "6", "--mu", "3", "--lambda", "0", "--t", "3"]) == EXIT_OK
    lineas = salida(capsys).splitlines()
    assert lineas[0] == "feasible (18,6,3,0,3)"
    assert "rho=0 (m=15)" in lineas[1] and "sigma=-3 (m=2)" in lineas[1]

    assert run(["params", "--v", "6", "--k", "2", "--mu", "2", "--lambda", "0", "--t", "1"]) == EXIT_NEGATIVE
    assert salida(capsys).startswith("infeasible (6,2,2,0,1): ")


def test_construct(capsys: pytest.CaptureFixture) -> None:
    assert run(["construct", "--family", "c53", "--n", "9", "--v", "3", "--h", "0,1"]) == EXIT_OK
    datos = json.loads(salida(capsys))
    assert datos["X"] == [1, 3, 4, 6, 7]
    assert datos["Y"] == [0, 1, 3, 4, 6, 7]
    assert datos["params"]["lambda"] == 7
    assert datos["verified"]

    assert run(["construct", "--family", "t11", "--n", "3", "--h", "1", "--format", "text"]) == EXIT_OK
    assert salida(capsys).strip() == "Dih(3,{1},{1}) (6,2,1,0,1)"


def test_construct_failures(capsys: pytest.CaptureFixture) -> None:
    assert run(["construct", "--family", "c51", "--n", "9", "--v", "3", "--h", "1,2"]) == EXIT_NEGATIVE
    assert capsys.readouterr().err
    assert run(["construct", "--family", "c51", "--n", "9", "--v", "2", "--h", "1"]) == EXIT_USAGE
    assert run(["construct", "--family", "c99", "--n", "9"]) == EXIT_USAGE


def test_usage_errors(capsys: pytest.CaptureFixture) -> None:
    assert run([]) == EXIT_USAGE
    assert run(["verify", "--x", "1"]) == EXIT_USAGE
    assert run(["search", "--p", "3", "--alpha", "1", "--mode", "xy", "--filtered"]) == EXIT_USAGE
    assert run(["search", "--p", "6", "--alpha", "1"]) == EXIT_USAGE
    assert run(["--help"]) == EXIT_OK


def test_enumerate_to_file(tmp_path, capsys: pytest.CaptureFixture) -> None:
    destino = tmp_path / "c51.jsonl"
    assert run(["enumerate", "--family", "c51", "--n", "9", "--v", "3", "--out", str(destino)]) == EXIT_OK
    assert salida(capsys) == ""
    registros = [json.loads(linea) for linea in destino.read_text(encoding="utf-8").splitlines()]
    assert [r["H"] for r in registros] == [[1], [2]]
    assert all(r["params"]["k"] == 6 for r in registros)


def test_analyze(capsys: pytest.CaptureFixture) -> None:
    assert run(["analyze", "--n", "9", "--x", "1,4,7", "--y", "0,1,3,4,6,7"]) == EXIT_OK
    datos = json.loads(salida(capsys))
    assert (datos["p"], datos["alpha"]) == (3, 2)
    assert datos["coset_structure"] == {"v": 3, "H": [1]}
    assert datos["shape_t14"] and datos["shape_t16"]
    assert datos["w"]["real"]

    assert run(["analyze", "--n", "6", "--x", "1,5"]) == EXIT_OK
    assert "p" not in json.loads(salida(capsys))


def test_search_with_validation(capsys: pytest.CaptureFixture) -> None:
    assert run(["search", "--p", "3", "--alpha", "2", "--validate"]) == EXIT_OK
    capturado = capsys.readouterr()
    registros = [json.loads(linea) for linea in capturado.out.splitlines()]
    assert len(registros) == 18
    assert json.loads(capturado.err)["validation"]["T1.4"]["ok"]
    for datos in registros:
        registro = SearchRecord.from_dict(datos)
        assert verify_matrix(registro.dihedrant).params == registro.params


def test_search_filtered_to_file(tmp_path, capsys: pytest.CaptureFixture) -> None:
    destino = tmp_path / "xx.jsonl"
    assert run(["search", "--p", "2", "--alpha", "3", "--filtered", "--out", str(destino)]) == EXIT_OK
    assert len(destino.read_text(encoding="utf-8").splitlines()) == 6


def test_complement(capsys: pytest.CaptureFixture) -> None:
    assert run(["complement", "--n", "3", "--x", "1", "--y", "1"]) == EXIT_OK
    datos = json.loads(salida(capsys))
    assert datos["complement"] == {"n": 3, "X": [2], "Y": [0, 2]}
    assert datos["consistent"]
    assert run(["complement", "--n", "4", "--x", "1", "--y", "1"]) == EXIT_NEGATIVE


def test_canon(capsys: pytest.CaptureFixture) -> None:
    assert run(["canon", "--n", "3", "--x", "1", "--y", "1"]) == EXIT_OK
    datos = json.loads(salida(capsys))
    assert datos["canonical"] == {"n": 3, "X": [1], "Y": [0]}
    assert datos["orbit_size"] == 6
    assert not datos["is_canonical"]

    assert run(["canon", "--n", "3", "--x", "1", "--y", "1", "--no-shifts"]) == EXIT_OK
    datos = json.loads(salida(capsys))
    assert datos["is_canonical"] and datos["orbit_size"] == 2
