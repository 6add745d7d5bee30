from __future__ import annotations

import pytest

from components.dsrg_core import DsrgParams
from components.residue import ZnMultiset
from main import (
    DihedrantAnalyzer,
    buscar,
    construir_familia,
    evaluar_parametros,
    verificar_dihedrante,
)


@pytest.fixture
def analyzer() -> DihedrantAnalyzer:
    return DihedrantAnalyzer(verbose=False)


def test_verify_accepts_strings_lists_and_multisets(analyzer: DihedrantAnalyzer) -> None:
    desde_texto = analyzer.verify(3, "1", "0,1")
    desde_lista = analyzer.verify(3, [1], [0, 1])
    desde_multiconjunto = analyzer.verify(3, ZnMultiset.from_elements(3, [1]), ZnMultiset.from_elements(3, [0, 1]))
    assert desde_texto == desde_lista == desde_multiconjunto
    assert desde_texto["params"]["k"] == 3
    assert desde_texto["matched"] == ['T1.1', 'C5.3', 'C5.4']
    assert desde_texto["genuine"]


def test_verify_negative_keeps_candidate(analyzer: DihedrantAnalyzer) -> None:
    resultado = analyzer.verify(4, "1", "1")
    assert not resultado["is_dsrg"]
    assert "candidate" in resultado
    assert "params" not in resultado


def test_evaluate_params(analyzer: DihedrantAnalyzer) -> None:
    factible = analyzer.evaluate_params(DsrgParams(6, 2, 1, 0, 1))
    assert factible["feasible"]
    assert factible["spectrum"]["m_rho"] == 3
    assert factible["complement"] == {"v": 6, "k": 3, "mu": 2, "lambda": 1, "t": 2}
    infactible = analyzer.evaluate_params(DsrgParams(6, 2, 2, 0, 1))
    assert not infactible["feasible"]
    assert "spectrum" not in infactible


def test_build_and_enumerate(analyzer: DihedrantAnalyzer) -> None:
    instancia = analyzer.build('C5.4', 9, 3, "0,1")
    assert instancia["X"] == [1, 4, 7]
    assert instancia["verified"]
    assert analyzer.build('t13', 4, None, "1")["Y"] == [0, 1]
    assert [r["H"] for r in analyzer.enumerate('C5.2', 8, 4)] == [[1, 2], [2, 3]]
    assert [r["H"] for r in analyzer.enumerate('C5.3', 3, 3)] == [[0, 1], [0, 2]]


def test_analyze_two_power(analyzer: DihedrantAnalyzer) -> None:
    resultado = analyzer.analyze(8, "1,2,5,6")
    assert (resultado["p"], resultado["alpha"]) == (2, 3)
    assert resultado["shape_t15"]
    assert resultado["decomposition"]["valid"]
    assert "shape_t14" not in resultado
    assert resultado["gamma_beta"] == resultado["decomposition"]["beta"] == 1


def test_analyze_odd_prime_power_beta(analyzer: DihedrantAnalyzer) -> None:
    resultado = analyzer.analyze(9, "1,4,7")
    assert resultado["shape_t14"]
    assert resultado["gamma_beta"] == resultado["decomposition"]["beta"] == 1


def test_complement_and_canon(analyzer: DihedrantAnalyzer) -> None:
    complemento = analyzer.complement(9, "1,4,7", "0,1,3,4,6,7")
    assert complemento["is_dsrg"] and complemento["consistent"]
    assert complemento["params"] == complemento["expected"]
    forma = analyzer.canon(3, "2", "2", shifts=False)
    assert forma["canonical"] == {"n": 3, "X": [1], "Y": [1]}


def test_search_dispatch(analyzer: DihedrantAnalyzer) -> None:
    assert len(analyzer.search(2, 2)) == 2
    assert analyzer.search(2, 3, filtered=True) == analyzer.search(2, 3)
    assert all(r.orbit_difference is not None for r in analyzer.search(3, 1, 'xy'))
    with pytest.raises(ValueError):
        analyzer.search(3, 1, 'yy')


def test_verbose_output(capsys: pytest.CaptureFixture) -> None:
    DihedrantAnalyzer().verify(3, "1", "1")
    impreso = capsys.readouterr().out
    assert "PASO 1" in impreso
    assert "(6,2,1,0,1)" in impreso
    DihedrantAnalyzer(verbose=False).verify(3, "1", "1")
    assert capsys.readouterr().out == ""


def test_helpers() -> None:
    assert verificar_dihedrante(5, "1,2", "1,2")["params"]["v"] == 10
    assert evaluar_parametros(18, 11, 6, 7, 8)["feasible"]
    assert construir_familia('c51', 9, 3, "1")["params"]["t"] == 3
    assert len(buscar(3, 2)) == 18
