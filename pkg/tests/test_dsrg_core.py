from __future__ import annotations

import numpy as np
import pytest

from components.dsrg_core import (
    Dihedrant,
    DsrgParams,
    DsrgVerifier,
    adjacency,
    canonical_form,
    complement_dihedrant,
    complement_params,
    duval_feasible,
    format_matrix,
    is_canonical,
    remark_negative_gap,
    spectrum,
    transform,
    transform_orbit,
    verify_cayley_identity,
    verify_fourier,
    verify_groupring,
    verify_matrix,
)


def dih(n: int, xs, ys) -> Dihedrant:
    return Dihedrant.from_sets(n, xs, ys)


def params(*valores: int) -> DsrgParams:
    return DsrgParams(*valores)


@pytest.mark.parametrize(
    ("tupla", "factible"),
    [
        ((6, 2, 1, 0, 1), True),
        ((18, 6, 3, 0, 3), True),
        ((8, 4, 3, 1, 3), True),
        ((18, 11, 6, 7, 8), True),
        ((6, 2, 2, 0, 1), False),
    ],
)
def test_duval_feasible(tupla: tuple, factible: bool) -> None:
    assert bool(duval_feasible(params(*tupla))) is factible


def test_duval_reports_first_failing_condition() -> None:
    reporte = duval_feasible(params(6, 2, 2, 0, 1))
    assert "8" in reporte.reason and "11" in reporte.reason
    assert duval_feasible(params(6, 2, 1, 0, 1)).d == 1


@pytest.mark.parametrize(
    ("tupla", "rho", "sigma", "m_rho", "m_sigma"),
    [
        ((6, 2, 1, 0, 1), 0, -1, 3, 2),
        ((18, 6, 3, 0, 3), 0, -3, 15, 2),
        ((8, 4, 3, 1, 3), 0, -2, None, None),
    ],
)
def test_spectrum(tupla: tuple, rho: int, sigma: int, m_rho, m_sigma) -> None:
    e = spectrum(params(*tupla))
    assert (e.rho, e.sigma) == (rho, sigma)
    if m_rho is not None:
        assert (e.m_rho, e.m_sigma) == (m_rho, m_sigma)
    # trazas
    assert e.k + e.rho * e.m_rho + e.sigma * e.m_sigma == 0
    assert 1 + e.m_rho + e.m_sigma == tupla[0]


def test_spectrum_rejects_non_square_discriminant() -> None:
    with pytest.raises(ValueError):
        spectrum(params(6, 2, 2, 0, 1))


def test_complement_params() -> None:
    assert complement_params(params(6, 2, 1, 0, 1)) == params(6, 3, 2, 1, 2)
    assert complement_params(params(18, 11, 6, 7, 8)) == params(18, 6, 3, 0, 3)
    p = params(18, 6, 3, 0, 3)
    assert complement_params(complement_params(p)) == p


def test_remark_negative_gap() -> None:
    assert remark_negative_gap(params(18, 6, 3, 0, 3))
    assert remark_negative_gap(params(6, 3, 2, 1, 2))


def test_params_serialisation() -> None:
    p = params(6, 2, 1, 0, 1)
    assert str(p) == "(6,2,1,0,1)"
    assert p.to_dict() == {"v": 6, "k": 2, "mu": 1, "lambda": 0, "t": 1}
    assert DsrgParams.from_dict(p.to_dict()) == p
    assert p.is_genuine
    assert not params(6, 2, 1, 0, 0).is_genuine


def test_adjacency_layout() -> None:
    a = adjacency(dih(3, [1], [1]))
    assert a.shape == (6, 6)
    assert format_matrix(a) == "\n".join(["010010", "001001", "100100", "001001", "100100", "010010"])
    assert np.all(a.sum(axis=0) == 2)


def test_adjacency_rejects_loops() -> None:
    with pytest.raises(ValueError):
        adjacency(dih(3, [0], [1]))


@pytest.mark.parametrize(
    ("n", "xs", "ys", "esperado"),
    [
        (3, [1], [1], (6, 2, 1, 0, 1)),
        (3, [1], [0, 1], (6, 3, 2, 1, 2)),
        (9, [1, 4, 7], [1, 4, 7], (18, 6, 3, 0, 3)),
        (9, [1, 3, 4, 6, 7], [0, 1, 3, 4, 6, 7], (18, 11, 6, 7, 8)),
        (5, [1, 2], [1, 2], (10, 4, 2, 1, 2)),
        (4, [1], [0, 1], (8, 3, 1, 1, 2)),
        (4, [1, 2], [1, 2], (8, 4, 3, 1, 3)),
    ],
)
def test_verify_matrix_known_dsrgs(n: int, xs, ys, esperado: tuple) -> None:
    veredicto = verify_matrix(dih(n, xs, ys))
    assert veredicto.is_dsrg
    assert veredicto.params.as_tuple() == esperado


def test_verify_matrix_rejections() -> None:
    veredicto = verify_matrix(dih(4, [1], [1]))
    assert not veredicto
    assert veredicto.candidate is not None
    assert "celda" in veredicto.failure
    assert verify_matrix(dih(3, [0, 1], [1])).failure.startswith("lazo")


def test_verify_matrix_conventions_for_empty_and_complete() -> None:
    vacio = verify_matrix(dih(4, [], []))
    assert vacio.params.as_tuple() == (8, 0, 0, 0, 0)
    completo = verify_matrix(dih(3, [1, 2], [0, 1, 2]))
    assert completo.params.as_tuple() == (6, 5, 0, 4, 5)
    assert not completo.is_genuine


@pytest.mark.parametrize(
    ("n", "xs", "ys", "tupla"),
    [
        (3, [1], [1], (6, 2, 1, 0, 1)),
        (9, [1, 4, 7], [1, 4, 7], (18, 6, 3, 0, 3)),
        (9, [1, 3, 4, 6, 7], [0, 1, 3, 4, 6, 7], (18, 11, 6, 7, 8)),
        (5, [1, 2], [1, 2], (10, 4, 2, 1, 2)),
    ],
)
def test_algebraic_verifiers_accept(n: int, xs, ys, tupla: tuple) -> None:
    d, p = dih(n, xs, ys), params(*tupla)
    assert verify_groupring(d, p)
    assert verify_cayley_identity(d, p)
    assert verify_fourier(d, p)


def test_groupring_names_failing_equation() -> None:
    reporte = verify_groupring(dih(3, [1], [1]), params(6, 2, 1, 1, 1))
    assert not reporte
    assert reporte.equation == "reflexiones"


def test_fourier_rejects_wrong_parameters() -> None:
    d = dih(5, [1, 2], [1, 2])
    for tupla in [(10, 4, 2, 1, 1), (10, 4, 1, 2, 2), (10, 4, 2, 0, 2)]:
        assert not verify_fourier(d, params(*tupla)), tupla
    reporte = verify_fourier(dih(3, [1], [1]), params(6, 2, 1, 0, 2))
    assert reporte.equation == "t=mu"


def test_verifiers_check_shape() -> None:
    with pytest.raises(ValueError):
        verify_groupring(dih(3, [1], [1]), params(8, 2, 1, 0, 1))
    with pytest.raises(ValueError):
        verify_fourier(dih(3, [1], [1]), params(6, 3, 1, 0, 1))


def test_verifier_facade() -> None:
    d = dih(5, [1, 2], [1, 2])
    assert DsrgVerifier.matrix(d).params == params(10, 4, 2, 1, 2)
    assert DsrgVerifier.cross_check(d, params(10, 4, 2, 1, 2)) == {
        "matrix": True, "groupring": True, "cayley": True, "fourier": True,
    }
    assert not any(DsrgVerifier.cross_check(d, params(10, 4, 2, 1, 1)).values())
    reportes = DsrgVerifier.algebraic(dih(3, [1], [1]), params(6, 2, 1, 1, 1))
    assert reportes["groupring"].equation == "reflexiones"
    with pytest.raises(ValueError):
        DsrgVerifier.cross_check(d, params(10, 3, 2, 1, 2))


def test_transform_and_canonical_form() -> None:
    d = dih(3, [1], [1])
    assert str(transform(d, 2, 0)) == "Dih(3,{2},{2})"
    with pytest.raises(ValueError):
        transform(dih(9, [1], [1]), 3, 0)
    assert transform_orbit(d, shifts=False) == {(0b010, 0b010), (0b100, 0b100)}
    assert len(transform_orbit(d)) == 6
    assert canonical_form(d) == (0b010, 0b001)
    assert not is_canonical(d)
    assert is_canonical(d, shifts=False)


def test_transforms_preserve_parameters() -> None:
    d = dih(9, [1, 3, 4, 6, 7], [0, 1, 3, 4, 6, 7])
    esperado = verify_matrix(d).params
    for mask_x, mask_y in transform_orbit(d):
        assert verify_matrix(Dihedrant.from_masks(9, mask_x, mask_y)).params == esperado


def test_complement_dihedrant() -> None:
    d = dih(3, [1], [1])
    c = complement_dihedrant(d)
    assert str(c) == "Dih(3,{2},{0,2})"
    assert verify_matrix(c).params == complement_params(verify_matrix(d).params)


def test_dihedrant_rejects_duplicates() -> None:
    with pytest.raises(ValueError):
        Dihedrant.from_sets(4, [1, 5], [])
    d = dih(6, [1, 5], [0, 2])
    assert d.vertex_count == 12
    assert d.out_degree == 4
    assert d.to_dict() == {"n": 6, "X": [1, 5], "Y": [0, 2]}
