from __future__ import annotations

import pytest

from components.constructions import (
    InadmissibleInstance,
    build_c51,
    build_c52,
    build_c53,
    build_c54,
    build_family,
    build_t11,
    build_t13,
    enumerate_family,
    family_params,
    match_families,
    normalize_family,
    validate_c51,
    validate_c52,
    validate_c53,
    validate_t11,
    validate_t13,
)
from components.dsrg_core import Dihedrant, complement_dihedrant, complement_params, verify_matrix


def test_normalize_family() -> None:
    assert normalize_family('c53') == 'C5.3'
    assert normalize_family('T1.1') == 'T1.1'
    with pytest.raises(ValueError):
        normalize_family('c59')


@pytest.mark.parametrize(
    ("family", "n", "v", "epsilon", "esperado"),
    [
        ('T1.1', 3, None, 0, (6, 2, 1, 0, 1)),
        ('T1.1', 3, None, 1, (6, 3, 2, 1, 2)),
        ('T1.3', 4, None, 0, (8, 3, 1, 1, 2)),
        ('C5.1', 9, 3, 0, (18, 6, 3, 0, 3)),
        ('C5.2', 8, 4, 0, (16, 8, 6, 2, 6)),
        ('C5.3', 9, 3, 0, (18, 11, 6, 7, 8)),
        ('C5.4', 9, 3, 0, (18, 9, 6, 3, 6)),
    ],
)
def test_family_params(family: str, n: int, v, epsilon: int, esperado: tuple) -> None:
    assert family_params(family, n, v, epsilon).as_tuple() == esperado


def test_validate_t11() -> None:
    admisible = validate_t11(3, [1], [1])
    assert admisible and admisible.epsilon == 0
    assert validate_t11(5, [1, 2], [1, 2]).epsilon == 0
    assert validate_t11(3, [1], [0, 1]).epsilon == 1
    assert not validate_t11(3, [1, 2], [1, 2])
    assert not validate_t11(3, [1], [0, 1], epsilon=0)
    with pytest.raises(ValueError):
        validate_t11(4, [1], [1])
    with pytest.raises(ValueError):
        validate_t11(3, [1], [1], epsilon=2)


def test_build_t11_variants() -> None:
    instancia = build_t11(5, [1, 2], g=1)
    assert instancia.dihedrant.to_dict() == {"n": 5, "X": [1, 2], "Y": [2, 3]}
    assert instancia.params.as_tuple() == (10, 4, 2, 1, 2)
    inversa = build_t11(5, [1, 2], g=0, variant='X^-1g')
    assert inversa.dihedrant.to_dict()["Y"] == [3, 4]
    for i in (instancia, inversa):
        assert verify_matrix(i.dihedrant).params == i.params
    with pytest.raises(InadmissibleInstance):
        build_t11(5, [1, 4])
    with pytest.raises(ValueError):
        build_t11(5, [1, 2], variant='otra')


@pytest.mark.parametrize(
    ("xs", "ys", "valido"),
    [([1], [0, 1], True), ([1], [0, 3], True), ([3], [0, 3], True), ([1], [1, 2], True),
     ([1], [1], False), ([1], [3], False), ([1, 2], [0, 1, 2], False)],
)
def test_validate_t13(xs, ys, valido: bool) -> None:
    assert bool(validate_t13(4, xs, ys)) is valido


def test_validate_t13_matches_matrix_at_n4() -> None:
    for ys in range(16):
        d = Dihedrant.from_masks(4, 0b0010, ys)
        veredicto = verify_matrix(d)
        esperado = veredicto.is_dsrg and veredicto.params.as_tuple() == (8, 3, 1, 1, 2)
        assert bool(validate_t13(4, d.X, d.Y)) is esperado, ys


def test_t13_preconditions() -> None:
    with pytest.raises(ValueError):
        validate_t13(5, [1], [0, 1])
    with pytest.raises(ValueError):
        validate_t13(4, [1], [0, 1], c=1)
    with pytest.raises(InadmissibleInstance):
        build_t13(4, [0])
    instancia = build_t13(8, [1, 2, 3], shift=3)
    assert verify_matrix(instancia.dihedrant).params == instancia.params


def test_build_t13() -> None:
    instancia = build_t13(4, [1])
    assert str(instancia.dihedrant) == "Dih(4,{1},{0,1})"
    assert instancia.params.as_tuple() == (8, 3, 1, 1, 2)
    assert build_t13(4, [1], variant='X^-1').dihedrant.to_dict()["Y"] == [0, 3]


def test_construction_c51() -> None:
    instancia = build_c51(9, 3, [1])
    assert instancia.dihedrant.to_dict() == {"n": 9, "X": [1, 4, 7], "Y": [1, 4, 7]}
    assert instancia.params.as_tuple() == (18, 6, 3, 0, 3)
    grande = build_c51(9, 9, [1, 2, 3, 4])
    assert grande.params.as_tuple() == (18, 8, 4, 3, 4)
    assert verify_matrix(grande.dihedrant).params == grande.params
    assert not validate_c51(9, 3, [1, 2])
    with pytest.raises(InadmissibleInstance):
        build_c51(9, 3, [1, 2])


def test_construction_c51_rejects_bad_divisors() -> None:
    for v in (2, 4, 1):
        with pytest.raises(ValueError) as error:
            build_c51(9 if v != 2 else 4, v, [1])
        assert not isinstance(error.value, InadmissibleInstance)


def test_construction_c52() -> None:
    assert build_c52(4, 4, [1, 2]).params.as_tuple() == (8, 4, 3, 1, 3)
    instancia = build_c52(8, 4, [1, 2])
    assert instancia.dihedrant.to_dict()["X"] == [1, 2, 5, 6]
    assert instancia.params.as_tuple() == (16, 8, 6, 2, 6)
    assert not validate_c52(4, 4, [1, 3])


def test_construction_c53_c54() -> None:
    pequena = build_c53(3, 3, [0, 1])
    assert str(pequena.dihedrant) == "Dih(3,{1},{0,1})"
    assert pequena.params.as_tuple() == (6, 3, 2, 1, 2)
    c53 = build_c53(9, 3, [0, 1])
    assert c53.dihedrant.to_dict() == {"n": 9, "X": [1, 3, 4, 6, 7], "Y": [0, 1, 3, 4, 6, 7]}
    assert c53.params.as_tuple() == (18, 11, 6, 7, 8)
    c54 = build_c54(9, 3, [0, 1])
    assert c54.dihedrant.to_dict() == {"n": 9, "X": [1, 4, 7], "Y": [0, 1, 3, 4, 6, 7]}
    assert c54.params.as_tuple() == (18, 9, 6, 3, 6)
    assert build_c54(3, 3, [0, 1]).dihedrant == pequena.dihedrant
    assert not validate_c53(9, 3, [0])
    with pytest.raises(InadmissibleInstance):
        build_c54(9, 9, [1, 2, 3, 4])


def test_build_family_dispatch() -> None:
    assert build_family('t11', 3, None, [1]).spec.family == 'T1.1'
    assert build_family('c53', 9, 3, [0, 1]).spec.to_dict()["l"] == 3
    with pytest.raises(ValueError):
        build_family('c51', 9, None, [1])


def test_instance_serialisation() -> None:
    datos = build_c53(9, 3, [0, 1]).to_dict()
    assert datos["family"] == 'C5.3'
    assert datos["H"] == [0, 1]
    assert datos["X"] == [1, 3, 4, 6, 7]
    assert datos["params"]["lambda"] == 7


def test_enumerate_examples() -> None:
    assert [i.spec.H for i in enumerate_family('C5.1', 9, 3)] == [(1,), (2,)]
    assert len(enumerate_family('C5.1', 9, 9)) == 16
    assert [i.spec.H for i in enumerate_family('C5.3', 3, 3)] == [(0, 1), (0, 2)]
    assert len(enumerate_family('T1.1', 5)) == 4
    assert [i.spec.H for i in enumerate_family('T1.3', 4)] == [(1,), (3,)]


def test_enumerate_preconditions() -> None:
    with pytest.raises(ValueError):
        enumerate_family('T1.1', 4)
    with pytest.raises(ValueError):
        enumerate_family('C5.1', 9)
    with pytest.raises(ValueError):
        enumerate_family('C5.2', 9, 3)


REGRESSION = (
    [('C5.1', n, v) for n in (9, 27) for v in (3, 9, 27) if n % v == 0]
    + [('C5.2', n, v) for n in (4, 8, 16) for v in (4, 8, 16) if n % v == 0]
    + [(f, n, v) for f in ('C5.3', 'C5.4') for n in (3, 9, 27) for v in (3, 9, 27) if n % v == 0]
)


@pytest.mark.parametrize(("family", "n", "v"), REGRESSION)
def test_every_enumerated_instance_has_formula_parameters(family: str, n: int, v: int) -> None:
    instancias = enumerate_family(family, n, v)
    assert instancias
    esperado = family_params(family, n, v)
    for instancia in instancias:
        assert instancia.params == esperado
        assert verify_matrix(instancia.dihedrant).params == esperado


def test_match_families() -> None:
    assert match_families(Dihedrant.from_sets(3, [1], [1])) == ['T1.1', 'C5.1']
    assert match_families(Dihedrant.from_sets(3, [1], [0, 1])) == ['T1.1', 'C5.3', 'C5.4']
    assert match_families(Dihedrant.from_sets(9, [1, 4, 7], [0, 1, 3, 4, 6, 7])) == ['C5.4']
    assert match_families(Dihedrant.from_sets(9, [1, 4, 7], [1, 4, 7])) == ['C5.1']
    assert match_families(Dihedrant.from_sets(4, [1], [0, 1])) == ['T1.3']
    assert match_families(Dihedrant.from_sets(4, [1], [1])) == []


@pytest.mark.parametrize(("n", "v"), [(9, 3), (9, 9), (27, 3), (27, 9), (27, 27)])
def test_complements_of_c51_have_c53_parameters(n: int, v: int) -> None:
    assert complement_params(family_params('C5.1', n, v)) == family_params('C5.3', n, v)
    for instancia in enumerate_family('C5.1', n, v)[:2]:
        assert verify_matrix(complement_dihedrant(instancia.dihedrant)).params == family_params('C5.3', n, v)
