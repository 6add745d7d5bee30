from __future__ import annotations

import random

import pytest
from sympy import divisors

from components.cyclotomic import (
    CycInt,
    CyclotomicField,
    as_integer,
    conjugate,
    cyc_equal,
    cyclotomic_poly,
    fourier,
    fourier_at,
    is_orbit_combination,
    mobius,
    quotient_identity_holds,
    quotient_identity_sides,
    ramanujan,
    ramanujan_direct,
    totient,
    transform,
)
from components.residue import ZnMultiset, mssum, negate

SEED = 20240611


def _random_set(rng: random.Random, n: int) -> ZnMultiset:
    return ZnMultiset.from_mask(n, rng.randrange(2 ** n))


@pytest.mark.parametrize(
    ("n", "esperado"),
    [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (9, (1, 0, 0, 1, 0, 0, 1))],
)
def test_cyclotomic_poly(n: int, esperado: tuple) -> None:
    assert cyclotomic_poly(n) == esperado


def test_cyclotomic_degree_is_totient() -> None:
    for n in range(1, 61):
        assert len(cyclotomic_poly(n)) - 1 == totient(n)


def test_exact_equality_in_cyclotomic_ring() -> None:
    assert cyc_equal(CycInt(3, (1, 1, 1)), CycInt.zero(3))
    assert CycInt.root(4, 2) == -1
    assert as_integer(CycInt.root(5, 1) + CycInt.root(5, 4)) is None
    assert as_integer(CycInt.root(5, 1) + CycInt.root(5, 2) + CycInt.root(5, 3) + CycInt.root(5, 4)) == -1
    assert conjugate(CycInt.root(7, 2)) == CycInt.root(7, 5)
    assert (CycInt.root(6, 1) * CycInt.root(6, 5)).as_integer() == 1


def test_embed_keeps_value() -> None:
    z = CycInt.root(3, 1) + 2
    assert z.embed(9) == CycInt.root(9, 3) + 2


def test_mobius() -> None:
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_fourier_of_standard_indicators() -> None:
    n = 12
    todo = fourier(ZnMultiset.full(n))
    assert todo.as_integers() == [n] + [0] * (n - 1)
    assert fourier(ZnMultiset.from_elements(n, [0])).as_integers() == [1] * n
    for r in divisors(n):
        espectro = fourier(ZnMultiset.multiples(n, r)).as_integers()
        paso = n // r
        assert espectro == [paso if z % paso == 0 else 0 for z in range(n)]


@pytest.mark.parametrize(("n", "r", "z", "esperado"), [(9, 9, 3, -3), (9, 3, 1, -1), (9, 9, 0, 6), (12, 4, 6, -2)])
def test_ramanujan_examples(n: int, r: int, z: int, esperado: int) -> None:
    assert ramanujan(n, r, z) == esperado


def test_ramanujan_closed_form_matches_direct_sum() -> None:
    for n in range(1, 101):
        for r in divisors(n):
            for z in range(n):
                assert ramanujan(n, r, z) == ramanujan_direct(n, r, z), (n, r, z)


def test_cyclotomic_field() -> None:
    campo = CyclotomicField(9)
    assert campo.minimal_polynomial == cyclotomic_poly(9)
    assert campo.degree == 6
    x = ZnMultiset.from_elements(9, [1, 4, 7])
    assert campo.fourier(x) == fourier(x)
    assert campo.fourier_at(x, 3) == fourier_at(x, 3)
    tabla = campo.ramanujan_table([1, 3, 9])
    assert tabla.shape == (3, 9)
    assert (tabla[2, 3], tabla[1, 1], tabla[2, 0]) == (-3, -1, 6)
    assert list(tabla[0]) == [1] * 9
    with pytest.raises(ValueError):
        campo.fourier(ZnMultiset.from_elements(8, [1]))
    with pytest.raises(ValueError):
        CyclotomicField(0)


def test_ramanujan_requires_divisor() -> None:
    with pytest.raises(ValueError):
        ramanujan(9, 2, 1)


def test_fourier_inversion() -> None:
    rng = random.Random(SEED)
    for _ in range(40):
        n = rng.randint(1, 16)
        f = _random_set(rng, n)
        doble = transform(fourier(f).values)
        for z in range(n):
            assert doble[z] == n * f.counts[(-z) % n], f"seed={SEED} n={n} f={f}"


def test_fourier_convolution_and_conjugation() -> None:
    rng = random.Random(SEED + 1)
    for _ in range(40):
        n = rng.randint(1, 16)
        a, b = _random_set(rng, n), _random_set(rng, n)
        assert fourier(mssum(a, b)) == fourier(a).pointwise(fourier(b)), f"seed={SEED + 1}"
        for z in range(n):
            assert fourier_at(negate(a), z) == fourier_at(a, z).conjugate(), f"seed={SEED + 1}"


@pytest.mark.parametrize("n", [6, 8, 9, 10])
def test_rational_spectrum_iff_orbit_constant(n: int) -> None:
    for mask in range(2 ** n):
        f = ZnMultiset.from_mask(n, mask)
        assert fourier(f).is_rational() == is_orbit_combination(f), (n, mask)


def test_quotient_identity() -> None:
    rng = random.Random(SEED + 2)
    for n in (6, 8, 9, 12, 18):
        for v in divisors(n):
            h = _random_set(rng, v)
            for z in range(v):
                assert quotient_identity_holds(n, v, h, z), f"seed={SEED + 2} n={n} v={v} z={z}"


def test_quotient_identity_sides_differ_by_factor() -> None:
    h = ZnMultiset.from_elements(3, [1])
    izquierda, derecha = quotient_identity_sides(9, 3, h, 1)
    assert 3 * izquierda == derecha
    assert izquierda != derecha
