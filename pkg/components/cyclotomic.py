"""
Módulo de aritmética exacta en Z[ζ_n].
Incluye la transformada de Fourier sobre Z_n, las sumas de Ramanujan y
el polinomio ciclotómico usado para decidir igualdades sin punto flotante.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, divisors, symbols
from sympy import mobius as sympy_mobius, totient as sympy_totient

from components.residue import (
    ZnMultiset,
    all_orbits,
    cyclic_convolve,
    orbit,
    phi,
    psi_preimage,
)

_x = symbols('x')


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """
    Polinomio ciclotómico Φ_n por división exacta iterada de x^n - 1.

    Args:
        n: Orden de las raíces

    Returns:
        Coeficientes de menor a mayor grado, p. ej. n=4 -> (1, 0, 1)
    """
    if n < 1:
        raise ValueError(f"❌ n debe ser positivo: {n}")
    polinomio = Poly(_x ** n - 1, _x)
    for d in divisors(n)[:-1]:
        factor = Poly(list(reversed(cyclotomic_poly(int(d)))), _x)
        cociente, resto = polinomio.div(factor)
        if not resto.is_zero:
            raise ArithmeticError(f"❌ División no exacta al calcular Φ_{n}")
        polinomio = cociente
    return tuple(int(c) for c in reversed(polinomio.all_coeffs()))


def totient(n: int) -> int:
    return int(sympy_totient(n))


def mobius(n: int) -> int:
    return int(sympy_mobius(n))


def _reduce_mod_cyclotomic(coeffs: Sequence[int], n: int) -> Tuple[int, ...]:
    """Resto del polinomio de coeficientes módulo Φ_n (largo φ(n))."""
    divisor = np.asarray(cyclotomic_poly(n), dtype=np.int64)
    grado = len(divisor) - 1
    resto = np.asarray(coeffs, dtype=np.int64).copy()
    for i in range(len(resto) - 1, grado - 1, -1):
        c = resto[i]
        if c:
            resto[i - grado:i + 1] -= c * divisor
    return tuple(int(c) for c in resto[:grado])


@dataclass(frozen=True, eq=False)
class CycInt:
    """
    Elemento de Z[ζ_n] guardado como polinomio módulo x^n - 1.
    La reducción módulo Φ_n solo se hace al comparar.
    """

    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError(f"❌ Un CycInt de conductor {self.n} necesita {self.n} coeficientes")

    @classmethod
    def zero(cls, n: int) -> 'CycInt':
        return cls(n, (0,) * n)

    @classmethod
    def constant(cls, n: int, c: int) -> 'CycInt':
        return cls(n, (int(c),) + (0,) * (n - 1))

    @classmethod
    def root(cls, n: int, k: int = 1) -> 'CycInt':
        """ζ_n^k."""
        coeffs = [0] * n
        coeffs[k % n] = 1
        return cls(n, tuple(coeffs))

    @classmethod
    def from_array(cls, n: int, arreglo: np.ndarray) -> 'CycInt':
        return cls(n, tuple(int(c) for c in arreglo))

    def _coerce(self, otro: Union['CycInt', int]) -> 'CycInt':
        if isinstance(otro, CycInt):
            if otro.n != self.n:
                raise ValueError(f"❌ Conductores distintos: {self.n} vs {otro.n}")
            return otro
        if isinstance(otro, (int, np.integer)):
            return CycInt.constant(self.n, int(otro))
        return NotImplemented

    def __add__(self, otro):
        otro = self._coerce(otro)
        if otro is NotImplemented:
            return otro
        return CycInt(self.n, tuple(a + b for a, b in zip(self.coeffs, otro.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, otro):
        otro = self._coerce(otro)
        if otro is NotImplemented:
            return otro
        return CycInt(self.n, tuple(a - b for a, b in zip(self.coeffs, otro.coeffs)))

    def __rsub__(self, otro):
        return (-self) + otro

    def __mul__(self, otro):
        if isinstance(otro, (int, np.integer)):
            return CycInt(self.n, tuple(int(otro) * a for a in self.coeffs))
        otro = self._coerce(otro)
        if otro is NotImplemented:
            return otro
        return CycInt.from_array(self.n, cyclic_convolve(self.coeffs, otro.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> 'CycInt':
        """Multiplica por ζ_n^k."""
        return CycInt.from_array(self.n, np.roll(np.asarray(self.coeffs, dtype=np.int64), k % self.n))

    def conjugate(self) -> 'CycInt':
        n = self.n
        return CycInt(n, tuple(self.coeffs[(n - i) % n] for i in range(n)))

    def embed(self, m: int) -> 'CycInt':
        """Lleva el elemento a Z[ζ_m] con ζ_n -> ζ_m^{m/n}."""
        if m % self.n:
            raise ValueError(f"❌ {self.n} no divide a {m}")
        paso = m // self.n
        coeffs = [0] * m
        for i, c in enumerate(self.coeffs):
            coeffs[i * paso] = c
        return CycInt(m, tuple(coeffs))

    @cached_property
    def canonical(self) -> Tuple[int, ...]:
        return _reduce_mod_cyclotomic(self.coeffs, self.n)

    def as_integer(self) -> Optional[int]:
        forma = self.canonical
        if any(forma[1:]):
            return None
        return forma[0]

    def is_zero(self) -> bool:
        return not any(self.canonical)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def __eq__(self, otro) -> bool:
        otro = self._coerce(otro)
        if otro is NotImplemented:
            return NotImplemented
        return self.canonical == otro.canonical

    def __hash__(self):
        return hash((self.n, self.canonical))

    def __str__(self) -> str:
        entero = self.as_integer()
        if entero is not None:
            return str(entero)
        return ",".join(str(c) for c in self.canonical)


def cyc_equal(f: CycInt, g: CycInt) -> bool:
    if f.n != g.n:
        raise ValueError(f"❌ Conductores distintos: {f.n} vs {g.n}")
    return f.canonical == g.canonical


def as_integer(f: CycInt) -> Optional[int]:
    return f.as_integer()


def conjugate(f: CycInt) -> CycInt:
    return f.conjugate()


@dataclass(frozen=True)
class Spectrum:
    """Valores exactos (F f)(z) para z en Z_n."""

    n: int
    values: Tuple[CycInt, ...]

    def __getitem__(self, z: int) -> CycInt:
        return self.values[z % self.n]

    def __len__(self) -> int:
        return self.n

    def total_mass(self) -> Optional[int]:
        return self.values[0].as_integer()

    def as_integers(self) -> Optional[List[int]]:
        enteros = [valor.as_integer() for valor in self.values]
        if any(e is None for e in enteros):
            return None
        return enteros

    def is_rational(self) -> bool:
        return all(valor.as_integer() is not None for valor in self.values)

    def pointwise(self, otro: 'Spectrum') -> 'Spectrum':
        return Spectrum(self.n, tuple(a * b for a, b in zip(self.values, otro.values)))

    def __eq__(self, otro) -> bool:
        if not isinstance(otro, Spectrum) or otro.n != self.n:
            return False
        return all(a == b for a, b in zip(self.values, otro.values))

    def __hash__(self):
        return hash(self.values)


def fourier_at(f: ZnMultiset, z: int) -> CycInt:
    """(F f)(z) = sum_i f(i) ζ_n^{iz}, con coeffs[k] = sum de f(i) con iz ≡ k."""
    n = f.n
    indices = (np.arange(n, dtype=np.int64) * (z % n)) % n
    coeffs = np.zeros(n, dtype=np.int64)
    np.add.at(coeffs, indices, f.as_array())
    return CycInt.from_array(n, coeffs)


def fourier(f: ZnMultiset) -> Spectrum:
    return Spectrum(f.n, tuple(fourier_at(f, z) for z in range(f.n)))


def transform(values: Sequence[CycInt]) -> Spectrum:
    """Transformada de una función Z_n -> Z[ζ_n] dada por sus valores."""
    n = len(values)
    matriz = np.asarray([valor.coeffs for valor in values], dtype=np.int64)
    resultado = []
    for z in range(n):
        acumulado = np.zeros(n, dtype=np.int64)
        for i in range(n):
            acumulado += np.roll(matriz[i], (i * z) % n)
        resultado.append(CycInt.from_array(n, acumulado))
    return Spectrum(n, tuple(resultado))


def ramanujan(n: int, r: int, z: int) -> int:
    """
    Suma de Ramanujan: valor de F aplicado al indicador de O_r en z.

    Raises:
        ValueError: Si r no divide a n
    """
    if r < 1 or n % r:
        raise ValueError(f"❌ {r} no divide a {n}")
    cociente = r // gcd(r, z % n)
    return mobius(cociente) * totient(r) // totient(cociente)


def ramanujan_direct(n: int, r: int, z: int) -> Optional[int]:
    """Misma suma evaluada término a término en Z[ζ_n]."""
    return fourier_at(orbit(n, r).as_multiset(), z).as_integer()


def is_orbit_combination(f: ZnMultiset) -> bool:
    """True si las multiplicidades son constantes en cada órbita."""
    for o in all_orbits(f.n):
        if len({f.counts[e] for e in o.elements}) > 1:
            return False
    return True


def quotient_identity_sides(n: int, v: int, h: ZnMultiset, z: int) -> Tuple[CycInt, CycInt]:
    """
    Lados de la relación entre Z_v y Z_n, ambos llevados a Z[ζ_n].

    Returns:
        ((F^{(v)} Δ_H)(z) inmerso en Z[ζ_n], (F Δ_{ψ^{-1}(H)})(φ_v(z)))
    """
    if h.n != v:
        raise ValueError(f"❌ H debe vivir en Z_{v}")
    izquierda = fourier_at(h, z).embed(n)
    derecha = fourier_at(psi_preimage(n, v, h), phi(n, v, z))
    return izquierda, derecha


def quotient_identity_holds(n: int, v: int, h: ZnMultiset, z: int) -> bool:
    """El factor n/v va del lado de Z_v: (n/v)·(F^{(v)}Δ_H)(z) = (FΔ_{ψ^{-1}H})(φ_v(z))."""
    izquierda, derecha = quotient_identity_sides(n, v, h, z)
    return (n // v) * izquierda == derecha


class CyclotomicField:
    """Z[ζ_n] con n fijo: transformada, sumas de Ramanujan y Φ_n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"❌ El conductor debe ser positivo, llegó n={n}")
        self.n = n

    @cached_property
    def minimal_polynomial(self) -> Tuple[int, ...]:
        return cyclotomic_poly(self.n)

    @property
    def degree(self) -> int:
        return totient(self.n)

    def _own(self, f: ZnMultiset) -> ZnMultiset:
        if f.n != self.n:
            raise ValueError(f"❌ La función vive en Z_{f.n}, no en Z_{self.n}")
        return f

    def fourier_at(self, f: ZnMultiset, z: int) -> CycInt:
        return fourier_at(self._own(f), z)

    def fourier(self, f: ZnMultiset) -> Spectrum:
        return fourier(self._own(f))

    def ramanujan(self, r: int, z: int) -> int:
        return ramanujan(self.n, r, z)

    def ramanujan_table(self, divisores: Sequence[int]) -> np.ndarray:
        """Fila i: suma de Ramanujan de O_{divisores[i]} en cada z."""
        return np.array(
            [[ramanujan(self.n, r, z) for z in range(self.n)] for r in divisores],
            dtype=np.int64,
        )

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"
