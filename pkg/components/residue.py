"""
Módulo de aritmética exacta sobre Z_n.
Multiconjuntos sobre Z_n, órbitas de Z_n^* y los mapas canónicos
entre Z_n y sus cocientes Z_v.
"""

import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from dotenv import load_dotenv
from sympy import divisors, multiplicity

# Cargar variables de entorno
load_dotenv()

DEFAULT_MAX_N = 2 ** 20


def env_int(nombre: str, defecto: int) -> int:
    """
    Lee una variable de entorno entera positiva.

    Args:
        nombre: Nombre de la variable
        defecto: Valor usado si la variable no está definida

    Returns:
        El valor entero configurado

    Raises:
        ValueError: Si el valor no es un entero positivo
    """
    valor = os.getenv(nombre)
    if valor is None or valor.strip() == "":
        return defecto
    try:
        numero = int(valor)
    except ValueError:
        raise ValueError(f"❌ {nombre} debe ser un entero, se recibió: {valor!r}")
    if numero < 1:
        raise ValueError(f"❌ {nombre} debe ser positivo, se recibió: {numero}")
    return numero


def max_modulus() -> int:
    """Tope de módulo configurado con DSRG_MAX_N."""
    return env_int('DSRG_MAX_N', DEFAULT_MAX_N)


def check_modulus(n: int) -> int:
    """
    Valida un módulo contra el tope configurado.

    Raises:
        ValueError: Si n no es un entero positivo o supera DSRG_MAX_N
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"❌ El módulo debe ser un entero positivo: {n!r}")
    tope = max_modulus()
    if n > tope:
        raise ValueError(f"❌ El módulo {n} supera el tope DSRG_MAX_N={tope}")
    return int(n)


def cyclic_convolve(a: Sequence[int], b: Sequence[int]) -> np.ndarray:
    """
    Convolución cíclica exacta de dos vectores de enteros de igual largo.

    Args:
        a: Coeficientes del primer factor
        b: Coeficientes del segundo factor

    Returns:
        Arreglo int64 de largo n con c[k] = sum_{i+j=k mod n} a[i] b[j]
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = len(a)
    if len(b) != n:
        raise ValueError(f"❌ Largos distintos en la convolución: {n} vs {len(b)}")
    completo = np.convolve(a, b)
    resultado = completo[:n].copy()
    resultado[:n - 1] += completo[n:]
    return resultado


@dataclass(frozen=True)
class ZnMultiset:
    """Multiconjunto sobre Z_n guardado como vector denso de multiplicidades."""

    n: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"❌ El módulo debe ser positivo: {self.n}")
        if len(self.counts) != self.n:
            raise ValueError(
                f"❌ Se esperaban {self.n} multiplicidades, llegaron {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts):
            raise ValueError("❌ Las multiplicidades no pueden ser negativas")

    # Constructores
    @classmethod
    def empty(cls, n: int) -> 'ZnMultiset':
        return cls(check_modulus(n), (0,) * n)

    @classmethod
    def full(cls, n: int) -> 'ZnMultiset':
        """Z_n completo."""
        return cls(check_modulus(n), (1,) * n)

    @classmethod
    def from_elements(cls, n: int, elementos: Iterable[int]) -> 'ZnMultiset':
        """Cuenta repeticiones; los elementos se reducen módulo n."""
        check_modulus(n)
        cuentas = [0] * n
        for elemento in elementos:
            cuentas[int(elemento) % n] += 1
        return cls(n, tuple(cuentas))

    @classmethod
    def from_counts(cls, n: int, cuentas: Sequence[int]) -> 'ZnMultiset':
        return cls(n, tuple(int(c) for c in cuentas))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> 'ZnMultiset':
        """El bit i del entero indica si i pertenece al conjunto."""
        return cls(n, tuple((mask >> i) & 1 for i in range(n)))

    @classmethod
    def multiples(cls, n: int, v: int) -> 'ZnMultiset':
        """El subgrupo vZ_n = {0, v, 2v, ...}."""
        _require_divisor(n, v)
        return cls(n, tuple(1 if i % v == 0 else 0 for i in range(n)))

    # Consultas
    @property
    def size(self) -> int:
        """Cardinal contando multiplicidades."""
        return sum(self.counts)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.counts) if c > 0)

    @property
    def elements(self) -> Tuple[int, ...]:
        """Elementos ordenados con repetición."""
        return tuple(i for i, c in enumerate(self.counts) for _ in range(c))

    @property
    def is_plain(self) -> bool:
        return all(c <= 1 for c in self.counts)

    def is_empty(self) -> bool:
        return not any(self.counts)

    def to_mask(self) -> int:
        if not self.is_plain:
            raise ValueError("❌ Solo los conjuntos simples tienen máscara de bits")
        mask = 0
        for i, c in enumerate(self.counts):
            if c:
                mask |= 1 << i
        return mask

    def as_array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.int64)

    def __contains__(self, elemento: int) -> bool:
        return self.counts[elemento % self.n] > 0

    def __str__(self) -> str:
        return format_elements(self.elements)


@dataclass(frozen=True)
class Orbit:
    """Órbita O_r de Z_n^*: los elementos de orden aditivo r."""

    n: int
    r: int
    elements: Tuple[int, ...]

    def as_multiset(self) -> ZnMultiset:
        return ZnMultiset.from_elements(self.n, self.elements)


def _require_same_modulus(a: ZnMultiset, b: ZnMultiset):
    if a.n != b.n:
        raise ValueError(f"❌ Módulos distintos: {a.n} vs {b.n}")


def _require_divisor(n: int, v: int):
    if v < 1 or n % v != 0:
        raise ValueError(f"❌ {v} no divide a {n}")


def uplus(a: ZnMultiset, b: ZnMultiset) -> ZnMultiset:
    """Unión de multiconjuntos: suma de multiplicidades."""
    _require_same_modulus(a, b)
    return ZnMultiset(a.n, tuple(x + y for x, y in zip(a.counts, b.counts)))


def scalar_mul(m: int, a: ZnMultiset) -> ZnMultiset:
    if m < 0:
        raise ValueError(f"❌ El escalar debe ser no negativo: {m}")
    return ZnMultiset(a.n, tuple(m * c for c in a.counts))


def msdiff(a: ZnMultiset, b: ZnMultiset) -> ZnMultiset:
    """Diferencia truncada en cero."""
    _require_same_modulus(a, b)
    return ZnMultiset(a.n, tuple(max(x - y, 0) for x, y in zip(a.counts, b.counts)))


def mssum(a: ZnMultiset, b: ZnMultiset) -> ZnMultiset:
    """Suma A + B: convolución cíclica de multiplicidades."""
    _require_same_modulus(a, b)
    return ZnMultiset.from_counts(a.n, cyclic_convolve(a.counts, b.counts).tolist())


def set_union(a: ZnMultiset, b: ZnMultiset) -> ZnMultiset:
    """Unión usual (máximo de multiplicidades)."""
    _require_same_modulus(a, b)
    return ZnMultiset(a.n, tuple(max(x, y) for x, y in zip(a.counts, b.counts)))


def set_intersection(a: ZnMultiset, b: ZnMultiset) -> ZnMultiset:
    """Intersección usual (mínimo de multiplicidades)."""
    _require_same_modulus(a, b)
    return ZnMultiset(a.n, tuple(min(x, y) for x, y in zip(a.counts, b.counts)))


def is_subset(a: ZnMultiset, b: ZnMultiset) -> bool:
    _require_same_modulus(a, b)
    return all(x <= y for x, y in zip(a.counts, b.counts))


def negate(a: ZnMultiset) -> ZnMultiset:
    n = a.n
    return ZnMultiset(n, tuple(a.counts[(-i) % n] for i in range(n)))


def translate(i: int, a: ZnMultiset) -> ZnMultiset:
    n = a.n
    return ZnMultiset(n, tuple(a.counts[(j - i) % n] for j in range(n)))


def dilate(c: int, a: ZnMultiset, require_unit: bool = False) -> ZnMultiset:
    """
    Calcula cA = {c·x : x ∈ A} conservando multiplicidades.

    Args:
        c: Factor multiplicativo
        a: Multiconjunto de entrada
        require_unit: Si True, rechaza c que no sea unidad de Z_n

    Raises:
        ValueError: Si require_unit y gcd(c, n) != 1
    """
    n = a.n
    if require_unit and gcd(c, n) != 1:
        raise ValueError(f"❌ {c} no es unidad de Z_{n}")
    cuentas = [0] * n
    for i, cuenta in enumerate(a.counts):
        if cuenta:
            cuentas[(c * i) % n] += cuenta
    return ZnMultiset(n, tuple(cuentas))


def units(n: int) -> List[int]:
    """Unidades de Z_n en orden creciente."""
    if n == 1:
        return [0]
    return [b for b in range(1, n) if gcd(b, n) == 1]


@lru_cache(maxsize=None)
def orbit(n: int, r: int) -> Orbit:
    """
    Órbita O_r = {c·(n/r) : 1 ≤ c ≤ r, gcd(r, c) = 1}.

    Raises:
        ValueError: Si r no divide a n
    """
    _require_divisor(n, r)
    paso = n // r
    elementos = sorted({(c * paso) % n for c in range(1, r + 1) if gcd(r, c) == 1})
    return Orbit(n, r, tuple(elementos))


def all_orbits(n: int) -> List[Orbit]:
    """Todas las órbitas, ordenadas por divisor r creciente."""
    return [orbit(n, int(r)) for r in divisors(n)]


def is_orbit_union(a: ZnMultiset) -> bool:
    """True si el soporte de A es unión de órbitas completas."""
    soporte = set(a.support)
    for o in all_orbits(a.n):
        presentes = soporte.intersection(o.elements)
        if presentes and len(presentes) != len(o.elements):
            return False
    return True


def nu_p(p: int, alpha: int, z: int) -> int:
    """
    Mayor e con p^e | z en Z_{p^alpha}; por convención nu_p(0) = alpha.

    Raises:
        ValueError: Si z está fuera de rango
    """
    n = p ** alpha
    if not 0 <= z < n:
        raise ValueError(f"❌ {z} fuera de Z_{n}")
    if z == 0:
        return alpha
    return int(multiplicity(p, z))


def psi(n: int, v: int, z: int) -> int:
    """Reducción Z_n -> Z_v."""
    _require_divisor(n, v)
    return z % v


def psi_image(n: int, v: int, a: ZnMultiset, inflate: bool = True) -> ZnMultiset:
    """
    Imagen de un multiconjunto de Z_n en Z_v.

    Args:
        n: Módulo de origen
        v: Divisor de n
        a: Multiconjunto sobre Z_n
        inflate: Si True suma multiplicidades; si False devuelve el soporte de la imagen

    Returns:
        Multiconjunto sobre Z_v
    """
    _require_divisor(n, v)
    if a.n != n:
        raise ValueError(f"❌ Se esperaba un multiconjunto sobre Z_{n}")
    cuentas = [0] * v
    for i, c in enumerate(a.counts):
        cuentas[i % v] += c
    if not inflate:
        cuentas = [1 if c else 0 for c in cuentas]
    return ZnMultiset(v, tuple(cuentas))


def psi_preimage(n: int, v: int, h: ZnMultiset) -> ZnMultiset:
    """Preimagen H + vZ_n con multiplicidades heredadas."""
    _require_divisor(n, v)
    if h.n != v:
        raise ValueError(f"❌ H debe vivir en Z_{v}, vive en Z_{h.n}")
    return ZnMultiset(n, tuple(h.counts[i % v] for i in range(n)))


def phi(n: int, v: int, z: int) -> int:
    """Inmersión Z_v -> (n/v)Z_n."""
    _require_divisor(n, v)
    return ((n // v) * z) % n


def format_elements(elementos: Iterable[int]) -> str:
    """Lista ordenada separada por comas, p. ej. "1,1,2,3"."""
    return ",".join(str(e) for e in sorted(elementos))


def parse_elements(texto: str) -> List[int]:
    """
    Convierte "1,4,7" en [1, 4, 7]; la cadena vacía es el conjunto vacío.

    Raises:
        ValueError: Si algún término no es entero
    """
    texto = (texto or "").strip()
    if texto in ("", "{}", "∅"):
        return []
    texto = texto.strip("{}[] ")
    elementos = []
    for parte in texto.split(","):
        parte = parte.strip()
        try:
            elementos.append(int(parte))
        except ValueError:
            raise ValueError(f"❌ Sintaxis de conjunto inválida: {texto!r}")
    return elementos


def parse_plain_set(n: int, texto: str) -> ZnMultiset:
    """
    Lee un conjunto simple de Z_n reduciendo módulo n.

    Raises:
        ValueError: Si hay elementos repetidos tras la reducción
    """
    check_modulus(n)
    reducidos = [e % n for e in parse_elements(texto)]
    if len(set(reducidos)) != len(reducidos):
        raise ValueError(f"❌ Elementos repetidos módulo {n}: {texto!r}")
    return ZnMultiset.from_elements(n, reducidos)


def parse_multiset(n: int, texto: str) -> ZnMultiset:
    """Igual que parse_plain_set pero admite repeticiones."""
    check_modulus(n)
    return ZnMultiset.from_elements(n, parse_elements(texto))
