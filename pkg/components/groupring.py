"""
Módulo de anillos de grupo enteros Z[C_n] y Z[D_n].
Segundo camino de verificación, sin Fourier: todo se reduce a
convoluciones cíclicas exactas.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from components.cyclotomic import CycInt
from components.residue import ZnMultiset, cyclic_convolve, negate


def _reverse(coeffs: Tuple[int, ...]) -> Tuple[int, ...]:
    """h^{(-1)}: el coeficiente de x^i pasa a x^{-i}."""
    n = len(coeffs)
    return tuple(coeffs[(-i) % n] for i in range(n))


@dataclass(frozen=True)
class CnElem:
    """Elemento de Z[C_n]: coeffs[i] es el coeficiente de x^i."""

    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError(f"❌ Un elemento de Z[C_{self.n}] necesita {self.n} coeficientes")

    @classmethod
    def zero(cls, n: int) -> 'CnElem':
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> 'CnElem':
        return cls.element(n, 0)

    @classmethod
    def element(cls, n: int, i: int) -> 'CnElem':
        """x^i."""
        coeffs = [0] * n
        coeffs[i % n] = 1
        return cls(n, tuple(coeffs))

    @classmethod
    def all_ones(cls, n: int) -> 'CnElem':
        """C_n con barra: suma de todos los elementos."""
        return cls(n, (1,) * n)

    @classmethod
    def from_multiset(cls, a: ZnMultiset) -> 'CnElem':
        return cls(a.n, a.counts)

    def _check(self, otro: 'CnElem'):
        if not isinstance(otro, CnElem):
            raise TypeError(f"❌ Se esperaba CnElem, llegó {type(otro).__name__}")
        if otro.n != self.n:
            raise ValueError(f"❌ Módulos distintos: {self.n} vs {otro.n}")

    def __add__(self, otro: 'CnElem') -> 'CnElem':
        self._check(otro)
        return CnElem(self.n, tuple(a + b for a, b in zip(self.coeffs, otro.coeffs)))

    def __sub__(self, otro: 'CnElem') -> 'CnElem':
        self._check(otro)
        return CnElem(self.n, tuple(a - b for a, b in zip(self.coeffs, otro.coeffs)))

    def __neg__(self) -> 'CnElem':
        return CnElem(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, otro: Union['CnElem', int]) -> 'CnElem':
        if isinstance(otro, (int, np.integer)):
            return CnElem(self.n, tuple(int(otro) * a for a in self.coeffs))
        return cn_mul(self, otro)

    def __rmul__(self, escalar: int) -> 'CnElem':
        return self * escalar

    def reversed(self) -> 'CnElem':
        return CnElem(self.n, _reverse(self.coeffs))

    def character(self, z: int) -> CycInt:
        """χ_z aplicado coeficiente a coeficiente: sum_i c_i ζ_n^{iz}."""
        n = self.n
        valores = np.zeros(n, dtype=np.int64)
        indices = (np.arange(n, dtype=np.int64) * (z % n)) % n
        np.add.at(valores, indices, np.asarray(self.coeffs, dtype=np.int64))
        return CycInt.from_array(n, valores)

    def __str__(self) -> str:
        terminos = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terminos.append(f"x^{i}" if c == 1 else f"{c}·x^{i}")
        return " + ".join(terminos) if terminos else "0"


@dataclass(frozen=True)
class DnElem:
    """Elemento de Z[D_n]: rot[i] acompaña a x^i y ref[i] a x^i·a."""

    n: int
    rot: Tuple[int, ...]
    ref: Tuple[int, ...]

    def __post_init__(self):
        if len(self.rot) != self.n or len(self.ref) != self.n:
            raise ValueError(f"❌ Un elemento de Z[D_{self.n}] necesita dos vectores de largo {self.n}")

    @classmethod
    def zero(cls, n: int) -> 'DnElem':
        return cls(n, (0,) * n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> 'DnElem':
        return cls.rotation(n, 0)

    @classmethod
    def rotation(cls, n: int, i: int) -> 'DnElem':
        return cls(n, CnElem.element(n, i).coeffs, (0,) * n)

    @classmethod
    def reflection(cls, n: int, i: int) -> 'DnElem':
        """x^i·a."""
        return cls(n, (0,) * n, CnElem.element(n, i).coeffs)

    @classmethod
    def all_ones(cls, n: int) -> 'DnElem':
        return cls(n, (1,) * n, (1,) * n)

    def _check(self, otro: 'DnElem'):
        if not isinstance(otro, DnElem):
            raise TypeError(f"❌ Se esperaba DnElem, llegó {type(otro).__name__}")
        if otro.n != self.n:
            raise ValueError(f"❌ Módulos distintos: {self.n} vs {otro.n}")

    def __add__(self, otro: 'DnElem') -> 'DnElem':
        self._check(otro)
        return DnElem(
            self.n,
            tuple(a + b for a, b in zip(self.rot, otro.rot)),
            tuple(a + b for a, b in zip(self.ref, otro.ref)),
        )

    def __sub__(self, otro: 'DnElem') -> 'DnElem':
        return self + (-otro)

    def __neg__(self) -> 'DnElem':
        return DnElem(self.n, tuple(-a for a in self.rot), tuple(-a for a in self.ref))

    def __mul__(self, otro: Union['DnElem', int]) -> 'DnElem':
        if isinstance(otro, (int, np.integer)):
            k = int(otro)
            return DnElem(self.n, tuple(k * a for a in self.rot), tuple(k * a for a in self.ref))
        return dn_mul(self, otro)

    def __rmul__(self, escalar: int) -> 'DnElem':
        return self * escalar

    @property
    def rotations(self) -> CnElem:
        return CnElem(self.n, self.rot)

    @property
    def reflections(self) -> CnElem:
        return CnElem(self.n, self.ref)


def cn_mul(f: CnElem, g: CnElem) -> CnElem:
    """Producto en Z[C_n] (convolución cíclica)."""
    f._check(g)
    return CnElem(f.n, tuple(cyclic_convolve(f.coeffs, g.coeffs).tolist()))


def dn_mul(f: DnElem, g: DnElem) -> DnElem:
    """
    Producto en Z[D_n] usando a·x = x^{-1}·a y a² = 1:
    (r1 + s1·a)(r2 + s2·a) = (r1r2 + s1·s2^{(-1)}) + (r1s2 + s1·r2^{(-1)})·a
    """
    f._check(g)
    rot = cyclic_convolve(f.rot, g.rot) + cyclic_convolve(f.ref, _reverse(g.ref))
    ref = cyclic_convolve(f.rot, g.ref) + cyclic_convolve(f.ref, _reverse(g.rot))
    return DnElem(f.n, tuple(rot.tolist()), tuple(ref.tolist()))


def sbar(n: int, X: ZnMultiset, Y: ZnMultiset) -> DnElem:
    """Suma formal del conjunto de conexión x^X ∪ x^Y·a."""
    if X.n != n or Y.n != n:
        raise ValueError(f"❌ X e Y deben vivir en Z_{n}")
    return DnElem(n, X.counts, Y.counts)


def delta1(n: int, X: ZnMultiset) -> CnElem:
    """X + X^{(-1)} con barra, es decir el elemento de U_X."""
    if X.n != n:
        raise ValueError(f"❌ X debe vivir en Z_{n}")
    return CnElem.from_multiset(X) + CnElem.from_multiset(negate(X))


def delta2(n: int, X: ZnMultiset, Y: ZnMultiset) -> CnElem:
    """Y·Y^{(-1)} - X·X^{(-1)} con barras."""
    if X.n != n or Y.n != n:
        raise ValueError(f"❌ X e Y deben vivir en Z_{n}")
    x_bar = CnElem.from_multiset(X)
    y_bar = CnElem.from_multiset(Y)
    return y_bar * y_bar.reversed() - x_bar * x_bar.reversed()
