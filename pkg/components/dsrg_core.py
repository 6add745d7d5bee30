"""
Módulo central de DSRGs sobre grupos diedrales.
Álgebra de parámetros (factibilidad, espectro, complemento), el tipo
Dihedrant, la matriz de adyacencia y los verificadores independientes.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Any, Dict, Iterable, Optional, Set, Tuple

import numpy as np

from components.cyclotomic import CyclotomicField
from components.groupring import CnElem, DnElem, delta1, sbar
from components.residue import (
    ZnMultiset,
    check_modulus,
    dilate,
    format_elements,
    msdiff,
    translate,
    units,
)


@dataclass(frozen=True)
class DsrgParams:
    """Parámetros (v, k, mu, lambda, t) con v = 2n vértices."""

    v: int
    k: int
    mu: int
    lam: int
    t: int

    @property
    def is_genuine(self) -> bool:
        return 0 < self.t < self.k

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.v, self.k, self.mu, self.lam, self.t)

    def to_dict(self) -> Dict[str, int]:
        return {"v": self.v, "k": self.k, "mu": self.mu, "lambda": self.lam, "t": self.t}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DsrgParams':
        return cls(int(data["v"]), int(data["k"]), int(data["mu"]), int(data["lambda"]), int(data["t"]))

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.mu},{self.lam},{self.t})"


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    reason: str
    d: Optional[int] = None

    def __bool__(self) -> bool:
        return self.feasible


@dataclass(frozen=True)
class EigenSpectrum:
    k: int
    rho: int
    sigma: int
    m_rho: int
    m_sigma: int
    d: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "k": self.k, "rho": self.rho, "sigma": self.sigma,
            "m_rho": self.m_rho, "m_sigma": self.m_sigma, "d": self.d,
        }


def _discriminant(p: DsrgParams) -> int:
    return (p.mu - p.lam) ** 2 + 4 * (p.t - p.mu)


def duval_feasible(p: DsrgParams) -> FeasibilityReport:
    """
    Condiciones necesarias de existencia, en orden; devuelve la primera que falla.

    Args:
        p: Parámetros a evaluar

    Returns:
        FeasibilityReport con la razón del rechazo o "factible"
    """
    v, k, mu, lam, t = p.as_tuple()
    if k * (k + (mu - lam)) != t + (v - 1) * mu:
        return FeasibilityReport(
            False, f"k(k+mu-lambda) = {k * (k + mu - lam)} distinto de t+(v-1)mu = {t + (v - 1) * mu}"
        )
    disc = _discriminant(p)
    d = isqrt(disc) if disc >= 0 else -1
    if disc <= 0 or d * d != disc:
        return FeasibilityReport(False, f"d^2 = {disc} no es un cuadrado perfecto positivo")
    # m_rho - m_sigma = -(2k + (lambda-mu)(v-1)) / d
    numerador = 2 * k + (lam - mu) * (v - 1)
    if numerador % d:
        return FeasibilityReport(False, f"d = {d} no divide a {numerador}", d)
    cociente = numerador // d
    if (cociente - (v - 1)) % 2:
        return FeasibilityReport(False, f"{cociente} y v-1 = {v - 1} tienen distinta paridad", d)
    if abs(cociente) > v - 1:
        return FeasibilityReport(False, f"|{cociente}| supera v-1 = {v - 1}", d)
    if not 0 <= lam < t < k:
        return FeasibilityReport(False, "no se cumple 0 <= lambda < t < k", d)
    if not 0 < mu <= t:
        return FeasibilityReport(False, "no se cumple 0 < mu <= t", d)
    if not -2 * (k - t - 1) <= mu - lam <= 2 * (k - t):
        return FeasibilityReport(False, "no se cumple -2(k-t-1) <= mu-lambda <= 2(k-t)", d)
    return FeasibilityReport(True, "factible", d)


def spectrum(p: DsrgParams) -> EigenSpectrum:
    """
    Autovalores k, rho, sigma y multiplicidades de rho y sigma.

    Raises:
        ValueError: Si algún valor no es entero o una multiplicidad no es positiva
    """
    disc = _discriminant(p)
    d = isqrt(disc) if disc >= 0 else -1
    if disc <= 0 or d * d != disc:
        raise ValueError(f"❌ d^2 = {disc} no es un cuadrado perfecto positivo para {p}")
    if (-(p.mu - p.lam) + d) % 2:
        raise ValueError(f"❌ Autovalores no enteros para {p}")
    rho = (-(p.mu - p.lam) + d) // 2
    sigma = (-(p.mu - p.lam) - d) // 2
    num_rho = -(p.k + sigma * (p.v - 1))
    num_sigma = p.k + rho * (p.v - 1)
    if num_rho % d or num_sigma % d:
        raise ValueError(f"❌ Multiplicidades no enteras para {p}")
    m_rho, m_sigma = num_rho // d, num_sigma // d
    if m_rho <= 0 or m_sigma <= 0:
        raise ValueError(f"❌ Multiplicidades no positivas para {p}: {m_rho}, {m_sigma}")
    return EigenSpectrum(p.k, rho, sigma, m_rho, m_sigma, d)


def complement_params(p: DsrgParams) -> DsrgParams:
    base = p.v - 2 * p.k
    return DsrgParams(
        v=p.v,
        k=base + (p.k - 1),
        mu=base + p.lam,
        lam=base + (p.mu - 2),
        t=base + (p.t - 1),
    )


def remark_negative_gap(p: DsrgParams) -> bool:
    """Con t = mu y parámetros genuinos se exige lambda - mu < 0."""
    if p.t != p.mu or not p.is_genuine:
        return True
    return p.lam - p.mu < 0


@dataclass(frozen=True)
class Dihedrant:
    """Dih(n, X, Y) = Cay(D_n, x^X ∪ x^Y·a)."""

    n: int
    X: ZnMultiset
    Y: ZnMultiset

    def __post_init__(self):
        check_modulus(self.n)
        if self.X.n != self.n or self.Y.n != self.n:
            raise ValueError(f"❌ X e Y deben vivir en Z_{self.n}")
        if not (self.X.is_plain and self.Y.is_plain):
            raise ValueError("❌ X e Y deben ser conjuntos simples")

    @classmethod
    def from_sets(cls, n: int, xs: Iterable[int], ys: Iterable[int]) -> 'Dihedrant':
        xs, ys = [e % n for e in xs], [e % n for e in ys]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            raise ValueError("❌ Elementos repetidos en X o Y")
        return cls(n, ZnMultiset.from_elements(n, xs), ZnMultiset.from_elements(n, ys))

    @classmethod
    def from_masks(cls, n: int, mask_x: int, mask_y: int) -> 'Dihedrant':
        return cls(n, ZnMultiset.from_mask(n, mask_x), ZnMultiset.from_mask(n, mask_y))

    @property
    def vertex_count(self) -> int:
        return 2 * self.n

    @property
    def out_degree(self) -> int:
        return self.X.size + self.Y.size

    @property
    def has_loop(self) -> bool:
        return 0 in self.X

    @property
    def masks(self) -> Tuple[int, int]:
        return (self.X.to_mask(), self.Y.to_mask())

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "X": list(self.X.support), "Y": list(self.Y.support)}

    def __str__(self) -> str:
        return f"Dih({self.n},{{{format_elements(self.X.support)}}},{{{format_elements(self.Y.support)}}})"


@lru_cache(maxsize=64)
def _difference_indices(n: int) -> Tuple[np.ndarray, np.ndarray]:
    i = np.arange(n).reshape(-1, 1)
    j = np.arange(n).reshape(1, -1)
    return (j - i) % n, (i - j) % n


def adjacency(d: Dihedrant, allow_loops: bool = False) -> np.ndarray:
    """
    Matriz 0/1 de orden 2n con vértices x^0..x^{n-1}, x^0·a..x^{n-1}·a.

    Raises:
        ValueError: Si 0 ∈ X (lazo) y no se permiten lazos
    """
    if d.has_loop and not allow_loops:
        raise ValueError(f"❌ {d} tiene lazos: 0 ∈ X")
    adelante, atras = _difference_indices(d.n)
    x = d.X.as_array()
    y = d.Y.as_array()
    # x^i -> x^j sii j-i ∈ X; x^i -> x^j a sii j-i ∈ Y
    # x^i a -> x^j sii i-j ∈ Y; x^i a -> x^j a sii i-j ∈ X
    return np.block([[x[adelante], y[adelante]], [y[atras], x[atras]]])


def format_matrix(matriz: np.ndarray) -> str:
    return "\n".join("".join(str(int(c)) for c in fila) for fila in matriz)


@dataclass(frozen=True)
class MatrixVerdict:
    """Resultado del oráculo matricial; params es None si no es DSRG."""

    params: Optional[DsrgParams]
    candidate: Optional[DsrgParams]
    failure: Optional[str] = None

    @property
    def is_dsrg(self) -> bool:
        return self.params is not None

    @property
    def is_genuine(self) -> bool:
        return self.params is not None and self.params.is_genuine

    def __bool__(self) -> bool:
        return self.is_dsrg


def _first_cell(mascara: np.ndarray) -> Tuple[int, int]:
    fila, columna = np.argwhere(mascara)[0]
    return int(fila), int(columna)


def verify_matrix(d: Dihedrant) -> MatrixVerdict:
    """
    Verifica A² = tI + λA + μ(J - I - A) e infiere (t, λ, μ) de las celdas.
    Si no hay aristas λ = 0; si no hay no-aristas fuera de la diagonal μ = 0.
    """
    if d.has_loop:
        return MatrixVerdict(None, None, "lazo en x^0: 0 ∈ X")
    a = adjacency(d)
    v = a.shape[0]
    k = int(a[0].sum())
    filas, columnas = a.sum(axis=1), a.sum(axis=0)
    cuadrado = a @ a
    identidad = np.eye(v, dtype=bool)
    aristas = a == 1
    no_aristas = (a == 0) & ~identidad

    t = int(cuadrado[0, 0])
    lam = int(cuadrado[aristas][0]) if aristas.any() else 0
    mu = int(cuadrado[no_aristas][0]) if no_aristas.any() else 0
    candidato = DsrgParams(v, k, mu, lam, t)

    if not (np.all(filas == k) and np.all(columnas == k)):
        fila = int(np.argmax((filas != k) | (columnas != k)))
        return MatrixVerdict(None, candidato, f"grado no constante en el vértice {fila}")
    diagonal = np.diag(cuadrado)
    if np.any(diagonal != t):
        i = int(np.argmax(diagonal != t))
        return MatrixVerdict(None, candidato, f"celda ({i},{i}): A²={int(diagonal[i])} distinto de t={t}")
    malas = aristas & (cuadrado != lam)
    if malas.any():
        i, j = _first_cell(malas)
        return MatrixVerdict(None, candidato, f"celda ({i},{j}): A²={int(cuadrado[i, j])} distinto de lambda={lam}")
    malas = no_aristas & (cuadrado != mu)
    if malas.any():
        i, j = _first_cell(malas)
        return MatrixVerdict(None, candidato, f"celda ({i},{j}): A²={int(cuadrado[i, j])} distinto de mu={mu}")
    return MatrixVerdict(candidato, candidato)


@dataclass(frozen=True)
class VerifierReport:
    """Veredicto de un verificador algebraico; equation y z señalan la falla."""

    ok: bool
    equation: Optional[str] = None
    z: Optional[int] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _check_shape(d: Dihedrant, p: DsrgParams):
    if p.v != 2 * d.n:
        raise ValueError(f"❌ v = {p.v} no coincide con 2n = {2 * d.n}")
    if p.k != d.out_degree:
        raise ValueError(f"❌ k = {p.k} no coincide con |X|+|Y| = {d.out_degree}")


def verify_groupring(d: Dihedrant, p: DsrgParams) -> VerifierReport:
    """
    Verifica en Z[C_n] las dos partes de S² (reflexiones y rotaciones):
    Y·Δ1 = (λ-μ)Y + μC  y  X² + Y·Y^{(-1)} = (t-μ)e + (λ-μ)X + μC.

    Raises:
        ValueError: Si v o k no corresponden al dihedrante
    """
    _check_shape(d, p)
    n = d.n
    x_bar = CnElem.from_multiset(d.X)
    y_bar = CnElem.from_multiset(d.Y)
    c_bar = CnElem.all_ones(n)
    e = CnElem.identity(n)

    izquierda = y_bar * delta1(n, d.X)
    derecha = (p.lam - p.mu) * y_bar + p.mu * c_bar
    if izquierda != derecha:
        return VerifierReport(False, "reflexiones", detail=f"{izquierda} != {derecha}")

    izquierda = x_bar * x_bar + y_bar * y_bar.reversed()
    derecha = (p.t - p.mu) * e + (p.lam - p.mu) * x_bar + p.mu * c_bar
    if izquierda != derecha:
        return VerifierReport(False, "rotaciones", detail=f"{izquierda} != {derecha}")
    return VerifierReport(True)


def verify_cayley_identity(d: Dihedrant, p: DsrgParams) -> VerifierReport:
    """S² = t·e + λ·S + μ·(D - e - S) directamente en Z[D_n]."""
    _check_shape(d, p)
    n = d.n
    s = sbar(n, d.X, d.Y)
    e = DnElem.identity(n)
    izquierda = s * s
    derecha = p.t * e + p.lam * s + p.mu * (DnElem.all_ones(n) - e - s)
    if izquierda != derecha:
        return VerifierReport(False, "cayley")
    return VerifierReport(True)


def verify_fourier(d: Dihedrant, p: DsrgParams) -> VerifierReport:
    """
    Verifica en cada z, con aritmética exacta en Z[ζ_n] y r = FΔ_X, s = FΔ_Y:
    s(r + r̄) = μnδ_0 + (λ-μ)s  y  r² + s·s̄ = t - μ + μnδ_0 + (λ-μ)r.
    Con Y = X exige además r(r + r̄) = μnδ_0 + (λ-μ)r y t = μ.

    Raises:
        ValueError: Si v o k no corresponden al dihedrante
    """
    _check_shape(d, p)
    n = d.n
    simetrico = d.X == d.Y
    if simetrico and p.t != p.mu:
        return VerifierReport(False, "t=mu", detail=f"con Y = X se requiere t = mu, llegó {p}")
    gap = p.lam - p.mu
    campo = CyclotomicField(n)
    for z in range(n):
        delta0 = p.mu * n if z == 0 else 0
        r = campo.fourier_at(d.X, z)
        s = campo.fourier_at(d.Y, z)
        traza = r + r.conjugate()
        if s * traza != delta0 + gap * s:
            return VerifierReport(False, "reflexiones", z)
        if r * r + s * s.conjugate() != (p.t - p.mu) + delta0 + gap * r:
            return VerifierReport(False, "rotaciones", z)
        if simetrico and r * traza != delta0 + gap * r:
            return VerifierReport(False, "simetrica", z)
    return VerifierReport(True)


class DsrgVerifier:
    """Oráculo matricial y verificadores algebraicos sobre un mismo dihedrante."""

    @staticmethod
    def matrix(d: Dihedrant) -> MatrixVerdict:
        return verify_matrix(d)

    @staticmethod
    def algebraic(d: Dihedrant, params: DsrgParams) -> Dict[str, VerifierReport]:
        """
        Raises:
            ValueError: Si v o k no corresponden al dihedrante
        """
        return {
            "groupring": verify_groupring(d, params),
            "cayley": verify_cayley_identity(d, params),
            "fourier": verify_fourier(d, params),
        }

    @staticmethod
    def cross_check(d: Dihedrant, params: DsrgParams) -> Dict[str, bool]:
        """Acepta o rechaza params con los cuatro verificadores."""
        veredictos = {"matrix": verify_matrix(d).params == params}
        veredictos.update({
            nombre: bool(reporte) for nombre, reporte in DsrgVerifier.algebraic(d, params).items()
        })
        return veredictos


def transform(d: Dihedrant, b: int, b_shift: int) -> Dihedrant:
    """
    Dih(n, bX, b' + bY), isomorfo a d.

    Raises:
        ValueError: Si b no es unidad de Z_n
    """
    n = d.n
    if gcd(b, n) != 1:
        raise ValueError(f"❌ {b} no es unidad de Z_{n}")
    return Dihedrant(n, dilate(b, d.X), translate(b_shift, dilate(b, d.Y)))


def _dilate_mask(mask: int, b: int, n: int) -> int:
    resultado = 0
    i = 0
    while mask:
        if mask & 1:
            resultado |= 1 << ((b * i) % n)
        mask >>= 1
        i += 1
    return resultado


def _rotate_mask(mask: int, s: int, n: int) -> int:
    s %= n
    if s == 0:
        return mask
    completo = (1 << n) - 1
    return ((mask << s) | (mask >> (n - s))) & completo


def transform_orbit(d: Dihedrant, shifts: bool = True) -> Set[Tuple[int, int]]:
    """Máscaras (X', Y') de todas las imágenes bajo (b, b'); sin shifts solo b' = 0."""
    n = d.n
    mask_x, mask_y = d.masks
    imagenes = set()
    for b in units(n):
        nueva_x = _dilate_mask(mask_x, b, n)
        nueva_y = _dilate_mask(mask_y, b, n)
        desplazamientos = range(n) if shifts else (0,)
        for s in desplazamientos:
            imagenes.add((nueva_x, _rotate_mask(nueva_y, s, n)))
    return imagenes


def canonical_form(d: Dihedrant, shifts: bool = True) -> Tuple[int, int]:
    """Mínimo lexicográfico de (máscara X', máscara Y') sobre la familia de transformaciones."""
    return min(transform_orbit(d, shifts))


def is_canonical(d: Dihedrant, shifts: bool = True) -> bool:
    return canonical_form(d, shifts) == d.masks


def complement_dihedrant(d: Dihedrant) -> Dihedrant:
    n = d.n
    todos = ZnMultiset.full(n)
    sin_cero = msdiff(todos, ZnMultiset.from_elements(n, [0]))
    return Dihedrant(n, msdiff(sin_cero, d.X), msdiff(todos, d.Y))
