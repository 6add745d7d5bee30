"""
Módulo de detectores estructurales sobre Z_{p^alpha}.
Descomposición en órbitas de U_X = X ⊎ (-X), detección de cosets,
la condición sobre los valores q(z) y los predicados de forma de las
caracterizaciones de dihedrantes fuertemente regulares.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from sympy import divisors, isprime, multiplicity

from components.cyclotomic import fourier_at
from components.dsrg_core import DsrgParams, spectrum
from components.residue import (
    ZnMultiset,
    is_orbit_union,
    is_subset,
    msdiff,
    negate,
    nu_p,
    orbit,
    psi_preimage,
    set_intersection,
    translate,
    uplus,
)


def prime_power(p: int, alpha: int) -> int:
    if not isprime(p):
        raise ValueError(f"❌ p debe ser primo, llegó p={p}")
    if alpha < 1:
        raise ValueError(f"❌ alpha debe ser positivo, llegó alpha={alpha}")
    return p ** alpha


def _on_modulus(n: int, X: ZnMultiset, nombre: str = "X") -> ZnMultiset:
    if X.n != n:
        raise ValueError(f"❌ {nombre} debe vivir en Z_{n}, vive en Z_{X.n}")
    return X


# ---------------------------------------------------------------------------
# Valores q(z) = (F Δ_{U_X})(z)
# ---------------------------------------------------------------------------

def q_values(n: int, X: ZnMultiset) -> List[Optional[int]]:
    """q(z) para cada z; None donde el valor no es un entero racional."""
    _on_modulus(n, X)
    u_x = uplus(X, negate(X))
    return [fourier_at(u_x, z).as_integer() for z in range(n)]


def condition_A(p: int, alpha: int, X: ZnMultiset, m: int) -> bool:
    """
    0 ∉ X, X ≠ -X y q(z) ∈ {0, -m} para todo z ≠ 0.

    Raises:
        ValueError: Si m no es positivo o X no vive en Z_{p^alpha}
    """
    n = prime_power(p, alpha)
    _on_modulus(n, X)
    if m < 1:
        raise ValueError(f"❌ m debe ser positivo, llegó m={m}")
    if 0 in X or X == negate(X):
        return False
    return all(q in (0, -m) for q in q_values(n, X)[1:])


def infer_m(p: int, alpha: int, X: ZnMultiset) -> Optional[int]:
    """El único m > 0 con condition_A, o None si no existe."""
    n = prime_power(p, alpha)
    valores = q_values(n, X)[1:]
    if any(q is None for q in valores):
        return None
    negativos = {q for q in valores if q != 0}
    if len(negativos) != 1:
        return None
    m = -negativos.pop()
    if m < 1 or not condition_A(p, alpha, X, m):
        return None
    return m


def gamma_beta(p: int, alpha: int, X: ZnMultiset) -> Optional[int]:
    """β = min ν_p(z) sobre Γ = {z : q(z) = -m}; None si X no cumple la condición."""
    m = infer_m(p, alpha, X)
    if m is None:
        return None
    n = p ** alpha
    valores = q_values(n, X)
    return min(nu_p(p, alpha, z) for z in range(1, n) if valores[z] == -m)


# ---------------------------------------------------------------------------
# Descomposición de U_X en órbitas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UxDecomposition:
    """
    U_X = (⊎_{j∈I1} 2⊕O_{p^j}) ⊎ (∪_{j∈I2} O_{p^j}) con I1 ∪ I2 = {β+1..α}.
    coefficients[j] es la multiplicidad constante de U_X en O_{p^j}, o None.
    """

    p: int
    alpha: int
    beta: Optional[int]
    I1: Tuple[int, ...]
    I2: Tuple[int, ...]
    valid: bool
    coefficients: Tuple[Optional[int], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p, "alpha": self.alpha, "beta": self.beta,
            "I1": list(self.I1), "I2": list(self.I2), "valid": self.valid,
            "coefficients": list(self.coefficients),
        }


def orbit_coefficients(p: int, alpha: int, X: ZnMultiset) -> Tuple[Optional[int], ...]:
    """Multiplicidad de U_X en cada órbita O_{p^j}, j = 0..alpha."""
    n = prime_power(p, alpha)
    _on_modulus(n, X)
    u_x = uplus(X, negate(X))
    coeficientes = []
    for j in range(alpha + 1):
        valores = {u_x.counts[e] for e in orbit(n, p ** j).elements}
        coeficientes.append(valores.pop() if len(valores) == 1 else None)
    return tuple(coeficientes)


def decompose_ux(p: int, alpha: int, X: ZnMultiset) -> UxDecomposition:
    coeficientes = orbit_coefficients(p, alpha, X)
    invalida = UxDecomposition(p, alpha, None, (), (), False, coeficientes)
    if any(c is None or c > 2 for c in coeficientes) or coeficientes[0] != 0:
        return invalida
    soporte = [j for j, c in enumerate(coeficientes) if c]
    if not soporte or soporte != list(range(soporte[0], alpha + 1)):
        return invalida
    beta = soporte[0] - 1
    i1 = tuple(j for j in soporte if coeficientes[j] == 2)
    i2 = tuple(j for j in soporte if coeficientes[j] == 1)
    return UxDecomposition(p, alpha, beta, i1, i2, True, coeficientes)


def has_odd_prime_shape(decomposition: UxDecomposition) -> bool:
    """U_X = Z_{p^α} ∖ p^{α-β}Z_{p^α}: válida y sin órbitas dobles."""
    return decomposition.valid and not decomposition.I1


def has_two_power_shape(decomposition: UxDecomposition) -> bool:
    """U_X = O_{β+1} ⊎ (Z_{2^α} ∖ 2^{α-β}Z_{2^α}): la única órbita doble es β+1."""
    return decomposition.valid and decomposition.I1 == (decomposition.beta + 1,)


# ---------------------------------------------------------------------------
# Cosets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetStructure:
    """X = H + vZ_n con v mínimo (el estabilizador vZ_n es máximo)."""

    v: int
    H: ZnMultiset

    def to_dict(self) -> Dict[str, Any]:
        return {"v": self.v, "H": list(self.H.elements)}


def preimage_of(n: int, estructura: CosetStructure) -> ZnMultiset:
    return psi_preimage(n, estructura.v, estructura.H)


def coset_structure(n: int, X: ZnMultiset) -> CosetStructure:
    _on_modulus(n, X)
    for v in divisors(n):
        v = int(v)
        if translate(v, X) == X:
            estructura = CosetStructure(v, ZnMultiset.from_counts(v, X.counts[:v]))
            if preimage_of(n, estructura) != X:
                raise ArithmeticError(f"❌ ψ^{{-1}}(H) no reconstruye X con v={v}")
            return estructura
    raise ArithmeticError("❌ Ningún subgrupo estabiliza X")


def vanishing_level(p: int, alpha: int, X: ZnMultiset) -> int:
    """Mayor a ≤ alpha con (F Δ_X)(z) = 0 para todo z ∉ p^a Z_{p^alpha}."""
    n = prime_power(p, alpha)
    _on_modulus(n, X)
    nulos = [fourier_at(X, z).is_zero() for z in range(n)]
    for a in range(alpha, 0, -1):
        if all(nulos[z] for z in range(n) if z % (p ** a)):
            return a
    return 0


# ---------------------------------------------------------------------------
# Predicados de forma
# ---------------------------------------------------------------------------

def shape_t14(p: int, alpha: int, X: ZnMultiset) -> bool:
    """X = ψ_γ^{-1}(H) con H ⊎ (-H) = Z_{p^γ} ∖ {0}, p impar."""
    n = prime_power(p, alpha)
    if p == 2:
        raise ValueError("❌ Este predicado es para p impar")
    estructura = coset_structure(n, _on_modulus(n, X))
    v, H = estructura.v, estructura.H
    if v == 1 or not H.is_plain:
        return False
    sin_cero = msdiff(ZnMultiset.full(v), ZnMultiset.from_elements(v, [0]))
    return uplus(H, negate(H)) == sin_cero


def shape_t15(alpha: int, X: ZnMultiset) -> bool:
    """
    X = ψ_γ^{-1}(H) con 2 ≤ γ ≤ alpha, H ⊎ (-H) = (Z_{2^γ} ∖ {0}) ⊎ {2^{γ-1}}
    y H ∩ (2^{γ-1} + H) = ∅.
    """
    n = prime_power(2, alpha)
    estructura = coset_structure(n, _on_modulus(n, X))
    v, H = estructura.v, estructura.H
    if v < 4 or not H.is_plain:
        return False
    mitad = v // 2
    objetivo = uplus(
        msdiff(ZnMultiset.full(v), ZnMultiset.from_elements(v, [0])),
        ZnMultiset.from_elements(v, [mitad]),
    )
    if uplus(H, negate(H)) != objetivo:
        return False
    return set_intersection(H, translate(mitad, H)).is_empty()


def shape_t16(p: int, alpha: int, X: ZnMultiset, Y: ZnMultiset) -> bool:
    """Y = ψ_γ^{-1}(H) con H ⊎ (-H) = Z_{p^γ} ⊎ {0}, y X = Y∖{0} o X = Y∖p^γZ."""
    n = prime_power(p, alpha)
    if p == 2:
        raise ValueError("❌ Este predicado es para p impar")
    _on_modulus(n, X)
    estructura = coset_structure(n, _on_modulus(n, Y, "Y"))
    v, H = estructura.v, estructura.H
    if v == 1 or not H.is_plain:
        return False
    objetivo = uplus(ZnMultiset.full(v), ZnMultiset.from_elements(v, [0]))
    if uplus(H, negate(H)) != objetivo:
        return False
    opciones = (
        msdiff(Y, ZnMultiset.from_elements(n, [0])),
        msdiff(Y, ZnMultiset.multiples(n, v)),
    )
    return X in opciones


def shape_witness(p: int, alpha: int, X: ZnMultiset, Y: Optional[ZnMultiset] = None) -> Dict[str, Any]:
    """γ y H detectados, para reportes."""
    n = p ** alpha
    estructura = coset_structure(n, Y if Y is not None else X)
    return {
        "gamma": int(multiplicity(p, estructura.v)),
        "v": estructura.v,
        "H": list(estructura.H.elements),
    }


# ---------------------------------------------------------------------------
# w = FΔ_X - FΔ_Y
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WRealness:
    real: bool
    orbit_union: bool
    zero_in_difference: bool
    eigenvalues_only: Optional[bool] = None
    values: Tuple[Optional[int], ...] = ()

    @property
    def agree(self) -> bool:
        return self.real == self.orbit_union

    def to_dict(self) -> Dict[str, Any]:
        return {
            "real": self.real, "orbit_union": self.orbit_union, "agree": self.agree,
            "zero_in_difference": self.zero_in_difference,
            "eigenvalues_only": self.eigenvalues_only,
            "values": list(self.values),
        }


def w_realness(n: int, X: ZnMultiset, Y: ZnMultiset, params: Optional[DsrgParams] = None) -> WRealness:
    """
    Clasifica w(z) = (FΔ_X)(z) - (FΔ_Y)(z) para X ⊆ Y.
    Con params, eigenvalues_only indica si todo w(z) está en {rho, sigma}.

    Raises:
        ValueError: Si X no está contenido en Y
    """
    _on_modulus(n, X)
    _on_modulus(n, Y, "Y")
    if not is_subset(X, Y):
        raise ValueError("❌ Se requiere X ⊆ Y")
    diferencia = msdiff(Y, X)
    w = [-fourier_at(diferencia, z) for z in range(n)]
    real = all(valor.is_real() for valor in w)
    enteros = tuple(valor.as_integer() for valor in w)

    solo_autovalores = None
    if params is not None:
        try:
            espectro = spectrum(params)
            solo_autovalores = all(e in (espectro.rho, espectro.sigma) for e in enteros)
        except ValueError:
            solo_autovalores = False

    return WRealness(
        real=real,
        orbit_union=is_orbit_union(diferencia),
        zero_in_difference=0 in diferencia,
        eigenvalues_only=solo_autovalores,
        values=enteros,
    )
