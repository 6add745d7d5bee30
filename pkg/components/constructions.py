"""
Módulo de familias constructivas de dihedrantes fuertemente regulares.
Validadores literales (identidades de multiconjuntos y de anillo de grupo),
constructores y enumeradores de H admisibles.
"""

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from sympy import divisors

from components.dsrg_core import Dihedrant, DsrgParams, verify_matrix
from components.groupring import CnElem, delta2
from components.residue import (
    ZnMultiset,
    env_int,
    msdiff,
    negate,
    psi_image,
    psi_preimage,
    set_intersection,
    set_union,
    translate,
    uplus,
)

FAMILIES = ('T1.1', 'T1.3', 'C5.1', 'C5.2', 'C5.3', 'C5.4')

# Nombres cortos usados en la línea de comandos
CLI_FAMILIES = {
    't11': 'T1.1', 't13': 'T1.3',
    'c51': 'C5.1', 'c52': 'C5.2', 'c53': 'C5.3', 'c54': 'C5.4',
}

BRUTE_FORCE_MAX_V = 16
MAX_CANDIDATES = 2 ** 20

SetLike = Union[ZnMultiset, Iterable[int]]


class InadmissibleInstance(ValueError):
    """Los datos están bien formados pero no cumplen las condiciones de la familia."""


@dataclass(frozen=True)
class Admissibility:
    """Resultado de un validador de familia."""

    ok: bool
    reason: str = ""
    epsilon: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FamilySpec:
    """
    Datos de una instancia de familia.
    H es el conjunto generador: H ⊆ Z_v para C5.x, X ⊆ Z_n para T1.1 y T1.3.
    """

    family: str
    n: int
    v: Optional[int] = None
    H: Tuple[int, ...] = ()
    epsilon: Optional[int] = None

    @property
    def l(self) -> Optional[int]:
        return self.n // self.v if self.v else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family, "n": self.n, "v": self.v, "l": self.l,
            "H": list(self.H), "epsilon": self.epsilon,
        }


@dataclass(frozen=True)
class FamilyInstance:
    spec: FamilySpec
    dihedrant: Dihedrant
    params: DsrgParams

    def to_dict(self) -> Dict[str, Any]:
        datos = self.spec.to_dict()
        datos.update(self.dihedrant.to_dict())
        datos["params"] = self.params.to_dict()
        return datos


def normalize_family(family: str) -> str:
    """Acepta 'c51', 'C5.1', 't11', 'T1.1'..."""
    clave = family.strip()
    if clave in FAMILIES:
        return clave
    if clave.lower() in CLI_FAMILIES:
        return CLI_FAMILIES[clave.lower()]
    raise ValueError(f"❌ Familia desconocida: {family!r}")


def _as_set(n: int, valores: SetLike) -> ZnMultiset:
    if isinstance(valores, ZnMultiset):
        if valores.n != n:
            raise ValueError(f"❌ Se esperaba un conjunto de Z_{n}, llegó uno de Z_{valores.n}")
        return valores
    return ZnMultiset.from_elements(n, set(int(e) % n for e in valores))


def family_params(family: str, n: int, v: Optional[int] = None, epsilon: int = 0) -> DsrgParams:
    """Fórmula de parámetros (v, k, mu, lambda, t) de cada familia."""
    familia = normalize_family(family)
    if familia == 'T1.1':
        base = (n - 1) // 2
        return DsrgParams(2 * n, n - 1 + epsilon, base + epsilon, (n - 3) // 2 + epsilon, base + epsilon)
    if familia == 'T1.3':
        return DsrgParams(2 * n, n - 1, n // 2 - 1, n // 2 - 1, n // 2)
    if v is None:
        raise ValueError(f"❌ La familia {familia} necesita v")
    l = n // v
    if familia == 'C5.1':
        return DsrgParams(2 * n, n - l, (n - l) // 2, (n - l) // 2 - l, (n - l) // 2)
    if familia == 'C5.2':
        return DsrgParams(2 * n, n, n // 2 + l, n // 2 - l, n // 2 + l)
    if familia == 'C5.3':
        return DsrgParams(2 * n, n + l - 1, (n + l) // 2, (n + 3 * l) // 2 - 2, (n + 3 * l) // 2 - 1)
    return DsrgParams(2 * n, n, (n + l) // 2, (n - l) // 2, (n + l) // 2)


# ---------------------------------------------------------------------------
# Familias sobre Z_n completo
# ---------------------------------------------------------------------------

def validate_t11(n: int, X: SetLike, Y: SetLike, epsilon: Optional[int] = None) -> Admissibility:
    """
    Condiciones para n impar:
    (i) X + X^{(-1)} = C_n - e
    (ii) Y·Y^{(-1)} - X·X^{(-1)} = ε·C_n con ε ∈ {0, 1}

    Args:
        n: Orden impar de la parte cíclica
        X: Parte de rotaciones
        Y: Parte de reflexiones
        epsilon: 0, 1 o None para probar ambos

    Raises:
        ValueError: Si n es par o epsilon no está en {0, 1}
    """
    if n % 2 == 0:
        raise ValueError(f"❌ Esta familia requiere n impar, llegó n={n}")
    if epsilon not in (None, 0, 1):
        raise ValueError(f"❌ epsilon debe ser 0 o 1: {epsilon}")
    X, Y = _as_set(n, X), _as_set(n, Y)
    x_bar = CnElem.from_multiset(X)
    c_bar = CnElem.all_ones(n)
    if x_bar + x_bar.reversed() != c_bar - CnElem.identity(n):
        return Admissibility(False, "X ⊎ (-X) no es Z_n∖{0}")
    diferencia = delta2(n, X, Y)
    for eps in ((0, 1) if epsilon is None else (epsilon,)):
        if diferencia == eps * c_bar:
            return Admissibility(True, "admisible", eps)
    return Admissibility(False, "Y·Y^(-1) - X·X^(-1) no es múltiplo 0 o 1 de C_n")


def build_t11(n: int, X: SetLike, g: int = 0, variant: str = 'Xg') -> FamilyInstance:
    """
    Dih(n, X, X+g) o Dih(n, X, -X+g) para X con X ⊎ (-X) = Z_n∖{0}.

    Raises:
        ValueError: Si X no cumple la condición o variant es desconocido
    """
    X = _as_set(n, X)
    if variant == 'Xg':
        Y = translate(g, X)
    elif variant in ('X^-1g', 'Xinvg'):
        Y = translate(g, negate(X))
    else:
        raise ValueError(f"❌ Variante desconocida: {variant!r}")
    admisible = validate_t11(n, X, Y, 0)
    if not admisible:
        raise InadmissibleInstance(f"❌ Instancia no admisible: {admisible.reason}")
    spec = FamilySpec('T1.1', n, None, X.support, 0)
    return FamilyInstance(spec, Dihedrant(n, X, Y), family_params('T1.1', n, epsilon=0))


def _involution(n: int, c: Optional[int]) -> int:
    if n % 2:
        raise ValueError(f"❌ Esta familia requiere n par, llegó n={n}")
    if c is not None and c % n != n // 2:
        raise ValueError(f"❌ La única involución de Z_{n} es {n // 2}, llegó {c}")
    return n // 2


def validate_t13(n: int, X: SetLike, Y: SetLike, c: Optional[int] = None) -> Admissibility:
    """
    Condiciones para n par con c = n/2:
    (i) X + X^{(-1)} = C_n - e - x^c
    (ii) Y es una traslación de X ⊎ {0} o de (-X) ⊎ {0}
    (iii) x^{X+c} = X^{(-1)}

    Raises:
        ValueError: Si n es impar o c no es n/2
    """
    c = _involution(n, c)
    X, Y = _as_set(n, X), _as_set(n, Y)
    x_bar = CnElem.from_multiset(X)
    objetivo = CnElem.all_ones(n) - CnElem.identity(n) - CnElem.element(n, c)
    if x_bar + x_bar.reversed() != objetivo:
        return Admissibility(False, "X ⊎ (-X) no es Z_n∖{0, n/2}")
    if CnElem.from_multiset(translate(c, X)) != x_bar.reversed():
        return Admissibility(False, "X + n/2 distinto de -X")
    cero = ZnMultiset.from_elements(n, [0])
    for base in (uplus(X, cero), uplus(negate(X), cero)):
        if any(translate(s, base) == Y for s in range(n)):
            return Admissibility(True, "admisible")
    return Admissibility(False, "Y no es traslación de X ∪ {0} ni de (-X) ∪ {0}")


def build_t13(n: int, X: SetLike, shift: int = 0, variant: str = 'X') -> FamilyInstance:
    """Dih(n, X, shift + (X ∪ {0})) o con -X en lugar de X."""
    _involution(n, None)
    X = _as_set(n, X)
    if variant == 'X':
        base = X
    elif variant in ('X^-1', 'Xinv'):
        base = negate(X)
    else:
        raise ValueError(f"❌ Variante desconocida: {variant!r}")
    Y = translate(shift, uplus(base, ZnMultiset.from_elements(n, [0])))
    if not Y.is_plain:
        raise InadmissibleInstance("❌ 0 no puede pertenecer a X")
    admisible = validate_t13(n, X, Y)
    if not admisible:
        raise InadmissibleInstance(f"❌ Instancia no admisible: {admisible.reason}")
    spec = FamilySpec('T1.3', n, None, X.support)
    return FamilyInstance(spec, Dihedrant(n, X, Y), family_params('T1.3', n))


# ---------------------------------------------------------------------------
# Familias por preimagen de cocientes Z_v
# ---------------------------------------------------------------------------

def _check_quotient(n: int, v: int, par: bool):
    if v < 1 or n % v:
        raise ValueError(f"❌ v={v} debe dividir a n={n}")
    if par and v % 2:
        raise ValueError(f"❌ Esta familia requiere v par, llegó v={v}")
    if not par and v % 2 == 0:
        raise ValueError(f"❌ Esta familia requiere v impar, llegó v={v}")
    if v < 3:
        raise ValueError(f"❌ v={v} produce un grafo no genuino; se requiere v > 2")


def validate_c51(n: int, v: int, H: SetLike) -> Admissibility:
    """X = H + vZ_n con X ∪ (-X) = Z_n∖vZ_n y X ∩ (-X) = ∅."""
    _check_quotient(n, v, par=False)
    H = _as_set(v, H)
    if 0 in H:
        return Admissibility(False, "H debe estar contenido en {1..v-1}")
    X = psi_preimage(n, v, H)
    menos_x = negate(X)
    if set_union(X, menos_x) != msdiff(ZnMultiset.full(n), ZnMultiset.multiples(n, v)):
        return Admissibility(False, "X ∪ (-X) distinto de Z_n∖vZ_n")
    if not set_intersection(X, menos_x).is_empty():
        return Admissibility(False, "X ∩ (-X) no es vacío")
    return Admissibility(True, "admisible")


def validate_c52(n: int, v: int, H: SetLike) -> Admissibility:
    """X = H + vZ_n con X ⊎ (-X) = (Z_n∖vZ_n) ⊎ (v/2 + vZ_n) y X ∪ (v/2 + X) = Z_n."""
    _check_quotient(n, v, par=True)
    H = _as_set(v, H)
    if 0 in H:
        return Admissibility(False, "H debe estar contenido en {1..v-1}")
    X = psi_preimage(n, v, H)
    multiplos = ZnMultiset.multiples(n, v)
    objetivo = uplus(msdiff(ZnMultiset.full(n), multiplos), translate(v // 2, multiplos))
    if uplus(X, negate(X)) != objetivo:
        return Admissibility(False, "X ⊎ (-X) distinto de (Z_n∖vZ_n) ⊎ (v/2 + vZ_n)")
    if set_union(X, translate(v // 2, X)) != ZnMultiset.full(n):
        return Admissibility(False, "X ∪ (v/2 + X) distinto de Z_n")
    return Admissibility(True, "admisible")


def _validate_c53_c54(n: int, v: int, H: SetLike) -> Admissibility:
    _check_quotient(n, v, par=False)
    H = _as_set(v, H)
    if 0 not in H:
        return Admissibility(False, "0 debe pertenecer a H")
    Y = psi_preimage(n, v, H)
    if uplus(Y, negate(Y)) != uplus(ZnMultiset.full(n), ZnMultiset.multiples(n, v)):
        return Admissibility(False, "Y ⊎ (-Y) distinto de Z_n ⊎ vZ_n")
    return Admissibility(True, "admisible")


def validate_c53(n: int, v: int, H: SetLike) -> Admissibility:
    """Y = H + vZ_n con 0 ∈ H e Y ⊎ (-Y) = Z_n ⊎ vZ_n; X = Y∖{0}."""
    return _validate_c53_c54(n, v, H)


def validate_c54(n: int, v: int, H: SetLike) -> Admissibility:
    """Mismas condiciones que C5.3; X = Y∖vZ_n."""
    return _validate_c53_c54(n, v, H)


def _quotient_pair(family: str, n: int, v: int, H: ZnMultiset) -> Tuple[ZnMultiset, ZnMultiset]:
    """(X, Y) de cada familia por cocientes."""
    preimagen = psi_preimage(n, v, H)
    if family in ('C5.1', 'C5.2'):
        return preimagen, preimagen
    if family == 'C5.3':
        return msdiff(preimagen, ZnMultiset.from_elements(n, [0])), preimagen
    return msdiff(preimagen, ZnMultiset.multiples(n, v)), preimagen


_QUOTIENT_VALIDATORS: Dict[str, Callable[[int, int, SetLike], Admissibility]] = {
    'C5.1': validate_c51,
    'C5.2': validate_c52,
    'C5.3': validate_c53,
    'C5.4': validate_c54,
}


def _build_quotient(family: str, n: int, v: int, H: SetLike) -> FamilyInstance:
    H = _as_set(v, H)
    admisible = _QUOTIENT_VALIDATORS[family](n, v, H)
    if not admisible:
        raise InadmissibleInstance(f"❌ Instancia {family} no admisible: {admisible.reason}")
    X, Y = _quotient_pair(family, n, v, H)
    spec = FamilySpec(family, n, v, H.support)
    return FamilyInstance(spec, Dihedrant(n, X, Y), family_params(family, n, v))


def build_c51(n: int, v: int, H: SetLike) -> FamilyInstance:
    return _build_quotient('C5.1', n, v, H)


def build_c52(n: int, v: int, H: SetLike) -> FamilyInstance:
    return _build_quotient('C5.2', n, v, H)


def build_c53(n: int, v: int, H: SetLike) -> FamilyInstance:
    return _build_quotient('C5.3', n, v, H)


def build_c54(n: int, v: int, H: SetLike) -> FamilyInstance:
    return _build_quotient('C5.4', n, v, H)


def build_family(family: str, n: int, v: Optional[int] = None, H: SetLike = ()) -> FamilyInstance:
    """Despacho único usado por el orquestador y la CLI."""
    familia = normalize_family(family)
    if familia == 'T1.1':
        return build_t11(n, H)
    if familia == 'T1.3':
        return build_t13(n, H)
    if v is None:
        raise ValueError(f"❌ La familia {familia} necesita v")
    return _build_quotient(familia, n, v, H)


# ---------------------------------------------------------------------------
# Enumeración
# ---------------------------------------------------------------------------

def _pair_transversals(m: int, fijos: Tuple[int, ...]) -> Iterator[ZnMultiset]:
    """Conjuntos con los elementos fijos y exactamente uno de cada par {i, -i}."""
    pares = [(i, m - i) for i in range(1, (m - 1) // 2 + 1)]
    if 2 ** len(pares) > env_int('DSRG_ENUM_MAX_CANDIDATES', MAX_CANDIDATES):
        raise ValueError(f"❌ Z_{m} es demasiado grande para enumerar")
    for eleccion in product((0, 1), repeat=len(pares)):
        elementos = list(fijos) + [par[bit] for par, bit in zip(pares, eleccion)]
        yield ZnMultiset.from_elements(m, elementos)


def _candidates(family: str, m: int) -> Iterator[ZnMultiset]:
    """Todos los subconjuntos de Z_m, o los transversales de pares cuando m es grande."""
    if m <= BRUTE_FORCE_MAX_V:
        for mask in range(2 ** m):
            yield ZnMultiset.from_mask(m, mask)
        return
    fijos = {
        'T1.1': (), 'T1.3': (), 'C5.1': (),
        'C5.2': (m // 2,), 'C5.3': (0,), 'C5.4': (0,),
    }[family]
    yield from _pair_transversals(m, fijos)


def enumerate_family(family: str, n: int, v: Optional[int] = None) -> List[FamilyInstance]:
    """
    Todas las instancias admisibles de una familia, ya verificadas por el oráculo matricial.

    Args:
        family: Nombre de la familia ('C5.1', 'c51', ...)
        n: Orden de la parte cíclica
        v: Divisor de n (solo familias C5.x)

    Returns:
        Lista de FamilyInstance en orden de máscara del conjunto generador

    Raises:
        ValueError: Si v no es válido o el espacio es demasiado grande
        ArithmeticError: Si una instancia no reproduce la fórmula de parámetros
    """
    familia = normalize_family(family)
    instancias = []
    if familia in ('T1.1', 'T1.3'):
        if v not in (None, n):
            raise ValueError(f"❌ La familia {familia} no usa v")
        if (n % 2 == 1) != (familia == 'T1.1'):
            raise ValueError(f"❌ La paridad de n={n} no corresponde a la familia {familia}")
        cero = ZnMultiset.from_elements(n, [0])
        for X in _candidates(familia, n):
            if familia == 'T1.1':
                if validate_t11(n, X, X, 0):
                    instancias.append(build_t11(n, X))
            elif 0 not in X and validate_t13(n, X, uplus(X, cero)):
                instancias.append(build_t13(n, X))
    else:
        if v is None:
            raise ValueError(f"❌ La familia {familia} necesita v")
        _check_quotient(n, v, par=familia == 'C5.2')
        validador = _QUOTIENT_VALIDATORS[familia]
        for H in _candidates(familia, v):
            if validador(n, v, H):
                instancias.append(_build_quotient(familia, n, v, H))

    for instancia in instancias:
        veredicto = verify_matrix(instancia.dihedrant)
        if veredicto.params != instancia.params:
            raise ArithmeticError(
                f"❌ {instancia.dihedrant} dio {veredicto.params} en vez de {instancia.params}"
            )
    return instancias


def match_families(d: Dihedrant) -> List[str]:
    """Etiquetas de todas las familias a las que pertenece el dihedrante."""
    n = d.n
    etiquetas = []
    if n % 2 == 1 and validate_t11(n, d.X, d.Y):
        etiquetas.append('T1.1')
    if n % 2 == 0 and validate_t13(n, d.X, d.Y):
        etiquetas.append('T1.3')
    for familia in ('C5.1', 'C5.2', 'C5.3', 'C5.4'):
        for v in divisors(n):
            v = int(v)
            if v < 3 or (v % 2 == 0) != (familia == 'C5.2'):
                continue
            base = d.X if familia in ('C5.1', 'C5.2') else d.Y
            H = psi_image(n, v, base, inflate=False)
            if psi_preimage(n, v, H) != base:
                continue
            if not _QUOTIENT_VALIDATORS[familia](n, v, H):
                continue
            if _quotient_pair(familia, n, v, H) == (d.X, d.Y):
                etiquetas.append(familia)
                break
    return etiquetas
