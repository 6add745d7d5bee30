"""
Analizador de dihedrantes fuertemente regulares dirigidos.
Orquesta los componentes de aritmética exacta, verificación, construcciones,
estructura y búsqueda; cada operación devuelve un diccionario serializable.
"""

from typing import Any, Dict, Iterable, List, Optional, Union

from sympy import factorint

from components.constructions import build_family, enumerate_family, match_families
from components.dsrg_core import (
    Dihedrant,
    DsrgParams,
    DsrgVerifier,
    canonical_form,
    complement_dihedrant,
    complement_params,
    duval_feasible,
    is_canonical,
    spectrum,
    transform_orbit,
    verify_matrix,
)
from components.residue import ZnMultiset, is_subset, parse_plain_set
from components.search import SearchRecord, search_xx, search_xy
from components.structure import (
    coset_structure,
    decompose_ux,
    gamma_beta,
    infer_m,
    q_values,
    shape_t14,
    shape_t15,
    shape_t16,
    shape_witness,
    vanishing_level,
    w_realness,
)

SetArg = Union[str, ZnMultiset, Iterable[int]]


def _as_set(n: int, valores: SetArg) -> ZnMultiset:
    if isinstance(valores, ZnMultiset):
        return valores
    if isinstance(valores, str):
        return parse_plain_set(n, valores)
    return parse_plain_set(n, ",".join(str(e) for e in valores))


def _prime_power_of(n: int) -> Optional[tuple]:
    """(p, alpha) si n = p^alpha, o None."""
    factores = factorint(n)
    if len(factores) != 1:
        return None
    (p, alpha), = factores.items()
    return int(p), int(alpha)


class DihedrantAnalyzer:
    """
    Sistema completo para verificar, construir, analizar y buscar DSRGs Dih(n, X, Y).
    Con verbose=False no imprime nada (la CLI lo usa al emitir JSON).
    """

    def __init__(self, verbose: bool = True):
        self.verbose = verbose
        self._log("✅ DihedrantAnalyzer inicializado")

    def _log(self, mensaje: str):
        if self.verbose:
            print(mensaje)

    def _banner(self, titulo: str):
        self._log(f"\n{'='*70}")
        self._log(titulo)
        self._log(f"{'='*70}\n")

    def dihedrant(self, n: int, X: SetArg, Y: SetArg) -> Dihedrant:
        return Dihedrant(n, _as_set(n, X), _as_set(n, Y))

    def verify(self, n: int, X: SetArg, Y: SetArg) -> Dict[str, Any]:
        """
        Verifica Dih(n, X, Y) con el oráculo matricial y, si es DSRG,
        con los tres verificadores algebraicos.

        Returns:
            Diccionario con el veredicto, los parámetros y las familias reconocidas

        Raises:
            ArithmeticError: Si los verificadores no coinciden
        """
        d = self.dihedrant(n, X, Y)
        self._banner(f"🚀 VERIFICACIÓN DE {d}")

        # PASO 1: Oráculo matricial
        self._log("🧮 PASO 1: Calculando A² con la matriz de adyacencia...")
        veredicto = DsrgVerifier.matrix(d)
        resultado = d.to_dict()
        resultado["is_dsrg"] = veredicto.is_dsrg
        if not veredicto.is_dsrg:
            resultado["failure"] = veredicto.failure
            if veredicto.candidate is not None:
                resultado["candidate"] = veredicto.candidate.to_dict()
            self._log(f"\n⚠️  No es un DSRG: {veredicto.failure}")
            return resultado

        params = veredicto.params
        self._log(f"✓ DSRG con parámetros {params}")

        # PASO 2: Verificadores algebraicos
        self._log("\n🔁 PASO 2: Contrastando con anillo de grupo, identidad de Cayley y Fourier...")
        verificadores = DsrgVerifier.cross_check(d, params)
        if not all(verificadores.values()):
            raise ArithmeticError(f"❌ Los verificadores no coinciden para {d}: {verificadores}")
        self._log("✓ Los cuatro verificadores coinciden")

        # PASO 3: Familias conocidas
        self._log("\n🏷️  PASO 3: Buscando familias constructivas...")
        familias = match_families(d)
        self._log(f"✓ Familias: {', '.join(familias) if familias else 'ninguna'}")

        resultado.update({
            "params": params.to_dict(),
            "genuine": params.is_genuine,
            "verifiers": verificadores,
            "matched": familias,
        })
        self._banner("✅ VERIFICACIÓN COMPLETADA")
        return resultado

    def evaluate_params(self, params: DsrgParams) -> Dict[str, Any]:
        """Factibilidad, espectro y parámetros del complemento."""
        self._banner(f"📐 PARÁMETROS {params}")
        reporte = duval_feasible(params)
        resultado = {
            "params": params.to_dict(),
            "feasible": reporte.feasible,
            "reason": reporte.reason,
            "complement": complement_params(params).to_dict(),
        }
        if reporte.feasible:
            resultado["spectrum"] = spectrum(params).to_dict()
            self._log(f"✓ Factible; espectro {resultado['spectrum']}")
        else:
            self._log(f"⚠️  No factible: {reporte.reason}")
        return resultado

    def build(self, family: str, n: int, v: Optional[int] = None, H: SetArg = ()) -> Dict[str, Any]:
        """
        Construye una instancia de familia y la confirma con el oráculo matricial.

        Raises:
            ValueError: Si la instancia no es admisible
            ArithmeticError: Si el oráculo no reproduce la fórmula de parámetros
        """
        modulo = v if v is not None and not family.lower().startswith('t') else n
        instancia = build_family(family, n, v, _as_set(modulo, H))
        self._banner(f"🏗️  CONSTRUCCIÓN {instancia.spec.family}: {instancia.dihedrant}")
        veredicto = verify_matrix(instancia.dihedrant)
        if veredicto.params != instancia.params:
            raise ArithmeticError(
                f"❌ {instancia.dihedrant} dio {veredicto.params} en vez de {instancia.params}"
            )
        self._log(f"✓ Verificado con parámetros {instancia.params}")
        resultado = instancia.to_dict()
        resultado["verified"] = True
        return resultado

    def enumerate(self, family: str, n: int, v: Optional[int] = None) -> List[Dict[str, Any]]:
        self._banner(f"📋 ENUMERACIÓN {family} n={n} v={v}")
        instancias = enumerate_family(family, n, v)
        self._log(f"✓ {len(instancias)} instancias admisibles")
        return [instancia.to_dict() for instancia in instancias]

    def analyze(self, n: int, X: SetArg, Y: Optional[SetArg] = None) -> Dict[str, Any]:
        """Estructura de X (y de Y si se da): cosets, U_X, valores q y predicados de forma."""
        x = _as_set(n, X)
        y = _as_set(n, Y) if Y is not None else None
        self._banner(f"🔬 ANÁLISIS ESTRUCTURAL EN Z_{n}")

        resultado: Dict[str, Any] = {
            "n": n,
            "X": list(x.support),
            "coset_structure": coset_structure(n, x).to_dict(),
            "q_values": q_values(n, x),
        }
        if y is not None:
            resultado["Y"] = list(y.support)
            resultado["coset_structure_Y"] = coset_structure(n, y).to_dict()

        potencia = _prime_power_of(n) if n > 1 else None
        if potencia is None:
            self._log("⏭️  n no es potencia de primo: se omiten los predicados de forma")
            return resultado

        p, alpha = potencia
        self._log(f"🧩 n = {p}^{alpha}")
        descomposicion = decompose_ux(p, alpha, x)
        beta_q = gamma_beta(p, alpha, x)
        if beta_q is not None and descomposicion.valid and beta_q != descomposicion.beta:
            self._log(f"⚠️  β por valores q ({beta_q}) distinto de β por órbitas ({descomposicion.beta})")
        resultado.update({
            "p": p,
            "alpha": alpha,
            "decomposition": descomposicion.to_dict(),
            "m": infer_m(p, alpha, x),
            "gamma_beta": beta_q,
            "vanishing_level": vanishing_level(p, alpha, x),
        })
        if p == 2:
            resultado["shape_t15"] = shape_t15(alpha, x)
        else:
            resultado["shape_t14"] = shape_t14(p, alpha, x)
        if y is not None and p != 2:
            resultado["shape_t16"] = shape_t16(p, alpha, x, y)
            resultado["witness"] = shape_witness(p, alpha, x, y)
        else:
            resultado["witness"] = shape_witness(p, alpha, x)

        if y is not None and is_subset(x, y):
            params = verify_matrix(Dihedrant(n, x, y)).params
            resultado["w"] = w_realness(n, x, y, params).to_dict()
        self._log("✓ Análisis completado")
        return resultado

    def complement(self, n: int, X: SetArg, Y: SetArg) -> Dict[str, Any]:
        """Complemento del dihedrante y contraste con la fórmula de parámetros complementarios."""
        d = self.dihedrant(n, X, Y)
        c = complement_dihedrant(d)
        self._banner(f"🔄 COMPLEMENTO DE {d}")
        original = verify_matrix(d)
        veredicto = verify_matrix(c)
        resultado = {
            "original": d.to_dict(),
            "complement": c.to_dict(),
            "is_dsrg": veredicto.is_dsrg,
        }
        if veredicto.is_dsrg:
            resultado["params"] = veredicto.params.to_dict()
        if original.is_dsrg:
            esperado = complement_params(original.params)
            resultado["expected"] = esperado.to_dict()
            resultado["consistent"] = veredicto.params == esperado
            self._log(f"✓ Esperado {esperado}, obtenido {veredicto.params}")
        return resultado

    def canon(self, n: int, X: SetArg, Y: SetArg, shifts: bool = True) -> Dict[str, Any]:
        d = self.dihedrant(n, X, Y)
        mask_x, mask_y = canonical_form(d, shifts)
        forma = Dihedrant.from_masks(n, mask_x, mask_y)
        self._log(f"🔤 Forma canónica de {d}: {forma}")
        return {
            "input": d.to_dict(),
            "canonical": forma.to_dict(),
            "is_canonical": is_canonical(d, shifts),
            "orbit_size": len(transform_orbit(d, shifts)),
            "shifts": shifts,
        }

    def search(self, p: int, alpha: int, mode: str = 'xx', filtered: bool = False,
               jobs: Optional[int] = None) -> List[SearchRecord]:
        """
        Búsqueda exhaustiva sobre Z_{p^alpha}.

        Args:
            mode: 'xx' (Y = X) o 'xy' (pares)
            filtered: Solo para 'xx'; usa el filtro de órbitas y valores q
            jobs: Procesos de trabajo
        """
        self._banner(f"🔎 BÚSQUEDA {mode.upper()} en Z_{p}^{alpha}")
        if mode == 'xx':
            registros = search_xx(p, alpha, 'filtered' if filtered else 'exhaustive', jobs)
        elif mode == 'xy':
            registros = search_xy(p, alpha, jobs)
        else:
            raise ValueError(f"❌ Modo de búsqueda desconocido: {mode!r}")
        self._log(f"✓ {len(registros)} DSRGs, {sum(r.canonical for r in registros)} canónicos")
        return registros


# Funciones auxiliares para uso rápido
def verificar_dihedrante(n: int, X: SetArg, Y: SetArg) -> Dict[str, Any]:
    """
    Verifica Dih(n, X, Y) en un solo paso.

    Args:
        n: Orden de la parte cíclica
        X: Rotaciones, p. ej. "1,4,7"
        Y: Reflexiones

    Returns:
        Diccionario con el veredicto
    """
    return DihedrantAnalyzer(verbose=False).verify(n, X, Y)


def evaluar_parametros(v: int, k: int, mu: int, lam: int, t: int) -> Dict[str, Any]:
    return DihedrantAnalyzer(verbose=False).evaluate_params(DsrgParams(v, k, mu, lam, t))


def construir_familia(family: str, n: int, v: Optional[int] = None, H: SetArg = ()) -> Dict[str, Any]:
    return DihedrantAnalyzer(verbose=False).build(family, n, v, H)


def buscar(p: int, alpha: int, mode: str = 'xx', filtered: bool = False) -> List[SearchRecord]:
    return DihedrantAnalyzer(verbose=False).search(p, alpha, mode, filtered)


# Ejemplo de uso
if __name__ == "__main__":
    analyzer = DihedrantAnalyzer()

    print("\n" + "="*70)
    print("EJEMPLO 1: Verificar Dih(3, {1}, {1})")
    print("="*70)
    resultado1 = analyzer.verify(3, "1", "1")
    print("\n📊 RESUMEN:")
    print(f"   DSRG: {resultado1['is_dsrg']}")
    print(f"   Parámetros: {resultado1.get('params', 'N/A')}")
    print(f"   Familias: {resultado1.get('matched', 'N/A')}")

    print("\n" + "="*70)
    print("EJEMPLO 2: Construcción C5.3 con n=9, v=3, H={0,1}")
    print("="*70)
    resultado2 = analyzer.build('c53', 9, 3, "0,1")
    print("\n📊 RESUMEN:")
    print(f"   X: {resultado2['X']}")
    print(f"   Y: {resultado2['Y']}")
    print(f"   Parámetros: {resultado2['params']}")

    print("\n" + "="*70)
    print("EJEMPLO 3: Búsqueda Y = X en Z_9")
    print("="*70)
    registros = analyzer.search(3, 2)
    print("\n📊 RESUMEN:")
    for registro in registros[:5]:
        print(f"   {registro.dihedrant} {registro.params} {list(registro.matched)}")
