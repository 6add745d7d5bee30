"""
Módulo de búsqueda exhaustiva de dihedrantes fuertemente regulares sobre Z_{p^alpha}.
Los candidatos se recorren como máscaras de bits, se reparten por rangos
entre procesos y se fusionan ordenados.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from components.constructions import match_families
from components.cyclotomic import CyclotomicField
from components.dsrg_core import Dihedrant, DsrgParams, is_canonical, verify_matrix
from components.residue import (
    env_int,
    is_orbit_union,
    is_subset,
    msdiff,
    negate,
    orbit,
    set_intersection,
)
from components.structure import prime_power, shape_t14, shape_t15, shape_t16

DEFAULT_EXHAUSTIVE_MAX_N = 16
DEFAULT_FILTERED_MAX_N = 27
DEFAULT_XY_MAX_N = 9
CHUNKS_PER_JOB = 8

MODES = ('exhaustive', 'filtered')


@dataclass(frozen=True)
class SearchRecord:
    """Un DSRG encontrado; X e Y como tuplas ordenadas."""

    n: int
    X: Tuple[int, ...]
    Y: Tuple[int, ...]
    params: DsrgParams
    canonical: bool
    matched: Tuple[str, ...] = ()
    genuine: bool = True
    orbit_difference: Optional[bool] = None

    @property
    def dihedrant(self) -> Dihedrant:
        return Dihedrant.from_sets(self.n, self.X, self.Y)

    @property
    def masks(self) -> Tuple[int, int]:
        return self.dihedrant.masks

    def to_dict(self) -> Dict[str, Any]:
        datos = {
            "n": self.n,
            "X": list(self.X),
            "Y": list(self.Y),
            "params": self.params.to_dict(),
            "canonical": self.canonical,
            "matched": list(self.matched),
        }
        if not self.genuine:
            datos["genuine"] = False
        if self.orbit_difference is not None:
            datos["orbit_difference"] = self.orbit_difference
        return datos

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SearchRecord':
        return cls(
            n=int(data["n"]),
            X=tuple(sorted(int(e) for e in data["X"])),
            Y=tuple(sorted(int(e) for e in data["Y"])),
            params=DsrgParams.from_dict(data["params"]),
            canonical=bool(data["canonical"]),
            matched=tuple(data.get("matched", ())),
            genuine=bool(data.get("genuine", True)),
            orbit_difference=data.get("orbit_difference"),
        )


# ---------------------------------------------------------------------------
# Reparto de trabajo
# ---------------------------------------------------------------------------

def _ranges(total: int, partes: int) -> List[Tuple[int, int]]:
    """Rangos contiguos [inicio, fin) que cubren range(total)."""
    partes = max(1, min(partes, total))
    paso, resto = divmod(total, partes)
    rangos, inicio = [], 0
    for i in range(partes):
        fin = inicio + paso + (1 if i < resto else 0)
        rangos.append((inicio, fin))
        inicio = fin
    return rangos


def _run_chunks(worker: Callable, tareas: Sequence[tuple], jobs: int) -> List[Any]:
    """Ejecuta worker sobre cada tarea; el orden del resultado es el de las tareas."""
    if jobs <= 1 or len(tareas) <= 1:
        return [worker(tarea) for tarea in tareas]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(worker, tareas))


def _resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        return env_int('DSRG_JOBS', 1)
    if jobs < 1:
        raise ValueError(f"❌ jobs debe ser positivo, llegó {jobs}")
    return jobs


def _verify_masks(n: int, mask_x: int, mask_y: int, include_non_genuine: bool) -> Optional[Tuple[int, int, Tuple[int, ...]]]:
    veredicto = verify_matrix(Dihedrant.from_masks(n, mask_x, mask_y))
    if not veredicto.is_dsrg:
        return None
    if not veredicto.is_genuine and not include_non_genuine:
        return None
    return mask_x, mask_y, veredicto.params.as_tuple()


# ---------------------------------------------------------------------------
# Búsqueda con Y = X
# ---------------------------------------------------------------------------

def _xx_exhaustive_chunk(tarea: Tuple[int, int, int, bool]) -> List[Tuple[int, int, Tuple[int, ...]]]:
    """Recorre X ⊆ Z_n∖{0} cuya máscara sin el bit 0 está en [inicio, fin)."""
    n, inicio, fin, incluir = tarea
    hallados = []
    for parcial in range(inicio, fin):
        mask = parcial << 1
        resultado = _verify_masks(n, mask, mask, incluir)
        if resultado:
            hallados.append(resultado)
    return hallados


def _orbit_options(n: int, elementos: Tuple[int, ...]) -> List[int]:
    """Máscaras de X ∩ O que hacen U_X constante en O: vacío, O, o uno de cada par ±."""
    completo = sum(1 << e for e in elementos)
    opciones = [0, completo]
    pares = sorted({tuple(sorted((e, (-e) % n))) for e in elementos if e != (-e) % n})
    if pares and len(pares) * 2 == len(elementos):
        for eleccion in product((0, 1), repeat=len(pares)):
            opciones.append(sum(1 << par[bit] for par, bit in zip(pares, eleccion)))
    return opciones


def orbit_constant_masks(p: int, alpha: int) -> List[int]:
    """Todas las X ⊆ Z_{p^α}∖{0} con U_X constante en cada órbita, ordenadas."""
    n = prime_power(p, alpha)
    por_orbita = [_orbit_options(n, orbit(n, p ** j).elements) for j in range(1, alpha + 1)]
    return sorted(sum(eleccion) for eleccion in product(*por_orbita))


@lru_cache(maxsize=32)
def _ramanujan_table(p: int, alpha: int) -> np.ndarray:
    """Fila j: suma de Ramanujan de O_{p^j} en cada z."""
    return CyclotomicField(p ** alpha).ramanujan_table([p ** j for j in range(alpha + 1)])


def passes_q_test(p: int, alpha: int, mask: int) -> bool:
    """
    Para X orbit-constante, los q(z) con z ≠ 0 toman a lo sumo un valor no nulo.
    Todo DSRG Dih(n, X, X) lo cumple.
    """
    n = p ** alpha
    coeficientes = np.zeros(alpha + 1, dtype=np.int64)
    for j in range(1, alpha + 1):
        e = orbit(n, p ** j).elements[0]
        coeficientes[j] = ((mask >> e) & 1) + ((mask >> ((-e) % n)) & 1)
    q = coeficientes @ _ramanujan_table(p, alpha)
    return len({int(valor) for valor in q[1:] if valor}) <= 1


def _xx_filtered_chunk(tarea: Tuple[int, int, Tuple[int, ...], bool]) -> List[Tuple[int, int, Tuple[int, ...]]]:
    p, alpha, mascaras, incluir = tarea
    n = p ** alpha
    hallados = []
    for mask in mascaras:
        if not passes_q_test(p, alpha, mask):
            continue
        resultado = _verify_masks(n, mask, mask, incluir)
        if resultado:
            hallados.append(resultado)
    return hallados


def _xx_tags(p: int, alpha: int, d: Dihedrant) -> Tuple[str, ...]:
    etiquetas = []
    if p != 2 and shape_t14(p, alpha, d.X):
        etiquetas.append('T1.4')
    if p == 2 and shape_t15(alpha, d.X):
        etiquetas.append('T1.5')
    return tuple(etiquetas + match_families(d))


def _to_record(n: int, mask_x: int, mask_y: int, params: Tuple[int, ...], shifts: bool) -> Tuple[Dihedrant, DsrgParams, bool]:
    d = Dihedrant.from_masks(n, mask_x, mask_y)
    parametros = DsrgParams(*params)
    return d, parametros, is_canonical(d, shifts=shifts)


def search_xx(p: int, alpha: int, mode: str = 'exhaustive', jobs: Optional[int] = None,
              include_non_genuine: bool = False) -> List[SearchRecord]:
    """
    Todos los X ⊆ Z_{p^α}∖{0} con Dih(p^α, X, X) DSRG.

    Args:
        p: Primo
        alpha: Exponente
        mode: 'exhaustive' (2^{n-1} candidatos) o 'filtered' (solo U_X orbit-constante + prueba de q)
        jobs: Procesos de trabajo; None toma DSRG_JOBS
        include_non_genuine: Si True conserva también los DSRG con t = 0 o t = k

    Returns:
        SearchRecord ordenados por máscara de X

    Raises:
        ValueError: Si el modo es desconocido o p^α supera el tope del modo
    """
    if mode not in MODES:
        raise ValueError(f"❌ Modo desconocido: {mode!r}")
    n = prime_power(p, alpha)
    trabajos = _resolve_jobs(jobs)
    if mode == 'exhaustive':
        tope = env_int('DSRG_EXHAUSTIVE_MAX_N', DEFAULT_EXHAUSTIVE_MAX_N)
        if n > tope:
            raise ValueError(f"❌ n = {n} supera DSRG_EXHAUSTIVE_MAX_N = {tope}; use el modo filtrado")
        tareas = [(n, a, b, include_non_genuine) for a, b in _ranges(2 ** (n - 1), trabajos * CHUNKS_PER_JOB)]
        partes = _run_chunks(_xx_exhaustive_chunk, tareas, trabajos)
    else:
        tope = env_int('DSRG_FILTERED_MAX_N', DEFAULT_FILTERED_MAX_N)
        if n > tope:
            raise ValueError(f"❌ n = {n} supera DSRG_FILTERED_MAX_N = {tope}")
        mascaras = orbit_constant_masks(p, alpha)
        tareas = [
            (p, alpha, tuple(mascaras[a:b]), include_non_genuine)
            for a, b in _ranges(len(mascaras), trabajos * CHUNKS_PER_JOB)
        ]
        partes = _run_chunks(_xx_filtered_chunk, tareas, trabajos)

    registros = []
    for mask_x, mask_y, params in sorted(h for parte in partes for h in parte):
        d, parametros, canonico = _to_record(n, mask_x, mask_y, params, shifts=False)
        registros.append(SearchRecord(
            n=n, X=d.X.support, Y=d.Y.support, params=parametros, canonical=canonico,
            matched=_xx_tags(p, alpha, d), genuine=parametros.is_genuine,
        ))
    return registros


# ---------------------------------------------------------------------------
# Búsqueda con X e Y independientes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _subset_matrix(n: int) -> np.ndarray:
    """Fila m: indicador del subconjunto con máscara m."""
    mascaras = np.arange(2 ** n, dtype=np.int64)[:, None]
    return ((mascaras >> np.arange(n, dtype=np.int64)) & 1).astype(np.int64)


def _circulant(u: np.ndarray) -> np.ndarray:
    """C[i, k] = u[k - i], de modo que (y @ C)[k] = sum_i y[i] u[k - i]."""
    n = len(u)
    indices = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return u[indices]


def reflection_prefilter(n: int, mask_x: int) -> np.ndarray:
    """
    Máscaras Y con Y·Δ1 constante sobre Y y constante fuera de Y,
    condición necesaria de la parte de reflexiones.
    """
    ys = _subset_matrix(n)
    x = ys[mask_x]
    u_x = x + x[(-np.arange(n)) % n]
    conv = ys @ _circulant(u_x)
    dentro = ys.astype(bool)
    tope = np.iinfo(np.int64).max

    def _constante(zona: np.ndarray) -> np.ndarray:
        maximo = np.where(zona, conv, -tope).max(axis=1)
        minimo = np.where(zona, conv, tope).min(axis=1)
        return (maximo == minimo) | ~zona.any(axis=1)

    return np.flatnonzero(_constante(dentro) & _constante(~dentro))


def _xy_chunk(tarea: Tuple[int, int, int, bool]) -> List[Tuple[int, int, Tuple[int, ...]]]:
    n, inicio, fin, incluir = tarea
    hallados = []
    for parcial in range(inicio, fin):
        mask_x = parcial << 1
        for mask_y in reflection_prefilter(n, mask_x):
            resultado = _verify_masks(n, mask_x, int(mask_y), incluir)
            if resultado:
                hallados.append(resultado)
    return hallados


def has_orbit_difference(d: Dihedrant) -> bool:
    """X ⊊ Y e Y∖X unión de órbitas completas."""
    if d.X == d.Y or not is_subset(d.X, d.Y):
        return False
    return is_orbit_union(msdiff(d.Y, d.X))


def search_xy(p: int, alpha: int, jobs: Optional[int] = None,
              include_non_genuine: bool = False) -> List[SearchRecord]:
    """
    Todos los pares (X, Y), 0 ∉ X, con Dih(p^α, X, Y) DSRG.

    Raises:
        ValueError: Si p^α supera DSRG_XY_MAX_N
    """
    n = prime_power(p, alpha)
    tope = env_int('DSRG_XY_MAX_N', DEFAULT_XY_MAX_N)
    if n > tope:
        raise ValueError(f"❌ n = {n} supera DSRG_XY_MAX_N = {tope}")
    trabajos = _resolve_jobs(jobs)
    tareas = [(n, a, b, include_non_genuine) for a, b in _ranges(2 ** (n - 1), trabajos * CHUNKS_PER_JOB)]
    partes = _run_chunks(_xy_chunk, tareas, trabajos)

    registros = []
    for mask_x, mask_y, params in sorted(h for parte in partes for h in parte):
        d, parametros, canonico = _to_record(n, mask_x, mask_y, params, shifts=True)
        etiquetas = list(match_families(d))
        if p != 2 and shape_t16(p, alpha, d.X, d.Y):
            etiquetas.insert(0, 'T1.6-shape')
        registros.append(SearchRecord(
            n=n, X=d.X.support, Y=d.Y.support, params=parametros, canonical=canonico,
            matched=tuple(etiquetas), genuine=parametros.is_genuine,
            orbit_difference=has_orbit_difference(d),
        ))
    return registros


# ---------------------------------------------------------------------------
# Validación cruzada
# ---------------------------------------------------------------------------

@dataclass
class CrossValidationReport:
    """failing: registros que no cumplen; missing: configuraciones que cumplen y no aparecen."""

    checked: int = 0
    failing: List[SearchRecord] = field(default_factory=list)
    missing: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failing and not self.missing

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "failing": [r.to_dict() for r in self.failing],
            "missing": [list(m) for m in self.missing],
            "ok": self.ok,
        }


def xx_universe(p: int, alpha: int) -> Iterator[Dihedrant]:
    """Dih(n, X, X) para todo X ⊆ Z_n∖{0}."""
    n = prime_power(p, alpha)
    for parcial in range(2 ** (n - 1)):
        yield Dihedrant.from_masks(n, parcial << 1, parcial << 1)


def subset_pair_universe(p: int, alpha: int) -> Iterator[Dihedrant]:
    """Dih(n, X, Y) para todo X ⊊ Y ⊆ Z_n con 0 ∉ X."""
    n = prime_power(p, alpha)
    for mask_y in range(2 ** n):
        sub = mask_y & ~1
        while True:
            if sub != mask_y:
                yield Dihedrant.from_masks(n, sub, mask_y)
            if sub == 0:
                break
            sub = (sub - 1) & mask_y & ~1


def cross_validate(records: Iterable[SearchRecord], predicate: Callable[[Dihedrant], bool],
                   universe: Optional[Iterable[Dihedrant]] = None) -> CrossValidationReport:
    """
    Contrasta los registros genuinos contra un predicado.

    Args:
        records: Salida de una búsqueda
        predicate: Función Dihedrant -> bool
        universe: Configuraciones candidatas; las que cumplen el predicado deben estar en records

    Returns:
        CrossValidationReport con ambas listas de defectos
    """
    reporte = CrossValidationReport()
    presentes = set()
    for registro in records:
        if not registro.genuine:
            continue
        reporte.checked += 1
        d = registro.dihedrant
        presentes.add(d.masks)
        if not predicate(d):
            reporte.failing.append(registro)
    if universe is not None:
        for d in universe:
            if d.masks not in presentes and predicate(d):
                reporte.missing.append(d.masks)
    return reporte


def disjoint_from_negative(d: Dihedrant) -> bool:
    """X ∩ (-X) = ∅."""
    return set_intersection(d.X, negate(d.X)).is_empty()


def intersects_negative(d: Dihedrant) -> bool:
    return not disjoint_from_negative(d)


def validate_search(p: int, alpha: int, mode: str, records: Sequence[SearchRecord]) -> Dict[str, CrossValidationReport]:
    """
    Contrasta una búsqueda con la caracterización que le corresponde:
    xx con p impar contra shape_t14, xx con p = 2 contra shape_t15 y contra
    la ausencia de X con X ∩ (-X) = ∅, xy con p impar contra shape_t16 sobre
    los registros con X ⊊ Y e Y∖X unión de órbitas.
    """
    reportes = {}
    if mode == 'xx':
        if p == 2:
            reportes['T1.5'] = cross_validate(records, lambda d: shape_t15(alpha, d.X), xx_universe(p, alpha))
            reportes['X∩-X'] = cross_validate(records, intersects_negative)
        else:
            reportes['T1.4'] = cross_validate(records, lambda d: shape_t14(p, alpha, d.X), xx_universe(p, alpha))
    elif mode == 'xy':
        if p != 2:
            sublista = [r for r in records if r.orbit_difference]
            reportes['T1.6'] = cross_validate(
                sublista, lambda d: shape_t16(p, alpha, d.X, d.Y), subset_pair_universe(p, alpha)
            )
    else:
        raise ValueError(f"❌ Modo de búsqueda desconocido: {mode!r}")
    return reportes
