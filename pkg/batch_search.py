"""
Procesador por lotes de búsquedas de dihedrantes fuertemente regulares.
Encola tareas (p, alpha, modo), las ejecuta, valida cada resultado contra su
caracterización y guarda registros JSON lines más un resumen con fecha.
"""

import json
import os
import re
import time
from datetime import datetime
from queue import Queue
from threading import Lock
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from components.search import validate_search
from main import DihedrantAnalyzer

# Cargar variables de entorno
load_dotenv()

TASK_PATTERN = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?::\s*(xx|xy))?\s*(?::\s*(filtered))?\s*$")


def _empty_stats() -> Dict[str, int]:
    return {
        'total': 0,
        'procesados': 0,
        'exitosos': 0,
        'con_defectos': 0,
        'fallidos': 0,
        'en_cola': 0,
        'registros': 0,
    }


class BatchDihedrantSearch:
    """
    Cola de búsquedas exhaustivas. Cada tarea produce un archivo .jsonl con sus
    registros; al terminar se escribe un resumen JSON con estadísticas.
    """

    def __init__(
        self,
        output_folder: Optional[str] = None,
        auto_save_results: bool = True,
        verbose: bool = True
    ):
        """
        Args:
            output_folder: Carpeta de resultados (por defecto DSRG_OUTPUT_FOLDER o 'resultados')
            auto_save_results: Si True, guarda los resultados al terminar la cola
            verbose: Si True, imprime banner, progreso y resumen
        """
        self.verbose = verbose
        self.analyzer = DihedrantAnalyzer(verbose=False)
        self.output_folder = output_folder or os.getenv('DSRG_OUTPUT_FOLDER', 'resultados')
        self.auto_save_results = auto_save_results

        self.queue = Queue()
        self.results: List[Dict[str, Any]] = []
        self.stats = _empty_stats()
        self.is_processing = False
        self.lock = Lock()

        if self.auto_save_results:
            os.makedirs(self.output_folder, exist_ok=True)

        self._log("✅ BatchDihedrantSearch inicializado")
        self._log(f"   📁 Carpeta de resultados: {self.output_folder}")

    def _log(self, mensaje: str):
        if self.verbose:
            print(mensaje)

    def add_task(self, p: int, alpha: int, mode: str = 'xx', filtered: bool = False) -> bool:
        """
        Agrega una búsqueda a la cola.

        Returns:
            True si se agregó; False si los datos no son válidos
        """
        if mode not in ('xx', 'xy'):
            self._log(f"⚠️  Modo no soportado: {mode}")
            return False
        if p < 2 or alpha < 1:
            self._log(f"❌ Tarea inválida: p={p}, alpha={alpha}")
            return False
        if filtered and mode != 'xx':
            self._log("⚠️  El modo filtrado solo aplica a búsquedas xx")
            return False

        nombre = f"{p}^{alpha}_{mode}{'_filtered' if filtered else ''}"
        with self.lock:
            self.queue.put({'p': p, 'alpha': alpha, 'mode': mode, 'filtered': filtered, 'name': nombre})
            self.stats['total'] += 1
            self.stats['en_cola'] += 1
        self._log(f"➕ Tarea agregada: {nombre}")
        return True

    def add_tasks_from_spec(self, spec: str) -> int:
        """
        Agrega varias tareas desde texto, una por línea o separadas por comas:
        "3^2", "2^4:xx:filtered", "3^1:xy".

        Returns:
            Cantidad de tareas agregadas
        """
        agregadas = 0
        for token in re.split(r"[,\n]", spec):
            if not token.strip():
                continue
            coincidencia = TASK_PATTERN.match(token)
            if not coincidencia:
                self._log(f"⚠️  Tarea no reconocida: {token.strip()!r}")
                continue
            p, alpha, mode, filtrado = coincidencia.groups()
            if self.add_task(int(p), int(alpha), mode or 'xx', filtrado is not None):
                agregadas += 1
        self._log(f"\n✅ Se agregaron {agregadas} tareas a la cola")
        return agregadas

    def _print_banner(self):
        self._log("\n" + "="*80)
        self._log("🚀 BÚSQUEDA POR LOTES DE DIHEDRANTES FUERTEMENTE REGULARES")
        self._log("="*80)
        self._log(f"   Total en cola: {self.stats['total']}")
        self._log(f"   Inicio: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
        self._log("="*80 + "\n")

    def _print_progress(self, current: int, total: int, task: Dict):
        porcentaje = (current / total * 100) if total > 0 else 0
        self._log(f"\n{'='*80}")
        self._log(f"📊 PROGRESO: {current}/{total} ({porcentaje:.1f}%)")
        self._log(f"   🔎 Tarea actual: {task['name']}")
        self._log(f"   ✅ Exitosas: {self.stats['exitosos']}")
        self._log(f"   ⚠️  Con defectos: {self.stats['con_defectos']}")
        self._log(f"   ❌ Fallidas: {self.stats['fallidos']}")
        self._log(f"   📥 En cola: {self.stats['en_cola']}")
        self._log("="*80)

    def _print_summary(self, tiempo_total: float):
        self._log("\n" + "="*80)
        self._log("✅ PROCESAMIENTO COMPLETADO")
        self._log("="*80)
        self._log(f"   Total procesadas: {self.stats['procesados']}")
        self._log(f"   ✅ Exitosas: {self.stats['exitosos']}")
        self._log(f"   ⚠️  Con defectos: {self.stats['con_defectos']}")
        self._log(f"   ❌ Fallidas: {self.stats['fallidos']}")
        self._log(f"   🧮 Registros: {self.stats['registros']}")
        self._log(f"   Tiempo total: {tiempo_total:.2f}s")
        self._log("="*80 + "\n")

    def _process_single_task(self, task: Dict[str, Any], jobs: Optional[int]) -> Dict[str, Any]:
        resultado = {
            'tarea': task['name'],
            'p': task['p'],
            'alpha': task['alpha'],
            'modo': task['mode'],
            'filtrado': task['filtered'],
            'timestamp': datetime.now().isoformat(),
            'exito': False,
            'registros': [],
            'validacion': {},
            'error': None,
        }
        try:
            registros = self.analyzer.search(task['p'], task['alpha'], task['mode'], task['filtered'], jobs)
            reportes = validate_search(task['p'], task['alpha'], task['mode'], registros)
            resultado['registros'] = [r.to_dict() for r in registros]
            resultado['validacion'] = {nombre: reporte.to_dict() for nombre, reporte in reportes.items()}
            resultado['exito'] = True
            sin_defectos = all(reportes.values())
            with self.lock:
                self.stats['registros'] += len(registros)
                self.stats['exitosos' if sin_defectos else 'con_defectos'] += 1
            if sin_defectos:
                self._log(f"   ✅ {len(registros)} registros, validación sin defectos")
            else:
                self._log("   ⚠️  La validación cruzada encontró defectos")
        except (ValueError, ArithmeticError) as e:
            resultado['error'] = str(e)
            with self.lock:
                self.stats['fallidos'] += 1
            self._log(f"   ❌ Error: {str(e)}")
        return resultado

    def _save_results(self) -> List[str]:
        """Un .jsonl por tarea exitosa y un resumen JSON; devuelve las rutas escritas."""
        if not self.auto_save_results:
            return []

        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        rutas = []
        for resultado in self.results:
            if not resultado['exito']:
                continue
            filepath = os.path.join(self.output_folder, f"busqueda_{resultado['tarea']}_{timestamp}.jsonl")
            try:
                with open(filepath, 'w', encoding='utf-8') as f:
                    for registro in resultado['registros']:
                        f.write(json.dumps(registro, ensure_ascii=False) + "\n")
                rutas.append(filepath)
            except OSError as e:
                self._log(f"❌ No se pudo guardar {filepath}: {str(e)}")

        resumen = {
            'fecha': datetime.now().isoformat(),
            'estadisticas': self.stats,
            'resultados': [
                {clave: valor for clave, valor in resultado.items() if clave != 'registros'}
                for resultado in self.results
            ],
        }
        filepath = os.path.join(self.output_folder, f"resumen_busquedas_{timestamp}.json")
        try:
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(resumen, f, indent=2, ensure_ascii=False)
            self._log(f"💾 Resultados guardados en: {filepath}")
            rutas.append(filepath)
        except OSError as e:
            self._log(f"❌ Error al guardar resultados: {str(e)}")
        return rutas

    def process_queue(self, jobs: Optional[int] = None) -> List[Dict[str, Any]]:
        """
        Procesa todas las tareas de la cola.

        Args:
            jobs: Procesos de trabajo por búsqueda (None toma DSRG_JOBS)

        Returns:
            Lista de resultados por tarea
        """
        if self.is_processing:
            self._log("⚠️  Ya hay un procesamiento en curso")
            return self.results
        if self.queue.empty():
            self._log("⚠️  La cola está vacía. Agrega tareas primero.")
            return self.results

        self.is_processing = True
        try:
            tiempo_inicio = time.time()
            self._print_banner()

            while not self.queue.empty():
                task = self.queue.get()
                with self.lock:
                    self.stats['en_cola'] -= 1
                    self.stats['procesados'] += 1
                self._print_progress(self.stats['procesados'], self.stats['total'], task)
                self.results.append(self._process_single_task(task, jobs))

            self._print_summary(time.time() - tiempo_inicio)
            self._save_results()
        finally:
            self.is_processing = False
        return self.results

    def get_stats(self) -> Dict[str, int]:
        return self.stats.copy()

    def clear_queue(self):
        with self.lock:
            while not self.queue.empty():
                self.queue.get()
            self.stats = _empty_stats()
        self._log("🗑️  Cola limpiada")


# Función simplificada para uso rápido
def procesar_lote(spec: str, jobs: Optional[int] = None, output_folder: Optional[str] = None) -> BatchDihedrantSearch:
    """
    Ejecuta un lote completo descrito como texto, p. ej. "3^2, 2^3, 3^1:xy".
    """
    processor = BatchDihedrantSearch(output_folder=output_folder)
    processor.add_tasks_from_spec(spec)
    processor.process_queue(jobs=jobs)
    return processor


# Ejemplo de uso
if __name__ == "__main__":
    print("\n" + "="*80)
    print("EJEMPLO: Validación de las caracterizaciones a escala de escritorio")
    print("="*80 + "\n")

    processor = procesar_lote("3^2, 2^2, 2^3, 2^4, 3^1:xy")

    print("\n📊 Estadísticas finales:")
    print(json.dumps(processor.get_stats(), indent=2))
