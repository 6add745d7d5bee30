"""
Línea de comandos del analizador de dihedrantes.
Subcomandos: verify, params, construct, enumerate, analyze, search, complement, canon.
Códigos de salida: 0 éxito, 1 "no es DSRG" o instancia inválida, 2 error de uso.
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from components.constructions import CLI_FAMILIES, InadmissibleInstance
from components.dsrg_core import DsrgParams
from components.search import validate_search
from main import DihedrantAnalyzer

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _emit_json(datos: Any):
    print(json.dumps(datos, ensure_ascii=False))


def _emit_lines(registros: List[Dict[str, Any]], destino: Optional[str] = None):
    lineas = [json.dumps(r, ensure_ascii=False) for r in registros]
    if destino:
        with open(destino, 'w', encoding='utf-8') as f:
            for linea in lineas:
                f.write(linea + "\n")
    else:
        for linea in lineas:
            print(linea)


def _params_text(datos: Dict[str, Any]) -> str:
    p = datos["params"]
    return f"({p['v']},{p['k']},{p['mu']},{p['lambda']},{p['t']})"


def _cmd_verify(analyzer: DihedrantAnalyzer, args) -> int:
    resultado = analyzer.verify(args.n, args.x, args.y)
    if args.format == 'json':
        _emit_json(resultado)
    elif resultado["is_dsrg"]:
        genuino = "" if resultado["genuine"] else " (no genuino)"
        print(f"{_params_text(resultado)}{genuino}")
    else:
        print(f"not a DSRG: {resultado['failure']}")
    return EXIT_OK if resultado["is_dsrg"] else EXIT_NEGATIVE


def _cmd_params(analyzer: DihedrantAnalyzer, args) -> int:
    resultado = analyzer.evaluate_params(DsrgParams(args.v, args.k, args.mu, args.lam, args.t))
    if args.format == 'json':
        _emit_json(resultado)
    elif resultado["feasible"]:
        e = resultado["spectrum"]
        print(f"feasible {_params_text(resultado)}")
        print(f"spectrum: k={e['k']}, rho={e['rho']} (m={e['m_rho']}), sigma={e['sigma']} (m={e['m_sigma']})")
    else:
        print(f"infeasible {_params_text(resultado)}: {resultado['reason']}")
    return EXIT_OK if resultado["feasible"] else EXIT_NEGATIVE


def _cmd_construct(analyzer: DihedrantAnalyzer, args) -> int:
    try:
        resultado = analyzer.build(args.family, args.n, args.v, args.h)
    except InadmissibleInstance as e:
        print(str(e), file=sys.stderr)
        return EXIT_NEGATIVE
    if args.format == 'json':
        _emit_json(resultado)
    else:
        print(f"Dih({resultado['n']},{{{','.join(map(str, resultado['X']))}}},"
              f"{{{','.join(map(str, resultado['Y']))}}}) {_params_text(resultado)}")
    return EXIT_OK


def _cmd_enumerate(analyzer: DihedrantAnalyzer, args) -> int:
    _emit_lines(analyzer.enumerate(args.family, args.n, args.v), args.out)
    return EXIT_OK


def _cmd_analyze(analyzer: DihedrantAnalyzer, args) -> int:
    _emit_json(analyzer.analyze(args.n, args.x, args.y))
    return EXIT_OK


def _cmd_search(analyzer: DihedrantAnalyzer, args) -> int:
    if args.filtered and args.mode != 'xx':
        raise ValueError("❌ --filtered solo aplica a --mode xx")
    registros = analyzer.search(args.p, args.alpha, args.mode, args.filtered, args.jobs)
    _emit_lines([r.to_dict() for r in registros], args.out)
    if args.validate:
        reportes = validate_search(args.p, args.alpha, args.mode, registros)
        resumen = {nombre: {"ok": r.ok, "checked": r.checked, "failing": len(r.failing), "missing": len(r.missing)}
                   for nombre, r in reportes.items()}
        print(json.dumps({"validation": resumen}, ensure_ascii=False), file=sys.stderr)
        if not all(reportes.values()):
            return EXIT_NEGATIVE
    return EXIT_OK


def _cmd_complement(analyzer: DihedrantAnalyzer, args) -> int:
    resultado = analyzer.complement(args.n, args.x, args.y)
    _emit_json(resultado)
    return EXIT_OK if resultado["is_dsrg"] else EXIT_NEGATIVE


def _cmd_canon(analyzer: DihedrantAnalyzer, args) -> int:
    _emit_json(analyzer.canon(args.n, args.x, args.y, shifts=not args.no_shifts))
    return EXIT_OK


def _add_format(parser: argparse.ArgumentParser, defecto: str):
    parser.add_argument('--format', choices=('json', 'text'), default=defecto)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dsrg-dihedrants',
        description='Verificación, construcción y búsqueda de dihedrantes fuertemente regulares dirigidos',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('verify', help='Verifica Dih(n, X, Y)')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--x', default='', help='Rotaciones, p. ej. "1,4,7"')
    p.add_argument('--y', default='', help='Reflexiones')
    _add_format(p, 'text')
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser('params', help='Factibilidad y espectro de (v, k, mu, lambda, t)')
    for nombre in ('v', 'k', 'mu', 't'):
        p.add_argument(f'--{nombre}', type=int, required=True)
    p.add_argument('--lambda', dest='lam', type=int, required=True)
    _add_format(p, 'text')
    p.set_defaults(handler=_cmd_params)

    p = sub.add_parser('construct', help='Construye una instancia de familia')
    p.add_argument('--family', choices=sorted(CLI_FAMILIES), required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--v', type=int)
    p.add_argument('--h', default='', help='H ⊆ Z_v (o X ⊆ Z_n para t11 y t13)')
    _add_format(p, 'json')
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser('enumerate', help='Todas las instancias admisibles de una familia (JSON lines)')
    p.add_argument('--family', choices=sorted(CLI_FAMILIES), required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--v', type=int)
    p.add_argument('--out')
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser('analyze', help='Estructura de X (y de Y)')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--x', default='')
    p.add_argument('--y')
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser('search', help='Búsqueda exhaustiva sobre Z_{p^alpha} (JSON lines)')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--alpha', type=int, required=True)
    p.add_argument('--mode', choices=('xx', 'xy'), default='xx')
    p.add_argument('--filtered', action='store_true')
    p.add_argument('--jobs', type=int)
    p.add_argument('--out')
    p.add_argument('--validate', action='store_true', help='Contrasta con la caracterización correspondiente')
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser('complement', help='Complemento de Dih(n, X, Y)')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--x', default='')
    p.add_argument('--y', default='')
    p.set_defaults(handler=_cmd_complement)

    p = sub.add_parser('canon', help='Forma canónica bajo (X, Y) -> (bX, b\' + bY)')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--x', default='')
    p.add_argument('--y', default='')
    p.add_argument('--no-shifts', action='store_true', help='Solo multiplicadores b')
    p.set_defaults(handler=_cmd_canon)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ejecuta un subcomando y devuelve el código de salida.

    Args:
        argv: Argumentos sin el nombre del programa (None usa sys.argv)

    Returns:
        0, 1 o 2 según el contrato de códigos de salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    # La salida JSON va sola a stdout
    analyzer = DihedrantAnalyzer(verbose=False)
    try:
        return args.handler(analyzer, args)
    except ValueError as e:
        mensaje = str(e)
        print(mensaje if mensaje.startswith("❌") else f"❌ {mensaje}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
