"""
Command Line — Zig-Zag Bounds
Usable standalone (python cli.py total --k 5) or as `flask bounds ...`.
"""

import json
import logging
import sys

import click

from config import Config
from services.production import MATRIX_BUILDERS, convex_degree_vector
from services.report_service import census_table, cmd_table1, cmd_total, parse_int_list
from services.verify_service import SUITES, run_suite

EXIT_FAILED = 1


def _int_list(ctx, param, value):
    if value is None:
        return None
    try:
        values = parse_int_list(value)
    except ValueError:
        raise click.BadParameter(f'expected integers like 2,3 or 2-6, got {value!r}')
    if not values:
        raise click.BadParameter('expected at least one integer')
    return values


def _emit(data, as_json, text=None):
    if as_json or text is None:
        click.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        click.echo(text)


def _run(fn, *args, **kwargs):
    """Call into the services, turning invalid arguments into usage errors."""
    try:
        return fn(*args, **kwargs)
    except ValueError as e:
        raise click.UsageError(str(e))


@click.group()
@click.option('--log-level', default=Config.LOG_LEVEL, show_default=True,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False))
def bounds(log_level):
    """Certified lower bounds for crossing-free graphs on double zig-zag chains."""
    logging.basicConfig(level=log_level.upper(), stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


@bounds.command()
@click.option('--k', type=click.IntRange(1, 6), default=5, show_default=True, help='pocket size')
@click.option('--size', type=click.IntRange(3), default=Config.MATRIX_SIZE, show_default=True,
              help='production matrix dimension')
@click.option('--precision', type=click.IntRange(5), default=Config.PRECISION_DIGITS,
              show_default=True, help='decimal digits of working precision')
@click.option('--pockets', callback=_int_list, default=None,
              help='repeating cycle of pocket sizes, e.g. 2,3')
@click.option('--json/--table', 'as_json', default=True, help='output format')
def total(k, size, precision, pockets, as_json):
    """Total base 2 · λ^(1/(k+1)) · inner, rounded down."""
    report = _run(cmd_total, k, size, precision, pockets=pockets, digits=Config.REPORT_DIGITS,
                  max_iter=Config.PERRON_MAX_ITER, **Config.inner_options())
    data = report.to_json()
    text = '\n'.join([
        f"pockets         {','.join(map(str, report.pockets))}",
        f"matrix size     {report.matrix_dim}",
        f"perron bound    {data['perron']['lower_bound_decimal']}",
        f"perron estimate {data['perron']['float_estimate']}",
        f"outer per point {data['perron_root']}",
        f"inner per point {data['inner_base']}",
        f"total base      {data['total_base']}",
    ])
    _emit(data, as_json, text)


@bounds.command()
@click.argument('suite', type=click.Choice(list(SUITES)))
@click.option('--max-n', type=click.IntRange(1), default=None, help='suite size limit')
@click.option('--json/--table', 'as_json', default=False, help='output format')
def verify(suite, max_n, as_json):
    """Run a verification suite; exit status 1 on any failed check."""
    report = _run(run_suite, suite, max_n)
    lines = []
    for row in report.rows:
        mark = '✅' if row['ok'] else '❌'
        details = ' '.join(f'{key}={value}' for key, value in row.items() if key != 'ok')
        lines.append(f'{mark} {details}')
    lines.append(f"{suite}: {'passed' if report.passed else 'FAILED'} ({report.duration_ms} ms)")
    if suite == 'census' and report.passed and not as_json and report.max_n >= 2:
        table = cmd_table1(range(2, min(report.max_n, 6) + 1), with_totals=False, **Config.inner_options())
        lines.append(table.render())
    _emit(report.to_json(), as_json, '\n'.join(lines))
    if not report.passed:
        sys.exit(EXIT_FAILED)


@bounds.command()
@click.option('--ks', callback=_int_list, default='2-6', show_default=True)
@click.option('--size', type=click.IntRange(8), default=Config.MATRIX_SIZE, show_default=True)
@click.option('--precision', type=click.IntRange(5), default=Config.PRECISION_DIGITS, show_default=True)
@click.option('--totals/--no-totals', default=True, help='also certify the total line')
@click.option('--json/--table', 'as_json', default=False, help='output format')
def table1(ks, size, precision, totals, as_json):
    """Covering census with inner and total lines."""
    table = _run(cmd_table1, ks, size, precision, digits=Config.REPORT_DIGITS,
                 with_totals=totals, **Config.inner_options())
    _emit(table.to_json(), as_json, table.render())


@bounds.command()
@click.argument('k', type=int)
def census(k):
    """Covering census of a pocket with K inner points (JSON)."""
    _emit(_run(census_table, k).to_json(), True)


@bounds.command()
@click.argument('name', type=click.Choice(list(MATRIX_BUILDERS)))
@click.option('--k', type=click.IntRange(1, 6), default=2, show_default=True)
@click.option('--size', type=click.IntRange(1, 256), default=8, show_default=True)
def matrix(name, k, size):
    """A production matrix as JSON with num/den entries."""
    _emit({'name': name, 'k': k, **_run(MATRIX_BUILDERS[name], k, size).to_json()}, True)


@bounds.command()
@click.argument('n', type=click.IntRange(2))
def convex(n):
    """Degree vector of graphs on N convex points without consecutive edges."""
    vec = _run(convex_degree_vector, n)
    _emit({'n': n, **vec.to_json(), 'all_graphs': vec.total << (n - 1)}, True)


if __name__ == '__main__':
    bounds()
