"""
Bound Report Service (Zig-Zag Bounds)
Composes the outer-part Perron certificate and the inner-part entropy bound
into the per-point base of the whole double chain, and regenerates the
covering census table with its inner and total lines.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging

from mpmath import mp, mpf

from services.inner_bound import maximize, mixed_inner_log2
from services.numerics import bits_for_digits, floor_fraction, format_floor, rational_root_floor
from services.oracle import CoverageCensus, coverage_census
from services.perron import PerronCertificate, perron_lower
from services.production import InvalidChainError, build_Pprime, mixed_pocket_product

logger = logging.getLogger(__name__)

SUPPORTED_K = range(1, 7)

# Floors of the published inner and total lines, k = 2..6.
TABLE1_INNER = {2: '4.18', 3: '4.39', 4: '4.55', 5: '4.67', 6: '4.77'}
TABLE1_TOTALS = {2: '41.77', 3: '42.01', 4: '42.10', 5: '42.11', 6: '42.09'}

# Each chain edge may be present or not.
CHAIN_EDGE_FACTOR = 2


@dataclass(frozen=True)
class BoundReport:
    k: int
    pockets: tuple
    matrix_dim: int
    precision_digits: int
    perron: PerronCertificate
    inner: dict
    perron_root: Fraction = field(repr=False)
    inner_base: Fraction = field(repr=False)
    total: Fraction = field(repr=False)
    digits: int = 10

    @property
    def cycle_length(self) -> int:
        return sum(k + 1 for k in self.pockets)

    @property
    def total_base(self) -> str:
        return format_floor(self.total, self.digits)

    def to_json(self) -> dict:
        return {
            'k': self.k,
            'pockets': list(self.pockets),
            'matrix_dim': self.matrix_dim,
            'precision_digits': self.precision_digits,
            'perron': self.perron.to_json(self.digits),
            'perron_root': format_floor(self.perron_root, self.digits),
            'inner': {str(k): r.to_json() for k, r in sorted(self.inner.items())},
            'inner_base': format_floor(self.inner_base, self.digits),
            'total_base': self.total_base,
        }


@dataclass(frozen=True)
class Table1:
    ks: tuple
    census: dict
    inner: dict
    totals: dict

    def to_json(self) -> dict:
        return {
            'ks': list(self.ks),
            'census': {str(k): self.census[k].to_json() for k in self.ks},
            'inner': {str(k): self.inner[k].base for k in self.ks},
            'total': {str(k): self.totals[k].total_base for k in self.ks if k in self.totals},
        }

    def render(self) -> str:
        """Plain-text table: one column per k, one row per covered count t."""
        width = 14
        head = ''.join(f'Z{k}'.rjust(width) for k in self.ks)
        lines = ['t'.ljust(4) + head, '-' * (4 + width * len(self.ks))]
        for t in range(1, max(self.ks) + 1):
            cells = ''.join((str(self.census[k].counts[t]) if t <= k else '–').rjust(width) for k in self.ks)
            lines.append(str(t).ljust(4) + cells)
        lines.append('-' * (4 + width * len(self.ks)))
        lines.append('in'.ljust(4) + ''.join(self.inner[k].base.rjust(width) for k in self.ks))
        if self.totals:
            lines.append('all'.ljust(4) + ''.join(
                (self.totals[k].total_base if k in self.totals else '–').rjust(width) for k in self.ks))
        return '\n'.join(lines)


def _check_pockets(pockets):
    pockets = tuple(int(k) for k in pockets)
    if not pockets:
        raise InvalidChainError('need at least one pocket size')
    bad = [k for k in pockets if k not in SUPPORTED_K]
    if bad:
        raise InvalidChainError(f'pocket sizes must lie in 1..6, got {bad}')
    return pockets


def inner_results(ks, tolerance: float = 1e-12, restarts: int = 8, seed: int = 2018,
                  digits: int = 10, census: dict | None = None) -> dict:
    """maximize() for every distinct pocket size, computing censuses on demand."""
    census = dict(census or {})
    results = {}
    for k in sorted(set(ks)):
        table = census.get(k) or coverage_census(k)
        results[k] = maximize(k, table, tolerance=tolerance, restarts=restarts, seed=seed, digits=digits)
    return results


def cmd_total(k: int, m: int, precision_digits: int = 20, pockets=None, digits: int = 10,
              max_iter: int = 60, inner: dict | None = None, **inner_options) -> BoundReport:
    """Certified per-point base 2 · λ^(1/(k+1)) · inner for the chain Z_k.

    ``pockets`` replaces the uniform chain by a repeating cycle of pocket
    sizes; its outer part then grows by the Perron root of the cycle's
    product matrix per cycle.
    """
    pockets = _check_pockets(pockets if pockets else (k,))
    if m < max(pockets) + 2:
        raise InvalidChainError(f'matrix dimension {m} is below k+2 = {max(pockets) + 2}')
    bits = bits_for_digits(precision_digits)
    logger.info('bound report for pockets %s at m=%d, %d digits', pockets, m, precision_digits)

    matrix = build_Pprime(pockets[0], m) if len(pockets) == 1 else mixed_pocket_product(pockets, m)
    perron = perron_lower(matrix, precision=bits, max_iter=max_iter)
    cycle = sum(p + 1 for p in pockets)
    root = rational_root_floor(perron.lower_bound, cycle, digits=digits + 10)

    if inner is None:
        inner = inner_results(pockets, digits=digits, **inner_options)
    else:
        inner = {p: inner[p] for p in set(pockets)}
    if len(set(pockets)) == 1:
        inner_base = inner[pockets[0]].base_floor
    else:
        with mp.workdps(digits + 30):
            inner_base = floor_fraction(mpf(2) ** mixed_inner_log2(inner, pockets), digits + 10)

    total = floor_fraction(CHAIN_EDGE_FACTOR * root * inner_base, digits + 10)
    report = BoundReport(k, pockets, m, precision_digits, perron, inner, root, inner_base, total, digits)
    logger.info('✅ total base for pockets %s: %s', pockets, report.total_base)
    return report


def cmd_table1(ks=range(2, 7), m: int = 1024, precision_digits: int = 20, digits: int = 10,
               with_totals: bool = True, **inner_options) -> Table1:
    """Census rows, inner line and (optionally) total line for each k."""
    ks = tuple(sorted(set(int(k) for k in ks)))
    if not ks or any(k not in range(2, 7) for k in ks):
        raise InvalidChainError(f'table rows exist for k = 2..6, got {list(ks)}')
    census = {k: coverage_census(k) for k in ks}
    inner = inner_results(ks, digits=digits, census=census, **inner_options)
    totals = {}
    if with_totals:
        for k in ks:
            totals[k] = cmd_total(k, m, precision_digits, digits=digits, inner=inner)
    return Table1(ks, census, inner, totals)


def census_table(k: int) -> CoverageCensus:
    if k not in SUPPORTED_K:
        raise InvalidChainError(f'census is exposed for k = 1..6, got {k}')
    return coverage_census(k)


def parse_int_list(text) -> list:
    """'2-6' or '2,3,5' as a list of integers."""
    values = []
    for part in str(text).split(','):
        part = part.strip()
        if not part:
            continue
        if '-' in part:
            lo, hi = part.split('-', 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f'empty integer list {text!r}')
    return values
