"""
Verification Suite Service (Zig-Zag Bounds)
Oracle-versus-matrix and property suites. Each suite returns per-case rows
and an overall pass flag; nothing here raises on a failed check.
"""

from dataclasses import dataclass, field
from itertools import product
import logging
import time

from services.exact_linalg import mat_pow
from services.oracle import (
    convex_config, count_crossing_free, coverage_census, degree_partition,
    geometric_config, zigzag_outer_config,
)
from services.perron import perron_lower
from services.production import (
    ChainSpec, build_Pprime, build_convex_C, convex_degree_vector,
    is_primitive, outer_degree_vector, pprime_via_leading,
)

logger = logging.getLogger(__name__)

# Covering census as published, t = 1..k.
KNOWN_CENSUS = {
    2: (2, 3),
    3: (3, 7, 11),
    4: (4, 12, 28, 45),
    5: (5, 18, 52, 121, 197),
    6: (6, 25, 84, 237, 550, 903),
}

# Crossing-free graphs on n convex points: 2^(n-1) times the counted total.
KNOWN_CONVEX_TOTALS = {4: 48, 7: 25216}

DEFAULT_MAX_N = {
    'convex': 10,
    'outer': 3,
    'census': 6,
    'swap': 3,
    'lemma2': 64,
    'primitivity': 32,
}


class UnknownSuiteError(ValueError):
    """No verification suite with that name."""


@dataclass
class SuiteReport:
    name: str
    max_n: int
    rows: list = field(default_factory=list)
    duration_ms: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(r['ok'] for r in self.rows)

    def add(self, ok: bool, **details):
        self.rows.append({'ok': bool(ok), **details})
        if not ok:
            logger.warning('⚠️ %s: check failed %s', self.name, details)

    def to_json(self) -> dict:
        return {
            'suite': self.name,
            'max_n': self.max_n,
            'passed': self.passed,
            'rows': self.rows,
        }


# ── Suites ────────────────────────────────────────────────────

def _suite_convex(report: SuiteReport):
    """C^(n-2)·e1 against the brute-force degree partition at p_n."""
    for n in range(3, report.max_n + 1):
        matrix = convex_degree_vector(n)
        oracle = degree_partition(convex_config(n), n)
        ok = matrix == oracle
        total = matrix.total << (n - 1)
        if n in KNOWN_CONVEX_TOTALS:
            ok = ok and total == KNOWN_CONVEX_TOTALS[n]
        if n <= 8:
            naive = count_crossing_free(geometric_config(_parabola_points(n)))
            ok = ok and naive == total
        report.add(ok, n=n, count=matrix.total, total=total, vector=list(matrix.entries))


def _parabola_points(n):
    # Points on the parabola y = x^2 are in convex position with rational coordinates.
    return [(i, i * i) for i in range(n)]


def _suite_outer(report: SuiteReport):
    for k in (1, 2, 3):
        for pockets in range(1, report.max_n + 1):
            z = pockets * (k + 1) + 1
            spec = ChainSpec(k, max(z, k + 2), z)
            matrix = outer_degree_vector(spec)
            oracle = degree_partition(zigzag_outer_config((k,) * pockets), z).padded(spec.m)
            report.add(matrix == oracle, k=k, pockets=pockets, z=z,
                       count=oracle.total, vector=list(oracle.entries))


def _suite_census(report: SuiteReport):
    for k in range(1, report.max_n + 1):
        census = coverage_census(k)
        counts = tuple(census.counts[t] for t in range(1, k + 1))
        ok = k not in KNOWN_CENSUS or counts == KNOWN_CENSUS[k]
        full = count_crossing_free(convex_config(k + 2))
        # Graphs covering every inner point are exactly the diagonal sets of the (k+2)-gon.
        diagonals = count_crossing_free(convex_config(k + 2).without([(1, k + 2)]))
        ok = ok and census.total == full and census.counts[k] == diagonals
        report.add(ok, k=k, counts={str(t): p for t, p in census.counts.items()}, total=census.total)


def _suite_swap(report: SuiteReport):
    sizes = range(1, report.max_n + 1)
    for k1, k2 in product(sizes, sizes):
        if k1 > k2:
            continue
        a = count_crossing_free(zigzag_outer_config((k1, k2)))
        b = count_crossing_free(zigzag_outer_config((k2, k1)))
        report.add(a == b, pockets=[k1, k2], count=a, swapped=b)


def _dims(max_n: int):
    dims = []
    m = 8
    while m <= max_n:
        dims.append(m)
        m *= 2
    return dims


def _suite_lemma2(report: SuiteReport):
    """Counts and certified Perron bounds never decrease with the matrix size."""
    dims = _dims(report.max_n)
    for k in (1, 2, 3):
        dims_k = [m for m in dims if m >= k + 2]
        counts, bounds = [], []
        for m in dims_k:
            counts.append(outer_degree_vector(ChainSpec(k, m, 4 * (k + 1) + 1)).total)
            bounds.append(perron_lower(build_Pprime(k, m), precision=128).lower_bound)
        counts_ok = all(a <= b for a, b in zip(counts, counts[1:]))
        bounds_ok = all(a <= b for a, b in zip(bounds, bounds[1:]))
        report.add(counts_ok and bounds_ok, k=k, dims=dims_k, counts=counts,
                   bounds=[f'{float(b):.12g}' for b in bounds])
    convex = [perron_lower(build_convex_C(m), precision=128).lower_bound for m in dims]
    ceiling = 6 + 4 * 2 ** 0.5
    ok = all(a <= b for a, b in zip(convex, convex[1:])) and all(float(b) < ceiling for b in convex)
    report.add(ok, matrix='C', dims=dims, bounds=[f'{float(b):.12g}' for b in convex])


def _suite_primitivity(report: SuiteReport):
    for k in range(1, 7):
        for m in _dims(report.max_n):
            if m < k + 2:
                continue
            result = is_primitive(build_Pprime(k, m))
            ok = result.primitive and result.exponent <= m
            if m <= 16:
                ok = ok and build_Pprime(k, m) == pprime_via_leading(k, m)
            if ok and m <= 16:
                power = mat_pow(build_Pprime(k, m), result.exponent)
                ok = all(v > 0 for row in power.numerators for v in row)
            report.add(ok, k=k, m=m, exponent=result.exponent)


SUITES = {
    'convex': _suite_convex,
    'outer': _suite_outer,
    'census': _suite_census,
    'swap': _suite_swap,
    'lemma2': _suite_lemma2,
    'primitivity': _suite_primitivity,
}


def run_suite(name: str, max_n: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite '{name}'; choose from {', '.join(SUITES)}")
    max_n = DEFAULT_MAX_N[name] if max_n is None else int(max_n)
    if max_n < 1:
        raise ValueError('max_n must be positive')
    report = SuiteReport(name, max_n)
    started = time.perf_counter()
    SUITES[name](report)
    report.duration_ms = int((time.perf_counter() - started) * 1000)
    logger.info('suite %s: %s (%d rows)', name, 'passed' if report.passed else 'FAILED', len(report.rows))
    return report
