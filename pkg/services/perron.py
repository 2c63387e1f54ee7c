"""
Perron Root Service (Zig-Zag Bounds)
High-precision Perron vector iteration and exact Collatz-Wielandt
certificates: for a nonnegative matrix A and a positive vector x,
min_i (Ax)_i / x_i never exceeds the spectral radius.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm, log
from operator import mul
import hashlib
import logging

from mpmath import mp, mpf
import numpy as np

from services.exact_linalg import ExactMatrix
from services.numerics import format_floor, golden_section_max, mpf_to_fraction
from services.production import is_primitive

logger = logging.getLogger(__name__)


class NotPrimitiveError(ValueError):
    """The matrix has no entrywise positive power."""


class CertificationError(ArithmeticError):
    """A witness vector cannot certify a bound."""


class _Breakdown(ArithmeticError):
    pass


@dataclass(frozen=True)
class PowerIterationResult:
    estimate: mpf
    vector: tuple
    iterations: int
    converged: bool
    ratio_gap: mpf


@dataclass(frozen=True)
class PerronCertificate:
    lower_bound: Fraction
    witness: tuple
    float_estimate: mpf
    iterations: int
    precision: int
    dim: int

    @property
    def witness_digest(self) -> str:
        h = hashlib.sha256()
        for v in self.witness:
            h.update(f'{v.numerator}/{v.denominator}\n'.encode())
        return h.hexdigest()

    def to_json(self, digits: int = 10) -> dict:
        with mp.workprec(self.precision):
            estimate = mp.nstr(self.float_estimate, digits + 5)
        return {
            'lower_bound': f'{self.lower_bound.numerator}/{self.lower_bound.denominator}',
            'lower_bound_decimal': format_floor(self.lower_bound, digits),
            'float_estimate': estimate,
            'iterations': self.iterations,
            'precision_bits': self.precision,
            'dim': self.dim,
            'witness_digest': self.witness_digest,
        }


def _scaled_ints(vec):
    """Positive mpf coordinates as integers over one power of two."""
    parts = []
    for v in vec:
        if not v > 0:
            raise CertificationError(f'witness coordinate {v} is not positive')
        man, exp = v.man_exp
        parts.append((int(man), int(exp)))
    low = min(exp for _, exp in parts)
    return [man << (exp - low) for man, exp in parts]


def _ratios(a: ExactMatrix, vec):
    """Collatz-Wielandt quotients (Ax)_i / x_i at the working precision."""
    xs = _scaled_ints(vec)
    den = mpf(a.denominator)
    return [mpf(sum(map(mul, row, xs))) / (mpf(x) * den) for row, x in zip(a.numerators, xs)]


def _normalised(vec):
    top = max(vec)
    return [v / top for v in vec]


def _rayleigh(vec, ratios):
    ax = [r * v for r, v in zip(ratios, vec)]
    return mp.fdot(vec, ax) / mp.fdot(vec, vec)


def _geometric_start(a: ExactMatrix):
    """x_j = c^j with c minimising the largest float Collatz-Wielandt quotient."""
    m = a.dim
    try:
        dense = np.array(a.numerators, dtype=float) / a.denominator
    except OverflowError:
        return [mpf(1)] * m
    offsets = np.subtract.outer(np.arange(m), np.arange(m)).T
    support = dense > 0

    def worst(log_c):
        with np.errstate(over='ignore', under='ignore', invalid='ignore'):
            weights = np.where(support, np.exp(offsets * log_c), 0.0)
            ratios = (dense * weights).sum(axis=1)
        top = ratios.max()
        return -float(top) if np.isfinite(top) else -np.inf

    log_c, score = golden_section_max(worst, log(1e-3), 0.0, tol=1e-10, max_iter=80)
    if score < worst(0.0):
        log_c = 0.0
    logger.debug('geometric warm start c=%.6g, largest quotient %.12g', np.exp(log_c), -score)
    c = mp.exp(mpf(log_c))
    return [c ** j for j in range(m)]


def _shifted_solve(a: ExactMatrix, sigma, rhs):
    """Solve (sigma·I - A) y = rhs by unpivoted LU, streamed row by row.

    sigma above the Perron root makes the system a nonsingular M-matrix, so
    every pivot stays positive and no pivoting is needed.
    """
    m = a.dim
    den = a.denominator
    nil = mpf(0)
    upper = []
    forward = []
    for r, nums in enumerate(a.numerators):
        first = min(next((j for j, v in enumerate(nums) if v), r), r)
        if den == 1:
            row = [mpf(-v) if v else nil for v in nums]
        else:
            row = [mpf(-v) / den if v else nil for v in nums]
        row[r] += sigma
        zr = rhs[r]
        for c in range(first, r):
            lead = row[c]
            if not lead:
                continue
            uc = upper[c]
            f = lead / uc[0]
            row[c + 1:] = [x - f * u for x, u in zip(row[c + 1:], uc[1:])]
            zr -= f * forward[c]
        if not row[r] > 0:
            raise _Breakdown(f'non-positive pivot at row {r}')
        upper.append(row[r:])
        forward.append(zr)
    y = [None] * m
    for r in range(m - 1, -1, -1):
        ur = upper[r]
        tail = mp.fdot(ur[1:], y[r + 1:]) if r + 1 < m else 0
        y[r] = (forward[r] - tail) / ur[0]
    return y


def power_iteration(a: ExactMatrix, precision: int = 128, max_iter: int = 60,
                    shifted: bool = True) -> PowerIterationResult:
    """Approximate Perron root and vector of a nonnegative primitive matrix.

    The default shifted mode is Noda's inverse iteration: each step solves
    with the largest current quotient as shift. ``shifted=False`` runs plain
    power iteration. Stops when the quotient spread or successive Rayleigh
    estimates fall below 2^(-precision/2).
    """
    if not a.is_nonnegative():
        raise ValueError('power iteration needs a nonnegative matrix')
    with mp.workprec(precision):
        tol = mpf(2) ** (-(precision // 2))
        bump = mpf(2) ** (-(precision - 24))
        x = _normalised(_geometric_start(a) if shifted else [mpf(1)] * a.dim)
        ratios = _ratios(a, x)
        estimate = _rayleigh(x, ratios)
        gap = (max(ratios) - min(ratios)) / max(ratios)
        converged = gap <= tol
        iterations = 0
        while not converged and iterations < max_iter:
            iterations += 1
            try:
                if shifted:
                    y = _shifted_solve(a, max(ratios) * (1 + bump), x)
                else:
                    y = [r * v for r, v in zip(ratios, x)]
            except _Breakdown as e:
                logger.warning('⚠️ shifted solve broke down (%s); keeping best-so-far', e)
                break
            if min(y) <= 0:
                logger.warning('⚠️ iterate lost positivity after %d steps; keeping best-so-far', iterations)
                break
            x = _normalised(y)
            ratios = _ratios(a, x)
            previous, estimate = estimate, _rayleigh(x, ratios)
            gap = (max(ratios) - min(ratios)) / max(ratios)
            logger.debug('step %d: estimate %s, quotient spread %s', iterations,
                         mp.nstr(estimate, 20), mp.nstr(gap, 5))
            converged = gap <= tol or abs(estimate - previous) <= tol * estimate
        if not converged:
            logger.warning('⚠️ power iteration did not converge in %d steps (spread %s)',
                           max_iter, mp.nstr(gap, 5))
        return PowerIterationResult(estimate, tuple(x), iterations, converged, gap)


def certify_lower_bound(a: ExactMatrix, x) -> Fraction:
    """min_i (Ax)_i / x_i, computed exactly."""
    if not a.is_nonnegative():
        raise ValueError('Collatz-Wielandt bounds need a nonnegative matrix')
    xs = [Fraction(v) for v in x]
    if len(xs) != a.dim:
        raise ValueError(f'witness of length {len(xs)} for a {a.dim}x{a.dim} matrix')
    if any(v <= 0 for v in xs):
        raise CertificationError('witness must be strictly positive')
    den = reduce(lcm, (v.denominator for v in xs), 1)
    ints = [v.numerator * (den // v.denominator) for v in xs]
    return min(Fraction(sum(map(mul, row, ints)), xi * a.denominator)
               for row, xi in zip(a.numerators, ints))


def column_sum_upper_bound(a: ExactMatrix) -> Fraction:
    """Largest column sum; an upper bound on the spectral radius of a nonnegative matrix."""
    return Fraction(max(sum(col) for col in zip(*a.numerators)), a.denominator)


def perron_lower(a: ExactMatrix, precision: int = 128, max_iter: int = 60,
                 retries: int = 2) -> PerronCertificate:
    """Certified rational lower bound on the Perron root of a primitive matrix."""
    if not a.is_nonnegative():
        raise ValueError('Perron bounds need a nonnegative matrix')
    primitive = is_primitive(a)
    if not primitive:
        raise NotPrimitiveError('matrix is not primitive')
    logger.info('primitive with exponent %d; iterating at %d bits', primitive.exponent, precision)
    bits = precision
    for attempt in range(retries + 1):
        result = power_iteration(a, bits, max_iter)
        witness = tuple(mpf_to_fraction(v) for v in result.vector)
        bound = certify_lower_bound(a, witness)
        with mp.workprec(bits):
            lag = (result.estimate - mpf(bound.numerator) / bound.denominator) / result.estimate
            slack = mpf(2) ** (-(bits // 2) + 8)
        if lag <= slack or attempt == retries:
            break
        logger.warning('⚠️ certified bound trails the estimate by %s; retrying at %d bits',
                       mp.nstr(lag, 5), 2 * bits)
        bits *= 2
    logger.info('✅ certified lower bound %s after %d steps', format_floor(bound, 12), result.iterations)
    return PerronCertificate(bound, witness, result.estimate, result.iterations, bits, a.dim)
