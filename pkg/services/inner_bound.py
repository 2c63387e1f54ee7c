"""
Inner Bound Service (Zig-Zag Bounds)
Entropy objective over pocket covering profiles and its maximisation.

A profile gives, for each t = 1..k, the fraction alpha_t of pockets with
exactly t covered inner points. Uncovered points behave like a double chain
with per-point base D = (10+7*sqrt(2))/(3+2*sqrt(2)).
"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
import random

from mpmath import mp, mpf

from services.numerics import floor_fraction, format_floor, golden_section_max, project_capped_simplex
from services.oracle import CoverageCensus

logger = logging.getLogger(__name__)

MIN_DPS = 30
_SLACK = 1e-12


class InvalidProfileError(ValueError):
    """Covering fractions outside the feasible region."""


@dataclass(frozen=True)
class CoverageProfile:
    k: int
    alpha: dict

    def __post_init__(self):
        alpha = {int(t): v for t, v in self.alpha.items()}
        if any(t < 1 or t > self.k for t in alpha):
            raise InvalidProfileError(f'covering counts must lie in 1..{self.k}')
        if any(v < 0 for v in alpha.values()):
            raise InvalidProfileError('covering fractions must be nonnegative')
        if sum(alpha.values()) > 1 + _SLACK:
            raise InvalidProfileError('covering fractions sum to more than 1')
        if sum(t * v for t, v in alpha.items()) > self.k + _SLACK:
            raise InvalidProfileError('coverage exceeds pocket capacity')
        object.__setattr__(self, 'alpha', {t: alpha.get(t, 0) for t in range(1, self.k + 1)})

    @classmethod
    def zero(cls, k: int) -> 'CoverageProfile':
        return cls(k, {})

    def as_list(self) -> list:
        return [float(self.alpha[t]) for t in range(1, self.k + 1)]

    @property
    def uncovered_fraction(self):
        return 1 - sum(t * v for t, v in self.alpha.items()) / (self.k + 1)


@dataclass(frozen=True)
class InnerBoundResult:
    k: int
    profile: CoverageProfile
    log2_base: mpf
    base: str
    base_floor: Fraction = field(repr=False)

    def to_json(self) -> dict:
        return {
            'k': self.k,
            'alpha': {str(t): mp.nstr(mpf(v), 17) for t, v in sorted(self.profile.alpha.items(), reverse=True)},
            'log2_base': mp.nstr(self.log2_base, 25),
            'base': self.base,
        }


def entropy(x):
    """Binary entropy in bits, with 0·log 0 = 0."""
    x = mpf(x) if not isinstance(x, Fraction) else mpf(x.numerator) / x.denominator
    if x < 0 or x > 1:
        raise ValueError(f'entropy is defined on [0, 1], got {x}')
    if x == 0 or x == 1:
        return mpf(0)
    return -x * mp.log(x, 2) - (1 - x) * mp.log(1 - x, 2)


def _entropy_float(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def double_chain_base(dps: int = MIN_DPS):
    """(10+7√2)/(3+2√2), which equals 2+√2."""
    with mp.workdps(dps):
        root2 = mp.sqrt(2)
        return (10 + 7 * root2) / (3 + 2 * root2)


def _census_counts(k: int, census: CoverageCensus):
    if census.k != k:
        raise InvalidProfileError(f'census is for k={census.k}, profile for k={k}')
    return [census.counts.get(t, 0) for t in range(k + 1)]


def objective(k: int, census: CoverageCensus, profile: CoverageProfile, dps: int = MIN_DPS):
    """log2 of the per-point base for a covering profile."""
    if profile.k != k:
        raise InvalidProfileError(f'profile is for k={profile.k}, expected {k}')
    counts = _census_counts(k, census)
    with mp.workdps(max(dps, MIN_DPS)):
        log_d = mp.log(double_chain_base(max(dps, MIN_DPS)), 2)
        remaining = mpf(1)
        xi = mpf(0)
        covered = mpf(0)
        for t in range(k, 0, -1):
            a = mpf(profile.alpha[t])
            if a > 0:
                if counts[t] <= 0:
                    raise InvalidProfileError(f'no pocket graph covers exactly {t} points')
                if a > remaining:
                    if a - remaining > _SLACK:
                        raise InvalidProfileError('covering fractions sum to more than 1')
                    a = remaining
                xi += entropy(a / remaining) * remaining + mp.log(counts[t], 2) * a
            remaining -= a
            covered += t * a
        return xi / (k + 1) + (1 - covered / (k + 1)) * log_d


def _objective_float(alpha, log_counts, log_d, k):
    remaining = 1.0
    xi = 0.0
    covered = 0.0
    for t in range(k, 0, -1):
        a = alpha[t - 1]
        if a > 0.0:
            if a > remaining:
                return -math.inf
            xi += _entropy_float(a / remaining) * remaining + log_counts[t] * a
        remaining -= a
        covered += t * a
    return xi / (k + 1) + (1.0 - covered / (k + 1)) * log_d


def _coordinate_ascent(start, f, k, tolerance, max_sweeps=2000):
    alpha = list(start)
    value = f(alpha)
    for sweep in range(max_sweeps):
        before = value
        for i in range(k):
            cap = max(0.0, 1.0 - (sum(alpha) - alpha[i]))

            def along(x, i=i):
                trial = alpha[:]
                trial[i] = x
                return f(trial)

            x, fx = golden_section_max(along, 0.0, cap, tol=tolerance)
            if fx >= value:
                alpha[i], value = x, fx
        if value - before <= tolerance * max(1.0, abs(value)):
            return alpha, value, sweep + 1
    return alpha, value, max_sweeps


def _result(k, census, alpha, dps, digits) -> InnerBoundResult:
    profile = CoverageProfile(k, {t: alpha[t - 1] for t in range(1, k + 1)})
    with mp.workdps(max(dps, MIN_DPS)):
        log2_base = objective(k, census, profile, dps)
        value = mpf(2) ** log2_base
        base = format_floor(value, digits)
        floor = floor_fraction(value, digits + 10)
    return InnerBoundResult(k, profile, log2_base, base, floor)


def maximize(k: int, census: CoverageCensus, tolerance: float = 1e-12, restarts: int = 8,
             seed: int = 2018, dps: int = MIN_DPS, digits: int = 10) -> InnerBoundResult:
    """Best covering profile over deterministic starts, evaluated in high precision.

    Any feasible profile is a valid construction, so the returned base is a
    lower bound whether or not the optimum was reached.
    """
    if tolerance <= 0:
        raise ValueError('tolerance must be positive')
    counts = _census_counts(k, census)
    log_counts = [math.log2(c) if c > 0 else -math.inf for c in counts]
    log_d = math.log2(2 + math.sqrt(2))

    def f(alpha):
        if any(a < 0 for a in alpha) or sum(alpha) > 1.0 + _SLACK:
            return -math.inf
        return _objective_float(alpha, log_counts, log_d, k)

    rng = random.Random(seed)
    starts = [[0.0] * k, [1.0 / (k + 1)] * k]
    starts += [list(project_capped_simplex([rng.random() for _ in range(k)])) for _ in range(restarts)]
    best_alpha, best_value = None, -math.inf
    for n, start in enumerate(starts):
        alpha, value, sweeps = _coordinate_ascent(start, f, k, tolerance)
        logger.debug('k=%d start %d: log2 base %.15f after %d sweeps', k, n, value, sweeps)
        if value > best_value:
            best_alpha, best_value = alpha, value
    result = _result(k, census, best_alpha, dps, digits)
    logger.info('inner base for k=%d: %s', k, result.base)
    return result


def gibbs_profile(k: int, census: CoverageCensus, dps: int = MIN_DPS, digits: int = 10) -> InnerBoundResult:
    """Closed-form maximiser alpha_t = p_t·D^-t / Z with Z = sum_t p_t·D^-t."""
    counts = _census_counts(k, census)
    with mp.workdps(max(dps, MIN_DPS) + 10):
        d = double_chain_base(max(dps, MIN_DPS) + 10)
        weights = [counts[t] * d ** (-t) for t in range(k + 1)]
        weights[0] = mpf(1)
        z = mp.fsum(weights)
        alpha = [weights[t] / z for t in range(1, k + 1)]
    return _result(k, census, alpha, dps, digits)


def mixed_inner_log2(results: dict, pockets) -> mpf:
    """Per-point log2 base for a chain mixing pocket sizes; weights k+1 per pocket."""
    pockets = list(pockets)
    if not pockets:
        raise ValueError('need at least one pocket')
    total = sum(k + 1 for k in pockets)
    with mp.workdps(MIN_DPS):
        return mp.fsum((k + 1) * results[k].log2_base for k in pockets) / total


def binomial_entropy_sandwich(n: int, j: int):
    """(2^{H(j/n)n}/(n+1), binom(n, j), 2^{H(j/n)n})."""
    if not 0 <= j <= n:
        raise ValueError('need 0 <= j <= n')
    with mp.workdps(MIN_DPS):
        upper = mpf(2) ** (entropy(Fraction(j, n)) * n)
        return upper / (n + 1), math.comb(n, j), upper
