"""
Production Matrix Service (Zig-Zag Bounds)
Builders for the convex matrix C, the chain matrices R, S, L, P and the
reordered integer matrix P', plus structured products on degree vectors.

Rows and columns are 0-indexed: row j counts graphs whose root has degree j.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
import logging

from services.exact_linalg import (
    ConstructionError, DegreeVector, ExactMatrix, identity,
    mat_add, mat_mul, mat_pow, mat_scale, upper_tri_inverse,
)

logger = logging.getLogger(__name__)


class InvalidChainError(ValueError):
    """Chain parameters that do not describe a generalized zig-zag chain."""


@dataclass(frozen=True)
class ChainSpec:
    k: int
    m: int
    z: int | None = None

    def __post_init__(self):
        if self.k < 0:
            raise InvalidChainError(f'pocket size must be >= 0, got {self.k}')
        if self.m < self.k + 2:
            raise InvalidChainError(f'matrix dimension {self.m} is below k+2 = {self.k + 2}')
        if self.z is not None:
            if (self.z - 1) % (self.k + 1):
                raise InvalidChainError(f'z = {self.z} is not 1 mod {self.k + 1}')
            if self.z < self.k + 2:
                raise InvalidChainError(f'z = {self.z} is shorter than one pocket')

    @property
    def pockets(self) -> int:
        return (self.z - 1) // (self.k + 1) if self.z is not None else 0

    @property
    def n(self) -> int:
        return 2 * self.z if self.z is not None else 0


@dataclass(frozen=True)
class PocketMatrixSet:
    R: ExactMatrix
    S: ExactMatrix
    L: ExactMatrix
    P: ExactMatrix
    Pprime: ExactMatrix


@dataclass(frozen=True)
class PrimitivityResult:
    primitive: bool
    exponent: int | None = None

    def __bool__(self):
        return self.primitive


def _check_pocket_args(k: int, m: int):
    if k < 1:
        raise InvalidChainError(f'pocket size must be >= 1, got {k}')
    if m < k + 2:
        raise InvalidChainError(f'matrix dimension {m} is below k+2 = {k + 2}')


# ── Structured integer products ───────────────────────────────
# X is a list of m integer rows of equal width; width 1 is a vector.

def _left_R(rows):
    """R·X: row 0 sums every row, row i > 0 doubles the suffix sum from i."""
    m = len(rows)
    out = [None] * m
    acc = [0] * len(rows[0])
    for i in range(m - 1, 0, -1):
        acc = [a + b for a, b in zip(acc, rows[i])]
        out[i] = [2 * a for a in acc]
    out[0] = [a + b for a, b in zip(acc, rows[0])]
    return out


def _left_shift(rows, l):
    """S^l·X."""
    m = len(rows)
    blank = [0] * len(rows[0])
    if l >= m:
        return [blank] * m
    return [blank] * l + rows[:m - l]


def _add_rows(x, y, c=1):
    return [[a + c * b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def _left_Pprime(k, rows):
    """P'·X = R^{k+1}X + sum_l S^l sum_{mu>=l} binom(mu-1, l-1) R^{k+1-mu} X."""
    powers = [rows]
    for _ in range(k + 1):
        powers.append(_left_R(powers[-1]))
    result = powers[k + 1]
    for l in range(1, k + 2):
        combo = None
        for mu in range(l, k + 2):
            term = powers[k + 1 - mu]
            c = comb(mu - 1, l - 1)
            combo = [[c * a for a in r] for r in term] if combo is None else _add_rows(combo, term, c)
        result = _add_rows(result, _left_shift(combo, l))
    return result


def _vec_R(x):
    m = len(x)
    out = [0] * m
    acc = 0
    for i in range(m - 1, 0, -1):
        acc += x[i]
        out[i] = 2 * acc
    out[0] = acc + x[0]
    return out


def _vec_R_solve(x):
    """R^{-1}x in O(m) through suffix sums."""
    m = len(x)
    if m == 1:
        return [Fraction(x[0])]
    half = [Fraction(v, 2) if isinstance(v, int) else v / 2 for v in x]
    y = [Fraction(0)] * m
    y[m - 1] = half[m - 1]
    for i in range(m - 2, 0, -1):
        y[i] = half[i] - half[i + 1]
    y[0] = x[0] - half[1]
    return y


def _vec_leading(k, x):
    """L·x without forming L or R^{-1}."""
    m = len(x)
    back = [list(x)]
    for _ in range(k):
        back.append(_vec_R_solve(back[-1]))
    result = list(_vec_R(x))
    for mu in range(1, k + 2):
        base = back[mu - 1]
        for l in range(1, mu + 1):
            if l >= m:
                break
            c = comb(mu - 1, l - 1)
            for i in range(l, m):
                result[i] += c * base[i - l]
    return result


def _as_counts(values, truncated=False) -> DegreeVector:
    out = []
    for v in values:
        v = Fraction(v)
        if v.denominator != 1 or v < 0:
            raise ConstructionError(f'production step produced {v}')
        out.append(v.numerator)
    return DegreeVector(tuple(out), truncated)


# ── Builders ──────────────────────────────────────────────────

def build_R(m: int) -> ExactMatrix:
    if m < 1:
        raise ValueError('dimension must be positive')
    rows = [[1] * m] + [[0] * i + [2] * (m - i) for i in range(1, m)]
    return ExactMatrix.from_numerators(rows)


def build_S(m: int) -> ExactMatrix:
    if m < 1:
        raise ValueError('dimension must be positive')
    return ExactMatrix.from_numerators([[1 if i == j + 1 else 0 for j in range(m)] for i in range(m)])


def build_convex_C(m: int) -> ExactMatrix:
    return mat_add(build_R(m), build_S(m))


def _shift_power(m: int, l: int) -> ExactMatrix:
    return ExactMatrix.from_numerators([[1 if i == j + l else 0 for j in range(m)] for i in range(m)])


def build_leading_L(k: int, m: int) -> ExactMatrix:
    """L = R + sum_{mu=1}^{k+1} sum_{l=1}^{mu} binom(mu-1, l-1) S^l R^{1-mu}."""
    _check_pocket_args(k, m)
    R = build_R(m)
    R_inv = upper_tri_inverse(R)
    total = R
    back = identity(m)
    for mu in range(1, k + 2):
        if mu > 1:
            back = mat_mul(back, R_inv)
        shifts = None
        for l in range(1, mu + 1):
            term = mat_scale(_shift_power(m, l), comb(mu - 1, l - 1))
            shifts = term if shifts is None else mat_add(shifts, term)
        total = mat_add(total, mat_mul(shifts, back))
    return total


def build_pocket_P(k: int, m: int) -> ExactMatrix:
    """P = R^k·L; entries may be fractional."""
    return mat_mul(mat_pow(build_R(m), k), build_leading_L(k, m))


def build_Pprime(k: int, m: int) -> ExactMatrix:
    """P' = L·R^k assembled from nonnegative powers of R only."""
    _check_pocket_args(k, m)
    eye = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    nums = _left_Pprime(k, eye)
    result = ExactMatrix.from_numerators(nums)
    if not result.is_nonnegative():
        raise ConstructionError(f"P' for k={k}, m={m} has a negative entry")
    return result


def pprime_via_leading(k: int, m: int) -> ExactMatrix:
    """The generic exact route L·R^k, for comparison with build_Pprime."""
    return mat_mul(build_leading_L(k, m), mat_pow(build_R(m), k))


def build_pocket_matrices(k: int, m: int) -> PocketMatrixSet:
    R = build_R(m)
    L = build_leading_L(k, m)
    Rk = mat_pow(R, k)
    return PocketMatrixSet(R=R, S=build_S(m), L=L, P=mat_mul(Rk, L), Pprime=mat_mul(L, Rk))


# ── Degree vectors ────────────────────────────────────────────

def start_vector(k: int, m: int) -> DegreeVector:
    """(1, 0, ..., 0): the first k+1 chain vertices carry no outer edge."""
    return DegreeVector.unit(m)


def apply_Pprime(k: int, v: DegreeVector) -> DegreeVector:
    _check_pocket_args(k, v.dim)
    rows = _left_Pprime(k, [[x] for x in v.entries])
    return DegreeVector(tuple(r[0] for r in rows), v.truncated)


def convex_degree_vector(n: int, m: int | None = None) -> DegreeVector:
    """C^{n-2}·e1: graphs on n convex points without consecutive edges."""
    if n < 2:
        raise ValueError('need at least two points')
    m = m or n
    vec = [1] + [0] * (m - 1)
    for _ in range(n - 2):
        shifted = [0] + vec[:-1]
        vec = [a + b for a, b in zip(_vec_R(vec), shifted)]
    return DegreeVector(tuple(vec), truncated=m < n)


def outer_degree_vector(spec: ChainSpec) -> DegreeVector:
    """Degree vector at the last vertex of one chain's outer part.

    With N pockets this is R^k·P'^{N-2}·L·e1 for N >= 2 and e1 for a single
    pocket.
    """
    if spec.z is None:
        raise InvalidChainError('outer_degree_vector needs a chain length z')
    k, m = spec.k, spec.m
    _check_pocket_args(k, m)
    truncated = m < spec.z
    if truncated:
        logger.warning('⚠️ outer degree vector for z=%d truncated to m=%d; counts are lower bounds', spec.z, m)
    pockets = spec.pockets
    vec = start_vector(k, m)
    if pockets == 1:
        return DegreeVector(vec.entries, truncated)
    vec = _as_counts(_vec_leading(k, vec.entries), truncated)
    for _ in range(pockets - 2):
        vec = apply_Pprime(k, vec)
    entries = vec.entries
    for _ in range(k):
        entries = _vec_R(entries)
    return DegreeVector(tuple(entries), truncated)


def mixed_pocket_product(ks, m: int) -> ExactMatrix:
    """P'(k_last)···P'(k_first): later pockets multiply from the left."""
    ks = list(ks)
    if not ks:
        raise InvalidChainError('need at least one pocket size')
    for k in ks:
        _check_pocket_args(k, m)
    rows = _left_Pprime(ks[0], [[1 if i == j else 0 for j in range(m)] for i in range(m)])
    for k in ks[1:]:
        rows = _left_Pprime(k, rows)
    return ExactMatrix.from_numerators(rows)


def mixed_degree_vector(ks, m: int) -> DegreeVector:
    """Apply the pockets of a mixed chain to the start vector in order."""
    ks = list(ks)
    if not ks:
        raise InvalidChainError('need at least one pocket size')
    vec = start_vector(ks[0], m)
    for k in ks:
        vec = apply_Pprime(k, vec)
    return vec


# ── Primitivity ───────────────────────────────────────────────

def _pattern_rows(a: ExactMatrix):
    rows = []
    for row in a.numerators:
        mask = 0
        for j, v in enumerate(row):
            if v:
                mask |= 1 << j
        rows.append(mask)
    return rows


def _union_of_rows(mask, rows):
    acc = 0
    while mask:
        low = mask & -mask
        acc |= rows[low.bit_length() - 1]
        mask ^= low
    return acc


def _pattern_product(left, right):
    return [_union_of_rows(mask, right) for mask in left]


def _diameter(pattern, full):
    """Largest BFS distance over all sources, or None if some target is unreachable."""
    worst = 0
    for src in range(len(pattern)):
        seen = 1 << src
        frontier = seen
        depth = 0
        while seen != full:
            frontier = _union_of_rows(frontier, pattern) & ~seen
            if not frontier:
                return None
            seen |= frontier
            depth += 1
        worst = max(worst, depth)
    return max(worst, 1)


def is_primitive(a: ExactMatrix) -> PrimitivityResult:
    """Smallest N <= (m-1)·m with a^N entrywise positive, if any."""
    if not a.is_nonnegative():
        raise ValueError('primitivity is only defined for nonnegative matrices')
    m = a.dim
    full = (1 << m) - 1
    pattern = _pattern_rows(a)
    if all(row[i] for i, row in enumerate(a.numerators)):
        n = _diameter(pattern, full)
        return PrimitivityResult(n is not None, n)
    limit = max(1, (m - 1) * m)
    power = pattern
    seen = set()
    for n in range(1, limit + 1):
        if all(row == full for row in power):
            return PrimitivityResult(True, n)
        key = tuple(power)
        if not any(power) or key in seen:
            break
        seen.add(key)
        power = _pattern_product(power, pattern)
    return PrimitivityResult(False, None)


# Named builders exposed by the CLI and the API; each takes (k, m).
MATRIX_BUILDERS = {
    'R': lambda k, m: build_R(m),
    'S': lambda k, m: build_S(m),
    'C': lambda k, m: build_convex_C(m),
    'L': build_leading_L,
    'P': build_pocket_P,
    'Pprime': build_Pprime,
}
