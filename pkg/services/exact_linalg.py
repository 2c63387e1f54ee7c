"""
Exact Linear Algebra Service (Zig-Zag Bounds)
Dense square matrices of rationals, stored as integer numerators over one
positive common denominator so products and powers run on plain ints.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from operator import mul
import logging

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """Operands have different dimensions."""


class ConstructionError(ArithmeticError):
    """A production step produced an entry no counting vector can hold."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('booleans are not matrix entries')
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f'unsupported matrix entry {value!r}')


def _normalise(nums, den):
    """Divide numerators and denominator by their common gcd."""
    g = den
    for row in nums:
        for v in row:
            if v:
                g = gcd(g, v)
                if g == 1:
                    return nums, den
    if g == 1:
        return nums, den
    return tuple(tuple(v // g for v in row) for row in nums), den // g


class ExactMatrix:
    """Immutable m×m matrix of exact rationals."""

    __slots__ = ('_num', '_den')

    def __init__(self, rows):
        fracs = [[_as_fraction(v) for v in row] for row in rows]
        m = len(fracs)
        if m == 0 or any(len(r) != m for r in fracs):
            raise DimensionMismatchError('ExactMatrix must be square and non-empty')
        den = reduce(lcm, (v.denominator for r in fracs for v in r), 1)
        nums = tuple(tuple(v.numerator * (den // v.denominator) for v in r) for r in fracs)
        self._num, self._den = _normalise(nums, den)

    @classmethod
    def from_numerators(cls, nums, den: int = 1) -> 'ExactMatrix':
        """Build directly from integer rows over a positive denominator."""
        if den <= 0:
            raise ValueError('denominator must be positive')
        rows = tuple(tuple(r) for r in nums)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise DimensionMismatchError('ExactMatrix must be square and non-empty')
        obj = object.__new__(cls)
        obj._num, obj._den = _normalise(rows, den)
        return obj

    # ── Accessors ─────────────────────────────────────────────
    @property
    def dim(self) -> int:
        return len(self._num)

    @property
    def numerators(self):
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def entries(self):
        d = self._den
        return tuple(tuple(Fraction(v, d) for v in row) for row in self._num)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    def column(self, j: int):
        return tuple(Fraction(row[j], self._den) for row in self._num)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self._den, self._num))

    def __repr__(self):
        return f'ExactMatrix(dim={self.dim}, denominator={self._den})'

    # ── Predicates ────────────────────────────────────────────
    def is_nonnegative(self) -> bool:
        return all(v >= 0 for row in self._num for v in row)

    def is_integer(self) -> bool:
        return self._den == 1

    def is_upper_triangular_with_nonzero_diagonal(self) -> bool:
        for i, row in enumerate(self._num):
            if row[i] == 0 or any(row[j] for j in range(i)):
                return False
        return True

    # ── JSON ──────────────────────────────────────────────────
    def to_json(self) -> dict:
        d = self._den
        return {
            'dim': self.dim,
            'entries': [[f'{f.numerator}/{f.denominator}' for f in (Fraction(v, d) for v in row)]
                        for row in self._num],
        }

    @classmethod
    def from_json(cls, data: dict) -> 'ExactMatrix':
        mat = cls(data['entries'])
        if 'dim' in data and data['dim'] != mat.dim:
            raise DimensionMismatchError(f"declared dim {data['dim']} but found {mat.dim}")
        return mat


@dataclass(frozen=True)
class DegreeVector:
    """Counts of graphs partitioned by the degree of their root vertex."""
    entries: tuple
    truncated: bool = False

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError('DegreeVector needs at least one entry')
        for v in entries:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ConstructionError(f'degree vector entry {v!r} is not a nonnegative integer')
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def unit(cls, dim: int) -> 'DegreeVector':
        if dim < 1:
            raise ValueError('dimension must be positive')
        return cls((1,) + (0,) * (dim - 1))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def padded(self, dim: int) -> 'DegreeVector':
        if dim < self.dim and any(self.entries[dim:]):
            raise DimensionMismatchError(f'cannot shrink a degree vector with support beyond {dim}')
        entries = self.entries[:dim] + (0,) * max(0, dim - self.dim)
        return DegreeVector(entries, self.truncated)

    def to_json(self) -> dict:
        return {'dim': self.dim, 'entries': list(self.entries),
                'total': self.total, 'truncated': self.truncated}


# ── Constructors ──────────────────────────────────────────────

def identity(m: int) -> ExactMatrix:
    return ExactMatrix.from_numerators([[1 if i == j else 0 for j in range(m)] for i in range(m)])


def zero(m: int) -> ExactMatrix:
    return ExactMatrix.from_numerators([[0] * m for _ in range(m)])


def _check_dims(a: ExactMatrix, b: ExactMatrix):
    if a.dim != b.dim:
        raise DimensionMismatchError(f'dimension mismatch: {a.dim} vs {b.dim}')


# ── Arithmetic ────────────────────────────────────────────────

def mat_add(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_dims(a, b)
    den = lcm(a.denominator, b.denominator)
    fa, fb = den // a.denominator, den // b.denominator
    nums = [[x * fa + y * fb for x, y in zip(ra, rb)] for ra, rb in zip(a.numerators, b.numerators)]
    return ExactMatrix.from_numerators(nums, den)


def mat_scale(a: ExactMatrix, c) -> ExactMatrix:
    c = _as_fraction(c)
    nums = [[v * c.numerator for v in row] for row in a.numerators]
    return ExactMatrix.from_numerators(nums, a.denominator * c.denominator)


def mat_sub(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return mat_add(a, mat_scale(b, -1))


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_dims(a, b)
    cols = list(zip(*b.numerators))
    nums = [[sum(map(mul, row, col)) for col in cols] for row in a.numerators]
    return ExactMatrix.from_numerators(nums, a.denominator * b.denominator)


def mat_pow(a: ExactMatrix, e: int) -> ExactMatrix:
    """a**e by repeated squaring; a**0 is the identity."""
    if e < 0:
        raise ValueError('exponent must be nonnegative')
    result = identity(a.dim)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def upper_tri_inverse(a: ExactMatrix) -> ExactMatrix:
    """Exact inverse of an upper triangular matrix by back-substitution."""
    if not a.is_upper_triangular_with_nonzero_diagonal():
        raise ValueError('matrix is not upper triangular with nonzero diagonal')
    m = a.dim
    ent = a.entries
    inv = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m - 1, -1, -1):
        inv[i][i] = 1 / ent[i][i]
        for j in range(i + 1, m):
            acc = sum((ent[i][l] * inv[l][j] for l in range(i + 1, j + 1)), Fraction(0))
            inv[i][j] = -acc / ent[i][i]
    result = ExactMatrix(inv)
    if mat_mul(a, result) != identity(m):
        raise ArithmeticError('triangular inverse failed verification')
    return result


def mat_vec_rational(a: ExactMatrix, x) -> tuple:
    """Exact product with an arbitrary rational vector."""
    xs = [_as_fraction(v) for v in x]
    if len(xs) != a.dim:
        raise DimensionMismatchError(f'vector of length {len(xs)} for a {a.dim}x{a.dim} matrix')
    den = reduce(lcm, (v.denominator for v in xs), 1)
    ints = [v.numerator * (den // v.denominator) for v in xs]
    scale = den * a.denominator
    return tuple(Fraction(sum(map(mul, row, ints)), scale) for row in a.numerators)


def mat_vec(a: ExactMatrix, v) -> DegreeVector:
    """Apply a production matrix to a degree vector.

    Raises ConstructionError when the result is negative or fractional,
    which only happens when the matrix is not a valid production step
    for the vector.
    """
    entries = v.entries if isinstance(v, DegreeVector) else tuple(v)
    if len(entries) != a.dim:
        raise DimensionMismatchError(f'vector of length {len(entries)} for a {a.dim}x{a.dim} matrix')
    den = a.denominator
    out = []
    for row in a.numerators:
        q, r = divmod(sum(map(mul, row, entries)), den)
        if r or q < 0:
            raise ConstructionError(f'production step produced {Fraction(q * den + r, den)}')
        out.append(q)
    return DegreeVector(tuple(out), getattr(v, 'truncated', False))


def char_poly(a: ExactMatrix) -> list:
    """Coefficients of det(xI - a), highest degree first (Faddeev-LeVerrier)."""
    m = a.dim
    coeffs = [Fraction(1)]
    eye = identity(m)
    acc = zero(m)
    for k in range(1, m + 1):
        acc = mat_add(mat_mul(a, acc), mat_scale(eye, coeffs[-1]))
        prod = mat_mul(a, acc)
        trace = Fraction(sum(prod.numerators[i][i] for i in range(m)), prod.denominator)
        coeffs.append(-trace / k)
    return coeffs
