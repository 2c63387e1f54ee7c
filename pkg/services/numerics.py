"""
Numeric Helpers (Zig-Zag Bounds)
Golden-section line search, capped-simplex projection and directed
(downward) rounding shared by the Perron and inner-bound services.
"""

from fractions import Fraction
import math

from mpmath import mp, mpf
import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200):
    """Maximiser of a unimodal f on [lo, hi]; returns (x, f(x))."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return max(((c, fc), (d, fd), (lo, f(lo)), (hi, f(hi))), key=lambda p: p[1])


def project_capped_simplex(v, cap: float = 1.0) -> np.ndarray:
    """Euclidean projection onto {y >= 0, sum(y) <= cap}."""
    v = np.asarray(v, dtype=float).ravel()
    clipped = np.maximum(v, 0.0)
    if clipped.sum() <= cap:
        return clipped
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - cap
    ind = np.arange(1, len(v) + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def bits_for_digits(digits: int) -> int:
    """Working precision in bits for ``digits`` reliable decimal digits."""
    return max(128, math.ceil(digits * math.log2(10)) + 64)


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a finite mpf, read from its mantissa at full width."""
    if not isinstance(x, mpf):
        x = mpf(x)
    if not mp.isfinite(x):
        raise ValueError(f'{x} has no rational value')
    man, exp = x.man_exp
    value = Fraction(abs(int(man))) * (Fraction(2) ** int(exp))
    return -value if x < 0 else value


def floor_fraction(x, digits: int, prec: int | None = None) -> Fraction:
    """Largest multiple of 10^-digits not above x.

    A float input is first lowered by a relative margin of 2^-(prec-16), prec
    defaulting to the current working precision, so its own rounding error
    cannot push the result above the true value.
    """
    if isinstance(x, Fraction):
        q = x
    else:
        q = mpf_to_fraction(x)
        q -= abs(q) * Fraction(1, 2 ** max(1, (prec or mp.prec) - 16))
    scale = 10 ** digits
    return Fraction(math.floor(q * scale), scale)


def format_floor(x, digits: int, prec: int | None = None) -> str:
    """Decimal string of floor_fraction(x, digits), never rounded up."""
    q = floor_fraction(x, digits, prec)
    n = q.numerator * (10 ** digits) // q.denominator
    sign = '-' if n < 0 else ''
    n = abs(n)
    if digits == 0:
        return f'{sign}{n}'
    return f'{sign}{n // 10 ** digits}.{n % 10 ** digits:0{digits}d}'


def rational_root_floor(q: Fraction, n: int, digits: int = 30) -> Fraction:
    """A rational r with r**n <= q, within 10^-digits of the true n-th root."""
    q = Fraction(q)
    if q < 0 or n < 1:
        raise ValueError('need a nonnegative radicand and a positive degree')
    if q == 0:
        return Fraction(0)
    step = Fraction(1, 10 ** digits)
    with mp.workdps(digits + 20):
        approx = mp.root(mpf(q.numerator) / q.denominator, n)
        r = Fraction(int(mp.floor(approx * 10 ** digits)), 10 ** digits)
    while r ** n > q:
        r -= step
    return r
