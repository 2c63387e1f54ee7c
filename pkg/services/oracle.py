"""
Enumeration Oracle Service (Zig-Zag Bounds)
Brute-force ground truth: crossing-free graphs on small structured point
sets, degree partitions at a root, the pocket covering census and exact
checks of rational coordinates against the combinatorial model.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from pathlib import Path
import logging

from services.exact_linalg import DegreeVector

logger = logging.getLogger(__name__)


class MissingCoordinatesError(ValueError):
    """Geometric validation was requested for a configuration without coordinates."""


def _pair(e, f):
    return (e, f) if e < f else (f, e)


@dataclass(frozen=True)
class PointConfig:
    points: tuple
    admissible_edges: tuple
    crossing: frozenset
    coords: tuple | None = None
    pockets: tuple = ()
    kind: str = 'custom'
    facing: 'PointConfig | None' = field(default=None, compare=False)

    def __post_init__(self):
        pos = self.positions
        if len(pos) != len(self.points):
            raise ValueError('point labels must be distinct')
        for a, b in self.admissible_edges:
            if a not in pos or b not in pos or pos[a] >= pos[b]:
                raise ValueError(f'edge {(a, b)} is not an ordered pair of known points')
        edges = set(self.admissible_edges)
        for e, f in self.crossing:
            if e == f:
                raise ValueError(f'edge {e} cannot cross itself')
            if e not in edges or f not in edges:
                raise ValueError(f'crossing pair {(e, f)} uses an inadmissible edge')
            if set(e) & set(f):
                raise ValueError(f'edges {e} and {f} share an endpoint and cannot cross')
        if self.coords is not None and len(self.coords) != len(self.points):
            raise ValueError('one coordinate pair per point is required')

    @property
    def positions(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def crosses(self, e, f) -> bool:
        return _pair(tuple(e), tuple(f)) in self.crossing

    def without(self, edges) -> 'PointConfig':
        """Same configuration with some admissible edges removed."""
        drop = {tuple(e) for e in edges}
        kept = tuple(e for e in self.admissible_edges if e not in drop)
        crossing = frozenset(p for p in self.crossing if p[0] not in drop and p[1] not in drop)
        return replace(self, admissible_edges=kept, crossing=crossing)

    def with_coords(self, coords) -> 'PointConfig':
        return replace(self, coords=tuple((Fraction(x), Fraction(y)) for x, y in coords))


@dataclass(frozen=True)
class CoverageCensus:
    k: int
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {'k': self.k, 'counts': {str(t): p for t, p in sorted(self.counts.items())},
                'total': self.total}


def _interleaving(points, edges) -> frozenset:
    pos = {p: i for i, p in enumerate(points)}
    crossing = set()
    for e, f in combinations(edges, 2):
        (i, j), (k, l) = sorted(((pos[e[0]], pos[e[1]]), (pos[f[0]], pos[f[1]])))
        if i < k < j < l:
            crossing.add(_pair(e, f))
    return frozenset(crossing)


# ── Configurations ────────────────────────────────────────────

def convex_config(n: int) -> PointConfig:
    """p1..pn in convex position without the n-1 consecutive pairs."""
    if n < 3:
        raise ValueError(f'convex configurations need at least 3 points, got {n}')
    points = tuple(range(1, n + 1))
    edges = tuple((i, j) for i, j in combinations(points, 2) if j > i + 1)
    return PointConfig(points, edges, _interleaving(points, edges), kind='convex')


def pocket_config(k: int) -> PointConfig:
    """v0..v_{k+1}: a pocket with its two hull vertices."""
    if k < 1:
        raise ValueError(f'a pocket needs at least one inner point, got {k}')
    points = tuple(range(k + 2))
    edges = tuple((i, j) for i, j in combinations(points, 2) if j > i + 1)
    return PointConfig(points, edges, _interleaving(points, edges),
                       pockets=((0, k + 1),), kind='pocket')


def pocket_ranges(pocket_sizes) -> tuple:
    """Closed label ranges (s, t) of consecutive pockets on a chain p1..pz."""
    ranges = []
    start = 1
    for k in pocket_sizes:
        ranges.append((start, start + k + 1))
        start += k + 1
    return tuple(ranges)


def zigzag_outer_config(pocket_sizes) -> PointConfig:
    """Outer part of one chain: edges below the path between different pockets."""
    sizes = tuple(pocket_sizes)
    if not sizes:
        raise ValueError('a chain needs at least one pocket')
    if any(k < 1 for k in sizes):
        raise ValueError(f'pocket sizes must be >= 1, got {sizes}')
    ranges = pocket_ranges(sizes)
    z = ranges[-1][1]
    points = tuple(range(1, z + 1))

    def same_pocket(i, j):
        return any(s <= i and j <= t for s, t in ranges)

    edges = tuple((i, j) for i, j in combinations(points, 2) if j > i + 1 and not same_pocket(i, j))
    return PointConfig(points, edges, _interleaving(points, edges), pockets=ranges, kind='zigzag')


def geometric_config(coords) -> PointConfig:
    """Every pair of points admissible; crossings from exact orientation tests."""
    pts = tuple((Fraction(x), Fraction(y)) for x, y in coords)
    points = tuple(range(1, len(pts) + 1))
    edges = tuple(combinations(points, 2))
    crossing = frozenset(
        _pair(e, f) for e, f in combinations(edges, 2)
        if _proper_crossing(pts[e[0] - 1], pts[e[1] - 1], pts[f[0] - 1], pts[f[1] - 1])
    )
    return PointConfig(points, edges, crossing, coords=pts, kind='geometric')


# ── Enumeration ───────────────────────────────────────────────

def _conflict_masks(cfg: PointConfig):
    index = {e: n for n, e in enumerate(cfg.admissible_edges)}
    masks = [0] * len(index)
    for e, f in cfg.crossing:
        masks[index[e]] |= 1 << index[f]
        masks[index[f]] |= 1 << index[e]
    return masks


def _degree_counts(cfg: PointConfig, root_mask: int):
    masks = _conflict_masks(cfg)
    memo = {}

    def walk(available):
        if not available:
            return (1,)
        hit = memo.get(available)
        if hit is not None:
            return hit
        low = available & -available
        i = low.bit_length() - 1
        rest = available & ~low
        skip = walk(rest)
        take = walk(rest & ~masks[i])
        if root_mask & low:
            take = (0,) + take
        size = max(len(skip), len(take))
        out = tuple((skip[d] if d < len(skip) else 0) + (take[d] if d < len(take) else 0)
                    for d in range(size))
        memo[available] = out
        return out

    return walk((1 << len(masks)) - 1)


def count_crossing_free(cfg: PointConfig) -> int:
    """Number of subsets of admissible edges with no crossing pair."""
    return sum(_degree_counts(cfg, 0))


def degree_partition(cfg: PointConfig, root) -> DegreeVector:
    """Crossing-free graphs partitioned by their degree at ``root``."""
    if root not in cfg.positions:
        raise ValueError(f'unknown root vertex {root!r}')
    root_mask = 0
    for n, e in enumerate(cfg.admissible_edges):
        if root in e:
            root_mask |= 1 << n
    counts = _degree_counts(cfg, root_mask)
    dim = len(cfg.points)
    return DegreeVector(tuple(counts) + (0,) * (dim - len(counts)))


def iter_crossing_free(cfg: PointConfig):
    """Yield every crossing-free graph as a bitmask over admissible_edges."""
    masks = _conflict_masks(cfg)
    stack = [((1 << len(masks)) - 1, 0)]
    while stack:
        available, chosen = stack.pop()
        if not available:
            yield chosen
            continue
        low = available & -available
        i = low.bit_length() - 1
        rest = available & ~low
        stack.append((rest & ~masks[i], chosen | low))
        stack.append((rest, chosen))


def coverage_census(k: int) -> CoverageCensus:
    """Pocket-internal graphs counted by how many inner points they cover."""
    if not 1 <= k <= 8:
        raise ValueError(f'census is supported for 1 <= k <= 8, got {k}')
    cfg = pocket_config(k)
    cover = []
    for i, j in cfg.admissible_edges:
        mask = 0
        for v in range(i + 1, j):
            mask |= 1 << v
        cover.append(mask)
    counts = dict.fromkeys(range(k + 1), 0)
    for graph in iter_crossing_free(cfg):
        covered = 0
        n = 0
        while graph:
            if graph & 1:
                covered |= cover[n]
            graph >>= 1
            n += 1
        counts[bin(covered).count('1')] += 1
    logger.debug('census k=%d: %s', k, counts)
    return CoverageCensus(k, counts)


# ── Exact geometry ────────────────────────────────────────────

def orient(a, b, c) -> Fraction:
    """Twice the signed area of (a, b, c); positive for a left turn."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _proper_crossing(a, b, c, d) -> bool:
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def _on_segment(a, b, p) -> bool:
    return (orient(a, b, p) == 0
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_touch(a, b, c, d) -> bool:
    if _proper_crossing(a, b, c, d):
        return True
    return _on_segment(a, b, c) or _on_segment(a, b, d) or _on_segment(c, d, a) or _on_segment(c, d, b)


def _check_crossings(cfg: PointConfig, xy) -> bool:
    for e, f in combinations(cfg.admissible_edges, 2):
        if set(e) & set(f):
            continue
        geometric = _proper_crossing(xy[e[0]], xy[e[1]], xy[f[0]], xy[f[1]])
        if geometric != cfg.crosses(e, f):
            logger.info('crossing mismatch for %s x %s', e, f)
            return False
    return True


def _strictly_convex(pts) -> bool:
    n = len(pts)
    signs = {orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) > 0 for i in range(n)}
    if any(orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) == 0 for i in range(n)):
        return False
    return len(signs) == 1


def _chain_checks(cfg: PointConfig, pts) -> bool:
    """Outer edges run strictly below the path; pockets are flat."""
    if any(pts[i][0] >= pts[i + 1][0] for i in range(len(pts) - 1)):
        logger.info('chain is not x-monotone')
        return False
    pos = cfg.positions
    for a, b in cfg.admissible_edges:
        i, j = pos[a], pos[b]
        if any(orient(pts[i], pts[j], pts[v]) <= 0 for v in range(i + 1, j)):
            logger.info('outer edge %s leaves the outer part', (a, b))
            return False
    for s_label, t_label in cfg.pockets:
        s, t = pos[s_label], pos[t_label]
        inner = [pts[v] for v in range(s + 1, t)]
        if any(orient(pts[s], pts[t], p) >= 0 for p in inner):
            logger.info('pocket %s does not sag below its chord', (s_label, t_label))
            return False
        for u in range(len(pts)):
            if s <= u <= t:
                continue
            left, right = (pts[u], pts[t]) if u < s else (pts[s], pts[u])
            if any(orient(left, right, p) <= 0 for p in inner):
                logger.info('pocket %s is not flat with respect to point %d', (s_label, t_label), u)
                return False
    return True


def _path_edges(pts):
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def _mutually_visible(lower, upper) -> bool:
    edges = _path_edges(lower) + _path_edges(upper)
    for p in lower:
        for q in upper:
            for a, b in edges:
                if p in (a, b) or q in (a, b):
                    other = b if a in (p, q) else a
                    if orient(p, q, other) == 0 and _on_segment(p, q, other):
                        return False
                    continue
                if _segments_touch(p, q, a, b):
                    return False
    return True


def verify_coordinates(cfg: PointConfig) -> bool:
    """Check rational coordinates against the declared combinatorial model."""
    if cfg.coords is None:
        raise MissingCoordinatesError('configuration carries no coordinates')
    pts = list(cfg.coords)
    xy = {label: pts[i] for i, label in enumerate(cfg.points)}
    if not _check_crossings(cfg, xy):
        return False
    if cfg.kind in ('convex', 'pocket') and not _strictly_convex(pts):
        logger.info('points are not in strictly convex position')
        return False
    if cfg.kind == 'zigzag' and not _chain_checks(cfg, pts):
        return False
    if cfg.facing is not None:
        upper = cfg.facing
        if upper.coords is None:
            raise MissingCoordinatesError('facing chain carries no coordinates')
        mirrored = upper.with_coords([(x, -y) for x, y in upper.coords])
        if not verify_coordinates(replace(mirrored, facing=None)):
            return False
        if not _mutually_visible(pts, list(upper.coords)):
            logger.info('the two chains do not see each other')
            return False
    return True


# ── Fixtures ──────────────────────────────────────────────────

def _parse_kind(line: str):
    kind, _, arg = line.partition(':')[2].strip().partition(' ')
    return kind, arg.strip()


def load_fixture(path) -> PointConfig:
    """Read a '# kind:' header plus one 'x_num/x_den y_num/y_den' line per point."""
    kind, arg, coords = None, '', []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith('#'):
            if line[1:].strip().startswith('kind:'):
                kind, arg = _parse_kind(line[1:])
            continue
        x, y = line.split()
        coords.append((Fraction(x), Fraction(y)))
    if kind == 'convex':
        return convex_config(int(arg)).with_coords(coords)
    sizes = tuple(int(s) for s in arg.split(',')) if arg else ()
    if kind == 'zigzag':
        return zigzag_outer_config(sizes).with_coords(coords)
    if kind == 'double-zigzag':
        chain = zigzag_outer_config(sizes)
        z = len(chain.points)
        if len(coords) != 2 * z:
            raise ValueError(f'double chain fixture needs {2 * z} points, found {len(coords)}')
        upper = chain.with_coords(coords[z:])
        return replace(chain.with_coords(coords[:z]), facing=upper)
    raise ValueError(f'unknown fixture kind {kind!r} in {path}')


def dump_fixture(cfg: PointConfig, header: str) -> str:
    """Inverse of load_fixture for a configuration with coordinates."""
    if cfg.coords is None:
        raise MissingCoordinatesError('configuration carries no coordinates')
    pts = list(cfg.coords) + (list(cfg.facing.coords) if cfg.facing is not None else [])
    lines = [f'# kind: {header}']
    lines += [f'{x.numerator}/{x.denominator} {y.numerator}/{y.denominator}' for x, y in pts]
    return '\n'.join(lines) + '\n'
