from dataclasses import replace
from fractions import Fraction

import pytest

from services.oracle import (
    MissingCoordinatesError, PointConfig, convex_config, count_crossing_free,
    coverage_census, degree_partition, dump_fixture, geometric_config,
    iter_crossing_free, load_fixture, orient, pocket_config, pocket_ranges,
    verify_coordinates, zigzag_outer_config,
)
from services.verify_service import KNOWN_CENSUS


def test_convex_quadrilateral():
    cfg = convex_config(4)
    assert set(cfg.admissible_edges) == {(1, 3), (2, 4), (1, 4)}
    assert cfg.crossing == frozenset({((1, 3), (2, 4))})
    assert cfg.crosses((2, 4), (1, 3))
    assert count_crossing_free(cfg) == 6
    assert degree_partition(cfg, 4).entries == (2, 3, 1, 0)


def test_convex_pentagon_crossings_form_a_cycle():
    cfg = convex_config(5)
    diagonals = [e for e in cfg.admissible_edges if e != (1, 5)]
    degree = {e: sum(cfg.crosses(e, f) for f in diagonals if f != e) for e in diagonals}
    assert len(diagonals) == 5
    assert set(degree.values()) == {2}


def test_convex_sizes_and_totals():
    assert len(convex_config(7).admissible_edges) == 15
    assert count_crossing_free(convex_config(3)) == 2
    assert count_crossing_free(convex_config(7)) == 394
    assert count_crossing_free(convex_config(7)) << 6 == 25216
    with pytest.raises(ValueError):
        convex_config(2)


@pytest.mark.parametrize('n', range(3, 8))
def test_convex_totals_match_naive_geometric_enumeration(n):
    parabola = [(i, i * i) for i in range(n)]
    assert count_crossing_free(geometric_config(parabola)) == count_crossing_free(convex_config(n)) << (n - 1)


def test_pocket_configs():
    assert set(pocket_config(2).admissible_edges) == {(0, 2), (1, 3), (0, 3)}
    assert len(pocket_config(3).admissible_edges) == 6
    assert len(pocket_config(5).admissible_edges) == len(convex_config(7).admissible_edges) == 15
    with pytest.raises(ValueError):
        pocket_config(0)


def test_zigzag_outer_config():
    cfg = zigzag_outer_config((2, 2))
    assert cfg.points == tuple(range(1, 8))
    assert pocket_ranges((2, 2)) == ((1, 4), (4, 7))
    assert (1, 5) in cfg.admissible_edges
    assert (2, 4) not in cfg.admissible_edges
    assert (1, 4) not in cfg.admissible_edges
    assert count_crossing_free(cfg) == 104
    assert degree_partition(cfg, 7).entries == (32, 48, 20, 4, 0, 0, 0)


def test_single_pocket_has_no_outer_edges():
    cfg = zigzag_outer_config((2,))
    assert cfg.admissible_edges == ()
    assert count_crossing_free(cfg) == 1
    with pytest.raises(ValueError):
        zigzag_outer_config(())


@pytest.mark.parametrize('k1, k2', [(1, 2), (1, 3), (2, 3)])
def test_pocket_swap_keeps_outer_count(k1, k2):
    assert count_crossing_free(zigzag_outer_config((k1, k2))) == \
        count_crossing_free(zigzag_outer_config((k2, k1)))


def test_iterator_agrees_with_counter():
    cfg = zigzag_outer_config((1, 2, 1))
    graphs = list(iter_crossing_free(cfg))
    assert len(graphs) == len(set(graphs)) == count_crossing_free(cfg)


def test_point_config_rejects_bad_relations():
    with pytest.raises(ValueError):
        PointConfig((1, 2, 3), ((1, 3),), frozenset({((1, 3), (1, 3))}))
    with pytest.raises(ValueError):
        PointConfig((1, 2, 3, 4), ((1, 3), (1, 4)), frozenset({((1, 3), (1, 4))}))
    with pytest.raises(ValueError):
        PointConfig((1, 2), ((2, 1),), frozenset())


def test_without_drops_edges_and_their_crossings():
    cfg = convex_config(4).without([(1, 4)])
    assert set(cfg.admissible_edges) == {(1, 3), (2, 4)}
    assert count_crossing_free(cfg) == 3


@pytest.mark.parametrize('k', sorted(KNOWN_CENSUS))
def test_census_matches_published_counts(k):
    census = coverage_census(k)
    assert tuple(census.counts[t] for t in range(1, k + 1)) == KNOWN_CENSUS[k]
    assert census.counts[0] == 1
    assert census.total == count_crossing_free(pocket_config(k))


def test_census_json_and_range():
    assert coverage_census(2).to_json() == {'k': 2, 'counts': {'0': 1, '1': 2, '2': 3}, 'total': 6}
    assert coverage_census(3).counts[3] == 11
    with pytest.raises(ValueError):
        coverage_census(0)
    with pytest.raises(ValueError):
        coverage_census(9)


def test_fully_covered_graphs_are_diagonal_sets():
    for k in range(2, 7):
        n = k + 2
        assert coverage_census(k).counts[k] == count_crossing_free(convex_config(n).without([(1, n)]))


def test_orientation():
    assert orient((0, 0), (1, 0), (0, 1)) > 0
    assert orient((0, 0), (1, 0), (0, -1)) < 0
    assert orient((0, 0), (1, 1), (2, 2)) == 0


def test_convex_pentagon_fixture(fixture_path):
    cfg = load_fixture(fixture_path('convex_pentagon.txt'))
    assert cfg.coords[1] == (Fraction(-951, 1000), Fraction(309, 1000))
    assert verify_coordinates(cfg)


def test_zigzag_fixture(fixture_path):
    cfg = load_fixture(fixture_path('zigzag_2_2.txt'))
    assert cfg.kind == 'zigzag'
    assert verify_coordinates(cfg)


def test_perturbed_pocket_point_is_rejected(fixture_path):
    assert not verify_coordinates(load_fixture(fixture_path('zigzag_perturbed.txt')))


def test_double_chain_fixture(fixture_path):
    cfg = load_fixture(fixture_path('double_zigzag_1.txt'))
    assert cfg.facing is not None
    assert len(cfg.coords) == len(cfg.facing.coords) == 4
    assert verify_coordinates(cfg)


def test_double_chain_blocked_visibility(fixture_path):
    cfg = load_fixture(fixture_path('double_zigzag_1.txt'))
    # Both chains stay valid on their own but now overlap.
    upper = cfg.facing.with_coords([(0, '-1/2'), (10, '1/2'), (20, '1/2'), (30, '-1/2')])
    blocked = replace(cfg, facing=upper)
    assert not verify_coordinates(blocked)


def test_missing_coordinates():
    with pytest.raises(MissingCoordinatesError):
        verify_coordinates(convex_config(5))


def test_fixture_dump_matches_source(fixture_path):
    path = fixture_path('zigzag_2_2.txt')
    cfg = load_fixture(path)
    text = dump_fixture(cfg, 'zigzag 2,2')
    assert text.splitlines()[0] == '# kind: zigzag 2,2'
    assert text.splitlines()[1:] == [line for line in path.read_text().splitlines() if not line.startswith('#')]
