import json
from fractions import Fraction

import pytest

from services.numerics import floor_fraction
from services.production import InvalidChainError
from services.report_service import (
    TABLE1_INNER, census_table, cmd_table1, cmd_total, parse_int_list,
)

FAST = {'restarts': 1}


def test_total_composes_its_parts():
    report = cmd_total(2, 16, 20, **FAST)
    assert report.pockets == (2,)
    assert report.cycle_length == 3
    assert report.perron_root ** 3 <= report.perron.lower_bound
    assert report.inner_base == report.inner[2].base_floor
    assert report.total == floor_fraction(2 * report.perron_root * report.inner_base, 20)
    assert Fraction(report.total_base) <= report.total
    # Even a small matrix already beats the double chain alone.
    assert float(report.total) > 2 * (2 + 2 ** 0.5) ** 2


def test_total_json_is_deterministic():
    first = cmd_total(1, 12, 20, **FAST).to_json()
    second = cmd_total(1, 12, 20, **FAST).to_json()
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    assert set(first) == {'k', 'pockets', 'matrix_dim', 'precision_digits', 'perron',
                          'perron_root', 'inner', 'inner_base', 'total_base'}


def test_mixed_pockets():
    report = cmd_total(2, 16, 20, pockets=[2, 3], **FAST)
    assert report.pockets == (2, 3)
    assert report.cycle_length == 7
    assert set(report.inner) == {2, 3}
    assert report.perron.dim == 16
    assert report.perron_root ** 7 <= report.perron.lower_bound


def test_total_rejects_bad_input():
    with pytest.raises(InvalidChainError):
        cmd_total(7, 32)
    with pytest.raises(InvalidChainError):
        cmd_total(5, 6)
    with pytest.raises(InvalidChainError):
        cmd_total(2, 16, pockets=[2, 0])


def test_table_without_totals():
    table = cmd_table1(range(2, 7), with_totals=False, **FAST)
    lines = table.render().splitlines()
    row = lines[2 + 3].split()
    assert row == ['4', '–', '–', '45', '121', '237']
    inner = next(line for line in lines if line.startswith('in')).split()[1:]
    for k, cell in zip(range(2, 7), inner):
        assert Fraction(cell) >= Fraction(TABLE1_INNER[k])
    assert table.to_json()['total'] == {}


def test_table_rows_are_limited():
    with pytest.raises(InvalidChainError):
        cmd_table1([1, 2], with_totals=False)


def test_census_table():
    assert census_table(4).counts[4] == 45
    with pytest.raises(InvalidChainError):
        census_table(7)


def test_parse_int_list():
    assert parse_int_list('2-6') == [2, 3, 4, 5, 6]
    assert parse_int_list('2, 3,5') == [2, 3, 5]
    assert parse_int_list(4) == [4]
    with pytest.raises(ValueError):
        parse_int_list(' , ')
    with pytest.raises(ValueError):
        parse_int_list('a')


@pytest.mark.slow
@pytest.mark.parametrize('k, floor', [(2, '41.77398'), (5, '42.11667'), (6, '42.0')])
def test_headline_totals(k, floor):
    report = cmd_total(k, 1024, 20, restarts=2)
    assert report.total >= Fraction(floor)
    assert Fraction(report.total_base) >= Fraction(floor)
