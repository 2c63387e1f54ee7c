import pytest

from services.verify_service import SUITES, UnknownSuiteError, run_suite

SMALL = {
    'convex': 8,
    'outer': 2,
    'census': 5,
    'swap': 3,
    'lemma2': 32,
    'primitivity': 16,
}


@pytest.mark.parametrize('name', sorted(SUITES))
def test_suite_passes_on_small_inputs(name):
    report = run_suite(name, SMALL[name])
    assert report.passed, [row for row in report.rows if not row['ok']]
    data = report.to_json()
    assert data['suite'] == name
    assert data['max_n'] == SMALL[name]
    assert data['passed'] is True


def test_convex_rows_carry_totals():
    rows = run_suite('convex', 7).rows
    assert [r['n'] for r in rows] == [3, 4, 5, 6, 7]
    assert rows[-1]['total'] == 25216
    assert rows[1]['vector'] == [2, 3, 1, 0]


def test_census_rows():
    rows = run_suite('census', 3).rows
    assert rows[2]['counts'] == {'0': 1, '1': 3, '2': 7, '3': 11}


def test_failed_check_is_reported_not_raised():
    report = run_suite('swap', 1)
    report.add(False, note='forced')
    assert not report.passed
    assert report.rows[-1] == {'ok': False, 'note': 'forced'}


def test_unknown_suite_and_bad_size():
    with pytest.raises(UnknownSuiteError):
        run_suite('nope')
    with pytest.raises(ValueError):
        run_suite('convex', 0)


@pytest.mark.slow
def test_default_sizes():
    for name in ('convex', 'census', 'lemma2', 'primitivity'):
        assert run_suite(name).passed
