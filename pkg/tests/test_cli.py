import json

import pytest
from click.testing import CliRunner

from cli import cli
from utility import selftest
from utility.selftest import D4_I, D4_J


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args))
    return invoke


def test_classify(run):
    result = run('classify', '--a', '0,2,6,7,9', '--json')
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report['deviation'] == 2
    assert report['cm'] is False
    assert report['newton_vertices'] == [0, 1, 4]
    assert report['hilbert']['h'][0] == 24
    assert report['cones'] == []


def test_classify_cm_sequence(run):
    report = json.loads(run('classify', '--a', '0,4,6,7').output)
    assert report['cm'] is True
    assert [0, 3] in report['cones']


def test_classify_rejects_bad_sequences(run):
    result = run('classify', '--a', '1,2,3')
    assert result.exit_code == 1
    assert 'invalid-sequence' in result.output
    result = run('classify', '--a', '0,x')
    assert result.exit_code == 1
    assert 'parse-error' in result.output


def test_usage_errors(run):
    assert run('no-such-verb').exit_code == 2
    assert run('classify').exit_code == 2
    assert run('fan', '--d', '0').exit_code == 2
    assert run('symbolic', '--d', '3').exit_code == 2


def test_product(run):
    report = json.loads(run('product', '--factors', '0,4,6,7;0,2').output)
    assert report['cm'] is True
    report = json.loads(run('product', '--factors', '0,4,6,7;0,2', '--same-direction').output)
    assert report['product'] == [0, 2, 6, 7, 9]
    assert report['deviation'] == 2
    assert report['cm'] is False


def test_cm_list(run):
    entries = json.loads(run('cm-list', '--d', '2').output)
    assert len(entries) == 2
    assert entries[0]['sequence'] == [0, 1, 2]


def test_cm_list_csv(run):
    result = run('cm-list', '--d', '3', '--format', 'csv')
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0].startswith('sequence,')
    assert len(lines) == 5


def test_gb(run):
    report = json.loads(run('gb', '--d', '2', '--weight', '0,2,3').output)
    assert report['gb_text'] == ["t1^2 - t0*t2"]
    assert report['initial_forms']['monomial'] is True


def test_gb_errors(run):
    result = run('gb', '--d', '3', '--weight', '0,1,2')
    assert result.exit_code == 1
    assert 'dimension-mismatch' in result.output
    result = run('gb', '--d', '2', '--weight', '0,-1,2')
    assert result.exit_code == 1
    assert 'negative-weight' in result.output


def test_fan_census(run):
    result = run('fan', '--d', '4', '--census')
    assert result.exit_code == 0
    assert json.loads(result.output) == {"0": 10, "1": 24, "2": 8}


def test_fan_output_is_deterministic(run):
    first = run('fan', '--d', '3')
    second = run('fan', '--d', '3')
    assert first.exit_code == 0
    assert first.output == second.output
    assert len(json.loads(first.output)['cells']) == 8


def test_fan_cap(run):
    result = run('fan', '--d', '5', '--max-d', '4')
    assert result.exit_code == 1
    assert 'cap-exceeded' in result.output


def test_fan_sampling(run):
    report = json.loads(run('fan', '--d', '4', '--sample', '30').output)
    assert report['mode'] == 'sampling'
    assert report['equal'] is True


def test_bigcone(run):
    report = json.loads(run('bigcone', '--d', '4', '--member', '0,1,3,4,6').output)
    assert report['sequence_count'] == 5
    assert report['fibonacci'] == 5
    assert report['member'] is True


def test_symbolic(run):
    report = json.loads(run('symbolic', '--d', '3', '--sequence', '0,1,2,3').output)
    assert report['h'] == [[1, 1, 1, 1], [0, 1, 1, 0]]
    report = json.loads(run('symbolic', '--d', '3', '--ideal', 't2^2;t1*t2;t1^2').output)
    assert report['h'] == [[1, 1, 1, 1], [2, -1, -1, 2]]


def test_compare(run):
    result = run('compare', '--d', '4', '--ideal1', D4_I, '--ideal2', D4_J)
    assert result.exit_code == 0
    comparison = json.loads(result.output)['comparison']
    assert comparison['Q_equal'] is True
    assert comparison['Q1_equal'] is False


def test_out_file(run, tmp_path):
    target = tmp_path / 'census.json'
    result = run('--out', str(target), 'fan', '--d', '3', '--census')
    assert result.exit_code == 0
    assert result.output == ""
    assert json.loads(target.read_text()) == {"0": 0, "1": 4, "2": 4}


def test_text_format(run):
    result = run('--format', 'text', 'fan', '--d', '3', '--census')
    assert result.exit_code == 0
    assert 'depth' in result.output


@pytest.mark.slow
def test_selftest_quick(run):
    result = run('selftest', '--quick')
    assert result.exit_code == 0
    assert json.loads(result.output)['passed'] is True


def test_selftest_output_is_reproducible(run, monkeypatch):
    monkeypatch.setattr(selftest, 'acceptance_checks',
                        lambda quick=False: [('products', selftest.check_products),
                                             ('permutations', selftest.check_permutations)])
    first = run('selftest', '--quick')
    second = run('selftest', '--quick')
    assert first.exit_code == 0
    assert first.output == second.output
    report = json.loads(first.output)
    assert report['passed'] is True
    assert [set(row) for row in report['checks']] == [{'name', 'passed', 'detail'}] * 2
