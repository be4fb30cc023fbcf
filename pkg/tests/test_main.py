import json

import pytest

from src import __version__
from src.core import catalog
from src.core.config import PERFORMANCE_CONFIG
from src.core.groups import parse_group_spec
from src.main import EXIT_FAILURE, EXIT_INPUT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_version(capsys):
    code, out = run(capsys, 'version')
    assert code == EXIT_OK
    assert out == f'galconj {__version__}\n'


def test_make_writes_family_spec(capsys):
    code, out = run(capsys, 'make', 'affine_frobenius', '2', '3', '1')
    assert code == EXIT_OK
    assert parse_group_spec(out) == catalog.family_spec('affine_frobenius', [2, 3, 1])


def test_make_expand_to_file(capsys, tmp_path):
    target = tmp_path / 'q8.json'
    code, out = run(capsys, 'make', 'extraspecial', '2', '1', '-', '--expand', '-o', str(target))
    assert code == EXIT_OK
    assert out == ''
    spec = parse_group_spec(target.read_text())
    assert spec.kind == 'mult-table'
    assert catalog.spec_order(spec) == 8


def test_make_rejects_bad_params(capsys):
    code, _ = run(capsys, 'make', 'cyclic', 'x')
    assert code == EXIT_INPUT


def test_check_json(capsys, cache_dir):
    code, out = run(capsys, 'check', '--family', 'dihedral', '6', '--json')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['gcstar'] is True
    assert data['distinct_degrees'] is True
    assert data['structural'] == {'tag': 'TypeB2', 'params': [3, 1, 1]}
    assert data['consistent'] is True
    assert data['passed'] is True


def test_check_text(capsys, cache_dir):
    code, out = run(capsys, 'check', '--family', 'abelian', '2', '2')
    assert code == EXIT_OK
    assert out.startswith('abelian(2,2) (order 4)')
    assert 'Abelian' in out
    assert 'witness         gc: X.2, X.3' in out


def test_check_spec_file(capsys, cache_dir, tmp_path):
    path = tmp_path / 's4.json'
    path.write_text(catalog.family_spec('symmetric4', []).emit())
    code, out = run(capsys, 'check', str(path), '--json')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['gcstar'] is False
    assert data['structural']['params'] == ['NOT_FROBENIUS']


def test_warm_cache_matches_cold(capsys, cache_dir):
    argv = ('check', '--family', 'extraspecial', '3', '1', '1', '--json')
    cold = run(capsys, *argv)
    assert list((cache_dir / 'tables').glob('*.json'))
    warm = run(capsys, *argv)
    assert cold == warm


def test_no_cache_leaves_directory_alone(capsys, cache_dir):
    code, _ = run(capsys, 'chartab', '--family', 'cyclic', '3', '--no-cache')
    assert code == EXIT_OK
    assert not cache_dir.exists()


def test_chartab_text(capsys, cache_dir):
    code, out = run(capsys, 'chartab', '--family', 'cyclic', '3')
    assert code == EXIT_OK
    assert out.startswith('Character table, order 3, 3 classes')


def test_chartab_json_to_file(capsys, cache_dir, tmp_path):
    target = tmp_path / 'a5.json'
    code, _ = run(capsys, 'chartab', '--family', 'alternating5', '--json', '-o', str(target))
    assert code == EXIT_OK
    data = json.loads(target.read_text())
    assert len(data['characters']) == 5


def test_orbits_json(capsys, cache_dir):
    code, out = run(capsys, 'orbits', '--family', 'cyclic', '5', '--json')
    assert code == EXIT_OK
    assert [o['rows'] for o in json.loads(out)['orbits']] == [[0], [1, 2, 3, 4]]


def test_missing_spec_file(capsys, cache_dir, tmp_path):
    code, _ = run(capsys, 'chartab', str(tmp_path / 'absent.json'))
    assert code == EXIT_INPUT


def test_malformed_spec_file(capsys, cache_dir, tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{"kind": "mult-table", "table": [[0, 1], [1]]}')
    code, _ = run(capsys, 'check', str(path))
    assert code == EXIT_INPUT


def test_unknown_family(capsys, cache_dir):
    code, _ = run(capsys, 'check', '--family', 'no_such_family')
    assert code == EXIT_INPUT


def test_no_spec_given(capsys, cache_dir):
    code, _ = run(capsys, 'chartab')
    assert code == EXIT_INPUT


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])


def _write_corpus(directory):
    directory.mkdir()
    (directory / 's3.json').write_text(json.dumps({
        'name': 'S3',
        'spec': {'kind': 'family', 'name': 'dihedral', 'params': [6]},
        'expected': {'tag': 'TypeB2', 'params': [3, 1, 1]},
        'expected_gcstar': True,
        'expected_distinct_degrees': True,
    }))
    (directory / 'q8.json').write_text(json.dumps({
        'name': 'Q8',
        'spec': {'kind': 'family', 'name': 'extraspecial', 'params': [2, 1, -1]},
        'expected': {'tag': 'TypeA', 'params': [2]},
    }))
    (directory / 'c5.json').write_text(
        json.dumps({'kind': 'family', 'name': 'cyclic', 'params': [5]})
    )


def test_corpus_directory(capsys, cache_dir, tmp_path):
    corpus = tmp_path / 'corpus'
    _write_corpus(corpus)
    report = tmp_path / 'report.json'
    csv = tmp_path / 'report.csv'
    code, out = run(capsys, 'corpus', str(corpus), '-o', str(report), '--csv', str(csv))
    assert code == EXIT_OK
    assert '3 of 3 entries passed' in out
    data = json.loads(report.read_text())
    assert data['summary']['passed'] == 3
    assert data['version'] == __version__
    assert csv.read_text().startswith('name,')


def test_corpus_reports_failed_expectation(capsys, cache_dir, tmp_path):
    corpus = tmp_path / 'corpus'
    _write_corpus(corpus)
    (corpus / 'wrong.json').write_text(json.dumps({
        'name': 'D8 mislabelled',
        'spec': {'kind': 'family', 'name': 'dihedral', 'params': [8]},
        'expected': {'tag': 'Abelian', 'params': []},
    }))
    report = tmp_path / 'report.json'
    code, _ = run(capsys, 'corpus', str(corpus), '-o', str(report))
    assert code == EXIT_FAILURE
    entries = {e['name']: e for e in json.loads(report.read_text())['entries']}
    assert entries['D8 mislabelled']['ok'] is False
    assert entries['D8 mislabelled']['expectation_failures']


def test_corpus_jobs_are_deterministic(capsys, cache_dir, tmp_path):
    corpus = tmp_path / 'corpus'
    _write_corpus(corpus)
    serial, parallel = tmp_path / 'serial.json', tmp_path / 'parallel.json'
    assert run(capsys, 'corpus', str(corpus), '-o', str(serial), '--no-cache')[0] == EXIT_OK
    assert run(capsys, 'corpus', str(corpus), '-o', str(parallel), '--no-cache',
               '--jobs', '2')[0] == EXIT_OK
    assert serial.read_text() == parallel.read_text()


def _write_s5(path):
    path.write_text(json.dumps({'kind': 'perm-gens', 'degree': 5,
                                'generators': [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]}))


def test_element_budget_flag(capsys, cache_dir, tmp_path):
    path = tmp_path / 's5.json'
    _write_s5(path)
    default = PERFORMANCE_CONFIG['element_budget']
    code, _ = run(capsys, '--element-budget', '10', 'chartab', str(path), '--no-cache')
    assert code == EXIT_FAILURE
    assert PERFORMANCE_CONFIG['element_budget'] == default


def test_element_budget_reaches_corpus_workers(capsys, cache_dir, tmp_path):
    corpus = tmp_path / 'corpus'
    corpus.mkdir()
    _write_s5(corpus / 's5.json')
    report = tmp_path / 'report.json'
    code, _ = run(capsys, '--element-budget', '10', 'corpus', str(corpus), '-o', str(report),
                  '--jobs', '2', '--no-cache')
    assert code == EXIT_FAILURE
    [entry] = json.loads(report.read_text())['entries']
    assert entry['error'].startswith('BudgetExceededError')


def test_corpus_directory_with_broken_file(capsys, cache_dir, tmp_path):
    corpus = tmp_path / 'corpus'
    _write_corpus(corpus)
    (corpus / 'broken.json').write_text('{"kind": ')
    report = tmp_path / 'report.json'
    code, out = run(capsys, 'corpus', str(corpus), '-o', str(report))
    assert code == EXIT_FAILURE
    assert '3 of 4 entries passed' in out
    entries = {e['name']: e for e in json.loads(report.read_text())['entries']}
    assert entries['broken']['ok'] is False
    assert entries['broken']['error'].startswith('SpecError: broken.json')


@pytest.mark.slow
def test_builtin_corpus_passes(capsys, cache_dir, tmp_path):
    code, out = run(capsys, 'corpus', '--jobs', '2', '-o', str(tmp_path / 'report.json'))
    assert code == EXIT_OK
    total = len(catalog.builtin_corpus())
    assert f'{total} of {total} entries passed' in out
