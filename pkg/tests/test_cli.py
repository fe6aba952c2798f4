"""End-to-end tests of the command line."""

import csv
import io
import json
import logging

import pytest
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

import main as cli
from bell.instrument import kraus_operators
from fock.basis import enumerate_basis
from utils import logger as logger_module


@pytest.fixture(autouse=True)
def isolated(monkeypatch, mocker):
    """Defaults only, no terminal wrapping, fresh logger."""
    for key in ('BSF_ORACLE_MAX_M', 'BSF_THREADS', 'BSF_MAX_BASIS', 'LOG_DIR', 'LOG_FORMAT'):
        monkeypatch.delenv(key, raising=False)
    mocker.patch('config.load_dotenv', return_value=False)
    mocker.patch('main.colorama_init')
    yield
    logger_module._logger = None
    logging.getLogger('bosonic_stabilizer').handlers.clear()


def run_json(capsys, *argv):
    code = cli.main(['--emit', 'json', *argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_evolve_hong_ou_mandel(capsys):
    code, document = run_json(capsys, 'evolve', '--circuit', 'fourier(2)@0,1', '--input', '1,1')
    assert code == 0
    assert sorted(document['payload']['table']['rows']) == [['0,2', 0.5], ['2,0', 0.5]]


def test_evolve_expansion(capsys):
    code, document = run_json(
        capsys, 'evolve', '--circuit', 'fourier(3)', '--input', '1,1,1', '--method', 'expansion'
    )
    assert code == 0
    assert document['payload']['summary']['total_probability'] == pytest.approx(1.0)


def test_evolve_permutation(capsys):
    code, document = run_json(capsys, 'evolve', '--circuit', 'permute(1,0)', '--input', '2,0')
    assert code == 0
    assert document['payload']['table']['rows'] == [['0,2', 1.0]]


def test_evolve_even_counts(capsys):
    code, document = run_json(capsys, 'evolve', '--circuit', 'fourier(2)@0,1', '--input', '2,2')
    assert code == 0
    outcomes = [row[0] for row in document['payload']['table']['rows']]
    assert sorted(outcomes) == ['0,4', '2,2', '4,0']
    assert all(int(count) % 2 == 0 for outcome in outcomes for count in outcome.split(','))


def test_parse_error_exit_code(capsys):
    assert cli.main(['evolve', '--circuit', 'fourier(2', '--input', '1,1']) == 2
    assert 'line 1, column 10' in capsys.readouterr().err


def test_suppress_hong_ou_mandel(capsys):
    code, document = run_json(
        capsys, 'suppress', '--circuit', 'fourier(2)', '--generators', 'pauli_x(2)', '--photons', '2'
    )
    assert code == 0
    assert document['payload']['table']['rows'][0][0] == '1,1'
    assert document['payload']['summary']['status'] == 'PASS'


def test_suppress_cyclic_law(capsys):
    code, document = run_json(
        capsys, 'suppress', '--circuit', 'fourier(4)', '--generators', 'pauli_x(4)', '--photons', '4'
    )
    assert code == 0
    expected = {
        ','.join(map(str, occupation))
        for occupation in enumerate_basis(4, 4)
        if sum(j * count for j, count in enumerate(occupation)) % 4
    }
    rows = document['payload']['table']['rows']
    assert {row[0] for row in rows} == expected
    assert len(rows) == len(expected)
    assert all(amplitude < 1e-10 for _, amplitude in rows)
    assert document['payload']['summary']['status'] == 'PASS'


def test_suppress_outside_formalism(capsys):
    code = cli.main([
        'suppress', '--circuit', 'fourier(3)',
        '--generators', 'dsum(identity(2), phase(1/2))', '--photons', '2',
    ])
    assert code == 4


def test_measure_half_scheme(capsys):
    code, document = run_json(
        capsys, 'measure',
        '--circuit', 'tensor(identity(2), fourier(2))',
        '--generators', 'tensor(identity(2), pauli_x(2))',
        '--input', 'beta+*beta-', '--rail-major',
    )
    assert code == 0
    probabilities = dict(document['payload']['table']['rows'])
    assert probabilities['1'] == pytest.approx(0.5)
    assert probabilities['-1'] == pytest.approx(0.5)


@pytest.mark.parametrize('m', [2, 3, 4])
def test_measure_copy_shift_on_beta_minus(capsys, m):
    code, document = run_json(
        capsys, 'measure',
        '--circuit', f'tensor(identity(2), fourier({m}))',
        '--generators', f'tensor(identity(2), pauli_x({m}))',
        '--input', '*'.join(['beta-'] * m), '--rail-major',
    )
    assert code == 0
    probabilities = dict(document['payload']['table']['rows'])
    assert len(probabilities) == m
    assert probabilities['1'] == pytest.approx(1.0)
    assert sum(probabilities.values()) - probabilities['1'] == pytest.approx(0.0, abs=1e-12)


def test_bell_table_csv(capsys):
    assert cli.main(['--emit', 'csv', 'bell', '--table', '--m-max', '12']) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ['m', 'P_exact', 'P', 'E', 'odd_m_extension']
    assert len(rows) == 12
    assert rows[7][:2] == ['8', '403/512']


def test_bell_summary(capsys):
    code, document = run_json(capsys, 'bell', '--m', '2', '--povm')
    summary = document['payload']['summary']
    assert code == 0
    assert summary['P_exact'] == '3/4'
    assert summary['E'] == pytest.approx(0.75)
    assert set(document['payload']['details']['kraus']) == {'psi+', 'psi-', 'phi+', 'K0', 'K1', 'K2'}


def test_bell_oracle(capsys):
    code, document = run_json(capsys, 'bell', '--m', '2', '--oracle')
    assert code == 0
    assert document['payload']['summary']['oracle_verdict'] == 'max POVM deviation < 1e-8: PASS'


def test_bell_large_m(capsys):
    code, document = run_json(capsys, 'bell', '--m', '2000')
    summary = document['payload']['summary']
    assert code == 0
    assert 0.99 < summary['E'] < 1.0
    assert summary['P'] == pytest.approx(0.75, abs=0.01)


def test_oracle_size_guard(capsys):
    assert cli.main(['bell', '--m', '5', '--oracle']) == 3


def test_oracle_disagreement(capsys, mocker):
    mocker.patch('orchestrator.reconstruct_povm', return_value=kraus_operators(2))
    mocker.patch('orchestrator.povm_deviation', return_value=1.0)
    assert cli.main(['bell', '--m', '2', '--oracle']) == 5
    assert 'FAIL' in capsys.readouterr().err


def test_verify(capsys):
    code, document = run_json(capsys, '--seed', '3', 'verify', '--trials', '3')
    assert code == 0
    assert document['payload']['summary']['status'] == 'PASS'


@pytest.mark.parametrize('emit', ['text', 'json', 'csv'])
@pytest.mark.parametrize('argv', [
    ['bell', '--m', '4', '--povm'],
    ['evolve', '--circuit', 'fourier(3)', '--input', '1,1,1'],
    ['measure', '--circuit', 'tensor(identity(2), fourier(2))',
     '--generators', 'tensor(identity(2), pauli_x(2))', '--input', 'beta+*beta-', '--rail-major'],
])
def test_repeat_runs_are_identical(capsys, emit, argv):
    outputs = []
    for _ in range(2):
        assert cli.main(['--emit', emit, '--threads', '2', *argv]) == 0
        outputs.append(capsys.readouterr().out.encode('utf-8'))
    assert outputs[0] == outputs[1]


def test_csv_and_json_carry_the_same_numbers(capsys):
    assert cli.main(['--emit', 'csv', 'bell', '--table', '--m-max', '12']) == 0
    csv_rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))[1:]
    code, document = run_json(capsys, 'bell', '--table', '--m-max', '12')
    json_rows = document['payload']['table']['rows']

    assert code == 0
    assert len(csv_rows) == len(json_rows) == 11
    for csv_row, json_row in zip(csv_rows, json_rows):
        m, p_exact, p, e, _ = json_row
        assert int(csv_row[0]) == m
        assert csv_row[1] == p_exact
        assert float(csv_row[2]) == p
        assert float(csv_row[3]) == e


def test_output_file(capsys, tmp_path):
    target = tmp_path / 'out' / 'bell.json'
    assert cli.main(['--emit', 'json', '--output', str(target), 'bell', '--m', '4']) == 0
    assert capsys.readouterr().out == ''
    assert json.loads(target.read_text())['inputs']['m'] == 4


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
