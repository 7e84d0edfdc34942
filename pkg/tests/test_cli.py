# -*- coding: utf-8 -*-

import json
import subprocess
import sys

import pytest

import loopsoup
from loopsoup.report import VerificationReport
from loopsoup.suites import SuiteStack


def test_cli_main_empty():
    with pytest.raises(SystemExit):
        loopsoup.cli.main([])


def test_parser_needs_input():
    with pytest.raises(SystemExit):
        parser = loopsoup.cli.create_parser()
        parser.parse_args(['validate'])


def test_main_help():
    # Call with the --help option as a basic sanity check.
    with pytest.raises(SystemExit) as exinfo:
        loopsoup.cli.main(["--help", ])
    assert exinfo.value.code == 0


def test_main_version(capsys):
    with pytest.raises(SystemExit) as exinfo:
        loopsoup.cli.main(['--version'])
    assert exinfo.value.code == 0
    out, _ = capsys.readouterr()
    assert out.strip() == loopsoup.__version__


def test_invalid_choice(datapath):
    with pytest.raises(SystemExit):
        loopsoup.cli.main(['verify', '--input', datapath('singleton'),
                           'everything'])


def test_validate(datapath, capsys):
    code = loopsoup.cli.main(['validate', '--input', datapath('hermitian2')])
    out, _ = capsys.readouterr()
    assert code == 0
    lines = out.splitlines()
    assert 'n: 2' in lines
    assert 'integrable: true' in lines
    assert 'hermitian: true' in lines
    assert 'samplable: false' in lines


def test_validate_critical(filepath, capsys):
    code = loopsoup.cli.main(['validate', '--input',
                              filepath('critical.json'), '--format', 'json'])
    out, _ = capsys.readouterr()
    assert code == 0
    data = json.loads(out)
    assert data['integrable'] is False
    assert data['rho'] == 1.0


def test_current_json(datapath, capsys):
    code = loopsoup.cli.main(['current', '--input', datapath('hermitian2'),
                              '--format', 'json', '1,2,1', '2,1,1'])
    out, _ = capsys.readouterr()
    assert code == 0
    data = json.loads(out)
    assert data['current'] == [[1, 2, 1], [2, 1, 1]]
    assert data['nu_c'][0] == pytest.approx(0.1875)
    assert data['nu_c'][1] == pytest.approx(0, abs=1e-15)
    assert 'oracle_bubble' not in data


def test_current_oracles(datapath, capsys):
    code = loopsoup.cli.main(['current', '--input', datapath('singleton'),
                              '--format', 'json', '--oracles', '1,1,3'])
    out, _ = capsys.readouterr()
    assert code == 0
    data = json.loads(out)
    for key in ('nu_c', 'oracle_bubble', 'oracle_loopsoup'):
        assert data[key][0] == pytest.approx(0.0625)


def test_current_zero(datapath, capsys):
    code = loopsoup.cli.main(['current', '--input', datapath('singleton'),
                              '--format', 'json'])
    out, _ = capsys.readouterr()
    assert code == 0
    assert json.loads(out)['nu_c'][0] == pytest.approx(0.5)


def test_current_not_a_current(datapath, capsys):
    code = loopsoup.cli.main(['current', '--input', datapath('hermitian2'),
                              '1,2,1'])
    _, err = capsys.readouterr()
    assert code == 1
    assert err.startswith('[ERROR] NotACurrent:')


@pytest.mark.parametrize('triplet', ['1,2', 'a,b,c', '1,1,-1'])
def test_current_bad_triplet(datapath, capsys, triplet):
    code = loopsoup.cli.main(['current', '--input', datapath('hermitian2'),
                              triplet])
    _, err = capsys.readouterr()
    assert code == 2
    assert err.startswith('[ERROR] Invalid options: Invalid triplet')


def test_density(datapath, capsys):
    code = loopsoup.cli.main(['density', '--input', datapath('hermitian2'),
                              '--format', 'json', '1.0', '1.0'])
    out, _ = capsys.readouterr()
    assert code == 0
    data = json.loads(out)
    assert data['point'] == [1.0, 1.0]
    series = data['series']['value'][0]
    assert abs(series - data['quadrature']['value']) <= \
        data['series']['tail_bound'] + data['quadrature']['error'] + 1e-12
    assert data['discrepancy'] < 1e-10


def test_density_without_quadrature(datapath, capsys):
    code = loopsoup.cli.main(['density', '--input',
                              datapath('substochastic3'), '--format', 'json',
                              '--max-total', '6', '0.5', '0.5', '0.5'])
    out, _ = capsys.readouterr()
    assert code == 0
    data = json.loads(out)
    assert data['series']['max_total'] == 6
    assert 'quadrature' not in data


def test_density_negative(datapath, capsys):
    code = loopsoup.cli.main(['density', '--input', datapath('singleton'),
                              '-1.0'])
    _, err = capsys.readouterr()
    assert code == 1
    assert err.startswith('[ERROR] NegativePoint:')


def test_density_wrong_size(datapath, capsys):
    code = loopsoup.cli.main(['density', '--input', datapath('hermitian2'),
                              '1.0'])
    _, err = capsys.readouterr()
    assert code == 2
    assert 'density needs 2 coordinates' in err


def test_invalid_args(datapath, capsys):
    code = loopsoup.cli.main(['validate', '--input', datapath('singleton'),
                              '--max-total', '0'])
    _, err = capsys.readouterr()
    assert code == 2
    assert err == ('[ERROR] Invalid options: Invalid value for '
                   'max_total: 0\n')


def test_invalid_infile(filepath, capsys):
    code = loopsoup.cli.main(['validate', '--input',
                              filepath('missing.json')])
    _, err = capsys.readouterr()
    assert code == 2
    assert err[:22] == "[ERROR] Failed to read"


def test_malformed_infile(filepath, capsys):
    code = loopsoup.cli.main(['validate', '--input',
                              filepath('short_row.json')])
    _, err = capsys.readouterr()
    assert code == 2
    assert err.startswith('[ERROR] Failed to parse')
    assert 'row 2 must hold 2 entries' in err


def test_non_finite_infile(filepath, capsys):
    code = loopsoup.cli.main(['validate', '--input',
                              filepath('nan_entry.json')])
    _, err = capsys.readouterr()
    assert code == 2
    assert err.startswith('[ERROR] Failed to parse')
    assert 'row 2, entry 1' in err


def test_not_integrable(filepath, capsys):
    code = loopsoup.cli.main(['current', '--input',
                              filepath('critical.json'), '1,1,1'])
    _, err = capsys.readouterr()
    assert code == 1
    assert err.startswith('[ERROR] NotIntegrable:')


def test_verify_isomorphism(datapath, capsys):
    code = loopsoup.cli.main(['verify', '--input', datapath('hermitian2'),
                              'isomorphism', '--grid', '0.5',
                              '--max-total', '8', '--quad', '8',
                              '--format', 'json'])
    out, _ = capsys.readouterr()
    assert code == 0
    data = json.loads(out)
    assert data['name'] == 'isomorphism'
    assert data['status'] == 'PASS'
    assert data['parameters']['max_total'] == 8


def test_verify_skip(datapath, capsys):
    code = loopsoup.cli.main(['verify', '--input', datapath('substochastic3'),
                              'isomorphism'])
    out, _ = capsys.readouterr()
    assert code == 0
    assert 'status: SKIP' in out.splitlines()


def test_verify_failure_exit_code(datapath, capsys, monkeypatch):
    class Broken(object):
        name = 'broken'

        def run(self, Q, config):
            return VerificationReport(name=self.name, status='FAIL')

    def build(name):
        stack = SuiteStack()
        stack.append(Broken())
        return stack

    monkeypatch.setattr(loopsoup.cli, 'build_suite_stack', build)
    code = loopsoup.cli.main(['verify', '--input', datapath('singleton'),
                              'identities'])
    out, _ = capsys.readouterr()
    assert code == 1
    assert 'status: FAIL' in out.splitlines()


def test_sample(datapath, tmpdir, capsys):
    out_path = str(tmpdir.join('samples.jsonl'))
    code = loopsoup.cli.main(['sample', '--input', datapath('substochastic3'),
                              '--samples', '50', '--seed', '1',
                              '--out', out_path, '--format', 'json'])
    out, _ = capsys.readouterr()
    assert code == 0
    summary = json.loads(out)
    assert summary['samples'] == 50
    assert summary['seed'] == 1
    assert len(summary['mean_occupation']) == 3
    with open(out_path) as f:
        records = [json.loads(line) for line in f]
    assert [r['index'] for r in records] == list(range(50))
    assert all(len(r['loops']) == 3 for r in records)


def test_sample_is_reproducible(datapath, capsys):
    args = ['sample', '--input', datapath('substochastic3'),
            '--samples', '20', '--seed', '5', '--format', 'json']
    loopsoup.cli.main(args)
    first, _ = capsys.readouterr()
    loopsoup.cli.main(args + ['--workers', '2'])
    second, _ = capsys.readouterr()
    assert json.loads(first) == json.loads(second)


def test_sample_not_samplable(datapath, capsys):
    code = loopsoup.cli.main(['sample', '--input', datapath('hermitian2'),
                              '--samples', '10'])
    _, err = capsys.readouterr()
    assert code == 1
    assert err.startswith('[ERROR] NotSamplable:')


def test_invalid_outfile(datapath, filepath, capsys):
    out_path = filepath('/missing/samples.jsonl')
    code = loopsoup.cli.main(['sample', '--input', datapath('substochastic3'),
                              '--samples', '10', '--out', out_path])
    _, err = capsys.readouterr()
    assert code == 2
    assert err[:22] == "[ERROR] Failed to open"


def test_script():
    # Call with the --help option as a basic sanity check.
    cmd = "{0:s} -m loopsoup --help".format(sys.executable)
    assert subprocess.call(cmd.split()) == 0
