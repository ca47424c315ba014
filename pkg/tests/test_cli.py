# -*- coding: utf-8 -*-
"""命令行测试：子命令输出、退出码与输出的可复现性。"""

import io

import pytest

from eqchrom.core.errors import OracleMismatch
from eqchrom.core.graphs import SeedSpec, sample_gnp, write_dimacs
from eqchrom.core.solver import read_witness_csv
from eqchrom.job import cli, moments_job, verify_oracles_job
from eqchrom.lib import csv_store


def _run(capsys, *argv):
    code = cli.run(list(argv) + ['--log', 'null'])
    captured = capsys.readouterr()
    return code, captured.out


def _frame(text):
    return csv_store.read_csv(io.StringIO(text))


class TestMoments:

    def test_exact(self, capsys):
        code, out = _run(capsys, 'moments', '--n', '4', '--k', '2', '--p', '1/2', '--mode', 'exact')
        assert code == cli.EXIT_OK
        meta, data = _frame(out)
        assert meta['command'] == 'moments'
        assert meta['table'] == 'moments'
        assert 'parameters' in meta
        assert '6/5' in out and '3/5' in out
        assert list(data['k']) == [2]

    def test_several_k(self, capsys):
        code, out = _run(capsys, 'moments', '--n', '40', '--k', '5', '8', '10', '--p', '1/2')
        assert code == cli.EXIT_OK
        assert list(_frame(out)[1]['k']) == [5, 8, 10]

    def test_body_reproducible(self, capsys):
        argv = ('moments', '--n', '30', '--k', '3', '6', '--p', '1/3', '--mode', 'log')
        first = _run(capsys, *argv)[1]
        second = _run(capsys, *argv)[1]
        assert csv_store.body_of(first) == csv_store.body_of(second)

    def test_default_mode(self, capsys):
        code, out = _run(capsys, 'moments', '--n', '40', '--k', '5', '--p', '1/2')
        assert code == cli.EXIT_OK
        _, data = _frame(out)
        assert list(data['mode']) == ['log_domain']

    def test_human(self, capsys):
        code, out = _run(capsys, 'moments', '--n', '4', '--k', '2', '--p', '1/2', '--format', 'human')
        assert code == cli.EXIT_OK
        assert out.startswith('# version: ')


class TestUsage:

    @pytest.mark.parametrize('argv', [
        [],
        ['moments', '--n', '4', '--k', '2', '--p', '2'],
        ['moments', '--n', '4', '--k', '2', '--p', '1/2', '--mode', 'fast'],
        ['moments', '--n', '4', '--k', '2', '--p', '1/2', '--threads', '0'],
        ['verify', 'lemmas', '--p', '1/2', '--n-list', 'a,b'],
        ['sample', '--n', '5', '--m', '3', '--p', '1/2'],
    ])
    def test_bad_arguments(self, capsys, argv):
        assert cli.run(argv) == cli.EXIT_USAGE
        capsys.readouterr()

    def test_domain_error(self, capsys):
        code, _ = _run(capsys, 'moments', '--n', '6', '--k', '2', '--p', '9/10')
        assert code == cli.EXIT_USAGE

    def test_missing_input(self, capsys, tmp_path):
        code, _ = _run(capsys, 'solve', '--input', str(tmp_path / 'missing.dimacs'))
        assert code == cli.EXIT_USAGE

    def test_unexpected_error(self, capsys, monkeypatch):
        def broken(args, log):
            raise RuntimeError("boom")

        monkeypatch.setattr(moments_job, 'run', broken)
        code, _ = _run(capsys, 'moments', '--n', '4', '--k', '2', '--p', '1/2')
        assert code == cli.EXIT_INTERNAL
        assert code != cli.EXIT_MISMATCH

    def test_mismatch_code(self, capsys, monkeypatch):
        def mismatch(args, log):
            raise OracleMismatch("mu_exact n=4 k=2")

        monkeypatch.setattr(verify_oracles_job, 'run', mismatch)
        code, _ = _run(capsys, 'verify', 'oracles', '--n-max', '4')
        assert code == cli.EXIT_MISMATCH


class TestSampleAndSolve:

    def test_pipeline(self, capsys, tmp_path):
        out_dir = tmp_path / 'samples'
        code, _ = _run(capsys, 'sample', '--n', '9', '--p', '1/2', '--model', 'gnm', '--count', '3', '--seed', '7',
                       '--out', str(out_dir))
        assert code == cli.EXIT_OK
        meta, index = csv_store.read_csv(str(out_dir / 'samples.csv'))
        assert list(index['path']) == ['graph_0000.dimacs', 'graph_0001.dimacs', 'graph_0002.dimacs']
        assert set(index['m']) == {18}

        witness_path = tmp_path / 'witness.csv'
        code, out = _run(capsys, 'solve', '--input', str(out_dir / 'graph_0001.dimacs'), '--mode', 'chi-eq',
                         '--witness', str(witness_path))
        assert code == cli.EXIT_OK
        _, data = _frame(out)
        assert list(data['status']) == ['ok']
        assert 'seconds' not in data.columns
        witness = read_witness_csv(str(witness_path))
        assert witness.k == int(data['value'][0])

    def test_p_selects_gnp(self, capsys, tmp_path):
        out_dir = tmp_path / 'gnp'
        code, _ = _run(capsys, 'sample', '--n', '30', '--p', '1/2', '--count', '4', '--seed', '7',
                       '--out', str(out_dir))
        assert code == cli.EXIT_OK
        meta, index = csv_store.read_csv(str(out_dir / 'samples.csv'))
        assert meta['model'] == 'gnp'
        assert set(index['model']) == {'gnp'}
        assert 'model gnp' in (out_dir / 'graph_0000.dimacs').read_text()

    def test_m_selects_gnm(self, capsys, tmp_path):
        out_dir = tmp_path / 'gnm'
        code, _ = _run(capsys, 'sample', '--n', '12', '--m', '20', '--count', '2', '--out', str(out_dir))
        assert code == cli.EXIT_OK
        _, index = csv_store.read_csv(str(out_dir / 'samples.csv'))
        assert set(index['model']) == {'gnm'}
        assert set(index['m']) == {20}

    def test_non_ascii_input_name(self, capsys, tmp_path):
        path = tmp_path / '图.dimacs'
        path.write_text("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n", encoding='utf-8')
        out = tmp_path / 'result.csv'
        code, _ = _run(capsys, 'solve', '--input', str(path), '--out', str(out))
        assert code == cli.EXIT_OK
        raw = out.read_bytes()
        assert raw.isascii()
        assert b'\\u56fe.dimacs' in raw
        _, data = csv_store.read_csv(str(out))
        assert int(data['value'][0]) == 2

    def test_sampling_reproducible(self, capsys, tmp_path):
        for name in ('a', 'b'):
            _run(capsys, 'sample', '--n', '12', '--m', '20', '--count', '2', '--seed', '3',
                 '--threads', '2', '--out', str(tmp_path / name))
        for file in ('graph_0000.dimacs', 'graph_0001.dimacs'):
            assert (tmp_path / 'a' / file).read_text() == (tmp_path / 'b' / file).read_text()

    @pytest.mark.parametrize('mode,expected', [('chi', 2), ('chi-eq', 2), ('threshold', 4)])
    def test_modes(self, capsys, tmp_path, mode, expected):
        path = tmp_path / 'k33.dimacs'
        path.write_text("p edge 6 9\n" + "".join(f"e {u} {v}\n" for u in (1, 2, 3) for v in (4, 5, 6)))
        code, out = _run(capsys, 'solve', '--input', str(path), '--mode', mode, '--timings')
        assert code == cli.EXIT_OK
        _, data = _frame(out)
        assert int(data['value'][0]) == expected
        assert 'seconds' in data.columns

    def test_timeout(self, capsys, tmp_path):
        path = str(tmp_path / 'big.dimacs')
        write_dimacs(sample_gnp(60, '1/2', SeedSpec(1)), path)
        code, out = _run(capsys, 'solve', '--input', path, '--time-limit', '1e-9')
        assert code == cli.EXIT_TIMEOUT
        _, data = _frame(out)
        assert list(data['status']) == ['timeout']
        assert int(data['value'][0]) == -1
        assert int(data['lower'][0]) <= int(data['upper'][0])


class TestConcentration:

    def test_small_run(self, capsys, tmp_path):
        out = tmp_path / 'conc.csv'
        bodies = []
        for threads in ('1', '3'):
            code, _ = _run(capsys, 'experiment', 'concentration', '--n', '10', '--p', '1/2', '--samples', '6',
                           '--seed', '5', '--threads', threads, '--out', str(out))
            assert code == cli.EXIT_OK
            bodies.append(csv_store.body_of(out.read_text()))
        assert bodies[0] == bodies[1]
        _, data = csv_store.read_csv(str(out))
        assert list(data['sample']) == list(range(6))
        for _, row in data.iterrows():
            assert row['status'] == 'ok'
            assert 1 <= row['chi'] <= row['chi_eq'] <= row['max_degree'] + 1
            assert row['chi_eq'] <= row['greedy_k']
        _, histogram = csv_store.read_csv(str(tmp_path / 'conc.histogram.csv'))
        assert histogram[histogram['quantity'] == 'chi']['count'].sum() == 6

    def test_desk_scale_run(self, capsys, tmp_path):
        out = tmp_path / 'n24.csv'
        code, _ = _run(capsys, 'experiment', 'concentration', '--n', '24', '--p', '1/2', '--samples', '200',
                       '--seed', '11', '--threads', '4', '--out', str(out))
        assert code == cli.EXIT_OK
        _, data = csv_store.read_csv(str(out))
        assert len(data.index) == 200
        solved = data[data['status'] == 'ok']
        assert len(solved.index) > 0
        assert (solved['chi'] <= solved['chi_eq']).all()
        _, histogram = csv_store.read_csv(str(tmp_path / 'n24.histogram.csv'))
        assert histogram[histogram['quantity'] == 'chi_eq']['count'].sum() == len(solved.index)


class TestSubseq:

    def test_range(self, capsys):
        code, out = _run(capsys, 'subseq', '--p', '1/2', '--j-min', '28', '--j-max', '29', '--threads', '2')
        assert code == cli.EXIT_OK
        meta, data = _frame(out)
        assert meta['threshold_log'] == 'natural'
        assert list(data['j']) == [28, 29]
        assert all(n % j == 0 for n, j in zip(data['n_j'], data['j']))

    def test_bad_range(self, capsys):
        code, _ = _run(capsys, 'subseq', '--p', '1/2', '--j-min', '2', '--j-max', '5')
        assert code == cli.EXIT_USAGE


class TestVerify:

    def test_oracles(self, capsys):
        code, out = _run(capsys, 'verify', 'oracles', '--n-max', '4')
        assert code == cli.EXIT_OK
        _, data = _frame(out)
        assert data['ok'].astype(str).isin(['True', 'true', '1']).all()

    def test_lemmas(self, capsys):
        code, out = _run(capsys, 'verify', 'lemmas', '--p', '1/2', '--n-list', '10000', '--j-list', '20')
        assert code == cli.EXIT_OK
        meta, data = _frame(out)
        assert meta['table'] == 'lemmas'
        assert 'rate' in set(data['lemma'])
