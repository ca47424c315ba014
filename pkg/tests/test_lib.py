# -*- coding: utf-8 -*-
"""lib 模块测试：CSV 产物、有序并发执行、运行配置与日志处理器。"""

import io
import threading
import time

import pandas as pd
import pytest

from eqchrom.lib import csv_store
from eqchrom.lib.log_handler import DefaultLogHandler
from eqchrom.lib.run_template import run_ordered
from eqchrom.lib.settings import run_settings
from eqchrom.lib.version import __version__


class TestCsvStore:

    def test_round_trip(self, tmp_path):
        df = pd.DataFrame({'n': [4, 5], 'p': ['1/2', '1/3'], 'value': [0.1, 1e-300]})
        path = str(tmp_path / 'sub' / 'out.csv')
        csv_store.write_csv(df, path, {'command': 'moments', 'seed': 7})
        meta, back = csv_store.read_csv(path)
        assert meta['version'] == __version__
        assert meta['command'] == 'moments'
        assert meta['seed'] == '7'
        assert 'created' in meta
        assert list(back['n']) == [4, 5]
        assert list(back['p']) == ['1/2', '1/3']
        assert list(back['value']) == [0.1, 1e-300]

    def test_body_is_deterministic(self):
        df = pd.DataFrame({'j': [30, 31], 'gamma_j': [30.25, 31.125]})
        first, second = io.StringIO(), io.StringIO()
        csv_store.write_csv(df, first, {'command': 'subseq'})
        time.sleep(0.01)
        csv_store.write_csv(df, second, {'command': 'subseq'})
        assert csv_store.body_of(first.getvalue()) == csv_store.body_of(second.getvalue())
        assert csv_store.body_of(first.getvalue()).startswith("j,gamma_j\n")

    def test_non_ascii_escaped(self, tmp_path):
        df = pd.DataFrame({'input': ['图.dimacs'], 'value': [3]})
        path = tmp_path / 'solve.csv'
        csv_store.write_csv(df, str(path), {'command': 'solve', 'parameters': 'solve --input 图.dimacs'})
        raw = path.read_bytes()
        assert raw.isascii()
        meta, back = csv_store.read_csv(str(path))
        assert meta['parameters'] == 'solve --input \\u56fe.dimacs'
        assert list(back['input']) == ['\\u56fe.dimacs']

    def test_metadata_order(self):
        text = csv_store.metadata_lines({'command': 'solve', 'version': 'x', 'k': 3})
        lines = text.splitlines()
        assert lines[0] == f"# version: {__version__}"
        assert lines[1:3] == ["# command: solve", "# k: 3"]
        assert lines[3].startswith("# created: ")


def _square(x, offset=0):
    time.sleep(0.001 * (7 - x % 7))
    return x * x + offset


def _fails_on_three(x):
    if x == 3:
        raise ValueError("three")
    return x


class TestRunOrdered:

    @pytest.mark.parametrize('workers', [1, 4])
    def test_order_kept(self, workers):
        assert run_ordered(_square, range(20), workers, 1) == [x * x + 1 for x in range(20)]

    def test_failure_isolated(self):
        assert run_ordered(_fails_on_three, range(5), 2) == [0, 1, 2, None, 4]

    @pytest.mark.parametrize('workers', [1, 3])
    def test_reraise(self, workers):
        with pytest.raises(ValueError):
            run_ordered(_fails_on_three, range(5), workers, reraise=(ValueError,))

    def test_default_workers(self, fresh_settings):
        fresh_settings.setenv('EQCHROM_THREADS', '2')
        names = run_ordered(lambda _: threading.current_thread().name, range(4))
        assert len(names) == 4


class TestSettings:

    def test_env_override(self, fresh_settings):
        fresh_settings.setenv('EQCHROM_THREADS', '3')
        fresh_settings.setenv('EQCHROM_SEED', '11')
        fresh_settings.setenv('EQCHROM_TIME_LIMIT', '2.5')
        cfg = run_settings()
        assert (cfg.threads, cfg.master_seed, cfg.time_limit) == (3, 11, 2.5)

    def test_bad_values_ignored(self, fresh_settings):
        fresh_settings.setenv('EQCHROM_THREADS', 'many')
        fresh_settings.setenv('EQCHROM_TIME_LIMIT', '-1')
        cfg = run_settings()
        assert cfg.threads >= 1
        assert cfg.time_limit == 60.0

    def test_singleton(self, fresh_settings):
        assert run_settings() is run_settings()

    def test_log_dir(self, fresh_settings, tmp_path):
        fresh_settings.setenv('EQCHROM_LOG_DIR', str(tmp_path / 'log'))
        assert run_settings().ensure_log_dir() == str(tmp_path / 'log')
        assert (tmp_path / 'log').is_dir()


class TestLogHandler:

    def test_null(self):
        log = DefaultLogHandler(name='test', log_type='null')
        log.info('discarded')

    def test_file(self, tmp_path):
        path = str(tmp_path / 'logs' / 'run.log')
        log = DefaultLogHandler(name='test', log_type='file', filepath=path)
        log.warn('sample 17 timeout')
        for handler in log.handlers:
            handler.close()
        with open(path, encoding='utf-8') as fh:
            assert 'sample 17 timeout' in fh.read()
