# -*- coding: utf-8 -*-
"""pytest 公共配置：把项目根目录加入 sys.path，并提供共用的 fixture。"""

import os.path
import sys

import pytest

cpath_current = os.path.dirname(__file__)
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.insert(0, cpath)

from eqchrom.lib.settings import run_settings  # noqa: E402


@pytest.fixture
def fresh_settings(monkeypatch):
    """清空环境变量覆盖并重建配置单例。"""
    for name in ('EQCHROM_THREADS', 'EQCHROM_SEED', 'EQCHROM_OUTPUT_DIR', 'EQCHROM_LOG_DIR',
                 'EQCHROM_TIME_LIMIT'):
        monkeypatch.delenv(name, raising=False)
    run_settings.reset()
    yield monkeypatch
    run_settings.reset()
