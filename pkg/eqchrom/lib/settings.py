#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
运行配置模块

本模块集中管理 eqchrom 的运行参数：默认值写在模块级变量中，
可以通过环境变量覆盖（适用于 Docker / 批处理部署）。

配置方式
--------
1. 默认配置（开发环境）::

    threads = os.cpu_count()
    master_seed = 20240101
    output_dir = "./output"
    time_limit = 60

2. 环境变量配置::

    export EQCHROM_THREADS=8
    export EQCHROM_SEED=7
    export EQCHROM_OUTPUT_DIR=/data/eqchrom
    export EQCHROM_LOG_DIR=/var/log/eqchrom
    export EQCHROM_TIME_LIMIT=120

使用方式
--------
::

    from eqchrom.lib.settings import run_settings
    cfg = run_settings()
    print(cfg.threads, cfg.master_seed)

注意事项
--------
- 环境变量只在首次导入时读取；run_settings 是单例，测试中可用
  ``run_settings.reset()`` 强制重新读取。
- 命令行参数（例如 ``--threads``、``--seed``）优先于这里的值。
"""

import logging
import os
from typing import Optional

from eqchrom.lib.singleton_type import singleton_type

__author__ = 'myh '
__date__ = '2026/9/2 '

# ============================================================
# 默认配置（可通过环境变量覆盖）
# ============================================================

cpath_current = os.path.dirname(os.path.dirname(__file__))

threads: int = os.cpu_count() or 1              # 并行线程数
master_seed: int = 20240101                     # 默认主种子
output_dir: str = os.path.join(os.getcwd(), 'output')   # CSV / 图文件输出目录
log_dir: str = os.path.join(cpath_current, 'log')       # 任务日志目录
time_limit: float = 60.0                        # 单个求解实例的默认时限（秒）


def _env_int(name: str) -> Optional[int]:
    value = os.environ.get(name)
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        logging.error(f"settings._env_int处理异常：{name}={value} 不是整数，使用默认值")
        return None


def _env_float(name: str) -> Optional[float]:
    value = os.environ.get(name)
    if value is None:
        return None
    try:
        return float(value)
    except ValueError:
        logging.error(f"settings._env_float处理异常：{name}={value} 不是数值，使用默认值")
        return None


class run_settings(metaclass=singleton_type):
    """已解析的运行配置（单例）。

    Attributes:
        threads: 默认工作线程数
        master_seed: 默认主种子（64 位整数）
        output_dir: 输出目录
        log_dir: 日志目录
        time_limit: 默认求解时限（秒）
    """

    def __init__(self):
        self.threads = threads
        self.master_seed = master_seed
        self.output_dir = output_dir
        self.log_dir = log_dir
        self.time_limit = time_limit

        _threads = _env_int('EQCHROM_THREADS')
        if _threads is not None and _threads > 0:
            self.threads = _threads
        _seed = _env_int('EQCHROM_SEED')
        if _seed is not None:
            self.master_seed = _seed & 0xFFFFFFFFFFFFFFFF
        _output_dir = os.environ.get('EQCHROM_OUTPUT_DIR')
        if _output_dir is not None:
            self.output_dir = _output_dir
        _log_dir = os.environ.get('EQCHROM_LOG_DIR')
        if _log_dir is not None:
            self.log_dir = _log_dir
        _time_limit = _env_float('EQCHROM_TIME_LIMIT')
        if _time_limit is not None and _time_limit > 0:
            self.time_limit = _time_limit

        logging.info(f"运行配置：threads={self.threads} seed={self.master_seed} "
                     f"output={self.output_dir} time_limit={self.time_limit}")

    def ensure_log_dir(self) -> str:
        if not os.path.exists(self.log_dir):
            os.makedirs(self.log_dir)
        return self.log_dir
