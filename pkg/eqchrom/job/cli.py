#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
eqchrom 命令行入口

本模块解析命令行参数并分派到各个任务模块，是 ``eqchrom`` 命令的实现。

子命令
------
- **moments**: 一阶矩 μ / μ̄（moments_job）
- **subseq**: 集中性子序列 n_j（subsequence_job）
- **sample**: 采样随机图并写出图文件（sample_job）
- **solve**: 精确求解 χ / χ_= / χ*_=（solve_job）
- **experiment concentration**: 集中性蒙特卡罗实验（concentration_job）
- **verify oracles**: 小规模交叉校验（verify_oracles_job）
- **verify lemmas**: 引理数值诊断（verify_lemmas_job）

公共参数
--------
--format csv|human、--threads、--seed、--progress、--log stderr|null|file

退出码
------
- 0: 成功
- 1: 校验不一致
- 2: 参数错误（包括超出定义域的输入、无法读写或编码的文件）
- 3: 求解超时
- 4: 未预期的内部异常，堆栈写入作业日志

使用方式
--------
::

    eqchrom moments --n 4 --k 2 --p 1/2 --mode exact
    python cli.py verify oracles --n-max 8

日志文件
--------
``main`` 把标准 logging 写到 ``<log_dir>/eqchrom_job.log``；
进度信息通过 logbook 写到标准错误，不会混入写到标准输出的 CSV。
"""

import argparse
import logging
import os.path
import shlex
import sys
from typing import List, Optional, Sequence

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

from eqchrom.core.errors import EqChromError, InvalidRangeError, OracleMismatch, SolverTimeout
from eqchrom.core.moments import ASYMPTOTIC, EXACT, LOG_DOMAIN, as_probability
from eqchrom.job import (concentration_job, moments_job, sample_job, solve_job, subsequence_job,
                         verify_lemmas_job, verify_oracles_job)
from eqchrom.job.output import FORMAT_CSV, FORMAT_HUMAN
from eqchrom.lib.csv_store import ascii_safe
from eqchrom.lib.log_handler import DefaultLogHandler
from eqchrom.lib.settings import run_settings

__author__ = 'myh '
__date__ = '2026/9/12 '

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3
EXIT_INTERNAL = 4

MOMENT_MODES = {'exact': EXACT, 'log': LOG_DOMAIN, 'asymptotic': ASYMPTOTIC}
DEFAULT_N_LIST = (10 ** 4, 10 ** 5, 10 ** 6)
DEFAULT_J_LIST = (30, 35, 40)


def probability_arg(text: str):
    try:
        return as_probability(text)
    except InvalidRangeError as e:
        raise argparse.ArgumentTypeError(str(e))


def int_list_arg(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数：{text}")
    if not values:
        raise argparse.ArgumentTypeError("列表不能为空")
    return values


def moment_mode_arg(text: str) -> str:
    if text not in MOMENT_MODES:
        raise argparse.ArgumentTypeError(f"--mode 只能是 {'|'.join(MOMENT_MODES)}：{text}")
    return MOMENT_MODES[text]


def _common_parser() -> argparse.ArgumentParser:
    cfg = run_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=(FORMAT_CSV, FORMAT_HUMAN), default=FORMAT_CSV)
    common.add_argument('--threads', type=int, default=cfg.threads)
    common.add_argument('--seed', type=int, default=cfg.master_seed)
    common.add_argument('--progress', action='store_true', help='显示 tqdm 进度条')
    common.add_argument('--log', choices=('stderr', 'null', 'file'), default='stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='eqchrom', description='稠密随机图等分色数实验工具')
    commands = parser.add_subparsers(dest='command', required=True)

    moments = commands.add_parser('moments', parents=[common], help='一阶矩 μ / μ̄')
    moments.add_argument('--n', type=int, required=True)
    moments.add_argument('--k', type=int, nargs='+', required=True)
    moments.add_argument('--p', type=probability_arg, required=True)
    moments.add_argument('--mode', type=moment_mode_arg, default='log')
    moments.add_argument('--allow-outside', action='store_true', help='允许 p ≥ 1 − 1/e²')
    moments.add_argument('--out')
    moments.set_defaults(handler=moments_job.run, command_line='moments')

    subseq = commands.add_parser('subseq', parents=[common], help='集中性子序列 n_j')
    subseq.add_argument('--p', type=probability_arg, required=True)
    subseq.add_argument('--j-min', type=int, required=True)
    subseq.add_argument('--j-max', type=int, required=True)
    subseq.add_argument('--out')
    subseq.set_defaults(handler=subsequence_job.run, command_line='subseq')

    sample = commands.add_parser('sample', parents=[common], help='采样随机图')
    sample.add_argument('--n', type=int, required=True)
    edges = sample.add_mutually_exclusive_group(required=True)
    edges.add_argument('--m', type=int)
    edges.add_argument('--p', type=probability_arg)
    sample.add_argument('--model', choices=(sample_job.MODEL_GNM, sample_job.MODEL_GNP),
                        help='默认由 --m / --p 决定')
    sample.add_argument('--count', type=int, default=1)
    sample.add_argument('--out', help='图文件与 samples.csv 的输出目录')
    sample.set_defaults(handler=sample_job.run, command_line='sample')

    solve = commands.add_parser('solve', parents=[common], help='精确求解')
    solve.add_argument('--input', required=True)
    solve.add_argument('--mode', choices=solve_job.MODES, default=solve_job.MODE_CHI_EQ)
    solve.add_argument('--time-limit', type=float)
    solve.add_argument('--witness', help='chi-eq 模式下写出染色证据的 CSV 路径')
    solve.add_argument('--timings', action='store_true')
    solve.add_argument('--out')
    solve.set_defaults(handler=solve_job.run, command_line='solve')

    experiment = commands.add_parser('experiment', help='蒙特卡罗实验')
    experiments = experiment.add_subparsers(dest='experiment', required=True)
    concentration = experiments.add_parser('concentration', parents=[common], help='χ 与 χ_= 的集中性')
    concentration.add_argument('--n', type=int, required=True)
    concentration.add_argument('--p', type=probability_arg, required=True)
    concentration.add_argument('--samples', type=int, default=200)
    concentration.add_argument('--time-limit', type=float)
    concentration.add_argument('--timings', action='store_true')
    concentration.add_argument('--out')
    concentration.set_defaults(handler=concentration_job.run, command_line='experiment concentration')

    verify = commands.add_parser('verify', help='校验与诊断')
    checks = verify.add_subparsers(dest='check', required=True)
    oracles = checks.add_parser('oracles', parents=[common], help='小规模交叉校验')
    oracles.add_argument('--n-max', type=int, default=10)
    oracles.add_argument('--out')
    oracles.set_defaults(handler=verify_oracles_job.run, command_line='verify oracles')
    lemmas = checks.add_parser('lemmas', parents=[common], help='引理数值诊断')
    lemmas.add_argument('--p', type=probability_arg, required=True)
    lemmas.add_argument('--n-list', type=int_list_arg, default=list(DEFAULT_N_LIST))
    lemmas.add_argument('--j-list', type=int_list_arg, default=list(DEFAULT_J_LIST))
    lemmas.add_argument('--out')
    lemmas.set_defaults(handler=verify_lemmas_job.run, command_line='verify lemmas')
    return parser


def _log_handler(args: argparse.Namespace) -> DefaultLogHandler:
    if args.log == 'file':
        path = os.path.join(run_settings().ensure_log_dir(), 'eqchrom_progress.log')
        return DefaultLogHandler(name='eqchrom', log_type='file', filepath=path)
    return DefaultLogHandler(name='eqchrom', log_type=args.log)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """解析 argv 并执行对应任务，返回退出码（不调用 sys.exit）。"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    args.parameters = ascii_safe(shlex.join(argv))
    if args.threads < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"eqchrom: error: --threads 必须为正：{args.threads}\n")
        return EXIT_USAGE

    log = _log_handler(args)
    try:
        return args.handler(args, log)
    except SolverTimeout as e:
        log.error(str(e))
        return EXIT_TIMEOUT
    except OracleMismatch as e:
        log.error(str(e))
        return EXIT_MISMATCH
    except (EqChromError, OSError, UnicodeError) as e:
        logging.error(f"cli.run处理异常：{args.command_line} {e}")
        log.error(str(e))
        return EXIT_USAGE
    except Exception as e:
        logging.error(f"cli.run处理异常：{args.command_line} {e}", exc_info=True)
        log.error(f"{type(e).__name__}: {e}")
        return EXIT_INTERNAL


def main(argv: Optional[Sequence[str]] = None):
    log_path = run_settings().ensure_log_dir()
    logging.basicConfig(
        format='%(asctime)s %(message)s',
        filename=os.path.join(log_path, 'eqchrom_job.log')
    )
    logging.getLogger().setLevel(logging.INFO)
    sys.exit(run(argv))


# main函数入口
if __name__ == '__main__':
    main()
