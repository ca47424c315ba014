#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
集中性实验任务

对 G(n,m)（m = ⌊p·C(n,2)⌋）采样若干次，每个样本精确计算 χ 与 χ_=，
并记录最大度和随机贪心得到的等分染色上界，输出 concentration 表；
χ 与 χ_= 的取值分布另外汇总成 histogram 表。

执行流程
--------
1. 样本 i 使用随机流 (seed, i)，与线程调度无关
2. 各样本由线程池并行求解，结果按样本编号归并
3. 超时的样本记为 status=timeout，对应的值为 −1，不计入分布汇总

使用方式
--------
命令行运行::

    eqchrom experiment concentration --n 24 --p 1/2 --samples 200 --seed 7
    eqchrom experiment concentration --n 16 --p 1/2 --samples 50 --out output/conc.csv

注意事项
--------
- 给 --out 时分布汇总写到同目录的 ``<out>.histogram.csv``，否则只写日志
- 默认不输出耗时列，加 ``--timings`` 输出
"""

import logging
import os.path
import sys
import time

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import eqchrom.core.tablestructure as tbs
from eqchrom.core.errors import InvalidRangeError, SolverTimeout
from eqchrom.core.graphs import SeedSpec, sample_gnm
from eqchrom.core.solver import chromatic_number, equitable_chromatic_number, greedy_equitable_bound
from eqchrom.job import output
from eqchrom.lib.run_template import run_ordered
from eqchrom.lib.settings import run_settings

__author__ = 'myh '
__date__ = '2026/9/11 '

STATUS_OK = 'ok'
STATUS_TIMEOUT = 'timeout'
TIMING_COLUMNS = ('seconds_chi', 'seconds_chi_eq')


def _timed(fun, *args):
    start = time.perf_counter()
    try:
        return fun(*args), time.perf_counter() - start
    except SolverTimeout as e:
        logging.warning(f"concentration_job：{e}")
        return None, time.perf_counter() - start


def run_sample(index, n, m, seed, time_limit):
    spec = SeedSpec(seed, index)
    g = sample_gnm(n, m, spec)
    chi, seconds_chi = _timed(chromatic_number, g, time_limit)
    eq, seconds_eq = _timed(equitable_chromatic_number, g, time_limit)
    greedy_k, _ = greedy_equitable_bound(g, spec)
    chi_eq = -1
    if eq is not None:
        chi_eq, witness = eq
        if not witness.is_valid(g):
            raise ArithmeticError(f"样本 {index} 的证据不合法")
    status = STATUS_OK if chi is not None and eq is not None else STATUS_TIMEOUT
    return {'sample': index, 'stream': index, 'n': n, 'm': g.m, 'max_degree': g.max_degree(),
            'chi': -1 if chi is None else chi, 'chi_eq': chi_eq, 'greedy_k': greedy_k,
            'seconds_chi': seconds_chi, 'seconds_chi_eq': seconds_eq, 'status': status}


def summary(rows):
    solved = [r for r in rows if r['status'] == STATUS_OK]
    if not solved:
        return "没有在时限内求解完成的样本"
    chi = [r['chi'] for r in solved]
    chi_eq = [r['chi_eq'] for r in solved]
    same = sum(1 for a, b in zip(chi, chi_eq) if a == b)
    return (f"{len(solved)}/{len(rows)} 个样本完成：χ ∈ [{min(chi)},{max(chi)}]，"
            f"χ_= ∈ [{min(chi_eq)},{max(chi_eq)}]，χ_= = χ 的样本 {same} 个")


def run(args, log):
    if args.samples < 1:
        raise InvalidRangeError(f"--samples 必须为正：{args.samples}")
    N = args.n * (args.n - 1) // 2
    m = (args.p.numerator * N) // args.p.denominator
    time_limit = args.time_limit if args.time_limit is not None else run_settings().time_limit
    rows = run_ordered(run_sample, range(args.samples), args.threads, args.n, m, args.seed, time_limit,
                       reraise=(Exception,), progress=args.progress, desc='concentration')
    log.info(summary(rows))

    solved = [r for r in rows if r['status'] == STATUS_OK]
    histogram = (output.histogram_rows('chi', (r['chi'] for r in solved))
                 + output.histogram_rows('chi_eq', (r['chi_eq'] for r in solved)))
    extra = {'n': args.n, 'p': str(args.p), 'm': m, 'samples': args.samples}
    output.emit(tbs.TABLE_CONCENTRATION, rows, args, extra=extra,
                drop=() if args.timings else TIMING_COLUMNS)
    if args.out:
        output.emit(tbs.TABLE_HISTOGRAM, histogram, args, target=output.sibling_path(args.out, 'histogram'),
                    extra=extra)
    else:
        for h in histogram:
            log.info(f"{h['quantity']}={h['value']}：{h['count']}")
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['experiment', 'concentration'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
