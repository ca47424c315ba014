#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确求解任务

读入一个 DIMACS 风格的图文件，计算 χ、χ_= 或 χ*_=，输出 solve 表。
chi-eq 模式可以用 ``--witness`` 另外写出染色证据。

使用方式
--------
命令行运行::

    eqchrom solve --input output/samples/graph_0000.dimacs --mode chi-eq --time-limit 30
    python solve_job.py --input g.dimacs --mode threshold

注意事项
--------
- 超时时 value 为 −1、status 为 timeout，lower / upper 给出已知的上下界，
  命令以退出码 3 结束
- 默认不输出 seconds 列（保证相同输入的输出逐字节一致），加 ``--timings`` 输出
"""

import logging
import os.path
import sys
import time

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import eqchrom.core.tablestructure as tbs
from eqchrom.core.errors import SolverTimeout
from eqchrom.core.graphs import SeedSpec, read_dimacs
from eqchrom.core.solver import (chromatic_number, clique_lower_bound, equitable_chromatic_number,
                                 equitable_threshold, greedy_equitable_bound, greedy_upper_bound,
                                 write_witness_csv)
from eqchrom.job import output
from eqchrom.lib.settings import run_settings

__author__ = 'myh '
__date__ = '2026/9/11 '

MODE_CHI = 'chi'
MODE_CHI_EQ = 'chi-eq'
MODE_THRESHOLD = 'threshold'
MODES = (MODE_CHI, MODE_CHI_EQ, MODE_THRESHOLD)


def known_bounds(g, mode, seed):
    """超时时报告的 (下界, 上界)。"""
    lower = max(1, clique_lower_bound(g))
    if mode == MODE_CHI:
        return lower, greedy_upper_bound(g)
    if mode == MODE_THRESHOLD:
        return lower, min(g.n, g.max_degree() + 1)
    upper, _ = greedy_equitable_bound(g, SeedSpec(seed, 0))
    return lower, upper


def solve(g, mode, time_limit):
    """返回 (结果, 证据)；只有 chi-eq 有证据。"""
    if mode == MODE_CHI:
        return chromatic_number(g, time_limit), None
    if mode == MODE_CHI_EQ:
        return equitable_chromatic_number(g, time_limit)
    return equitable_threshold(g, time_limit), None


def run(args, log):
    g = read_dimacs(args.input)
    time_limit = args.time_limit if args.time_limit is not None else run_settings().time_limit
    row = {'input': os.path.basename(args.input), 'n': g.n, 'm': g.m, 'max_degree': g.max_degree(),
           'mode': args.mode}
    start = time.perf_counter()
    try:
        value, witness = solve(g, args.mode, time_limit)
    except SolverTimeout as e:
        row['seconds'] = time.perf_counter() - start
        lower, upper = known_bounds(g, args.mode, args.seed)
        row.update({'value': -1, 'lower': lower, 'upper': upper, 'status': 'timeout'})
        logging.error(f"solve_job.run处理异常：{args.input} {e}")
        output.emit(tbs.TABLE_SOLVE, [row], args, drop=() if args.timings else ('seconds',))
        raise

    row.update({'value': value, 'lower': value, 'upper': value, 'seconds': time.perf_counter() - start,
                'status': 'ok'})
    log.info(f"{args.input}：{args.mode} = {value}（{row['seconds']:.3f}s）")
    if witness is not None:
        if not witness.is_valid(g):
            raise ArithmeticError(f"求解器给出的证据不合法：{args.input}")
        if args.witness:
            write_witness_csv(witness, args.witness, {'input': row['input']})
    output.emit(tbs.TABLE_SOLVE, [row], args, drop=() if args.timings else ('seconds',))
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['solve'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
