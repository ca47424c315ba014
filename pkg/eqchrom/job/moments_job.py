#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一阶矩计算任务

对给定的 n、若干 k 和 p 计算 μ_{n,k}（有序等分的期望个数）与 μ̄_{n,k}
（无序），输出 moments 表。

使用方式
--------
命令行运行::

    eqchrom moments --n 4 --k 2 --p 1/2 --mode exact
    python moments_job.py --n 1000 --k 100 101 102 --p 1/2 --mode log

注意事项
--------
- exact 模式要求 n ≤ 60，输出列 mu_exact / mu_bar_exact 为约分后的分数
- p ≥ 1 − 1/e² 时拒绝计算，除非加 ``--allow-outside``
"""

import logging
import os.path
import sys

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import eqchrom.core.tablestructure as tbs
from eqchrom.core.moments import EXACT, MomentParams, mu
from eqchrom.job import output

__author__ = 'myh '
__date__ = '2026/9/11 '


def moment_row(n, k, p, mode, allow_outside=False):
    params = MomentParams.build(n, k, p, allow_outside)
    result = mu(params, mode)
    s = params.shape
    return {'n': n, 'k': k, 'p': str(params.p), 'mode': mode, 'N': params.N, 'm': params.m,
            'epsilon': str(params.epsilon), 'f': s.f, 'delta': str(s.delta),
            'k_large': s.k_large, 'k_small': s.k_small,
            'gamma': float('nan') if params.gamma is None else params.gamma,
            'log_mu': result.mu.log(), 'log_mu_bar': result.mu_bar.log(),
            'mu_exact': '' if result.exact_mu is None else str(result.exact_mu),
            'mu_bar_exact': '' if result.exact_mu_bar is None else str(result.exact_mu_bar)}


def run(args, log):
    rows = [moment_row(args.n, k, args.p, args.mode, args.allow_outside) for k in args.k]
    for row in rows:
        log.info(f"n={row['n']} k={row['k']} ln μ={row['log_mu']:.6f} ln μ̄={row['log_mu_bar']:.6f}")
    if args.mode == EXACT:
        logging.info(f"moments_job：精确计算 {len(rows)} 行")
    output.emit(tbs.TABLE_MOMENTS, rows, args)
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['moments'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
