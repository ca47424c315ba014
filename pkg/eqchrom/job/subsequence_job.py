#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
集中性子序列任务

对 j_min..j_max 并行构造 n_j，并逐个复核：整除、|γ_j − j|、阈值条件、
最小性、μ̄_{n_j,k_j−1} < 1/j 以及 Σ_{k<k_j} μ̄ 的几何控制估计。

使用方式
--------
命令行运行::

    eqchrom subseq --p 1/2 --j-min 10 --j-max 40
    python subsequence_job.py --p 1/2 --j-min 10 --j-max 40 --threads 8

注意事项
--------
- 不存在 n_j 的 j（γ 越过窗口）被跳过，只记入日志
- 输出元数据记录 ``threshold_log: natural``
"""

import logging
import os.path
import sys

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import eqchrom.core.tablestructure as tbs
from eqchrom.core.errors import InvalidRangeError
from eqchrom.core.subsequence import THRESHOLD_LOG, sweep, verify_nj
from eqchrom.job import output
from eqchrom.lib.run_template import run_ordered

__author__ = 'myh '
__date__ = '2026/9/11 '


def entry_row(entry, p):
    check = verify_nj(entry, p)
    return {'j': entry.j, 'n_j': entry.n_j, 'k_j': entry.k_j, 'gamma_j': entry.gamma_j,
            'log_mu_bar_kj': entry.mu_bar_at_kj.log(),
            'log_mu_bar_kj_minus_1': entry.mu_bar_at_kj_minus_1.log(),
            'gamma_gap': check.gamma_gap, 'threshold_ok': check.threshold_ok,
            'below_inverse_j': check.below_inverse_j, 'k_step_sum_log': check.k_step_sum_log,
            'minimal': check.minimal and check.divisible}


def run(args, log):
    if args.j_min < 3 or args.j_max < args.j_min:
        raise InvalidRangeError(f"要求 3 ≤ j_min ≤ j_max：{args.j_min}..{args.j_max}")
    entries = sweep(args.j_min, args.j_max, args.p, args.threads, progress=args.progress)
    log.info(f"找到 {len(entries)} 个 n_j（j = {args.j_min}..{args.j_max}）")
    rows = run_ordered(entry_row, entries, args.threads, args.p, reraise=(Exception,))
    for row in rows:
        if not (row['threshold_ok'] and row['minimal']):
            logging.warning(f"subsequence_job：j={row['j']} n_j={row['n_j']} 复核未通过")
            log.warn(f"j={row['j']} 复核未通过")
    output.emit(tbs.TABLE_SUBSEQUENCE, rows, args,
                extra={'threshold_log': THRESHOLD_LOG, 'p': str(args.p)})
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['subseq'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
