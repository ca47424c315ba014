#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
引理诊断任务

在给定的 n 上数值复核一阶矩、二阶矩推导中用到的各个估计，输出 lemmas 表。
每一行给出观测值 value、参照值 reference 与 margin = value − reference。

诊断项
------
- **rate**: k = round(n/(γ+x)) 处 log_b(μ̄)/n 与 −x/2（x ∈ {−1, 0, 1}）
- **mu_step**: k→k+1 时 ln μ 的增量与 (n²/(2k(k+1)) − n/(2k))·ln b
- **mu_bar_band**: k→k+1 时 ln μ̄ 的增量除以 ln n·ln ln n，参照 1
- **vertex_step**: n→n+1 时 ln μ 的增量与 ln(ln n / n)
- **s_asymptotic**: 可整除点上 ln S 的精确值与渐近式
- **t2 / t3 / t_tail / r1_sum**: n_j 处 T 序列的闭式、上界与尾部最大值
- **r3_count**: (r_3..r_j) 组合数的对数与 (2e·log_b n)^{R3} 上界

使用方式
--------
命令行运行::

    eqchrom verify lemmas --p 1/2 --n-list 10000,100000,1000000
    python verify_lemmas_job.py --p 1/2 --j-list 30,35
"""

import logging
import math
import os.path
import sys

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import eqchrom.core.tablestructure as tbs
from eqchrom.core.errors import DomainError, SubsequenceNotFound
from eqchrom.core.moments import MomentParams, gamma, rate_diagnostic, step_diagnostics
from eqchrom.core.secondmoment import (ASYMPTOTIC, EXACT, composition_count, constants, divisible_point,
                                       r1_sum_estimate, r3_count_bound, s_value, t_sequence)
from eqchrom.core.subsequence import find_nj
from eqchrom.job import output
from eqchrom.lib.run_template import run_ordered

__author__ = 'myh '
__date__ = '2026/9/12 '

RATE_OFFSETS = (-1.0, 0.0, 1.0)
COMPOSITION_R3 = range(0, 5)
COMPOSITION_J = range(3, 9)


def _row(lemma, n, k, parameter, value, reference):
    return {'lemma': lemma, 'n': n, 'k': k, 'parameter': parameter, 'value': value,
            'reference': reference, 'margin': value - reference}


def first_moment_rows(n, p):
    rows = []
    for x in RATE_OFFSETS:
        try:
            report = rate_diagnostic(n, x, p)
        except DomainError as e:
            logging.warning(f"verify_lemmas_job：{e}")
            continue
        rows.append(_row('rate', n, report.k, f"x={x:g}", report.mu_bar_log_b_per_n, report.prediction))

    b = float(1 / (1 - p))
    k = max(1, int(round(n / gamma(n, b))))
    step = step_diagnostics(n, k, p)
    rows.append(_row('mu_step', n, k, 'k->k+1', step.mu_step_log, step.mu_step_bound_log))
    rows.append(_row('mu_bar_band', n, k, 'k->k+1', step.mu_bar_step_band, 1.0))
    rows.append(_row('vertex_step', n, k, 'n->n+1', step.vertex_step_log, step.vertex_step_reference))

    n2, k2 = divisible_point(n, p)
    params = MomentParams.build(n2, k2, p)
    for d in sorted({0, params.f // 2, params.f}):
        rows.append(_row('s_asymptotic', n2, k2, f"d={d}", s_value(params, d, EXACT).log(),
                         s_value(params, d, ASYMPTOTIC).log()))
    return rows


def subsequence_rows(j, p):
    try:
        entry = find_nj(j, p)
    except SubsequenceNotFound as e:
        logging.info(f"verify_lemmas_job：{e}")
        return []
    params = MomentParams.build(entry.n_j, entry.k_j, p)
    consts = constants(p)
    ts = t_sequence(params, consts.c)
    n, k = entry.n_j, entry.k_j
    rows = [_row('t2', n, k, f"j={j}", ts.log_T[0], ts.t2_closed_form_log),
            _row('r1_sum', n, k, f"j={j}", r1_sum_estimate(params), 1.0)]
    if ts.t3_bound_log is not None:
        rows.append(_row('t3', n, k, f"j={j}", ts.log_T[1], ts.t3_bound_log))
    if ts.max_log_n_T is not None:
        rows.append(_row('t_tail', n, k, f"j={j} rho=c", ts.max_log_n_T, -consts.c_tilde))
    return rows


def composition_rows(n, p):
    b = float(1 / (1 - p))
    rows = []
    for j in COMPOSITION_J:
        for R3 in COMPOSITION_R3:
            rows.append(_row('r3_count', n, 0, f"R3={R3} j={j}", math.log(composition_count(R3, j)),
                             r3_count_bound(R3, n, b).log()))
    return rows


def run(args, log):
    blocks = run_ordered(first_moment_rows, args.n_list, args.threads, args.p, reraise=(Exception,),
                         progress=args.progress, desc='lemmas')
    blocks += run_ordered(subsequence_rows, args.j_list, args.threads, args.p, reraise=(Exception,))
    blocks.append(composition_rows(min(args.n_list), args.p))
    rows = [row for block in blocks for row in block]
    log.info(f"{len(rows)} 行诊断，n = {args.n_list}，j = {args.j_list}")
    output.emit(tbs.TABLE_LEMMAS, rows, args, extra={'p': str(args.p)})
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['verify', 'lemmas'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
