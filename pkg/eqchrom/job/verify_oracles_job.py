#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
预言校验任务

用互相独立的计算路径交叉检查小规模结果，任何一项不一致时以退出码 1 结束。

校验项
------
- **mu_exact**: 公式计算的精确 μ 与逐个等分累加的 μ（n ≤ n_max，p ∈ {1/4, 1/2, 3/4}）
- **mu_log_domain**: 对数域 μ 与精确 μ 的相对误差 ≤ 1e-9（n ≤ 40）
- **census_total**: 重叠普查的总数等于 P²
- **second_moment**: pair_enum 与 overlap_decomposition 的 E[X²]/E[X]²、P_r 与各项贡献逐字相等；
  n ≤ 8 且 P ≤ 2520 时两者都遍历全部有序对
- **solver**: 随机小图上求解器的 χ_= 与穷举结果一致，并核对几个已知图
- **gnm_uniform**: G(4,3) 全部 20 个图的出现频率通过 χ² 拟合检验
- **mu_sampled**: 采样得到的合法等分平均数与 μ 相差不超过 4 个标准误

使用方式
--------
命令行运行::

    eqchrom verify oracles --n-max 10
    python verify_oracles_job.py --n-max 8 --threads 4
"""

import itertools
import logging
import math
import os.path
import sys
from fractions import Fraction

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import numpy as np
from scipy import stats

import eqchrom.core.tablestructure as tbs
from eqchrom.core.errors import InvalidRangeError, OracleMismatch
from eqchrom.core.graphs import (SeedSpec, complete_bipartite_graph, count_equitable_partitions, cycle_graph,
                                 sample_gnm, sample_gnp, star_graph)
from eqchrom.core.moments import EXACT, LOG_DOMAIN, MomentParams, mu, mu_bruteforce
from eqchrom.core.partitions import EXHAUSTIVE_CENSUS_MAX_N, count_partitions, count_pairs_with_overlap
from eqchrom.core.secondmoment import OVERLAP_DECOMPOSITION, PAIR_ENUM, ratio_bruteforce
from eqchrom.core.solver import (chromatic_number, equitable_chromatic_number, equitable_k_feasible,
                                 equitable_threshold, exhaustive_equitable_chromatic_number,
                                 exhaustive_equitable_feasible)
from eqchrom.job import output
from eqchrom.lib.run_template import run_ordered

__author__ = 'myh '
__date__ = '2026/9/12 '

PROBABILITIES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
LOG_DOMAIN_NS = (12, 20, 30, 40)
LOG_DOMAIN_TOLERANCE = 1e-9
SECOND_MOMENT_MAX_N = 9
EXHAUSTIVE_MAX_P = 2520
CENSUS_MAX_N = 8
SOLVER_MAX_N = 8
SOLVER_GRAPHS_PER_N = 72
SOLVER_DENSITIES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
UNIFORM_SAMPLES = 20000
UNIFORM_MIN_PVALUE = 1e-4
SAMPLED_MU_CASE = (6, 2, Fraction(1, 2))
SAMPLED_MU_SAMPLES = 100000
SAMPLED_MU_SIGMAS = 4.0


def _row(check, case, expected, actual, ok=None):
    if ok is None:
        ok = expected == actual
    return {'check': check, 'case': case, 'expected': str(expected), 'actual': str(actual), 'ok': bool(ok)}


def check_mu_exact(n_max, seed):
    rows = []
    for n in range(2, n_max + 1):
        for k in range(1, n + 1):
            for p in PROBABILITIES:
                expected = mu_bruteforce(n, k, p)
                actual = mu(MomentParams.build(n, k, p), EXACT).exact_mu
                rows.append(_row('mu_exact', f"n={n} k={k} p={p}", expected, actual))
    return rows


def check_mu_log_domain(n_max, seed):
    rows = []
    for n in sorted(set(LOG_DOMAIN_NS) | set(range(2, n_max + 1))):
        for k in sorted({2, max(1, n // 3), max(1, n // 2), n}):
            params = MomentParams.build(n, k, Fraction(1, 2))
            exact = mu(params, EXACT).mu.log()
            approx = mu(params, LOG_DOMAIN).mu.log()
            ok = approx == exact or abs(approx - exact) <= LOG_DOMAIN_TOLERANCE * max(1.0, abs(exact))
            rows.append(_row('mu_log_domain', f"n={n} k={k} p=1/2", repr(exact), repr(approx), ok))
    return rows


def check_census_total(n_max, seed):
    rows = []
    for n in range(2, min(n_max, CENSUS_MAX_N) + 1):
        for k in range(1, n + 1):
            P = count_partitions(n, k, exact=True).exact
            total = sum(count_pairs_with_overlap(n, k, workers=1).values())
            rows.append(_row('census_total', f"n={n} k={k}", P * P, total))
    return rows


def check_second_moment(n_max, seed):
    rows = []
    for n in range(2, min(n_max, SECOND_MOMENT_MAX_N) + 1):
        for k in range(2, n + 1):
            exhaustive = n <= EXHAUSTIVE_CENSUS_MAX_N and count_partitions(n, k, exact=True).exact <= EXHAUSTIVE_MAX_P
            for p in (Fraction(1, 4), Fraction(1, 2)):
                if mu(MomentParams.build(n, k, p), EXACT).exact_mu == 0:
                    continue
                by_pairs = ratio_bruteforce(n, k, p, PAIR_ENUM, exhaustive=exhaustive, workers=1)
                by_overlap = ratio_bruteforce(n, k, p, OVERLAP_DECOMPOSITION, exhaustive=exhaustive, workers=1)
                same = (by_pairs.ratio == by_overlap.ratio and by_pairs.ratio >= 1
                        and by_pairs.pair_counts == by_overlap.pair_counts
                        and by_pairs.by_overlap == by_overlap.by_overlap)
                label = f"n={n} k={k} p={p}" + (" exhaustive" if exhaustive else "")
                rows.append(_row('second_moment', label, by_pairs.ratio, by_overlap.ratio, same))
    return rows


def check_solver(n_max, seed):
    rows = []
    for n in range(2, min(n_max, SOLVER_MAX_N) + 1):
        for index in range(SOLVER_GRAPHS_PER_N):
            stream = n * 1000 + index
            p = SOLVER_DENSITIES[index % len(SOLVER_DENSITIES)]
            g = sample_gnp(n, p, SeedSpec(seed, stream))
            expected = exhaustive_equitable_chromatic_number(g)
            actual, witness = equitable_chromatic_number(g)
            feasible = all((equitable_k_feasible(g, k) is not None) == exhaustive_equitable_feasible(g, k)
                           for k in range(1, n + 1))
            chi = chromatic_number(g)
            threshold = equitable_threshold(g)
            chain = 1 <= chi <= actual <= threshold <= min(n, g.max_degree() + 1)
            rows.append(_row('solver', f"gnp n={n} p={p} stream={stream}", expected, actual,
                             expected == actual and witness.is_valid(g) and feasible and chain))
    k33 = complete_bipartite_graph(3, 3)
    rows.append(_row('solver', 'chi_eq K_{1,4}', 3, equitable_chromatic_number(star_graph(4))[0]))
    rows.append(_row('solver', 'chi_eq K_{3,3}', 2, equitable_chromatic_number(k33)[0]))
    rows.append(_row('solver', 'feasible K_{3,3} k=3', False, equitable_k_feasible(k33, 3) is not None))
    rows.append(_row('solver', 'threshold K_{3,3}', 4, equitable_threshold(k33)))
    rows.append(_row('solver', 'chi C_5', 3, chromatic_number(cycle_graph(5))))
    return rows


def check_gnm_uniform(n_max, seed):
    n, m = 4, 3
    pairs = list(itertools.combinations(range(n), 2))
    graphs = {frozenset(c): i for i, c in enumerate(itertools.combinations(pairs, m))}
    observed = np.zeros(len(graphs), dtype=np.int64)
    for index in range(UNIFORM_SAMPLES):
        observed[graphs[sample_gnm(n, m, SeedSpec(seed, index)).edges]] += 1
    pvalue = float(stats.chisquare(observed).pvalue)
    return [_row('gnm_uniform', f"n={n} m={m} samples={UNIFORM_SAMPLES}", f"p>{UNIFORM_MIN_PVALUE}",
                 f"p={pvalue:.6f}", pvalue > UNIFORM_MIN_PVALUE)]


def check_mu_sampled(n_max, seed):
    n, k, p = SAMPLED_MU_CASE
    expected = mu(MomentParams.build(n, k, p), EXACT).exact_mu
    N = n * (n - 1) // 2
    m = (p.numerator * N) // p.denominator
    counts = np.array([count_equitable_partitions(sample_gnm(n, m, SeedSpec(seed, index)), k)
                       for index in range(SAMPLED_MU_SAMPLES)], dtype=np.float64)
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1)) / math.sqrt(SAMPLED_MU_SAMPLES)
    ok = abs(mean - float(expected)) <= SAMPLED_MU_SIGMAS * stderr + 1e-12
    return [_row('mu_sampled', f"n={n} k={k} p={p} samples={SAMPLED_MU_SAMPLES}",
                 f"{float(expected):.6f}", f"{mean:.6f}+-{stderr:.6f}", ok)]


CHECKS = (check_mu_exact, check_mu_log_domain, check_census_total, check_second_moment,
          check_solver, check_gnm_uniform, check_mu_sampled)


def run(args, log):
    if args.n_max < 2:
        raise InvalidRangeError(f"--n-max 至少为 2：{args.n_max}")
    results = run_ordered(lambda fun: fun(args.n_max, args.seed), CHECKS, args.threads,
                          reraise=(Exception,), progress=args.progress, desc='oracles')
    rows = [row for block in results for row in block]
    failed = [row for row in rows if not row['ok']]
    output.emit(tbs.TABLE_ORACLES, rows, args, extra={'n_max': args.n_max})
    log.info(f"{len(rows)} 项校验，{len(failed)} 项不一致")
    if failed:
        for row in failed:
            logging.error(f"verify_oracles_job.run处理异常：{row['check']} {row['case']} "
                          f"{row['expected']} != {row['actual']}")
        raise OracleMismatch(f"{len(failed)} 项校验不一致，第一项：{failed[0]['check']} {failed[0]['case']}")
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['verify', 'oracles'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
