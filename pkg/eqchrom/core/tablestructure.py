#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
输出表结构定义

每个 CSV 产物对应一个 TABLE_* 字典：name 为表名（也是默认文件名前缀），
cn 为中文说明，columns 的键顺序即 CSV 列顺序，type 为读回时的列类型，
size 为 human 格式下的列宽提示。
"""

from typing import List

import pandas as pd

__author__ = 'myh '
__date__ = '2026/9/10 '

TABLE_MOMENTS = {'name': 'moments', 'cn': '一阶矩',
                 'columns': {'n': {'type': int, 'cn': '顶点数', 'size': 8},
                             'k': {'type': int, 'cn': '份数', 'size': 8},
                             'p': {'type': str, 'cn': '边密度', 'size': 8},
                             'mode': {'type': str, 'cn': '计算模式', 'size': 12},
                             'N': {'type': int, 'cn': '顶点对数', 'size': 10},
                             'm': {'type': int, 'cn': '边数', 'size': 10},
                             'epsilon': {'type': str, 'cn': 'pN−m', 'size': 8},
                             'f': {'type': int, 'cn': '禁用边数', 'size': 10},
                             'delta': {'type': str, 'cn': 'n/k 小数部分', 'size': 8},
                             'k_large': {'type': int, 'cn': '大份个数', 'size': 8},
                             'k_small': {'type': int, 'cn': '小份个数', 'size': 8},
                             'gamma': {'type': float, 'cn': 'γ(n)', 'size': 12},
                             'log_mu': {'type': float, 'cn': 'ln μ', 'size': 14},
                             'log_mu_bar': {'type': float, 'cn': 'ln μ̄', 'size': 14},
                             'mu_exact': {'type': str, 'cn': 'μ 精确值', 'size': 16},
                             'mu_bar_exact': {'type': str, 'cn': 'μ̄ 精确值', 'size': 16}}}

TABLE_SUBSEQUENCE = {'name': 'subsequence', 'cn': '集中性子序列',
                     'columns': {'j': {'type': int, 'cn': '份大小', 'size': 6},
                                 'n_j': {'type': int, 'cn': 'n_j', 'size': 14},
                                 'k_j': {'type': int, 'cn': 'k_j', 'size': 12},
                                 'gamma_j': {'type': float, 'cn': 'γ(n_j)', 'size': 12},
                                 'log_mu_bar_kj': {'type': float, 'cn': 'ln μ̄(n_j,k_j)', 'size': 14},
                                 'log_mu_bar_kj_minus_1': {'type': float, 'cn': 'ln μ̄(n_j,k_j−1)', 'size': 14},
                                 'gamma_gap': {'type': float, 'cn': '|γ_j − j|', 'size': 10},
                                 'threshold_ok': {'type': bool, 'cn': '阈值条件', 'size': 6},
                                 'below_inverse_j': {'type': bool, 'cn': 'μ̄(k_j−1) < 1/j', 'size': 6},
                                 'k_step_sum_log': {'type': float, 'cn': 'ln Σ_{k<k_j} μ̄', 'size': 14},
                                 'minimal': {'type': bool, 'cn': '最小性', 'size': 6}}}

TABLE_SAMPLES = {'name': 'samples', 'cn': '随机图样本',
                 'columns': {'index': {'type': int, 'cn': '样本编号', 'size': 6},
                             'model': {'type': str, 'cn': '模型', 'size': 6},
                             'n': {'type': int, 'cn': '顶点数', 'size': 6},
                             'm': {'type': int, 'cn': '边数', 'size': 8},
                             'seed': {'type': int, 'cn': '主种子', 'size': 12},
                             'stream': {'type': int, 'cn': '流编号', 'size': 6},
                             'path': {'type': str, 'cn': '图文件', 'size': 40}}}

TABLE_SOLVE = {'name': 'solve', 'cn': '求解结果',
               'columns': {'input': {'type': str, 'cn': '输入文件', 'size': 40},
                           'n': {'type': int, 'cn': '顶点数', 'size': 6},
                           'm': {'type': int, 'cn': '边数', 'size': 8},
                           'max_degree': {'type': int, 'cn': '最大度', 'size': 6},
                           'mode': {'type': str, 'cn': '求解目标', 'size': 10},
                           'value': {'type': int, 'cn': '结果', 'size': 6},
                           'lower': {'type': int, 'cn': '下界', 'size': 6},
                           'upper': {'type': int, 'cn': '上界', 'size': 6},
                           'seconds': {'type': float, 'cn': '耗时', 'size': 10},
                           'status': {'type': str, 'cn': '状态', 'size': 8}}}

TABLE_CONCENTRATION = {'name': 'concentration', 'cn': '集中性实验',
                       'columns': {'sample': {'type': int, 'cn': '样本编号', 'size': 6},
                                   'stream': {'type': int, 'cn': '流编号', 'size': 6},
                                   'n': {'type': int, 'cn': '顶点数', 'size': 6},
                                   'm': {'type': int, 'cn': '边数', 'size': 8},
                                   'max_degree': {'type': int, 'cn': '最大度', 'size': 6},
                                   'chi': {'type': int, 'cn': 'χ', 'size': 4},
                                   'chi_eq': {'type': int, 'cn': 'χ_=', 'size': 4},
                                   'greedy_k': {'type': int, 'cn': '贪心上界', 'size': 4},
                                   'seconds_chi': {'type': float, 'cn': 'χ 耗时', 'size': 10},
                                   'seconds_chi_eq': {'type': float, 'cn': 'χ_= 耗时', 'size': 10},
                                   'status': {'type': str, 'cn': '状态', 'size': 8}}}

TABLE_HISTOGRAM = {'name': 'histogram', 'cn': '分布汇总',
                   'columns': {'quantity': {'type': str, 'cn': '统计量', 'size': 8},
                               'value': {'type': int, 'cn': '取值', 'size': 6},
                               'count': {'type': int, 'cn': '次数', 'size': 6}}}

TABLE_ORACLES = {'name': 'oracles', 'cn': '预言校验',
                 'columns': {'check': {'type': str, 'cn': '校验项', 'size': 20},
                             'case': {'type': str, 'cn': '参数', 'size': 24},
                             'expected': {'type': str, 'cn': '预言值', 'size': 24},
                             'actual': {'type': str, 'cn': '计算值', 'size': 24},
                             'ok': {'type': bool, 'cn': '一致', 'size': 4}}}

TABLE_LEMMAS = {'name': 'lemmas', 'cn': '引理诊断',
                'columns': {'lemma': {'type': str, 'cn': '诊断项', 'size': 12},
                            'n': {'type': int, 'cn': '顶点数', 'size': 10},
                            'k': {'type': int, 'cn': '份数', 'size': 10},
                            'parameter': {'type': str, 'cn': '参数', 'size': 12},
                            'value': {'type': float, 'cn': '观测值', 'size': 14},
                            'reference': {'type': float, 'cn': '参照值', 'size': 14},
                            'margin': {'type': float, 'cn': '差值', 'size': 14}}}

TABLE_WITNESS = {'name': 'witness', 'cn': '染色证据',
                 'columns': {'vertex': {'type': int, 'cn': '顶点', 'size': 6},
                             'colour': {'type': int, 'cn': '颜色', 'size': 6}}}


def column_names(table: dict) -> List[str]:
    return list(table['columns'])


def frame(table: dict, rows: List[dict]) -> pd.DataFrame:
    """按表定义的列顺序构造 DataFrame，缺失列报错。"""
    names = column_names(table)
    data = pd.DataFrame(rows, columns=names)
    if rows:
        missing = [c for c in names if c not in rows[0]]
        if missing:
            raise KeyError(f"{table['name']} 缺少列：{missing}")
    return data


def dtypes(table: dict) -> dict:
    mapping = {int: 'int64', float: 'float64', str: 'str', bool: 'bool'}
    return {name: mapping[spec['type']] for name, spec in table['columns'].items()}
