#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
批量任务执行模板模块

本模块提供一个通用的并发执行模板：把一组输入（样本下标、j 值、n 值……）
交给线程池执行，并**按输入顺序**收集结果。结果顺序与线程调度无关，
这是蒙特卡罗实验和子序列扫描输出可复现的前提。

核心概念
--------
- **任务函数**: 接收单个输入项作为第一个参数的可调用对象
- **有序归并**: 以输入下标为键收集 future 结果，最后按下标排列
- **失败隔离**: 单个输入的异常被记录到日志，对应位置返回 None，
  其余任务继续执行；传入 ``reraise`` 的异常类型会原样抛出

使用方式
--------
::

    from eqchrom.lib.run_template import run_ordered

    def solve_one(index, seed):
        ...

    results = run_ordered(solve_one, range(200), 8, 7)

注意事项
--------
- workers 为 None 时使用 ``run_settings().threads``
- workers 为 1 时不创建线程池，直接在当前线程中顺序执行
"""

import concurrent.futures
import logging
from typing import Any, Callable, Iterable, List, Optional, Tuple, Type

from tqdm import tqdm

from eqchrom.lib.settings import run_settings

__author__ = 'myh '
__date__ = '2026/9/3 '


def run_ordered(run_fun: Callable[..., Any], items: Iterable[Any], workers: Optional[int] = None,
                *args: Any, reraise: Tuple[Type[BaseException], ...] = (),
                progress: bool = False, desc: Optional[str] = None) -> List[Any]:
    """并发执行 run_fun(item, *args)，按 items 的顺序返回结果。

    Args:
        run_fun: 任务函数，第一个参数为输入项
        items: 输入项序列
        workers: 线程数，None 表示使用配置中的默认值
        *args: 传递给任务函数的额外参数
        reraise: 需要向上抛出而不是吞掉的异常类型
        progress: 是否显示 tqdm 进度条
        desc: 进度条说明

    Returns:
        与 items 一一对应的结果列表，失败项为 None
    """
    items = list(items)
    if workers is None:
        workers = run_settings().threads
    results: List[Any] = [None] * len(items)

    if workers <= 1 or len(items) <= 1:
        for index, item in enumerate(tqdm(items, desc=desc, leave=False, disable=not progress)):
            try:
                results[index] = run_fun(item, *args)
            except reraise:
                raise
            except Exception as e:
                logging.error(f"run_template.run_ordered处理异常：{run_fun.__name__}{item}{e}")
        return results

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {executor.submit(run_fun, item, *args): index for index, item in enumerate(items)}
        for future in tqdm(concurrent.futures.as_completed(future_to_index), total=len(items),
                           desc=desc, leave=False, disable=not progress):
            index = future_to_index[future]
            try:
                results[index] = future.result()
            except reraise:
                raise
            except Exception as e:
                logging.error(f"run_template.run_ordered处理异常：{run_fun.__name__}{items[index]}{e}")
    return results
