#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
任务输出模块

所有子命令都通过 ``emit`` 输出结果行：按 tablestructure 中的表定义组织列，
写出 ``#`` 元数据头，再按 ``--format`` 选择 CSV 或 pandas 的文本渲染，
按 ``--out`` 选择文件或标准输出。
"""

import argparse
import os
import sys
from typing import Dict, Iterable, List, Optional, Sequence

import pandas as pd

from eqchrom.core import tablestructure as tbs
from eqchrom.lib import csv_store

__author__ = 'myh '
__date__ = '2026/9/11 '

FORMAT_CSV = 'csv'
FORMAT_HUMAN = 'human'


def metadata(args: argparse.Namespace, extra: Optional[Dict[str, object]] = None) -> Dict[str, object]:
    meta: Dict[str, object] = {'command': args.command_line}
    if getattr(args, 'seed', None) is not None:
        meta['seed'] = args.seed
    meta['parameters'] = args.parameters
    meta.update(extra or {})
    return meta


def render_human(data: pd.DataFrame, meta: Dict[str, object]) -> str:
    head = csv_store.metadata_lines(meta)
    if data.empty:
        return head + "(无数据)\n"
    return head + data.to_string(index=False) + "\n"


def emit(table: dict, rows: List[dict], args: argparse.Namespace, target: Optional[str] = None,
         extra: Optional[Dict[str, object]] = None, drop: Sequence[str] = ()) -> pd.DataFrame:
    """输出一张表。target 为 None 时使用 args.out（再为 None 则写标准输出）。"""
    data = tbs.frame(table, rows)
    if drop:
        data = data.drop(columns=[c for c in drop if c in data.columns])
    meta = metadata(args, extra)
    meta['table'] = table['name']
    if target is None:
        target = getattr(args, 'out', None)
    if getattr(args, 'format', FORMAT_CSV) == FORMAT_HUMAN:
        text = render_human(data, meta)
        if target is None:
            sys.stdout.write(text)
        else:
            _ensure_parent(target)
            with open(target, 'w', encoding='utf-8') as fh:
                fh.write(text)
        return data
    csv_store.write_csv(data, target, meta)
    return data


def sibling_path(path: Optional[str], suffix: str) -> Optional[str]:
    """out.csv → out.<suffix>.csv；path 为 None 时返回 None。"""
    if path is None:
        return None
    root, ext = os.path.splitext(path)
    return f"{root}.{suffix}{ext or '.csv'}"


def _ensure_parent(path: str) -> None:
    dirname = os.path.dirname(path)
    if dirname and not os.path.exists(dirname):
        os.makedirs(dirname)


def histogram_rows(quantity: str, values: Iterable[int]) -> List[dict]:
    counts: Dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return [{'quantity': quantity, 'value': v, 'count': c} for v, c in sorted(counts.items())]
