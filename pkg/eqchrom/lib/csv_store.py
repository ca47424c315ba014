#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CSV 产物读写模块

CSV 是 eqchrom 唯一的机器可读输出格式。每个文件由两部分组成：

1. 以 ``#`` 开头的元数据行（版本、命令、种子、参数、生成时间），
   保证输出自描述；
2. 由 pandas 写出的数据体，列名与 ``eqchrom.core.tablestructure`` 中的
   表定义一致。

文件格式
--------
::

    # version: 1.0.0
    # command: moments
    # seed: 7
    # parameters: n=4 k=2 p=1/2 mode=exact
    # created: 2026-09-03T10:21:07.123456+08:00
    n,k,p,mode,...
    4,2,1/2,exact,...

使用方式
--------
::

    from eqchrom.lib.csv_store import write_csv, read_csv
    write_csv(df, 'out.csv', {'command': 'moments', 'seed': 7})
    meta, df = read_csv('out.csv')

注意事项
--------
- 数据体是确定性的：相同的参数和种子产生逐字节相同的数据体，
  只有 ``# created`` 行随运行时间变化
- 浮点列统一用 ``repr`` 精度写出，保证读回后数值不变
- 文件只含 ASCII：元数据和数据中的非 ASCII 字符以反斜杠转义写出
"""

import io
import logging
import os
import sys
from typing import Dict, Optional, TextIO, Tuple, Union

import arrow
import pandas as pd

from eqchrom.lib.version import __version__

__author__ = 'myh '
__date__ = '2026/9/3 '

CREATED_KEY = 'created'


def metadata_lines(metadata: Dict[str, object]) -> str:
    lines = [f"# version: {__version__}"]
    for key, value in metadata.items():
        if key in ('version', CREATED_KEY):
            continue
        lines.append(f"# {key}: {value}")
    lines.append(f"# {CREATED_KEY}: {arrow.now().isoformat()}")
    return "\n".join(lines) + "\n"


def render_body(data: pd.DataFrame) -> str:
    return data.to_csv(index=False, lineterminator="\n", float_format=None)


def ascii_safe(text: str) -> str:
    """非 ASCII 字符写成 \\uXXXX 形式的转义。"""
    return text.encode('ascii', 'backslashreplace').decode('ascii')


def write_csv(data: pd.DataFrame, target: Union[str, TextIO, None], metadata: Dict[str, object]) -> None:
    """写出带元数据头的 CSV。

    全部内容先渲染成 ASCII 文本再打开目标文件，渲染失败时不会留下空文件。

    Args:
        data: 数据体
        target: 文件路径；None 表示标准输出；也可以是已打开的文本流
        metadata: 元数据键值对，按插入顺序写出
    """
    text = ascii_safe(metadata_lines(metadata) + render_body(data))
    if target is None:
        sys.stdout.write(text)
        return
    if isinstance(target, str):
        dirname = os.path.dirname(target)
        if dirname and not os.path.exists(dirname):
            os.makedirs(dirname)
        with open(target, 'w', encoding='ascii', newline='') as fh:
            fh.write(text)
        logging.info(f"写出 CSV：{target}，{len(data.index)} 行")
        return
    target.write(text)


def split_metadata(text: str) -> Tuple[Dict[str, str], str]:
    meta: Dict[str, str] = {}
    body_lines = []
    for line in text.splitlines(keepends=True):
        if line.startswith('#'):
            key, _, value = line[1:].strip().partition(':')
            meta[key.strip()] = value.strip()
        else:
            body_lines.append(line)
    return meta, "".join(body_lines)


def read_csv(source: Union[str, TextIO], dtype: Optional[Dict[str, object]] = None) -> Tuple[Dict[str, str], pd.DataFrame]:
    """读回 write_csv 写出的文件，返回 (元数据, DataFrame)。"""
    if isinstance(source, str):
        with open(source, 'r', encoding='ascii') as fh:
            text = fh.read()
    else:
        text = source.read()
    meta, body = split_metadata(text)
    data = pd.read_csv(io.StringIO(body), dtype=dtype, keep_default_na=False)
    return meta, data


def body_of(text: str) -> str:
    """去掉元数据行后的数据体，用于比较两次运行的输出。"""
    return split_metadata(text)[1]
