#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
eqchrom 版本信息模块

本模块定义了 eqchrom 的版本号。每个 CSV 产物的 ``# version`` 元数据行
都取自这里，因此修改计算语义（而不仅是输出格式）时必须升级版本号。

使用方式
--------
::

    from eqchrom.lib.version import __version__
    print(f"当前版本: {__version__}")

版本号规则
----------
采用语义化版本号：主版本号.次版本号.修订号

- **主版本号**: 数值结果可能改变（例如 n_j 的定义、阈值对数底的选择）
- **次版本号**: 新增子命令或诊断列
- **修订号**: 问题修正
"""

__author__ = 'myh '
__date__ = '2026/9/2 '

__version__ = "1.0.0"
