#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
eqchrom 稠密随机图等分染色数实验室

eqchrom 围绕稠密随机图 G(n,m) / G(n,p) 的等分染色数 χ_= 做精确计算与数值验证：

核心功能
--------
- **一阶矩**: γ(n)、有序/无序等分的期望个数 μ、μ̄，精确、对数域、渐近三种模式
- **二阶矩**: S_r 的精确值与渐近式、常数 c / c̃、T_i 序列、E[X²]/E[X]² 的穷举预言
- **子序列**: 构造 n_j 并复核其性质（整除、γ 窗口、阈值、最小性）
- **随机图**: 可复现种子的 G(n,m) / G(n,p) 采样、DIMACS 读写
- **求解器**: 小规模精确 χ、χ_=、等分染色阈值 χ*_=，以及贪心上界
- **验证**: 所有公式与独立穷举预言的交叉校验

模块结构
--------
- eqchrom.lib: 基础设施层（配置、日志、并发模板、CSV 读写）
- eqchrom.core: 计算层
- eqchrom.job: 任务层（命令行各子命令）

快速开始
--------
1. 查看一阶矩::

    python eqchrom/job/cli.py moments --n 4 --k 2 --p 1/2 --mode exact

2. 构造子序列::

    python eqchrom/job/cli.py subseq --p 1/2 --j-min 15 --j-max 40

3. 运行全部预言校验::

    python eqchrom/job/cli.py verify oracles
"""

__author__ = 'myh '
__date__ = '2026/9/2 '
