#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
计算层：数值原语、等分、一阶矩、二阶矩、随机图、求解器、子序列与表结构定义。
"""

__author__ = 'myh '
__date__ = '2026/9/2 '
