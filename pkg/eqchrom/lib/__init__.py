#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
基础设施层：运行配置、版本、单例元类、并发执行模板、日志处理器、CSV 读写。
"""

__author__ = 'myh '
__date__ = '2026/9/2 '
