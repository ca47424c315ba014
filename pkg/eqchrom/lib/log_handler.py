#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行日志处理模块

本模块为命令行运行提供基于 logbook 的日志处理器，用于输出实验进度
（样本编号、耗时、超时等）。库代码本身使用标准 logging，
这里的处理器只服务于交互式的 ``eqchrom`` 命令。

日志级别
--------
从高到低：CRITICAL > ERROR > WARNING > NOTICE > INFO > DEBUG > TRACE > NOTSET

使用方式
--------
::

    from eqchrom.lib.log_handler import DefaultLogHandler

    # 输出到标准错误（不会污染写到 stdout 的 CSV）
    log = DefaultLogHandler(name='experiment', log_type='stderr')
    log.info('开始采样')

    # 输出到文件
    log = DefaultLogHandler(name='experiment', log_type='file', filepath='run.log')
    log.warn('样本 17 超时')

注意事项
--------
- 日志时间使用本地时区
- 文件日志会自动创建目录
"""

import os
import sys

import logbook
from logbook import FileHandler, Logger, NullHandler, StreamHandler

__author__ = 'myh '
__date__ = '2026/9/3 '

logbook.set_datetime_format('local')


class DefaultLogHandler(object):
    """默认的 Log 类，属性访问转发给内部的 logbook.Logger。"""

    def __init__(self, name='eqchrom', log_type='stderr', filepath='eqchrom.log', loglevel='INFO'):
        """
        :param name: log 名字
        :param log_type: 'stderr' / 'stdout' 输出到屏幕，'file' 输出到指定文件，'null' 丢弃
        :param filepath: log 文件名
        :param loglevel: 日志等级
        """
        self.log = Logger(name)
        if log_type == 'stderr':
            self.log.handlers.append(StreamHandler(sys.stderr, level=loglevel))
        elif log_type == 'stdout':
            self.log.handlers.append(StreamHandler(sys.stdout, level=loglevel))
        elif log_type == 'file':
            dirname = os.path.dirname(filepath)
            if dirname and not os.path.exists(dirname):
                os.makedirs(dirname)
            self.log.handlers.append(FileHandler(filepath, level=loglevel))
        else:
            self.log.handlers.append(NullHandler())

    def __getattr__(self, item):
        return self.log.__getattribute__(item)
