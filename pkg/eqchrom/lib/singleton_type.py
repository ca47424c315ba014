#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
线程安全的单例模式元类模块

使用该元类的类在进程内只会被实例化一次，之后的实例化调用直接返回首个实例，
传入的新参数会被忽略。eqchrom 用它承载只需解析一次的运行配置
（见 ``eqchrom.lib.settings.run_settings``）。

示例::

    class MyClass(metaclass=singleton_type):
        def __init__(self, value):
            self.value = value

    MyClass(1) is MyClass(2)  # True
"""

from threading import RLock
from typing import Any

__author__ = 'myh '
__date__ = '2026/9/2 '


class singleton_type(type):
    """线程安全的单例元类，使用类级别的可重入锁保护首次创建。"""

    single_lock = RLock()

    def __call__(cls, *args: Any, **kwargs: Any) -> Any:
        with singleton_type.single_lock:
            if not hasattr(cls, "_instance"):
                cls._instance = super(singleton_type, cls).__call__(*args, **kwargs)

        return cls._instance

    def reset(cls) -> None:
        """丢弃已缓存的实例，下一次实例化会重新读取配置（测试中使用）。"""
        with singleton_type.single_lock:
            if hasattr(cls, "_instance"):
                del cls._instance
