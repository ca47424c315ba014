#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__author__ = 'myh '
__date__ = '2026/9/2 '
