#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
随机图采样任务

按 (seed, 样本编号) 派生独立随机流，采样 G(n,m) 或 G(n,p)，每个样本写成一个
DIMACS 风格的图文件，并在同一目录写出 samples.csv 索引。

使用方式
--------
命令行运行::

    eqchrom sample --n 24 --p 1/2 --count 10 --seed 7 --out output/samples
    eqchrom sample --n 24 --m 138 --count 10 --seed 7 --out output/samples

注意事项
--------
- 给 --m 时采样 G(n,m)；给 --p 时采样 G(n,p)，每条边独立出现；
  ``--p`` 加 ``--model gnm`` 时改为采样 G(n,m)，m = ⌊p·C(n,2)⌋
- 索引中的 path 为相对于输出目录的文件名
"""

import os.path
import sys

cpath_current = os.path.dirname(os.path.dirname(__file__))
cpath = os.path.abspath(os.path.join(cpath_current, os.pardir))
sys.path.append(cpath)

import eqchrom.core.tablestructure as tbs
from eqchrom.core.errors import InvalidRangeError
from eqchrom.core.graphs import SeedSpec, sample_gnm, sample_gnp, write_dimacs
from eqchrom.job import output
from eqchrom.lib.run_template import run_ordered
from eqchrom.lib.settings import run_settings

__author__ = 'myh '
__date__ = '2026/9/11 '

MODEL_GNM = 'gnm'
MODEL_GNP = 'gnp'


def edge_target(n, m, p):
    N = n * (n - 1) // 2
    if m is not None:
        return m
    if p is None:
        raise InvalidRangeError("sample 需要 --m 或 --p")
    return (p.numerator * N) // p.denominator


def resolve_model(model, p):
    """未指定 --model 时，给 --p 采样 G(n,p)，给 --m 采样 G(n,m)。"""
    if model is not None:
        return model
    return MODEL_GNP if p is not None else MODEL_GNM


def draw(index, n, model, m, p, seed):
    spec = SeedSpec(seed, index)
    if model == MODEL_GNP:
        return sample_gnp(n, p, spec)
    return sample_gnm(n, m, spec)


def _write_one(index, args, out_dir, m):
    g = draw(index, args.n, args.model, m, args.p, args.seed)
    name = f"graph_{index:04d}.dimacs"
    comments = [f"model {args.model}", f"seed {args.seed}", f"stream {index}"]
    write_dimacs(g, os.path.join(out_dir, name), comments)
    return {'index': index, 'model': args.model, 'n': g.n, 'm': g.m, 'seed': args.seed,
            'stream': index, 'path': name}


def run(args, log):
    if args.count < 1:
        raise InvalidRangeError(f"--count 必须为正：{args.count}")
    args.model = resolve_model(args.model, args.p)
    if args.model == MODEL_GNP and args.p is None:
        raise InvalidRangeError("gnp 模型需要 --p")
    m = None if args.model == MODEL_GNP else edge_target(args.n, args.m, args.p)
    out_dir = args.out or os.path.join(run_settings().output_dir, 'samples')
    rows = run_ordered(_write_one, range(args.count), args.threads, args, out_dir, m,
                       reraise=(Exception,), progress=args.progress, desc='sample')
    log.info(f"写出 {len(rows)} 个图文件到 {out_dir}")
    output.emit(tbs.TABLE_SAMPLES, rows, args, target=os.path.join(out_dir, 'samples.csv'),
                extra={'model': args.model})
    return 0


def main():
    from eqchrom.job import cli
    cli.main(['sample'] + sys.argv[1:])


# main函数入口
if __name__ == '__main__':
    main()
