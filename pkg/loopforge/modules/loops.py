#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for truncated Fourier loops"""

import warnings
import numpy as np
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.errors import AliasingWarning
from loopforge.loops import (TruncationConfig, FourierLoop, basis, evaluate,
                             rotate, involute, shift, derivative, product,
                             fourier_tail_norm, from_samples, from_function)

# default configuration
__DEFAULTS = """\
# default parameters for the `loops` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
seed: 42
timing: false
loops:
  samples: 20
  aliasing:
    tone: 6
    max_mode: 4
    counts: [9, 10, 11, 12]
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def _random_loop(rng, config, support, shape=None, real=False):
    """Random loop supported on |k| <= support"""
    if shape is None:
        shape = (config.dim, )
    coeffs = {}
    for k in range(-support, support + 1):
        coeffs[k] = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    loop = FourierLoop(coeffs, config, shape=shape)
    if real:
        loop = .5 * (loop + _conjugate(loop))
        loop = FourierLoop(dict(loop.items()), config, shape=shape, real=True)
    return loop


def _conjugate(loop):
    """Pointwise complex conjugate"""
    return loop._like({-k: np.conj(c) for k, c in loop.items()})


def _unit(rng):
    return np.exp(2j * np.pi * rng.uniform())


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        loops=None, **kwargs):
    """Checks of the truncated loop calculus.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        loops      (dict): reflects yaml 'loops'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(loops)
    config = TruncationConfig(trunc.max_mode, trunc.dim, trunc.tol)
    tol = config.tol
    count = par.samples

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)
    scalar = config.replace(dim=1)

    def evaluation_examples(rng):
        res = abs(evaluate(basis(0, scalar), .37) - 1.)
        res = max(res, abs(evaluate(basis(1, scalar), .25) - 1j))
        both = FourierLoop({-1: 1., 1: 1.}, scalar, shape=())
        return max(res, abs(evaluate(both, 0.) - 2.))

    runner.run('evaluate_examples', 'evaluation at z = exp(2 pi i t)',
               evaluation_examples)

    def operator_examples(rng):
        both = FourierLoop({-1: 1., 1: 1.}, scalar, shape=())
        rotated = rotate(both, 1j)
        res = abs(rotated.coeff(1) - 1j) + abs(rotated.coeff(-1) + 1j)
        edge, lost = shift(basis(config.max_mode, scalar), 1)
        res += edge.norm() + abs(lost - 1.)
        res += abs(derivative(basis(-2, scalar)).coeff(-2) + 4j * np.pi)
        left = FourierLoop({0: 1., 1: 1.}, scalar, shape=())
        right = FourierLoop({0: 1., -1: 1.}, scalar, shape=())
        prod, _ = product(left, right)
        expected = FourierLoop({-1: 1., 0: 2., 1: 1.}, scalar, shape=())
        res += (prod - expected).norm()
        res += abs(fourier_tail_norm(basis(2, scalar), 1) - 1.)
        return res

    runner.run('operator_examples', 'rotation, shift and derivative rules',
               operator_examples)

    def leibniz(rng):
        half = config.max_mode // 2
        res = 0.
        for _ in range(count):
            f = _random_loop(rng, scalar, half, shape=())
            g = _random_loop(rng, config, half)
            fg, _ = product(f, g)
            left = derivative(fg)
            a, _ = product(derivative(f), g)
            b, _ = product(f, derivative(g))
            res = max(res, (left - a - b).norm() / max(1., left.norm()))
        return res

    runner.run('leibniz', 'product rule at truncation', leibniz)

    def rotation_algebra_map(rng):
        half = config.max_mode // 2
        res = 0.
        for _ in range(count):
            lam = _unit(rng)
            f = _random_loop(rng, scalar, half, shape=())
            g = _random_loop(rng, config, half)
            fg, _ = product(f, g)
            rf, _ = product(rotate(f, lam), rotate(g, lam))
            res = max(res, (rotate(fg, lam) - rf).norm() / max(1., fg.norm()))
        return res

    runner.run('rotation_algebra_map', 'rotation is an algebra map',
               rotation_algebra_map)

    def compositions(rng):
        res = 0.
        for _ in range(count):
            f = _random_loop(rng, config, config.max_mode // 3)
            lam, mu = _unit(rng), _unit(rng)
            res = max(res, (involute(involute(f)) - f).norm())
            twice = rotate(rotate(f, lam), mu)
            res = max(res, (twice - rotate(f, lam * mu)).norm())
            q, r = rng.integers(-3, 4, size=2)
            step, _ = shift(f, int(q))
            step, _ = shift(step, int(r))
            once, _ = shift(f, int(q + r))
            res = max(res, (step - once).norm())
        return res

    runner.run('compositions', 'involution, rotation and shift compose',
               compositions)

    def derivative_rotation(rng):
        res = 0.
        for _ in range(count):
            f = _random_loop(rng, config, config.max_mode)
            lam = _unit(rng)
            diff = derivative(rotate(f, lam)) - rotate(derivative(f), lam)
            res = max(res, diff.norm() / max(1., derivative(f).norm()))
        return res

    runner.run('derivative_rotation', 'circle action commutes with D',
               derivative_rotation)

    def real_flag(rng):
        half = config.max_mode // 2
        f = _random_loop(rng, scalar, half, shape=(), real=True)
        g = _random_loop(rng, scalar, half, shape=(), real=True)
        prod, _ = product(f, g)
        kept = [prod.real, derivative(f).real, involute(f).real,
                rotate(f, -1.).real, rotate(f, 1.).real]
        lost = rotate(f, 1j).real
        return 0. if all(kept) and not lost else 1.

    runner.run('real_flag', 'reality preserved by the loop operators',
               real_flag)

    def sampled_polynomial(rng):
        tone = from_function(lambda t: np.exp(2j * np.pi * 3 * t), scalar)
        res = fourier_tail_norm(tone, 3)
        res = max(res, abs(tone.coeff(3) - 1.))
        const = from_samples(5. * np.ones(4 * config.max_mode + 1), scalar)
        res = max(res, abs(const.coeff(0) - 5.), fourier_tail_norm(const, 0))
        return res

    runner.run('sampled_polynomial', 'polynomial membership from samples',
               sampled_polynomial)

    def sampled_round_trip(rng):
        f = _random_loop(rng, config, config.max_mode)
        count = 4 * config.max_mode + 1
        times = np.arange(count) / count
        samples = np.array([evaluate(f, t) for t in times])
        back = from_samples(samples, config)
        return (back - f).norm() / max(1., f.norm())

    runner.run('sampled_round_trip', 'discrete Fourier ingestion',
               sampled_round_trip)

    def aliasing(rng):
        alias = par.aliasing
        small = TruncationConfig(alias.max_mode, 1, tol)
        tone = alias.tone
        pure = from_samples(
            np.exp(2j * np.pi * np.arange(16) / 16.), small, warn=False)
        res = abs(pure.coeff(1) - 1.) + fourier_tail_norm(pure, 1)
        for m in alias.counts:
            times = np.arange(m) / float(m)
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter('always')
                from_samples(np.exp(2j * np.pi * tone * times), small)
            flagged = any(issubclass(w.category, AliasingWarning)
                          for w in caught)
            res += 0. if flagged else 1.
        return res

    runner.run('aliasing', 'aliasing flagged below the Nyquist count',
               aliasing)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('loops', **config)
    print(out['loops'])
