#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for polynomial quasi-periodic paths and their sections"""

import warnings
import numpy as np
from scipy import linalg
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.errors import DifferentFibres, SkipCheck, TruncationWarning
from loopforge.loops import TruncationConfig, FourierLoop, evaluate
from loopforge.lie import (GroupElement, random_group_element,
                           random_algebra_element)
from loopforge.paths import (PeriodicPathSampled, project,
                             act_left, act_conj, act_loop,
                             quotient_degree_bound, fibre_quotient, section_un,
                             section_sun, section_son, son_direct)

# default configuration
__DEFAULTS = """\
# default parameters for the `paths` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
seed: 42
timing: false
paths:
  samples: 20
  so_samples: 100
  quotient_samples: 100
  times: 16
  wall: 0.
  nudge: 0.05
  spline:
    count: 64
    order: 3
    tol: 1.e-4
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def _sigma(v, k, config):
    """Unitary polynomial loop 1 - v v* + z^k v v*"""
    proj = np.outer(v, v.conj())
    n = len(v)
    if not k:
        return FourierLoop({0: np.eye(n)}, config, shape=(n, n))
    return FourierLoop({0: np.eye(n) - proj, k: proj}, config, shape=(n, n))


def _unit_vector(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def _path_distance(first, second, times):
    """Largest distance of two paths on the given times"""
    return max(np.linalg.norm(first(t) - second(t)) for t in times)


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        paths=None, **kwargs):
    """Checks of sections, actions and fibre quotients.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        paths      (dict): reflects yaml 'paths'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(paths)
    tol = trunc.tol
    max_mode = trunc.max_mode

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)

    def config(n):
        return TruncationConfig(max_mode, n, tol)

    def times(rng):
        return rng.uniform(-1., 2., size=par.times)

    def section_checks(path, g):
        """Residual of a section at g"""
        res = path.residuals()
        out = max(res['group'], res['periodicity'])
        return max(out, np.linalg.norm(project(path).matrix - g.matrix))

    def section_un_examples(rng):
        eye = GroupElement(np.eye(2))
        path = section_un(eye, config=config(2))
        res = max(np.linalg.norm(path.evaluate(t) - np.eye(2))
                  for t in times(rng))
        quarter = GroupElement(np.diag([1j, -1j]))
        path = section_un(quarter, config=config(2))
        expected = np.diag([np.exp(.5j * np.pi * .5),
                            np.exp(-.5j * np.pi * .5)])
        return max(res, np.linalg.norm(path.evaluate(.5) - expected))

    runner.run('section_un_examples', 'alpha_s(g)(t) = exp(t log_s g)',
               section_un_examples)

    def section_un_random(rng):
        res = 0.
        for _ in range(par.samples):
            g = random_group_element('U', 4, rng)
            for s in (0j, .5j * np.pi):
                path = section_un(g, s, config(4))
                res = max(res, section_checks(path, g))
        return res

    runner.run('section_un', 'section of P_pol U_n -> U_n', section_un_random,
               tolerance=10 * tol)

    def section_sun_random(rng):
        res = 0.
        degrees = set()
        for _ in range(par.samples):
            g = random_group_element('SU', 3, rng)
            v = _unit_vector(rng, 3)
            for s in (0j, 1j * np.pi):
                path = section_sun(g, s, v, config(3))
                res = max(res, section_checks(path, g))
                k = np.trace(path.xi.matrix).imag / (2 * np.pi)
                res = max(res, abs(path.degree - abs(np.round(k))))
                degrees.add(path.degree)
        if not any(degrees):
            return 1., {'degrees': sorted(degrees)}
        return res

    runner.run('section_sun', 'section of P_pol SU_n -> SU_n',
               section_sun_random, tolerance=10 * tol)

    def section_son_random(rng):
        res = 0.
        r = par.wall
        for _ in range(par.so_samples):
            h = random_group_element('SO', 4, rng)
            path = section_son(h, r, config=config(4), tol=tol)
            res = max(res, section_checks(path, h))
            direct = son_direct(h, r, tol=tol)
            res = max(res, _path_distance(path.evaluate, direct,
                                          np.linspace(0., 1., par.times)))
            if path.degree > 1:
                res = max(res, 1.)
        return res

    runner.run('section_son', 'section of P_pol SO_m -> SO_m',
               section_son_random, tolerance=1e-8)

    def section_son_chart(rng):
        res = 0.
        r = par.wall
        for _ in range(par.samples):
            # basepoints with eigenvalue real parts well off the wall
            while True:
                g = random_group_element('SO', 4, rng)
                reals = np.linalg.eigvals(g.matrix).real
                if np.min(np.abs(reals - r)) > 10 * par.nudge:
                    break
            step = random_algebra_element('so', 4, rng, scale=par.nudge)
            h = GroupElement(g.matrix @ linalg.expm(step.matrix), 'SO',
                             tol=1e-8)
            path = section_son(h, r, g, config=config(4), tol=tol)
            res = max(res, section_checks(path, h))
        return res

    runner.run('section_son_chart', 'section over the chart W_r(g)',
               section_son_chart, tolerance=1e-8)

    def left_action(rng):
        res = 0.
        for _ in range(par.samples):
            g = random_group_element('U', 3, rng)
            a = random_group_element('U', 3, rng)
            b = random_group_element('U', 3, rng)
            path = section_un(g, config=config(3))
            moved = act_left(a, path)
            res = max(res, _path_distance(moved.evaluate,
                                          lambda t: a.matrix @ path.evaluate(t),
                                          times(rng)))
            twice = act_left(a, act_left(b, path))
            once = act_left(a @ b, path)
            res = max(res, _path_distance(twice.evaluate, once.evaluate,
                                          times(rng)))
            expected = a.matrix @ g.matrix @ a.matrix.conj().T
            res = max(res, np.linalg.norm(project(moved).matrix - expected))
        return res

    runner.run('left_action', 'left action of G on P_pol G', left_action)

    def conjugation_action(rng):
        res = 0.
        for _ in range(par.samples):
            g = random_group_element('SU', 3, rng)
            a = random_group_element('SU', 3, rng)
            path = section_sun(g, config=config(3))
            moved = act_conj(a, path)
            res = max(res, _path_distance(
                moved.evaluate,
                lambda t: a.matrix @ path.evaluate(t) @ a.matrix.conj().T,
                times(rng)))
            expected = a.matrix @ g.matrix @ a.matrix.conj().T
            res = max(res, np.linalg.norm(project(moved).matrix - expected))
        return res

    runner.run('conjugation_action', 'conjugation action of G on P_pol G',
               conjugation_action)

    def fibre_action(rng):
        res = 0.
        for _ in range(par.samples):
            g = random_group_element('U', 3, rng)
            loop = _sigma(_unit_vector(rng, 3), int(rng.integers(-3, 4)),
                          config(3))
            path = section_un(g, config=config(3))
            moved = act_loop(path, loop)
            res = max(res, np.linalg.norm(project(moved).matrix - g.matrix))
            res = max(res, _path_distance(
                moved.evaluate,
                lambda t: path.evaluate(t) @ evaluate(loop, t), times(rng)))
        return res

    runner.run('fibre_action', 'loops act on the fibres of P_pol G',
               fibre_action)

    def quotient(rng):
        res = 0.
        for _ in range(par.quotient_samples):
            g = random_group_element('U', 3, rng)
            loop = _sigma(_unit_vector(rng, 3), int(rng.integers(-2, 3)),
                          config(3))
            alpha = section_un(g, 0j, config(3))
            beta = act_loop(section_un(g, .5j * np.pi, config(3)), loop)
            bound = quotient_degree_bound(alpha, beta)
            if bound > max_mode:
                raise SkipCheck('degree bound {} exceeds N = {}'.format(
                    bound, max_mode))
            gamma = fibre_quotient(alpha, beta)
            res = max(res, _path_distance(
                lambda t: alpha.evaluate(t) @ evaluate(gamma, t),
                beta.evaluate, times(rng)))
        return res

    runner.run('fibre_quotient', 'fibres of P_pol G -> G are L_pol G torsors',
               quotient, tolerance=1e-8)

    def different_fibres(rng):
        alpha = section_un(random_group_element('U', 2, rng),
                           config=config(2))
        beta = section_un(random_group_element('U', 2, rng),
                          config=config(2))
        try:
            fibre_quotient(alpha, beta)
        except DifferentFibres:
            return 0.
        return 1.

    runner.run('different_fibres', 'quotient needs a common projection',
               different_fibres)

    def u1_powers(rng):
        res = 0.
        cfg = config(1)
        for m in range(-2, 3):
            g = GroupElement(np.exp(2j * np.pi * rng.uniform()) * np.ones(
                (1, 1)))
            alpha = section_un(g, 0j, cfg)
            beta = section_un(g, 2j * np.pi * m, cfg)
            gamma = fibre_quotient(alpha, beta)
            expected = FourierLoop({m: np.ones((1, 1))}, cfg, shape=(1, 1))
            res = max(res, (gamma - expected).norm())
        return res

    runner.run('u1_powers', 'fibres of P_pol U_1 are z^m translates',
               u1_powers, tolerance=1e-8)

    def sampled_paths(rng):
        spline = par.spline
        g = random_group_element('U', 2, rng)
        path = section_un(g, config=config(2))
        sampled = PeriodicPathSampled.from_path(path, spline.count,
                                                spline.order)
        res = np.linalg.norm(project(sampled).matrix - g.matrix)
        res = max(res, _path_distance(sampled.evaluate, path.evaluate,
                                      times(rng)))
        a = random_group_element('U', 2, rng)
        moved = act_left(a, sampled)
        res = max(res, _path_distance(
            moved.evaluate, lambda t: a.matrix @ sampled.evaluate(t),
            times(rng)))
        return res

    runner.run('sampled_paths', 'sampled quasi-periodic paths',
               sampled_paths, tolerance=par.spline.tol)

    def overflow_warning(rng):
        g = random_group_element('U', 2, rng)
        path = section_un(g, config=config(2))
        loop = _sigma(_unit_vector(rng, 2), max_mode, config(2))
        path = act_loop(path, loop)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            act_loop(path, loop)
        flagged = any(issubclass(w.category, TruncationWarning)
                      for w in caught)
        return 0. if flagged else 1.

    runner.run('overflow_warning', 'truncation overflow is reported',
               overflow_warning)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('paths', **config)
    print(out['paths'])
