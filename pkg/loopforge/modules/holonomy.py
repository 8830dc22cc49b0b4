#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for parallel transport and the polynomial fibre of D"""

import numpy as np
from scipy import linalg
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.errors import DimensionMismatch
from loopforge.loops import (TruncationConfig, FourierLoop, evaluate,
                             derivative, product)
from loopforge.lie import random_algebra_element, random_group_element
from loopforge.holonomy import (LoopConnection, parallel_transport,
                                holonomy as holonomy_op,
                                covariant_derivative, gauge_transform,
                                block_sum, PolFibreBasis, cos_D, cos_D_series,
                                cosh_sandwich_residual, CircleMap,
                                reparametrize, chain_rule_residual, fibre_tail,
                                subbundle_counterexample_check)

# default configuration
__DEFAULTS = """\
# default parameters for the `holonomy` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
seed: 42
timing: false
holonomy:
  window: 3
  amplitude: 0.3
  modes: 2
  integrator:
    steps: 4096
    project_every: 64
  eigen_tol: 1.e-8
  series_tol: 1.e-8
  rotation: [72., degree, 'rotation used for pull-backs']
  wobble: [0.05, 0.1]
  chain_tol: 1.e-6
  break_wobble: 0.5
  break_tail: 1.e-3
  counterexample:
    degrees: [2, 4]
    amplitude: 1.
    slope: 2
    threshold: 1.e-8
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def random_form(rng, config, n, modes, amplitude, field='C'):
    """Random connection form with |k| <= modes"""

    algebra = 'so' if field == 'R' else 'u'
    coeffs = {0: amplitude * random_algebra_element(algebra, n, rng).matrix}
    for k in range(1, modes + 1):
        if field == 'R':
            x = random_algebra_element('so', n, rng).matrix
            y = random_algebra_element('so', n, rng).matrix
            c = amplitude * (x + 1j * y) / (k + 1)
            coeffs[k], coeffs[-k] = c, np.conj(c)
        else:
            c = amplitude * (rng.normal(size=(n, n)) +
                             1j * rng.normal(size=(n, n))) / (k + 1)
            coeffs[k], coeffs[-k] = c, -c.conj().T
    return FourierLoop(coeffs, config, shape=(n, n), real=field == 'R')


def random_section(rng, config, n, degree):
    coeffs = {
        k: rng.normal(size=n) + 1j * rng.normal(size=n)
        for k in range(-degree, degree + 1)
    }
    return FourierLoop(coeffs, config, shape=(n, ))


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        holonomy=None, **kwargs):
    """Checks of transport, the fibre eigenbasis and reparametrisations.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        holonomy   (dict): reflects yaml 'holonomy'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(holonomy)
    integ = par.integrator
    tol = trunc.tol
    config = TruncationConfig(trunc.max_mode, trunc.dim, tol)
    n = config.dim
    window = par.window
    offset = par.magnitude('rotation', 'turn')

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)

    def connection(form, field='C', steps=None):
        if steps is None:
            steps = integ.steps
        return LoopConnection(form, field, steps, integ.project_every)

    def random_connection(rng, field='C', dim=None):
        form = random_form(rng, config, dim or n, par.modes, par.amplitude,
                           field)
        return connection(form, field)

    def closed_form(rng):
        xi = random_algebra_element('u', n, rng).matrix
        conn = connection(FourierLoop({0: xi}, config, shape=(n, n)))
        res = np.linalg.norm(holonomy_op(conn).matrix - linalg.expm(-xi))
        t = rng.uniform(-1., 2.)
        res = max(res, np.linalg.norm(conn.frame(t) - linalg.expm(-t * xi)))
        theta = .3
        scalar = LoopConnection.constant(1j * theta * np.eye(1),
                                         config.replace(dim=1))
        basis = PolFibreBasis(scalar, 0)
        return max(res, abs(basis.exponents[0] - theta))

    runner.run('closed_form', 'Phi(t) = exp(-t xi) for constant A',
               closed_form)

    def transport_ode(rng):
        conn = random_connection(rng)
        step = 1e-4
        res = 0.
        for t in rng.uniform(0., 1., size=8):
            diff = (conn.frame(t + step) - conn.frame(t - step)) / (2 * step)
            value = evaluate(conn.A, t)
            res = max(res, np.linalg.norm(diff + value @ conn.frame(t)))
        return res

    runner.run('transport_ode', "Phi' = -A Phi", transport_ode,
               tolerance=1e-7)

    def quasi_periodicity(rng):
        conn = random_connection(rng)
        hol = holonomy_op(conn).matrix
        res = 0.
        for t in rng.uniform(-1., 1., size=8):
            res = max(res, np.linalg.norm(conn.frame(t + 1.) -
                                          conn.frame(t) @ hol))
            t0, t1, t2 = np.sort(rng.uniform(-1., 2., size=3))
            chained = parallel_transport(conn, t1, t2).matrix @ \
                parallel_transport(conn, t0, t1).matrix
            res = max(res, np.linalg.norm(
                chained - parallel_transport(conn, t0, t2).matrix))
        return res

    runner.run('quasi_periodicity', 'Phi(t + 1) = Phi(t) Phi(1)',
               quasi_periodicity)

    def integrator_drift(rng):
        form = random_form(rng, config, n, par.modes, par.amplitude)
        coarse = holonomy_op(connection(form)).matrix
        fine = holonomy_op(connection(form, steps=2 * integ.steps)).matrix
        return np.linalg.norm(coarse - fine)

    runner.run('integrator_drift', 'holonomy stable under step refinement',
               integrator_drift)

    def gauge(rng):
        conn = random_connection(rng)
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v /= np.linalg.norm(v)
        proj = np.outer(v, v.conj())
        a = random_group_element('U', n, rng).matrix
        u = FourierLoop({0: (np.eye(n) - proj) @ a, 1: proj @ a}, config,
                        shape=(n, n))
        moved = gauge_transform(conn, u)
        u0 = np.sum([c for _, c in u.items()], axis=0)
        expected = u0 @ holonomy_op(conn).matrix @ u0.conj().T
        res = np.linalg.norm(holonomy_op(moved).matrix - expected)
        alpha = random_section(rng, config, n, 3)
        left, _ = covariant_derivative(moved, product(u, alpha)[0])
        right, _ = product(u, covariant_derivative(conn, alpha)[0])
        return max(res, (left - right).norm() / max(1., right.norm()))

    runner.run('gauge', 'D transforms covariantly under loops of U_n', gauge)

    def leibniz(rng):
        conn = random_connection(rng)
        scalar = config.replace(dim=1)
        f = FourierLoop({k: rng.normal() + 1j * rng.normal()
                         for k in range(-3, 4)}, scalar, shape=())
        alpha = random_section(rng, config, n, 3)
        fa, _ = product(f, alpha)
        left, _ = covariant_derivative(conn, fa)
        da, _ = covariant_derivative(conn, alpha)
        first, _ = product(derivative(f), alpha)
        second, _ = product(f, da)
        return (left - first - second).norm() / max(1., left.norm())

    runner.run('leibniz', "D(f alpha) = f' alpha + f D alpha", leibniz)

    def eigen_relation(rng):
        res, detail = 0., {}
        for field, dim in (('C', n), ('R', 2 * n)):
            basis = PolFibreBasis(random_connection(rng, field, dim), window)
            table = basis.modes
            res = max(res, table['residual'].max())
            detail[field] = {'overflow': float(table['overflow'].max())}
            if not np.all((basis.exponents >= 0.) &
                          (basis.exponents < 2 * np.pi)):
                res = max(res, 1.)
        return res, detail

    runner.run('eigen_relation', 'D(z^k v_j) = i (s_j + 2 pi k) z^k v_j',
               eigen_relation, tolerance=par.eigen_tol)

    def direct_sum(rng):
        first = random_connection(rng)
        second = random_connection(rng, dim=1)
        total = PolFibreBasis(block_sum(first, second), 0)
        expected = np.sort(np.concatenate([
            PolFibreBasis(first, 0).exponents,
            PolFibreBasis(second, 0).exponents
        ]))
        diff = np.abs(total.exponents - expected)
        return float(np.max(np.minimum(diff, 2 * np.pi - diff)))

    runner.run('direct_sum', 'spectrum of a direct sum', direct_sum,
               tolerance=1e-8)

    def complexification(rng):
        basis = PolFibreBasis(random_connection(rng, 'R', 2 * n), 0)
        exps = np.sort(basis.exponents)
        mirror = np.sort(np.mod(-exps, 2 * np.pi))
        diff = np.abs(exps - mirror)
        return float(np.max(np.minimum(diff, 2 * np.pi - diff)))

    runner.run('complexification', 'real structure pairs s with -s',
               complexification, tolerance=1e-8)

    def cos_routes(rng):
        conn = random_connection(rng)
        basis = PolFibreBasis(conn, window)
        coords = rng.normal(size=(basis.n, 2 * window + 1)) + \
            1j * rng.normal(size=(basis.n, 2 * window + 1))
        exact = cos_D(conn, basis, coords)
        series = cos_D_series(conn, basis, coords)
        res = np.linalg.norm(exact - series) / np.linalg.norm(exact)
        single = cos_D(conn, basis, {(0, 1): 1.})
        res = max(res, abs(single[(0, 1)] - np.cosh(basis.eigenvalue(0, 1)))
                  / np.cosh(basis.eigenvalue(0, 1)))
        return res

    runner.run('cos_routes', 'cos(D) from eigencoordinates and power series',
               cos_routes, tolerance=par.series_tol)

    def sandwich(rng):
        return cosh_sandwich_residual(
            PolFibreBasis(random_connection(rng), window))

    runner.run('cosh_sandwich', 'cosh(s) >= cosh(x + s) / e^|x|', sandwich,
               tolerance=1e-12)

    def chain_rule(rng):
        conn = random_connection(rng)
        alpha = random_section(rng, config, n, 4)
        res = 0.
        for eps in par.wobble:
            sigma = CircleMap.wobble(eps, config.replace(dim=1))
            res = max(res, chain_rule_residual(conn, alpha, sigma))
        return res

    runner.run('chain_rule', 'D is natural under reparametrisation',
               chain_rule, tolerance=par.chain_tol)

    def isometries(rng):
        conn = random_connection(rng)
        basis = PolFibreBasis(conn, 0)
        scalar = config.replace(dim=1)
        res = 0.
        for sigma in (CircleMap.rotation(offset, scalar),
                      CircleMap.reflection(scalar)):
            for j in range(basis.n):
                pulled, section = reparametrize(conn, basis.function(j, 0),
                                                sigma)
                target = PolFibreBasis(pulled, 1)
                res = max(res, fibre_tail(target, section, 1))
        return res

    runner.run('isometries', 'rotations and reflection preserve the fibre',
               isometries, tolerance=1e-8)

    def wobble_breaks(rng):
        theta = np.array([2., 4.])[:n] if n <= 2 else 2. + np.arange(n)
        conn = LoopConnection.constant(1j * np.diag(theta), config)
        basis = PolFibreBasis(conn, 0)
        sigma = CircleMap.wobble(par.break_wobble, config.replace(dim=1))
        tails = []
        for j in range(basis.n):
            pulled, section = reparametrize(conn, basis.function(j, 0), sigma)
            tails.append(fibre_tail(PolFibreBasis(pulled, 1), section, 1))
        return max(0., par.break_tail - min(tails)), {'tails': tails}

    runner.run('wobble_breaks', 'generic diffeomorphisms leave the fibre',
               wobble_breaks)

    def distinct_connections(rng):
        first = random_connection(rng)
        second = random_connection(rng)
        basis = PolFibreBasis(first, 1)
        try:
            cos_D(second, basis, np.zeros((basis.n, 3)))
        except DimensionMismatch:
            return 0.
        return 1.

    runner.run('distinct_connections', 'eigenbasis tied to its connection',
               distinct_connections)

    def counterexample(rng):
        opts = par.counterexample
        res, detail = 0., {}
        for degree in opts.degrees:
            smin, table = subbundle_counterexample_check(
                degree, tol, 'sine', opts.amplitude)
            detail[str(degree)] = smin
            res = max(res, opts.threshold - smin)
            if table['polynomial'].any():
                res = max(res, 1.)
        for twist, amp in (('zero', 0.), ('linear', opts.slope)):
            smin, table = subbundle_counterexample_check(
                max(opts.degrees), tol, twist, amp)
            res = max(res, smin)
            if not table['polynomial'].all():
                res = max(res, 1.)
        return max(res, 0.), detail

    runner.run('subbundle_counterexample',
               'twisted line without polynomial sections', counterexample)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('holonomy', **config)
    print(out['holonomy'])
