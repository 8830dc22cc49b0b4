#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for the Dirac operator on the flat model fibre"""

import numpy as np
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.weights import WeightSequence
from loopforge.fock import FockVector, clifford
from loopforge.dirac import (MAX_DEGREE, DiracConfig, PolynomialSection,
                             covariant_derivative_flat, dirac as dirac_op,
                             dirac_section,
                             rotate_point, rotate_section, equivariance_check)

# default configuration
__DEFAULTS = """\
# default parameters for the `dirac` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
seed: 42
timing: false
dirac:
  dim: 1
  window: 3
  particle_cap: 4
  rho: 2.
  sections: 50
  rotations: 20
  points: 5
  equivariance_tol: 1.e-10
  route_tol: 1.e-12
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def random_state(rng, cfg, lengths=(0, 2), terms=2):
    """Random Fock coefficient with the given particle numbers"""
    size = cfg.modes.size
    amps = {}
    for _ in range(terms):
        length = int(rng.choice(lengths))
        key = tuple(sorted(rng.choice(size, size=length, replace=False)))
        amps[key] = rng.normal() + 1j * rng.normal()
    return FockVector(amps, cfg.particle_cap)


def random_section(rng, cfg, degree=MAX_DEGREE, terms=3, lengths=(0, 2)):
    """Random polynomial section with coefficients of fixed parity"""
    out = {}
    for _ in range(terms):
        count = int(rng.integers(0, degree + 1))
        picks = rng.choice(len(cfg.directions), size=count)
        mono = tuple(cfg.directions[i] for i in picks)
        out[mono] = random_state(rng, cfg, lengths)
    return PolynomialSection(out, cfg.particle_cap)


def random_point(rng, cfg):
    size = cfg.modes.size
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        dirac=None, **kwargs):
    """Checks of the flat Dirac operator.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        dirac      (dict): reflects yaml 'dirac'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(dirac)
    tol = trunc.tol

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)

    cfg = DiracConfig(par.dim, par.window, par.particle_cap)
    configs = [cfg]
    if par.get('rho') is not None:
        weights = WeightSequence.geometric(par.rho, par.window)
        configs.append(
            DiracConfig(par.dim, par.window, par.particle_cap,
                        weights=weights))

    def constant_section(rng):
        s = PolynomialSection.constant(random_state(rng, cfg))
        res = dirac_op(s, cfg, random_point(rng, cfg)).norm()
        return res + len(covariant_derivative_flat(s))

    runner.run('constant_section', 'D annihilates constant sections',
               constant_section)

    def single_term(rng):
        res = 0.
        for var in cfg.directions:
            psi = random_state(rng, cfg)
            s = PolynomialSection.monomial([var], psi)
            value = dirac_op(s, cfg, random_point(rng, cfg))
            expected = clifford(cfg.tangent(var), psi, cfg.modes)
            res = max(res, value.distance(expected))
        return res

    runner.run('single_term', 'D (x_a psi) = pi(e_a) psi', single_term)

    def grading(rng):
        res = 0.
        for _ in range(par.sections):
            image = dirac_section(random_section(rng, cfg), cfg)
            if image.terms and image.parity != 1:
                res = max(res, 1.)
        return res

    runner.run('grading', 'D exchanges even and odd sections', grading)

    def routes(rng):
        res = 0.
        for _ in range(par.sections):
            s = random_section(rng, cfg)
            x = random_point(rng, cfg)
            first = dirac_op(s, cfg, x, route='extension')
            second = dirac_op(s, cfg, x, route='direct')
            third = dirac_section(s, cfg).evaluate(cfg, x)
            scale = max(1., first.norm())
            res = max(res, first.distance(second) / scale,
                      first.distance(third) / scale)
        return res

    runner.run('routes', 'Clifford extension and termwise contraction agree',
               routes, tolerance=par.route_tol)

    def equivariance(rng):
        res = 0.
        for local in configs:
            for _ in range(par.rotations):
                lam = np.exp(2j * np.pi * rng.uniform())
                s = random_section(rng, local)
                x = random_point(rng, local)
                scale = max(1., dirac_op(s, local, x).norm())
                res = max(res, equivariance_check(s, local, lam, x) / scale)
        return res

    runner.run('equivariance', 'D commutes with the circle action',
               equivariance, tolerance=par.equivariance_tol)

    def rotation_action(rng):
        res = 0.
        for _ in range(par.points):
            s = random_section(rng, cfg)
            lam = np.exp(2j * np.pi * rng.uniform())
            mu = np.exp(2j * np.pi * rng.uniform())
            x = random_point(rng, cfg)
            twice = rotate_section(rotate_section(s, mu, cfg), lam, cfg)
            once = rotate_section(s, lam * mu, cfg)
            y = rotate_point(x, lam * mu, cfg)
            res = max(res, twice.evaluate(cfg, y).distance(
                once.evaluate(cfg, y)))
        return res

    runner.run('rotation_action', 'rotated sections compose', rotation_action)

    def linearity(rng):
        res = 0.
        for _ in range(par.points):
            s1 = random_section(rng, cfg)
            s2 = random_section(rng, cfg)
            a, b = (float(c) for c in rng.normal(size=2))
            x = random_point(rng, cfg)
            left = dirac_op(a * s1 + b * s2, cfg, x)
            right = a * dirac_op(s1, cfg, x) + b * dirac_op(s2, cfg, x)
            res = max(res, left.distance(right) / max(1., left.norm()))
        return res

    runner.run('linearity', 'D is linear', linearity)

    def square(rng):
        res = 0.
        for degree in range(MAX_DEGREE + 1):
            for _ in range(par.points):
                s = random_section(rng, cfg, degree=degree, terms=1)
                twice = dirac_section(dirac_section(s, cfg), cfg)
                laplace = PolynomialSection({}, s.cap)
                for var in cfg.directions:
                    laplace = laplace + s.derivative(var).derivative(var)
                x = random_point(rng, cfg)
                left = twice.evaluate(cfg, x)
                res = max(res, left.distance(laplace.evaluate(cfg, x)) /
                          max(1., left.norm()))
        return res

    runner.run('square', 'D^2 is the flat Laplacian', square)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('dirac', **config)
    print(out['dirac'])
