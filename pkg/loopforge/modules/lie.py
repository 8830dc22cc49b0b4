#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for the spectral calculus on U_n, SU_n and SO_n"""

import numpy as np
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.errors import OddDimension, SkipCheck
from loopforge.lie import (J0, GroupElement, AlgebraElement, exp_matrix,
                           log_sector, commuting_log, unitary_structure_from,
                           log_decompose_so, random_unitary_structure,
                           random_group_element, block_j0, commutator)

# default configuration
__DEFAULTS = """\
# default parameters for the `lie` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
seed: 42
timing: false
lie:
  sizes: [2, 3, 4]
  groups: [U, SU, SO]
  samples: 200
  so_samples: 100
  cut_angle: [1.e-8, radian, 'angular distance treated as on the cut']
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def _dist(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def _sectors():
    return [0j, .5j * np.pi]


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        lie=None, **kwargs):
    """Checks of exponentials, sector logarithms and unitary structures.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        lie        (dict): reflects yaml 'lie'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(lie)
    tol = trunc.tol
    cut = par.magnitude('cut_angle', 'radian')
    sizes = list(par.sizes)
    groups = list(par.groups)

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)

    def exp_examples(rng):
        res = _dist(exp_matrix(AlgebraElement(np.zeros((2, 2)))).matrix,
                    np.eye(2))
        full = AlgebraElement(np.diag([2j * np.pi, -2j * np.pi]))
        res = max(res, _dist(exp_matrix(full).matrix, np.eye(2)))
        half = AlgebraElement(np.pi * J0, 'so')
        return max(res, _dist(exp_matrix(half).matrix, -np.eye(2)))

    runner.run('exp_examples', 'exp(pi J) = -1', exp_examples)

    def log_examples(rng):
        res = _dist(log_sector(GroupElement(np.eye(2))).matrix, 0.)
        quarter = GroupElement(np.diag([1j, -1j]))
        res = max(res, _dist(log_sector(quarter).matrix,
                             np.diag([.5j * np.pi, -.5j * np.pi])))
        minus = GroupElement(-np.ones((1, 1)))
        return max(res, _dist(log_sector(minus, 1j * np.pi).matrix,
                              [[1j * np.pi]]))

    runner.run('log_examples', 'sector logarithm on eigenvalues', log_examples)

    def _samples(rng):
        for group in groups:
            for n in sizes:
                for _ in range(par.samples):
                    yield random_group_element(group, n, rng)

    def sector_round_trip(rng):
        res = 0.
        for g in _samples(rng):
            for s in _sectors():
                xi = log_sector(g, s, cut)
                res = max(res, _dist(exp_matrix(xi).matrix, g.matrix))
        return res

    runner.run('sector_round_trip', 'sector-log round trip',
               sector_round_trip)

    def sector_strip(rng):
        res = 0.
        for g in _samples(rng):
            for s in _sectors():
                angles = np.linalg.eigvals(log_sector(g, s, cut).matrix).imag
                over = np.max(np.abs(angles - s.imag)) - np.pi
                res = max(res, over)
        return res

    runner.run('sector_strip', 'eigenvalues inside the sector strip',
               sector_strip)

    def period_shift(rng):
        res = 0.
        for g in _samples(rng):
            low = log_sector(g, .5j * np.pi, cut).matrix
            high = log_sector(g, .5j * np.pi + 2j * np.pi, cut).matrix
            res = max(res, _dist(high - low, 2j * np.pi * np.eye(g.n)))
        return res

    runner.run('period_shift', 'sector shift by 2 pi i', period_shift)

    def locally_constant(rng):
        res = 0.
        for g in _samples(rng):
            angles = np.angle(np.linalg.eigvals(g.matrix))
            margin = np.min(np.pi - np.abs(angles))
            step = .5 * margin
            if step <= cut:
                continue
            near = log_sector(g, 1j * step, cut).matrix
            res = max(res, _dist(near, log_sector(g, 0j, cut).matrix))
        return res

    runner.run('locally_constant', 'sector logarithm locally constant in s',
               locally_constant)

    def commuting_log_check(rng):
        res = _dist(commuting_log(GroupElement(np.eye(2))).matrix, 0.)
        scalar = GroupElement(np.diag([1j, 1j]))
        res = max(res, _dist(commuting_log(scalar).matrix,
                             .5j * np.pi * np.eye(2)))
        for _ in range(par.samples):
            g = random_group_element('U', 3, rng)
            zeta = commuting_log(g).matrix
            res = max(res, _dist(exp_matrix(commuting_log(g)).matrix,
                                 g.matrix))
            for s in _sectors():
                xi = log_sector(g, s, cut).matrix
                res = max(res, np.linalg.norm(commutator(zeta, xi)))
        return res

    runner.run('commuting_log', 'commuting logarithm in the centre',
               commuting_log_check)

    def unitary_structure_examples(rng):
        res = _dist(unitary_structure_from(AlgebraElement(J0, 'so')).matrix,
                    J0)
        res = max(res, _dist(
            unitary_structure_from(AlgebraElement(3 * J0, 'so')).matrix, J0))
        mixed = np.zeros((4, 4))
        mixed[:2, :2] = 2 * J0
        mixed[2:, 2:] = -5 * J0
        expected = np.zeros((4, 4))
        expected[:2, :2] = J0
        expected[2:, 2:] = -J0
        res = max(res, _dist(
            unitary_structure_from(AlgebraElement(mixed, 'so')).matrix,
            expected))
        return res

    runner.run('unitary_structure_examples', 'natural unitary structure J_xi',
               unitary_structure_examples)

    def unitary_structure_random(rng):
        res = 0.
        for _ in range(par.samples):
            q = random_group_element('SO', 4, rng).matrix
            scales = rng.uniform(.5, 3., size=2) * rng.choice([-1, 1], size=2)
            xi = q @ np.kron(np.diag(scales), J0) @ q.T
            struct = unitary_structure_from(AlgebraElement(xi, 'so')).matrix
            res = max(res, np.linalg.norm(commutator(xi, struct)),
                      _dist(struct @ struct, -np.eye(4)))
        return res

    runner.run('unitary_structure_random', 'J_xi commutes with xi',
               unitary_structure_random)

    def log_decompose_examples(rng):
        xi, struct = log_decompose_so(GroupElement(-np.eye(2), 'SO'))
        res = _dist(exp_matrix(xi).matrix, -np.eye(2))
        res = max(res, _dist(xi.matrix, np.pi * struct.matrix))
        angle = np.pi / 3.
        rot = np.array([[np.cos(angle), -np.sin(angle)],
                        [np.sin(angle), np.cos(angle)]])
        xi, struct = log_decompose_so(GroupElement(rot, 'SO'))
        res = max(res, _dist(exp_matrix(xi).matrix, rot))
        res = max(res, _dist(xi.matrix, -5. * np.pi / 3. * J0))
        res = max(res, _dist(struct.matrix, -J0))
        return res

    runner.run('log_decompose_examples', 'log_0(-g) = xi - pi J_xi',
               log_decompose_examples)

    def log_decompose_random(rng):
        res = 0.
        for _ in range(par.so_samples):
            g = random_group_element('SO', 4, rng)
            xi, struct = log_decompose_so(g)
            res = max(res, _dist(exp_matrix(xi).matrix, g.matrix))
            base = log_sector(GroupElement(-g.matrix, 'SO', tol=1e-8))
            res = max(res, _dist(base.matrix,
                                 xi.matrix - np.pi * struct.matrix))
        return res

    runner.run('log_decompose_random', 'log_0(-g) = xi - pi J_xi',
               log_decompose_random, tolerance=10 * tol)

    def random_structures(rng):
        seed_ = int(rng.integers(2**31))
        first = random_unitary_structure(2, seed_)
        second = random_unitary_structure(2, seed_)
        res = _dist(first.matrix, second.matrix) + first.residual
        try:
            random_unitary_structure(3, seed_)
        except OddDimension:
            pass
        else:
            res += 1.
        for m in (4, 6):
            struct = random_unitary_structure(m, rng)
            res = max(res, struct.residual)
        return res

    runner.run('random_structures', 'unitary structures exist in even dim',
               random_structures)

    def block_structures(rng):
        even = [m for m in sizes if m % 2 == 0]
        if not even:
            raise SkipCheck('no even size configured')
        res = 0.
        for m in even:
            blocks = block_j0(m)
            res = max(res, _dist(blocks @ blocks, -np.eye(m)))
        return res

    runner.run('block_structures', 'standard structure J0 + ... + J0',
               block_structures)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('lie', **config)
    print(out['lie'])
