#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Unit tests for quasi-periodic paths and sections"""

import unittest

import numpy as np
from scipy import linalg

import loopforge as lf
from loopforge.loops import TruncationConfig, FourierLoop, fourier_tail_norm
from loopforge.lie import (GroupElement, AlgebraElement, random_group_element)
from loopforge.paths import (PolynomialPath, PeriodicPathSampled, project,
                             act_left, act_conj, act_loop,
                             quotient_degree_bound, fibre_quotient,
                             section_un, section_sun, section_son,
                             minus_space, son_direct)

CONFIG = TruncationConfig(16, 3)


def rotation(angle):
    return np.array([[np.cos(angle), -np.sin(angle)],
                     [np.sin(angle), np.cos(angle)]])


def block_rotation(a, b):
    out = np.zeros((4, 4))
    out[:2, :2] = rotation(a)
    out[2:, 2:] = rotation(b)
    return GroupElement(out, 'SO')


def spectral_pair(seed, shifts):
    """Generators with equal exponentials differing by 2 pi i shifts"""
    basis = random_group_element('U', len(shifts), seed=seed).matrix
    angles = np.random.default_rng(seed).uniform(-3., 3., len(shifts))
    first = basis @ np.diag(1j * angles) @ basis.conj().T
    second = basis @ np.diag(1j * (angles + 2 * np.pi * np.array(shifts))) \
        @ basis.conj().T
    return AlgebraElement(first), AlgebraElement(second)


def constant_path(xi, config=CONFIG):
    gamma = FourierLoop({0: np.eye(xi.n)}, config, shape=(xi.n, xi.n))
    return PolynomialPath(xi, gamma, 'U', 0)


class TestPolynomialPath(unittest.TestCase):
    def test000_section_un(self):

        g = random_group_element('U', 3, seed=4)
        path = section_un(g, config=CONFIG)
        np.testing.assert_allclose(path.evaluate(1.), g.matrix, atol=1e-9)
        np.testing.assert_allclose(project(path).matrix, g.matrix, atol=1e-9)
        res = path.residuals()
        self.assertLess(res['group'], 1e-9)
        self.assertLess(res['periodicity'], 1e-9)

    def test001_tail_check(self):

        xi = AlgebraElement(np.zeros((2, 2)))
        gamma = FourierLoop({3: np.eye(2)}, TruncationConfig(8, 2),
                            shape=(2, 2))
        with self.assertRaises(lf.InvariantViolation):
            PolynomialPath(xi, gamma, degree=2)
        with self.assertRaises(lf.DimensionMismatch):
            PolynomialPath(AlgebraElement(np.zeros((3, 3))), gamma)

    def test002_path_file(self):

        path = section_un(random_group_element('U', 2, seed=1),
                          config=TruncationConfig(4, 2))
        dct = path.to_dict()
        self.assertEqual(dct['group'], 'U')
        self.assertEqual(dct['loop']['max_mode'], 4)

    def test003_sampled(self):

        path = section_un(random_group_element('U', 2, seed=2),
                          config=TruncationConfig(8, 2))
        sampled = PeriodicPathSampled.from_path(path, count=128)
        for t in [.1, .55, 1.3, -.4]:
            np.testing.assert_allclose(sampled.evaluate(t), path.evaluate(t),
                                       atol=1e-4)
        samples = sampled.samples.copy()
        samples[-1] = np.eye(2)
        with self.assertRaises(lf.InvariantViolation):
            PeriodicPathSampled(sampled.holonomy, samples)


class TestSections(unittest.TestCase):
    def test000_section_sun_degree(self):

        g = GroupElement(np.exp(2j * np.pi / 3) * np.eye(3), 'SU')
        path = section_sun(g, config=CONFIG)
        self.assertEqual(path.degree, 1)
        for t in np.linspace(0., 1., 9):
            self.assertAlmostEqual(np.linalg.det(path.evaluate(t)), 1.,
                                   places=9)
        np.testing.assert_allclose(path.evaluate(1.), g.matrix, atol=1e-9)

    def test001_section_sun_errors(self):

        g = GroupElement(np.exp(2j * np.pi / 3) * np.eye(3), 'SU')
        with self.assertRaises(lf.NonUnitVector):
            section_sun(g, v=np.ones(3), config=CONFIG)
        with self.assertRaises(lf.NotInGroup):
            section_sun(GroupElement(1j * np.eye(3)), config=CONFIG)

    def test002_section_son(self):

        h = block_rotation(2.5, .5)
        path = section_son(h, 0., config=TruncationConfig(16, 4))
        self.assertEqual(path.group, 'SO')
        np.testing.assert_allclose(path.evaluate(0.), np.eye(4), atol=1e-8)
        np.testing.assert_allclose(path.evaluate(1.), h.matrix, atol=1e-8)
        res = path.residuals()
        self.assertLess(res['group'], 1e-8)
        self.assertLess(res['periodicity'], 1e-8)
        direct = son_direct(h, 0.)
        for t in np.linspace(0., 1., 7):
            np.testing.assert_allclose(path.evaluate(t).real, direct(t),
                                       atol=1e-8)

    def test003_wall(self):

        h = block_rotation(2.5, .5)
        self.assertEqual(minus_space(h, 0.).shape, (4, 2))
        with self.assertRaises(lf.EigenvalueOnWall):
            minus_space(h, np.cos(.5))

    def test004_empty_minus_space(self):

        h = block_rotation(.3, .5)
        path = section_son(h, -.5, config=TruncationConfig(4, 4))
        self.assertEqual(path.degree, 0)
        np.testing.assert_allclose(path.evaluate(1.), h.matrix, atol=1e-9)


class TestActions(unittest.TestCase):
    def test000_left(self):

        g = random_group_element('U', 3, seed=7)
        h = random_group_element('U', 3, seed=8)
        path = section_un(h, config=CONFIG)
        moved = act_left(g, path)
        expected = g.matrix @ h.matrix @ g.matrix.conj().T
        np.testing.assert_allclose(project(moved).matrix, expected,
                                   atol=1e-9)
        t = .35
        np.testing.assert_allclose(moved.evaluate(t),
                                   g.matrix @ path.evaluate(t), atol=1e-9)

    def test001_conj(self):

        g = random_group_element('U', 3, seed=9)
        path = section_un(random_group_element('U', 3, seed=10),
                          config=CONFIG)
        moved = act_conj(g, path)
        t = .6
        np.testing.assert_allclose(
            moved.evaluate(t),
            g.matrix @ path.evaluate(t) @ g.matrix.conj().T, atol=1e-9)

    def test002_subgroups(self):

        g = random_group_element('U', 3, seed=11)
        path = section_sun(GroupElement(np.exp(2j * np.pi / 3) * np.eye(3),
                                        'SU'), config=CONFIG)
        with self.assertRaises(lf.NotInGroup):
            act_left(g, path)
        with self.assertRaises(lf.DimensionMismatch):
            act_left(random_group_element('U', 2, seed=0), path)

    def test003_loop(self):

        path = section_un(random_group_element('U', 3, seed=12),
                          config=CONFIG)
        loop = FourierLoop({1: np.eye(3)}, CONFIG, shape=(3, 3))
        moved = act_loop(path, loop)
        self.assertEqual(moved.degree, 1)
        t = .2
        np.testing.assert_allclose(
            moved.evaluate(t),
            path.evaluate(t) * np.exp(2j * np.pi * t), atol=1e-9)
        np.testing.assert_allclose(project(moved).matrix,
                                   project(path).matrix, atol=1e-9)


class TestQuotient(unittest.TestCase):
    def test000_polynomial_quotient(self):

        for seed, shifts in enumerate([[0, 1, -1], [2, 0, 0], [1, 3, -2]]):
            first, second = spectral_pair(seed, shifts)
            alpha, beta = constant_path(first), constant_path(second)
            bound = quotient_degree_bound(alpha, beta)
            self.assertLessEqual(bound, CONFIG.max_mode)
            loop = fibre_quotient(alpha, beta)
            self.assertLess(fourier_tail_norm(loop, bound), 1e-8)

    def test001_different_fibres(self):

        alpha = section_un(random_group_element('U', 3, seed=1),
                           config=CONFIG)
        beta = section_un(random_group_element('U', 3, seed=2),
                          config=CONFIG)
        with self.assertRaises(lf.DifferentFibres):
            fibre_quotient(alpha, beta)


class TestPathsSuite(unittest.TestCase):
    def test000_defaults(self):

        config = lf.modules.paths.defaults()
        config['paths']['samples'] = 5
        config['paths']['so_samples'] = 10
        config['paths']['quotient_samples'] = 10
        out = lf.modules.paths.run('paths', **config)
        frame = out['paths']
        self.assertIn('fibre_quotient', list(frame['name']))
        self.assertIn('overflow_warning', list(frame['name']))
        self.assertTrue(frame['status'].isin(['pass', 'skip']).all(), frame)


if __name__ == "__main__":
    unittest.main()
