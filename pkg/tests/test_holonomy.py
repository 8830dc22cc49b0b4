#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Unit tests for transport, holonomy and the polynomial fibre"""

import unittest

import numpy as np
from scipy import linalg

import loopforge as lf
from loopforge.loops import TruncationConfig, FourierLoop, evaluate, rotate
from loopforge.lie import random_algebra_element
from loopforge.holonomy import (LoopConnection, parallel_transport, holonomy,
                                covariant_derivative, gauge_transform,
                                block_sum, PolFibreBasis, cos_D, cos_D_series,
                                cosh_sandwich_residual, CircleMap,
                                reparametrize, chain_rule_residual,
                                fibre_tail, subbundle_counterexample_check)

CONFIG = TruncationConfig(16, 2)


def diagonal(*thetas):
    return np.diag(1j * np.array(thetas))


def wavy_form(config=CONFIG, amplitude=.3):
    """Skew-Hermitian form with modes |k| <= 1"""
    xi = random_algebra_element('u', 2, seed=3).matrix
    c = amplitude * np.array([[.2, 1j], [.5, -.3j]])
    coeffs = {0: amplitude * xi, 1: c, -1: -c.conj().T}
    return FourierLoop(coeffs, config, shape=(2, 2))


class TestTransport(unittest.TestCase):
    def test000_constant(self):

        xi = random_algebra_element('u', 2, seed=1).matrix
        conn = LoopConnection.constant(xi, CONFIG, steps=512)
        np.testing.assert_allclose(holonomy(conn).matrix, linalg.expm(-xi),
                                   atol=1e-9)
        np.testing.assert_allclose(
            parallel_transport(conn, .2, .7).matrix, linalg.expm(-.5 * xi),
            atol=1e-9)

    def test001_quasi_periodic(self):

        conn = LoopConnection(wavy_form(), steps=1024)
        for t in [.3, .8]:
            np.testing.assert_allclose(conn.frame(t + 1.),
                                       conn.frame(t) @ conn.frame(1.),
                                       atol=1e-10)

    def test002_not_skew(self):

        form = FourierLoop({0: np.eye(2)}, CONFIG, shape=(2, 2))
        with self.assertRaises(lf.NotInAlgebra):
            LoopConnection(form)
        with self.assertRaises(lf.NotInAlgebra):
            LoopConnection(FourierLoop({0: diagonal(1., 2.)}, CONFIG),
                           field='R')
        with self.assertRaises(lf.DimensionMismatch):
            LoopConnection(FourierLoop({0: [0., 0.]}, CONFIG))

    def test003_gauge(self):

        conn = LoopConnection(wavy_form())
        u = FourierLoop({1: np.diag([1., 0.]), 0: np.diag([0., 1.])},
                        CONFIG, shape=(2, 2))
        moved = gauge_transform(conn, u)
        u0 = evaluate(u, 0.)
        np.testing.assert_allclose(holonomy(moved).matrix,
                                   u0 @ holonomy(conn).matrix @ u0.conj().T,
                                   atol=1e-8)

    def test004_block_sum(self):

        first = LoopConnection.constant(diagonal(.5), CONFIG.replace(dim=1),
                                        steps=256)
        second = LoopConnection.constant(diagonal(1., 2.), CONFIG, steps=256)
        both = block_sum(first, second)
        self.assertEqual(both.n, 3)
        np.testing.assert_allclose(
            holonomy(both).matrix, np.diag(np.exp(-1j * np.array([.5, 1., 2.]))),
            atol=1e-9)

    def test005_covariant_derivative(self):

        conn = LoopConnection.constant(diagonal(1., 2.), CONFIG)
        alpha = FourierLoop({1: [1., 0.]}, CONFIG)
        out, lost = covariant_derivative(conn, alpha)
        self.assertEqual(lost, 0.)
        np.testing.assert_allclose(out.coeff(1), [2j * np.pi + 1j, 0.])
        with self.assertRaises(lf.DimensionMismatch):
            covariant_derivative(conn, FourierLoop({0: [1., 0., 0.]},
                                                   CONFIG.replace(dim=3)))


class TestFibreBasis(unittest.TestCase):
    def test000_exponents(self):

        conn = LoopConnection.constant(diagonal(1., 2.), CONFIG, steps=512)
        basis = PolFibreBasis(conn, 2)
        np.testing.assert_allclose(basis.exponents, [1., 2.], atol=1e-9)
        self.assertEqual(len(basis.modes), 2 * 5)
        self.assertLess(basis.modes['residual'].max(), 1e-8)
        self.assertAlmostEqual(basis.eigenvalue(1, -1), 2. - 2 * np.pi,
                               places=9)

    def test001_window(self):

        conn = LoopConnection.constant(diagonal(1., 2.), CONFIG, steps=64)
        with self.assertRaises(lf.ModeOutsideWindow):
            PolFibreBasis(conn, -1)

    def test002_eigen_relation(self):

        conn = LoopConnection(wavy_form(), steps=2048)
        basis = PolFibreBasis(conn, 2)
        self.assertLess(basis.modes['residual'].max(), 1e-7)
        self.assertLess(cosh_sandwich_residual(basis), 1e-12)

    def test003_cos_routes(self):

        conn = LoopConnection(wavy_form(), steps=2048)
        basis = PolFibreBasis(conn, 1)
        coords = np.arange(6).reshape(2, 3) + 1j
        eigen = cos_D(conn, basis, coords)
        series = cos_D_series(conn, basis, coords)
        self.assertLess(
            np.linalg.norm(series - eigen) / np.linalg.norm(eigen), 1e-8)
        single = cos_D(conn, basis, {(0, 1): 1.})
        self.assertAlmostEqual(single[(0, 1)],
                               np.cosh(basis.exponents[0] + 2 * np.pi))
        with self.assertRaises(lf.ModeOutsideWindow):
            cos_D(conn, basis, {(0, 2): 1.})
        with self.assertRaises(lf.ModeOutsideWindow):
            cos_D(conn, basis, np.ones((2, 5)))

    def test004_other_connection(self):

        first = LoopConnection.constant(diagonal(1., 2.), CONFIG, steps=64)
        second = LoopConnection.constant(diagonal(1., 2.), CONFIG, steps=64)
        basis = PolFibreBasis(first, 1)
        with self.assertRaises(lf.DimensionMismatch):
            cos_D(second, basis, np.ones((2, 3)))


class TestReparametrisation(unittest.TestCase):
    def test000_circle_maps(self):

        t = np.array([.1, .4])
        np.testing.assert_allclose(CircleMap.rotation(.25)(t), t + .25)
        np.testing.assert_allclose(CircleMap.reflection()(t), -t)
        wobble = CircleMap.wobble(.1, CONFIG.replace(dim=1))
        np.testing.assert_allclose(
            wobble(t), t + .1 * np.sin(2 * np.pi * t) / (2 * np.pi),
            atol=1e-14)
        np.testing.assert_allclose(wobble.velocity(t),
                                   1. + .1 * np.cos(2 * np.pi * t),
                                   atol=1e-14)
        with self.assertRaises(AssertionError):
            CircleMap(degree=2)

    def test001_chain_rule(self):

        conn = LoopConnection(wavy_form(), steps=256)
        alpha = FourierLoop({-1: [1., 1j], 0: [.5, 0.], 2: [0., 1.]}, CONFIG)
        for eps in [.05, .1]:
            sigma = CircleMap.wobble(eps, CONFIG.replace(dim=1))
            self.assertLess(chain_rule_residual(conn, alpha, sigma), 1e-6)

    def test002_rotation_preserves_fibre(self):

        conn = LoopConnection.constant(diagonal(1., 2.), CONFIG, steps=256)
        basis = PolFibreBasis(conn, 2)
        section = basis.function(0, 1) + basis.function(1, -2)
        pulled, moved = reparametrize(conn, section, CircleMap.rotation(.2))
        self.assertLess(fibre_tail(basis, moved, 2), 1e-9)
        expected = rotate(section, np.exp(2j * np.pi * .2))
        self.assertLess((moved - expected).norm(), 1e-9)

    def test003_wobble_breaks_fibre(self):

        conn = LoopConnection.constant(diagonal(2., 4.), CONFIG, steps=256)
        basis = PolFibreBasis(conn, 0)
        sigma = CircleMap.wobble(.5, CONFIG.replace(dim=1))
        for j in range(basis.n):
            pulled, moved = reparametrize(conn, basis.function(j, 0), sigma)
            target = PolFibreBasis(pulled, 1)
            self.assertGreater(fibre_tail(target, moved, 1), 1e-3)


class TestCounterexample(unittest.TestCase):
    def test000_sine_twist(self):

        smin, table = subbundle_counterexample_check(2)
        self.assertGreater(smin, 1e-8)
        self.assertFalse(table['polynomial'].any())

    def test001_polynomial_twists(self):

        smin, table = subbundle_counterexample_check(3, twist='zero')
        self.assertLess(smin, 1e-12)
        self.assertTrue(table['polynomial'].all())
        smin, table = subbundle_counterexample_check(3, twist='linear',
                                                     amplitude=2)
        self.assertLess(smin, 1e-12)
        self.assertTrue(table['polynomial'].all())

    def test002_unknown(self):

        with self.assertRaises(ValueError):
            subbundle_counterexample_check(2, twist='cubic')


class TestHolonomySuite(unittest.TestCase):
    def test000_defaults(self):

        out = lf.modules.holonomy.run('holonomy',
                                      **lf.modules.holonomy.defaults())
        frame = out['holonomy']
        self.assertEqual(len(frame), 16)
        self.assertIn('subbundle_counterexample', list(frame['name']))
        self.assertTrue(frame['status'].isin(['pass', 'skip']).all(), frame)


if __name__ == "__main__":
    unittest.main()
