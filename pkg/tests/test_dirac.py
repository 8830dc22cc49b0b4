#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Unit tests for the flat Dirac operator"""

import unittest

import numpy as np

import loopforge as lf
from loopforge.weights import WeightSequence
from loopforge.fock import FockVector, clifford
from loopforge.dirac import (DiracConfig, PolynomialSection, dirac,
                             dirac_section, rotate_point, rotate_section,
                             equivariance_check, covariant_derivative_flat)
from loopforge.modules.dirac import random_state, random_section, random_point

CFG = DiracConfig(dim=1, window=2, particle_cap=4)


class TestConfig(unittest.TestCase):
    def test000_directions(self):

        self.assertEqual(len(CFG.directions), 10)
        self.assertEqual(CFG.dim, 1)
        self.assertEqual(CFG.window, 2)
        with self.assertRaises(lf.ModeOutsideWindow):
            DiracConfig(dim=1, window=2, directions=[(0, 3, 0)])
        with self.assertRaises(lf.ModeOutsideWindow):
            DiracConfig(dim=1, window=2, directions=[(1, 0, 0)])

    def test001_coordinates(self):

        cfg = DiracConfig(dim=1, window=1,
                          weights=WeightSequence.geometric(4., 1))
        x = np.array([1. + 2j, 0., 0.])
        self.assertAlmostEqual(cfg.coordinate((0, -1, 0), x), .5)
        self.assertAlmostEqual(cfg.coordinate((0, -1, 1), x), 1.)
        tangent = cfg.tangent((0, -1, 1))
        self.assertAlmostEqual(cfg.modes.norm(tangent), 1.)
        self.assertAlmostEqual(tangent[0], 2j)


class TestSections(unittest.TestCase):
    def test000_degree(self):

        psi = FockVector.vacuum(4)
        var = (0, 0, 0)
        with self.assertRaises(lf.InvariantViolation):
            PolynomialSection.monomial([var] * 4, psi)
        with self.assertRaises(lf.InvariantViolation):
            PolynomialSection({(): psi}, cap=3)

    def test001_derivative(self):

        psi = FockVector.basis_state([0, 1], 4)
        a, b = (0, 1, 0), (0, -1, 1)
        s = PolynomialSection.monomial([a, a, b], psi)
        da = s.derivative(a)
        self.assertEqual(list(da.terms), [tuple(sorted([a, b]))])
        self.assertLess(da.terms[tuple(sorted([a, b]))].distance(2. * psi),
                        1e-15)
        self.assertEqual(sorted(covariant_derivative_flat(s)), sorted([a, b]))
        self.assertEqual(s.derivative((0, 0, 0)).terms, {})

    def test002_evaluate(self):

        psi = FockVector.vacuum(4)
        var = (0, 1, 1)
        s = PolynomialSection.monomial([var, var], psi)
        x = np.zeros(CFG.modes.size, dtype=complex)
        x[CFG.modes.index(0, 1)] = 3j
        self.assertLess(s.evaluate(CFG, x).distance(9. * psi), 1e-12)


class TestDirac(unittest.TestCase):
    def test000_constant(self):

        rng = np.random.default_rng(0)
        s = PolynomialSection.constant(random_state(rng, CFG))
        out = dirac(s, CFG, random_point(rng, CFG))
        self.assertEqual(out.amps, {})

    def test001_single_term(self):

        rng = np.random.default_rng(1)
        for var in CFG.directions:
            psi = random_state(rng, CFG)
            s = PolynomialSection.monomial([var], psi)
            value = dirac(s, CFG, random_point(rng, CFG))
            expected = clifford(CFG.tangent(var), psi, CFG.modes)
            self.assertLess(value.distance(expected), 1e-12)

    def test002_grading(self):

        rng = np.random.default_rng(2)
        for _ in range(10):
            image = dirac_section(random_section(rng, CFG), CFG)
            if image.terms:
                self.assertEqual(image.parity, 1)

    def test003_routes(self):

        rng = np.random.default_rng(3)
        for _ in range(10):
            s = random_section(rng, CFG)
            x = random_point(rng, CFG)
            first = dirac(s, CFG, x, route='extension')
            second = dirac(s, CFG, x, route='direct')
            third = dirac_section(s, CFG).evaluate(CFG, x)
            scale = max(1., first.norm())
            self.assertLess(first.distance(second) / scale, 1e-10)
            self.assertLess(first.distance(third) / scale, 1e-10)

    def test004_equivariance(self):

        rng = np.random.default_rng(4)
        weighted = DiracConfig(dim=1, window=2, particle_cap=4,
                               weights=WeightSequence.geometric(2., 2))
        for cfg in [CFG, weighted]:
            for _ in range(5):
                lam = np.exp(2j * np.pi * rng.uniform())
                s = random_section(rng, cfg)
                x = random_point(rng, cfg)
                scale = max(1., dirac(s, cfg, x).norm())
                self.assertLess(equivariance_check(s, cfg, lam, x) / scale,
                                1e-10)
        with self.assertRaises(lf.NotUnitModulus):
            rotate_point(random_point(rng, CFG), 2., CFG)

    def test005_square(self):

        rng = np.random.default_rng(5)
        for degree in range(4):
            s = random_section(rng, CFG, degree=degree, terms=1)
            twice = dirac_section(dirac_section(s, CFG), CFG)
            laplace = PolynomialSection({}, s.cap)
            for var in CFG.directions:
                laplace = laplace + s.derivative(var).derivative(var)
            x = random_point(rng, CFG)
            left = twice.evaluate(CFG, x)
            self.assertLess(
                left.distance(laplace.evaluate(CFG, x)) / max(1., left.norm()),
                1e-10)

    def test006_rotation_action(self):

        rng = np.random.default_rng(6)
        s = random_section(rng, CFG)
        x = random_point(rng, CFG)
        same = rotate_section(s, 1., CFG)
        self.assertLess(same.evaluate(CFG, x).distance(s.evaluate(CFG, x)),
                        1e-12)

    def test007_window(self):

        psi = FockVector.vacuum(4)
        s = PolynomialSection.monomial([(0, 5, 0)], psi)
        with self.assertRaises(lf.ModeOutsideWindow):
            dirac(s, CFG, np.zeros(CFG.modes.size))
        with self.assertRaises(lf.InvariantViolation):
            dirac(PolynomialSection.constant(FockVector.vacuum(3)), CFG,
                  np.zeros(CFG.modes.size))


class TestDiracSuite(unittest.TestCase):
    def test000_defaults(self):

        config = lf.modules.dirac.defaults()
        config['dirac']['sections'] = 10
        config['dirac']['rotations'] = 5
        out = lf.modules.dirac.run('dirac', **config)
        frame = out['dirac']
        self.assertTrue((frame['status'] == 'pass').all(), frame)


if __name__ == "__main__":
    unittest.main()
