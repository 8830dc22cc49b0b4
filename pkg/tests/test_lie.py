#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Unit tests for matrix groups, algebras and logarithms"""

import unittest

import numpy as np
from scipy import linalg
from hypothesis import given, settings
from hypothesis import strategies as st

import loopforge as lf
from loopforge.lie import (GroupElement, AlgebraElement, UnitaryStructure,
                           block_j0, normal_eig, exp_matrix, log_sector,
                           log_principal, commuting_log,
                           unitary_structure_from, log_decompose_so,
                           random_unitary_structure, random_group_element,
                           random_algebra_element, commutator)

seeds = st.integers(0, 2**32 - 1)


class TestTypes(unittest.TestCase):
    def test000_group(self):

        g = GroupElement(np.diag([1j, -1j]), 'SU')
        self.assertEqual(g.n, 2)
        self.assertLess(g.residual, 1e-12)
        with self.assertRaises(lf.NotInGroup):
            GroupElement(np.diag([1j, 1j]), 'SU')
        with self.assertRaises(lf.NotInGroup):
            GroupElement(2. * np.eye(2), 'U')

    def test001_algebra(self):

        xi = AlgebraElement(np.array([[0., 1.], [-1., 0.]]), 'so')
        self.assertEqual(xi.group, 'SO')
        with self.assertRaises(lf.NotInAlgebra):
            AlgebraElement(np.eye(2), 'u')
        with self.assertRaises(lf.NotInAlgebra):
            AlgebraElement(1j * np.eye(2), 'su')

    def test002_unitary_structure(self):

        J = UnitaryStructure(block_j0(4))
        self.assertEqual(J.m, 4)
        with self.assertRaises(lf.OddDimension):
            UnitaryStructure(np.eye(3))
        with self.assertRaises(lf.NotUnitaryStructure):
            UnitaryStructure(np.eye(2))

    def test003_composition(self):

        g = random_group_element('SU', 3, seed=1)
        h = random_group_element('U', 3, seed=2)
        self.assertEqual((g @ g).group, 'SU')
        self.assertEqual((g @ h).group, 'U')
        np.testing.assert_allclose((g @ g.inverse).matrix, np.eye(3),
                                   atol=1e-12)
        with self.assertRaises(lf.DimensionMismatch):
            g @ random_group_element('U', 2, seed=3)

    def test004_normal_eig(self):

        with self.assertRaises(lf.NonNormalInput):
            normal_eig(np.array([[0., 1.], [0., 0.]]))
        evals, vecs, labels = normal_eig(np.diag([1., 1., 2.]))
        self.assertEqual(len(set(labels)), 2)
        np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(3),
                                   atol=1e-12)


class TestLogarithms(unittest.TestCase):
    def test000_principal(self):

        g = GroupElement(np.diag([np.exp(.5j), np.exp(-2j)]), 'U')
        xi = log_principal(g)
        np.testing.assert_allclose(np.diag(xi.matrix), [.5j, -2j], atol=1e-12)

    def test001_on_cut(self):

        g = GroupElement(-np.eye(2), 'U')
        with self.assertRaises(lf.EigenvalueOnCut):
            log_principal(g)
        # moving the sector resolves the cut
        xi = log_sector(g, .5j)
        np.testing.assert_allclose(xi.matrix, 1j * np.pi * np.eye(2),
                                   atol=1e-12)

    def test002_centre(self):

        g = random_group_element('U', 2, seed=0)
        with self.assertRaises(ValueError):
            log_sector(g, 1. + 0j)

    @settings(max_examples=20, deadline=None)
    @given(seeds, st.sampled_from([2, 3, 4]), st.floats(-3., 3.))
    def test003_round_trip(self, seed, n, centre):

        g = random_group_element('U', n, seed=seed)
        try:
            xi = log_sector(g, 1j * centre)
        except lf.EigenvalueOnCut:
            return
        np.testing.assert_allclose(linalg.expm(xi.matrix), g.matrix,
                                   atol=1e-9)
        angles = np.linalg.eigvals(xi.matrix).imag
        self.assertTrue(np.all(angles > centre - np.pi - 1e-9))
        self.assertTrue(np.all(angles < centre + np.pi + 1e-9))

    def test004_so_principal_is_real(self):

        g = random_group_element('SO', 4, seed=11)
        xi = log_principal(g)
        self.assertEqual(xi.algebra, 'so')
        np.testing.assert_allclose(linalg.expm(xi.matrix), g.matrix,
                                   atol=1e-9)

    def test005_commuting_log(self):

        g = GroupElement(np.diag([-1., 1j, 1j]), 'U')
        xi = commuting_log(g)
        np.testing.assert_allclose(np.diag(xi.matrix),
                                   [1j * np.pi, .5j * np.pi, .5j * np.pi],
                                   atol=1e-12)
        other = random_algebra_element('u', 3, seed=5)
        g = exp_matrix(other)
        xi = commuting_log(g)
        self.assertLess(
            np.linalg.norm(commutator(xi.matrix, other.matrix)), 1e-8)

    def test006_exp(self):

        xi = random_algebra_element('su', 3, seed=4)
        g = exp_matrix(xi)
        self.assertEqual(g.group, 'SU')
        np.testing.assert_allclose(g.matrix, linalg.expm(xi.matrix),
                                   atol=1e-10)


class TestUnitaryStructures(unittest.TestCase):
    def test000_from_so(self):

        xi = AlgebraElement(2. * block_j0(2), 'so')
        J = unitary_structure_from(xi)
        np.testing.assert_allclose(J.matrix @ J.matrix, -np.eye(2),
                                   atol=1e-12)
        np.testing.assert_allclose(J.matrix @ xi.matrix,
                                   xi.matrix @ J.matrix, atol=1e-12)

    def test001_zero_eigenvalue(self):

        with self.assertRaises(lf.ZeroEigenvalue):
            unitary_structure_from(AlgebraElement(np.zeros((2, 2)), 'so'))
        with self.assertRaises(lf.NotInAlgebra):
            unitary_structure_from(random_algebra_element('u', 2, seed=0))

    def test002_decompose(self):

        for seed in range(5):
            g = random_group_element('SO', 4, seed=seed)
            xi, J = log_decompose_so(g)
            np.testing.assert_allclose(linalg.expm(xi.matrix), g.matrix,
                                       atol=1e-8)
            left = linalg.expm(xi.matrix - np.pi * J.matrix)
            np.testing.assert_allclose(left, -g.matrix, atol=1e-8)

    def test003_eigenvalue_one(self):

        with self.assertRaises(lf.EigenvalueOne):
            log_decompose_so(GroupElement(np.eye(2), 'SO'))

    def test004_random(self):

        J = random_unitary_structure(6, seed=8)
        self.assertLess(J.residual, 1e-8)
        with self.assertRaises(lf.OddDimension):
            random_unitary_structure(3)
        with self.assertRaises(lf.OddDimension):
            block_j0(5)


class TestLieSuite(unittest.TestCase):
    def test000_defaults(self):

        out = lf.modules.lie.run('lie', **lf.modules.lie.defaults())
        frame = out['lie']
        self.assertTrue((frame['status'] == 'pass').all(), frame)


if __name__ == "__main__":
    unittest.main()
