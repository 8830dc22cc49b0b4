#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Unit tests for weight sequences and the weighted dual"""

import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import loopforge as lf
from loopforge.loops import TruncationConfig, FourierLoop
from loopforge.weights import (WeightSequence, DualVector, inner_product, norm,
                               equivalence_check, z_operator_norm,
                               weighted_shift_matrix, cone_combine, diamond,
                               pairing, polarisation_J, loop_operator,
                               commutator_hs_norm, commutator_rank,
                               loop_operator_norm_bound, zeta_homotopy,
                               zeta_polar, unbounded_growth_witness,
                               gram_matrix, weights_from_form, rotate_dual,
                               involute_dual)

N = 8

rhos = st.floats(1.1, 600.)
finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


@st.composite
def duals(draw, N=N):
    values = [complex(draw(finite), draw(finite)) for _ in range(2 * N + 1)]
    return DualVector(values)


class TestWeightSequence(unittest.TestCase):
    def test000_geometric(self):

        a = WeightSequence.geometric(2., N)
        self.assertEqual(a.N, N)
        self.assertAlmostEqual(a[3], 1. / 8.)
        self.assertEqual(a.rate, 2.)
        self.assertTrue(a.extrapolable)
        with self.assertRaises(lf.ModeOutsideWindow):
            a[N + 1]

    def test001_invalid(self):

        with self.assertRaises(lf.InvariantViolation):
            WeightSequence([1., 1., 2.])
        with self.assertRaises(lf.InvariantViolation):
            WeightSequence([1., 0., 1.])
        with self.assertRaises(lf.DimensionMismatch):
            WeightSequence([1., 1.])
        with self.assertRaises(AssertionError):
            WeightSequence.geometric(1., N)

    def test002_weight_file(self):

        a = WeightSequence.geometric(3., 4, scale=2.)
        back = WeightSequence.from_dict(a.to_dict())
        np.testing.assert_allclose(back.values, a.values)
        self.assertEqual(back.rho, 3.)
        self.assertEqual(back.scale, 2.)

    def test003_cosh(self):

        cosh = WeightSequence.cosh_family(N)
        rate = WeightSequence.geometric(np.exp(4 * np.pi), N)
        verdict = equivalence_check(cosh, rate)
        self.assertTrue(verdict['equivalent'])
        self.assertTrue(verdict['extrapolable'])
        other = equivalence_check(WeightSequence.geometric(2., N), rate)
        self.assertFalse(other['equivalent'])
        custom = equivalence_check(WeightSequence(cosh.values), cosh)
        self.assertFalse(custom['extrapolable'])

    def test004_cone(self):

        a = WeightSequence.geometric(2., N)
        b = WeightSequence.geometric(5., N)
        c = cone_combine(a, b, .25, 2.)
        self.assertEqual(c.family, 'mixture')
        self.assertEqual(c.rate, 2.)
        same = cone_combine(a, a, 1., 1.)
        self.assertEqual(same.family, 'geometric')
        self.assertEqual(same.scale, 2.)
        with self.assertRaises(lf.InvariantViolation):
            cone_combine(a, b, -1., 1.)
        with self.assertRaises(lf.WindowMismatch):
            cone_combine(a, WeightSequence.geometric(2., N + 1), 1., 1.)

    def test005_forms(self):

        a = WeightSequence.geometric(2., N)
        back = weights_from_form(gram_matrix(a))
        np.testing.assert_allclose(back.values, a.values)
        skew = gram_matrix(a)
        skew[0, 1] = .5
        with self.assertRaises(lf.InvariantViolation):
            weights_from_form(skew)


class TestNorms(unittest.TestCase):
    def test000_svd(self):

        for a in [WeightSequence.geometric(2., N),
                  WeightSequence.geometric(np.exp(2 * np.pi), N),
                  WeightSequence.cosh_family(N)]:
            for q in range(-N, N + 1):
                svd = np.linalg.norm(weighted_shift_matrix(a, q), 2)
                value = z_operator_norm(a, q)
                self.assertLess(abs(svd - value) / value, 1e-12)

    def test001_closed_form(self):

        a = WeightSequence.geometric(2., N)
        for q in range(1, N + 1):
            self.assertAlmostEqual(z_operator_norm(a, q), 2.**(q / 2.))
        with self.assertRaises(lf.ModeOutsideWindow):
            z_operator_norm(a, 2 * N + 1)

    def test002_unbounded(self):

        table = unbounded_growth_witness(WeightSequence.cosh_family(N), N)
        self.assertTrue(table['increasing'].all())
        table = unbounded_growth_witness(WeightSequence.geometric(2., N), N)
        np.testing.assert_allclose(table['norm_sq'], 2.**table['q'])
        with self.assertRaises(lf.ModeOutsideWindow):
            unbounded_growth_witness(WeightSequence.geometric(2., N),
                                     2 * N + 1)

    @settings(max_examples=20, deadline=None)
    @given(rhos, st.integers(-N, N))
    def test003_geometric(self, rho, q):

        a = WeightSequence.geometric(rho, N)
        svd = np.linalg.norm(weighted_shift_matrix(a, q), 2)
        self.assertLess(abs(svd - rho**(abs(q) / 2.)) / svd, 1e-10)

    def test004_norm_bound(self):

        a = WeightSequence.geometric(2., N)
        config = TruncationConfig(N, 2)
        rng = np.random.default_rng(3)
        coeffs = {q: rng.normal(size=(2, 2)) for q in (-2, 0, 3)}
        loop = FourierLoop(coeffs, config, shape=(2, 2))
        value, bound = loop_operator_norm_bound(loop, a)
        self.assertLessEqual(value, bound * (1. + 1e-12))


class TestDualVector(unittest.TestCase):
    def test000_growth(self):

        values = (1. + np.abs(np.arange(-N, N + 1)))**3
        b = DualVector(values)
        self.assertEqual(b.growth, 3)
        self.assertEqual(b.bound, 1.)
        self.assertEqual(DualVector(np.ones(2 * N + 1)).growth, 0)
        with self.assertRaises(lf.DimensionMismatch):
            DualVector(np.ones(4))

    def test001_diamond(self):

        out = diamond(DualVector.basis(2, 4), WeightSequence.geometric(2., 4))
        self.assertEqual(out.modes, [-2])
        self.assertAlmostEqual(complex(out.coeff(-2)), .25)

    @settings(max_examples=20, deadline=None)
    @given(duals(), duals())
    def test002_pairing(self, b, c):

        a = WeightSequence.geometric(2., N)
        lhs = pairing(b, diamond(c, a))
        rhs = inner_product(b, c, a)
        self.assertLess(abs(lhs - rhs), 1e-9 * max(1., abs(rhs)))

    @settings(max_examples=20, deadline=None)
    @given(duals(), st.floats(0., 1.))
    def test003_invariance(self, b, phase):

        a = WeightSequence.cosh_family(N)
        ref = norm(b, a)
        lam = np.exp(2j * np.pi * phase)
        self.assertAlmostEqual(norm(rotate_dual(b, lam), a), ref, delta=1e-9 *
                               max(1., ref))
        self.assertAlmostEqual(norm(involute_dual(b), a), ref, delta=1e-9 *
                               max(1., ref))

    def test004_polarisation(self):

        b = DualVector(np.arange(2 * N + 1) + 1j)
        twice = polarisation_J(polarisation_J(b))
        np.testing.assert_allclose(twice.coeffs, -b.coeffs)
        constant = polarisation_J(DualVector.basis(0, N))
        self.assertAlmostEqual(constant.coeffs[N], -1j)
        negative = polarisation_J(DualVector.basis(-1, N))
        self.assertAlmostEqual(negative.coeffs[N - 1], 1j)

    def test005_rotation_unit(self):

        with self.assertRaises(lf.NotUnitModulus):
            rotate_dual(DualVector.basis(0, N), 2.)

    def test006_arithmetic(self):

        b = DualVector.basis(1, N)
        c = np.float64(2.) * b - b
        np.testing.assert_allclose(c.coeffs, b.coeffs)
        with self.assertRaises(lf.WindowMismatch):
            b + DualVector.basis(1, N + 1)


class TestLoopOperators(unittest.TestCase):
    def test000_shift_action(self):

        config = TruncationConfig(N, 1)
        loop = FourierLoop({2: np.eye(1)}, config, shape=(1, 1))
        mat = loop_operator(loop, N=N)
        image = mat @ DualVector.basis(3, N).coeffs
        np.testing.assert_allclose(image, DualVector.basis(1, N).coeffs)

    def test001_commutator_rank(self):

        a = WeightSequence.geometric(2., N)
        config = TruncationConfig(N, 2)
        for q in [1, 2, 3]:
            loop = FourierLoop({q: np.array([[1., 2.], [0., 1j]])}, config,
                               shape=(2, 2))
            self.assertEqual(commutator_rank(loop, a), 2 * q)
        const = FourierLoop({0: np.array([[1., 2.], [3., 4.]])}, config,
                            shape=(2, 2))
        self.assertLess(commutator_hs_norm(const, a), 1e-12)

    def test002_zeta(self):

        a = WeightSequence.geometric(2., N)
        np.testing.assert_allclose(zeta_homotopy(a, 0.),
                                   np.eye(2 * N + 1, k=1))
        root = np.sqrt(a.values)
        np.testing.assert_allclose(
            zeta_homotopy(a, 1.),
            root[:, None] * zeta_homotopy(a, 0.) / root[None, :])
        for t in np.linspace(0., 1., 5):
            smin = np.linalg.svd(zeta_homotopy(a, t, compressed=True),
                                 compute_uv=False).min()
            self.assertGreater(smin, 0.)
        unitary, positive = zeta_polar(a)
        np.testing.assert_allclose(unitary,
                                   zeta_homotopy(a, 0., compressed=True),
                                   atol=1e-12)


if __name__ == "__main__":
    unittest.main()
