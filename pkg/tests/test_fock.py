#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Unit tests for the truncated fermionic Fock space"""

import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import loopforge as lf
from loopforge.weights import WeightSequence, DualVector
from loopforge.fock import (ModeSpace, FockVector, FockSpace, create,
                            annihilate, clifford, car_check,
                            PolarisingOperator, standard_polarisation,
                            standard_unitary_structure, polarisation_compare,
                            implement_rotation,
                            finite_rank_clifford_extension)

MODES = ModeSpace(2, 2)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@st.composite
def vectors(draw, modes=MODES):
    return np.array([complex(draw(finite), draw(finite))
                     for _ in range(modes.size)])


def random_state(rng, modes, cap, lengths=(0, 1, 2), terms=4):
    amps = {}
    for _ in range(terms):
        length = int(rng.choice(lengths))
        key = tuple(sorted(rng.choice(modes.size, size=length, replace=False)))
        amps[key] = rng.normal() + 1j * rng.normal()
    return FockVector(amps, cap)


class TestModeSpace(unittest.TestCase):
    def test000_layout(self):

        self.assertEqual(MODES.size, 10)
        self.assertEqual(MODES.index(1, -2), 5)
        self.assertEqual(MODES.labels[5], (1, -2))
        with self.assertRaises(lf.DimensionMismatch):
            MODES.index(2, 0)
        with self.assertRaises(lf.DimensionMismatch):
            MODES.check(np.ones(3))

    def test001_weights(self):

        weights = WeightSequence.geometric(2., 2)
        modes = ModeSpace(2, 2, weights)
        e = modes.basis(0, 2)
        self.assertAlmostEqual(modes.norm(e), .5)
        with self.assertRaises(lf.WindowMismatch):
            ModeSpace(2, 3, weights)

    def test002_riesz(self):

        modes = ModeSpace(2, 2, WeightSequence.geometric(2., 2))
        rng = np.random.default_rng(0)
        v = rng.normal(size=10) + 1j * rng.normal(size=10)
        x = rng.normal(size=10) + 1j * rng.normal(size=10)
        f = modes.dual_of(v)
        self.assertIsInstance(f, DualVector)
        np.testing.assert_allclose(modes.riesz(f), v)
        self.assertAlmostEqual(np.sum(f.coeffs.T.ravel() * x),
                               modes.inner(x, v))


class TestFockVector(unittest.TestCase):
    def test000_alternating(self):

        first = FockVector.basis_state([1, 2])
        second = FockVector.basis_state([2, 1])
        self.assertLess(first.distance(-1. * second), 1e-15)
        e1, e2 = MODES.basis(0, 0), MODES.basis(0, 1)
        vac = FockVector.vacuum()
        ab = create(e1, create(e2, vac, MODES), MODES)
        ba = create(e2, create(e1, vac, MODES), MODES)
        self.assertLess(ab.distance(-1. * ba), 1e-15)
        self.assertEqual(create(e1, create(e1, vac, MODES), MODES).amps, {})

    def test001_invalid(self):

        with self.assertRaises(lf.InvariantViolation):
            FockVector({(2, 1): 1.})
        with self.assertRaises(lf.InvariantViolation):
            FockVector({(0, 1, 2): 1.}, cap=2)
        with self.assertRaises(lf.DimensionMismatch):
            FockVector.vacuum(2) + FockVector.vacuum(3)

    def test002_cap(self):

        full = FockVector.basis_state([0, 1], cap=2)
        over = create(MODES.basis(1, 2), full, MODES)
        self.assertEqual(over.amps, {})
        self.assertAlmostEqual(over.overflow, 1.)

    def test003_state_file(self):

        psi = FockVector({(): 1., (0, 3): 2j}, cap=4)
        back = FockVector.from_dict(psi.to_dict(), cap=4)
        self.assertLess(back.distance(psi), 1e-15)

    def test004_parity(self):

        self.assertEqual(FockVector.vacuum().parity, 0)
        self.assertEqual(FockVector.basis_state([3]).parity, 1)
        mixed = FockVector({(): 1., (0, ): 1.})
        self.assertIsNone(mixed.parity)
        image = clifford(MODES.basis(0, 0), FockVector.vacuum(), MODES)
        self.assertEqual(image.parity, 1)

    def test005_scalars(self):

        psi = FockVector.basis_state([1])
        self.assertLess((np.float64(2.) * psi).distance(psi + psi), 1e-15)


class TestAnticommutation(unittest.TestCase):
    def test000_car_basis(self):

        modes = ModeSpace(1, 1)
        space = FockSpace(modes, 3)
        eye = np.eye(modes.size)
        for i in range(modes.size):
            for j in range(modes.size):
                self.assertLess(max(car_check(eye[i], eye[j], space)), 1e-12)

    def test001_car_weighted(self):

        modes = ModeSpace(1, 2, WeightSequence.geometric(3., 2))
        space = FockSpace(modes, 3)
        rng = np.random.default_rng(1)
        for _ in range(5):
            u = rng.normal(size=5) + 1j * rng.normal(size=5)
            v = rng.normal(size=5) + 1j * rng.normal(size=5)
            self.assertLess(max(car_check(u, v, space)), 1e-10)

    @settings(max_examples=20, deadline=None)
    @given(vectors())
    def test002_clifford_square(self, v):

        rng = np.random.default_rng(2)
        psi = random_state(rng, MODES, 6)
        twice = clifford(v, clifford(v, psi, MODES), MODES)
        target = MODES.inner(v, v).real * psi
        self.assertLess(twice.distance(target), 1e-9 * max(1., target.norm()))

    def test003_sparse(self):

        space = FockSpace(MODES, 3)
        rng = np.random.default_rng(4)
        v = rng.normal(size=10) + 1j * rng.normal(size=10)
        psi = random_state(rng, MODES, 3)
        vec = space.to_array(psi)
        np.testing.assert_allclose(space.creation(v) @ vec,
                                   space.to_array(create(v, psi, MODES)),
                                   atol=1e-12)
        np.testing.assert_allclose(space.annihilation(v) @ vec,
                                   space.to_array(annihilate(v, psi, MODES)),
                                   atol=1e-12)
        back = space.from_array(vec)
        self.assertLess(back.distance(psi), 1e-15)


class TestPolarisations(unittest.TestCase):
    def test000_rank(self):

        for half in [1, 2]:
            for K in [1, 3, 6]:
                out = polarisation_compare(
                    standard_polarisation(ModeSpace(2 * half, K)),
                    standard_unitary_structure(half, K))
                self.assertEqual(out['rank'], half)
                self.assertAlmostEqual(out['hs_norm'], 2. * np.sqrt(half))

    def test001_odd_fibre(self):

        with self.assertRaises(lf.NotPolarising):
            standard_unitary_structure(1, 2, fibre_dim=3)

    def test002_not_polarising(self):

        with self.assertRaises(lf.NotPolarising):
            PolarisingOperator(np.eye(MODES.size), MODES)
        with self.assertRaises(lf.WindowMismatch):
            polarisation_compare(standard_polarisation(ModeSpace(2, 1)),
                                 standard_polarisation(ModeSpace(2, 2)))

    def test003_apply(self):

        J = standard_polarisation(MODES)
        v = MODES.basis(1, -1)
        np.testing.assert_allclose(J(v), 1j * v)
        np.testing.assert_allclose(J(J(v)), -v)


class TestRotations(unittest.TestCase):
    def test000_intertwine(self):

        rng = np.random.default_rng(5)
        lam = np.exp(.7j)
        U = implement_rotation(lam, MODES)
        psi = random_state(rng, MODES, 4)
        v = rng.normal(size=10) + 1j * rng.normal(size=10)
        moved = create(MODES.rotate(v, lam), U(psi), MODES)
        self.assertLess(U(create(v, psi, MODES)).distance(moved), 1e-12)
        moved = annihilate(MODES.rotate(v, lam), U(psi), MODES)
        self.assertLess(U(annihilate(v, psi, MODES)).distance(moved), 1e-12)
        vac = FockVector.vacuum(4)
        self.assertLess(U(vac).distance(vac), 1e-15)

    def test001_composition(self):

        rng = np.random.default_rng(6)
        lam, mu = np.exp(.3j), np.exp(-1.1j)
        psi = random_state(rng, MODES, 4)
        ul = implement_rotation(lam, MODES)
        um = implement_rotation(mu, MODES)
        self.assertLess((ul @ um)(psi).distance(ul(um(psi))), 1e-12)
        with self.assertRaises(lf.NotUnitModulus):
            implement_rotation(.5, MODES)

    def test002_matrix(self):

        space = FockSpace(ModeSpace(1, 1), 2)
        U = implement_rotation(1j, space.modes)
        v = np.array([1., 2., 3.])
        left = U.matrix(space) @ space.creation(v)
        right = space.creation(space.modes.rotate(v, 1j)) @ U.matrix(space)
        self.assertLess(abs(left - right).max(), 1e-12)


class TestExtension(unittest.TestCase):
    def test000_linear(self):

        rng = np.random.default_rng(7)
        psi = random_state(rng, MODES, 4)
        f1 = MODES.dual_of(rng.normal(size=10) + 0j)
        f2 = MODES.dual_of(rng.normal(size=10) + 0j)
        both = finite_rank_clifford_extension([(f1 + f2, psi)], MODES)
        split = finite_rank_clifford_extension([(f1, psi), (f2, psi)], MODES)
        self.assertLess(both.distance(split), 1e-12 * max(1., both.norm()))

    def test001_single(self):

        v = MODES.basis(0, 1)
        psi = FockVector.vacuum(4)
        out = finite_rank_clifford_extension([(MODES.dual_of(v), psi)], MODES)
        self.assertLess(out.distance(clifford(v, psi, MODES)), 1e-15)
        empty = finite_rank_clifford_extension([], MODES, cap=4)
        self.assertEqual(empty.amps, {})


class TestFockSuite(unittest.TestCase):
    def test000_defaults(self):

        config = lf.modules.fock.defaults()
        config['fock']['samples'] = 3
        out = lf.modules.fock.run('fock', **config)
        frame = out['fock']
        self.assertEqual(frame['name'].iloc[0], 'car_basis')
        self.assertEqual(frame['status'].iloc[0], 'pass')
        self.assertTrue(frame['status'].isin(['pass', 'skip']).all(), frame)


if __name__ == "__main__":
    unittest.main()
