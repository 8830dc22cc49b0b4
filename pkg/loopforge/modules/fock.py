#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for the truncated fermionic Fock space"""

import numpy as np
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.errors import NotPolarising
from loopforge.weights import WeightSequence
from loopforge.fock import (ModeSpace, FockVector, FockSpace, create,
                            annihilate, clifford, car_check,
                            standard_polarisation, standard_unitary_structure,
                            polarisation_compare, implement_rotation,
                            finite_rank_clifford_extension)

# default configuration
__DEFAULTS = """\
# default parameters for the `fock` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
  rho: 2.
  samples: 10
  car:
    dim: 2
    window: 3
    particle_cap: 6
  car_tol: 1.e-12
  rank_windows: [1, 3, 6]
  rank_dims: [1, 2]
seed: 42
timing: false
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def _random_vector(rng, modes, support=None):
    v = rng.normal(size=modes.size) + 1j * rng.normal(size=modes.size)
    if support is not None:
        mask = np.zeros(modes.size, dtype=bool)
        mask[rng.choice(modes.size, size=support, replace=False)] = True
        v[~mask] = 0.
    return v


def _random_state(rng, modes, cap, lengths=(0, 1, 2, 3), terms=4):
    amps = {}
    for _ in range(terms):
        length = int(rng.choice(lengths))
        key = tuple(sorted(rng.choice(modes.size, size=length, replace=False)))
        amps[key] = rng.normal() + 1j * rng.normal()
    return FockVector(amps, cap)


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        **kwargs):
    """Checks of the CAR, Clifford multiplication and polarisations.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        fock       (dict): reflects yaml 'fock'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(fock)
    tol = trunc.tol
    n = trunc.dim
    cap = par.particle_cap
    car = par.car

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)

    weights = WeightSequence.geometric(par.rho, par.window)
    modes = ModeSpace(n, par.window, weights)
    plain = ModeSpace(car.dim, car.window)
    space = FockSpace(plain, car.particle_cap)

    def car_basis(rng):
        res = 0.
        for i in range(plain.size):
            u = np.eye(plain.size)[i]
            for j in range(plain.size):
                v = np.eye(plain.size)[j]
                res = max(res, *car_check(u, v, space))
        return res

    runner.run('car_basis', 'canonical anticommutation relations',
               car_basis, tolerance=par.car_tol)

    def car_weighted(rng):
        local = ModeSpace(car.dim, car.window,
                          WeightSequence.geometric(par.rho, car.window))
        weighted = FockSpace(local, car.particle_cap)
        res = 0.
        for _ in range(par.samples):
            u = _random_vector(rng, local)
            v = _random_vector(rng, local)
            scale = local.norm(u) * local.norm(v)
            res = max(res, max(car_check(u, v, weighted)) / scale)
        return res

    runner.run('car_weighted', 'CAR for the weighted inner product',
               car_weighted, tolerance=100 * par.car_tol)

    def clifford_square(rng):
        res = 0.
        for _ in range(par.samples):
            v = _random_vector(rng, modes, support=4)
            psi = _random_state(rng, modes, cap, lengths=range(cap - 1))
            twice = clifford(v, clifford(v, psi, modes), modes)
            target = modes.inner(v, v).real * psi
            res = max(res, twice.distance(target) / max(1., target.norm()))
        return res

    runner.run('clifford_square', 'pi(v)^2 = <v, v>', clifford_square)

    def grading(rng):
        res = 0.
        gamma = space.parity_operator()
        for _ in range(par.samples):
            v = _random_vector(rng, plain)
            pi = space.clifford(v)
            anti = (gamma @ pi + pi @ gamma).tocsr()
            if anti.nnz:
                res = max(res, float(np.max(np.abs(anti.data))))
            psi = _random_state(rng, modes, cap, lengths=(0, 2))
            image = clifford(_random_vector(rng, modes, support=3), psi,
                             modes)
            if image.amps and image.parity != 1:
                res = max(res, 1.)
        return res

    runner.run('grading', 'Clifford multiplication is odd', grading)

    def sparse_agreement(rng):
        res = 0.
        for _ in range(par.samples):
            v = _random_vector(rng, plain, support=5)
            psi = _random_state(rng, plain, car.particle_cap,
                                lengths=range(car.particle_cap))
            vec = space.to_array(psi)
            direct = space.to_array(create(v, psi, plain))
            res = max(res, np.linalg.norm(space.creation(v) @ vec - direct))
            direct = space.to_array(annihilate(v, psi, plain))
            res = max(res, np.linalg.norm(space.annihilation(v) @ vec -
                                          direct))
        return res

    runner.run('sparse_agreement', 'matrix and dictionary operators agree',
               sparse_agreement)

    def wedge_signs(rng):
        first = FockVector.basis_state([1, 2], cap)
        second = FockVector.basis_state([2, 1], cap)
        res = first.distance(-1. * second)
        e1, e2 = modes.basis(0, 0), modes.basis(0, 1)
        vac = FockVector.vacuum(cap)
        ab = create(e1, create(e2, vac, modes), modes)
        ba = create(e2, create(e1, vac, modes), modes)
        res = max(res, ab.distance(-1. * ba))
        full = FockVector.basis_state(list(range(cap)), cap)
        over = create(modes.basis(n - 1, par.window), full, modes)
        if over.amps or over.overflow <= 0.:
            res = max(res, 1.)
        return res

    runner.run('wedge_signs', 'wedge products are alternating', wedge_signs)

    def polarisation_rank(rng):
        res, detail = 0., {}
        for half in par.rank_dims:
            for K in par.rank_windows:
                local = ModeSpace(2 * half, K)
                complex_ = standard_polarisation(local)
                real = standard_unitary_structure(half, K)
                out = polarisation_compare(complex_, real)
                detail['{}/{}'.format(2 * half, K)] = out['rank']
                res = max(res, abs(out['rank'] - half),
                          abs(out['hs_norm'] - 2. * np.sqrt(half)))
        return res, detail

    runner.run('polarisation_rank', 'J_C - J_R has rank n',
               polarisation_rank)

    def odd_fibre(rng):
        try:
            standard_unitary_structure(1, 2, fibre_dim=3)
        except NotPolarising:
            return 0.
        return 1.

    runner.run('odd_fibre', 'odd real fibres admit no polarisation',
               odd_fibre)

    def rotations(rng):
        res = 0.
        vac = FockVector.vacuum(cap)
        for _ in range(par.samples):
            lam = np.exp(2j * np.pi * rng.uniform())
            mu = np.exp(2j * np.pi * rng.uniform())
            ul = implement_rotation(lam, modes)
            um = implement_rotation(mu, modes)
            psi = _random_state(rng, modes, cap)
            res = max(res, (ul @ um)(psi).distance(ul(um(psi))))
            res = max(res, ul(vac).distance(vac))
            v = _random_vector(rng, modes, support=4)
            moved = create(modes.rotate(v, lam), ul(psi), modes)
            res = max(res, ul(create(v, psi, modes)).distance(moved))
            moved = annihilate(modes.rotate(v, lam), ul(psi), modes)
            res = max(res, ul(annihilate(v, psi, modes)).distance(moved))
        return res

    runner.run('rotations', 'U_lam intertwines c(v) and c(R_lam v)',
               rotations)

    def rotation_matrix(rng):
        lam = np.exp(2j * np.pi * rng.uniform())
        op = implement_rotation(lam, plain).matrix(space)
        v = _random_vector(rng, plain, support=4)
        left = op @ space.creation(v)
        right = space.creation(plain.rotate(v, lam)) @ op
        diff = (left - right).tocsr()
        return float(np.max(np.abs(diff.data), initial=0.))

    runner.run('rotation_matrix', 'sparse U_lam intertwines c(v)',
               rotation_matrix)

    def extension(rng):
        res = 0.
        for _ in range(par.samples):
            psi = _random_state(rng, modes, cap)
            chi = _random_state(rng, modes, cap)
            f1 = modes.dual_of(_random_vector(rng, modes, support=3))
            f2 = modes.dual_of(_random_vector(rng, modes, support=3))
            both = finite_rank_clifford_extension([(f1 + f2, psi)], modes)
            split = finite_rank_clifford_extension([(f1, psi), (f2, psi)],
                                                   modes)
            res = max(res, both.distance(split) / max(1., both.norm()))
            total = finite_rank_clifford_extension([(f1, psi), (f2, chi)],
                                                   modes)
            bound = modes.norm(modes.riesz(f1)) * psi.norm(modes) + \
                modes.norm(modes.riesz(f2)) * chi.norm(modes)
            res = max(res, total.norm(modes) - bound)
        return res

    runner.run('clifford_extension', 'finite-rank Clifford extension',
               extension)

    def riesz(rng):
        res = 0.
        for _ in range(par.samples):
            v = _random_vector(rng, modes)
            x = _random_vector(rng, modes)
            back = modes.riesz(modes.dual_of(v))
            res = max(res, np.linalg.norm(back - v) / np.linalg.norm(v))
            f = modes.dual_of(v).coeffs.T.ravel()
            res = max(res, abs(modes.inner(x, v) - np.sum(f * x)) /
                      max(1., abs(modes.inner(x, v))))
        return res

    runner.run('riesz', 'functionals identified through the inner product',
               riesz)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('fock', **config)
    print(out['fock'])
