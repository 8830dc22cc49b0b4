#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Verification suite for weight sequences and the weighted dual"""

import numpy as np
from ruamel import yaml

from loopforge import Parser
from loopforge.report import CheckRunner
from loopforge.errors import InvariantViolation
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

# default configuration
__DEFAULTS = """\
# default parameters for the `weights` suite
truncation:
  max_mode: 16
  dim: 2
  tol: 1.e-9
fock:
  window: 6
  particle_cap: 6
seed: 42
timing: false
weights:
  rhos: [2., 535.4916555247646]
  shifts: 8
  norm_tol: 1.e-12
  rank_shifts: [1, 2, 3]
  cone: [.25, 2.]
  growth: 3
  samples: 20
"""


def defaults():
    """Returns dictionary containing default arguments"""
    return yaml.load(__DEFAULTS, Loader=yaml.SafeLoader)


def _random_dual(rng, N, n=None):
    shape = (2 * N + 1, ) if n is None else (2 * N + 1, n)
    return DualVector(rng.normal(size=shape) + 1j * rng.normal(size=shape))


def _random_matrix_loop(rng, config, n, degree):
    coeffs = {
        k: rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        for k in range(-degree, degree + 1)
    }
    return FourierLoop(coeffs, config, shape=(n, n))


def run(name, truncation=None, fock=None, seed=42, timing=False, verbosity=0,
        weights=None, **kwargs):
    """Checks of weighted norms, dual actions and polarisations.

    Keyword Arguments:
        truncation (dict): reflects yaml 'truncation'
        weights    (dict): reflects yaml 'weights'

    Returns:
        dict: dictionary with pandas DataFrame entries
    """

    trunc = Parser(truncation)
    par = Parser(weights)
    tol = trunc.tol
    N = trunc.max_mode
    n = trunc.dim
    config = TruncationConfig(N, n, tol)

    runner = CheckRunner(name, seed=seed, tol=tol, timing=timing,
                         verbosity=verbosity)

    families = [WeightSequence.geometric(rho, N) for rho in par.rhos]
    families.append(WeightSequence.cosh_family(N))
    geometric = families[0]

    def z_norms(rng):
        res, detail = 0., {}
        for a in families:
            worst = 0.
            for q in range(-par.shifts, par.shifts + 1):
                svd = np.linalg.norm(weighted_shift_matrix(a, q), 2)
                value = z_operator_norm(a, q)
                worst = max(worst, abs(svd - value) / value)
            detail[a.family + str(a.rho or '')] = worst
            res = max(res, worst)
        return res, detail

    runner.run('z_norms', '|z^q| = sqrt(sup a_p / a_(p+q))', z_norms,
               tolerance=par.norm_tol)

    def geometric_closed_form(rng):
        res = 0.
        for a in families[:-1]:
            for q in range(-N, N + 1):
                expected = a.rho**(abs(q) / 2.)
                svd = np.linalg.norm(weighted_shift_matrix(a, q), 2)
                res = max(res, abs(svd - expected) / expected)
        return res

    runner.run('geometric_closed_form', '|z^q| = rho^(|q|/2)',
               geometric_closed_form, tolerance=par.norm_tol)

    def unbounded_growth(rng):
        res = 0.
        for a in families:
            table = unbounded_growth_witness(a, N)
            if not table['increasing'].all():
                res = max(res, 1.)
        table = unbounded_growth_witness(geometric, N)
        expected = geometric.rho**table['q'].values.astype(float)
        return max(res, np.max(np.abs(table['norm_sq'] - expected) /
                               expected))

    runner.run('unbounded_growth', 'the loop action is not uniformly bounded',
               unbounded_growth, tolerance=par.norm_tol)

    def cosh_equivalence(rng):
        cosh = families[-1]
        rate = WeightSequence.geometric(np.exp(4 * np.pi), N)
        verdict = equivalence_check(cosh, rate)
        res = 0. if verdict['equivalent'] and verdict['extrapolable'] else 1.
        other = equivalence_check(families[0], families[1])
        res += 0. if not other['equivalent'] else 1.
        custom = WeightSequence(cosh.values)
        res += 0. if not equivalence_check(custom, cosh)['extrapolable'] \
            else 1.
        return res, {'constants': verdict['constants']}

    runner.run('equivalence', 'cosh family equivalent to rho = exp(4 pi)',
               cosh_equivalence)

    def cone(rng):
        s, t = par.cone
        a, b = families[0], families[1]
        combined = cone_combine(a, b, s, t)
        res = 0.
        for _ in range(par.samples):
            x = _random_dual(rng, N, n)
            lhs = inner_product(x, x, combined).real
            rhs = s * inner_product(x, x, a).real + t * inner_product(x, x, b).real
            res = max(res, abs(lhs - rhs) / rhs)
        verdict = equivalence_check(combined, a)
        if not verdict['equivalent']:
            res = max(res, 1.)
        try:
            cone_combine(a, b, -1., 1.)
        except InvariantViolation:
            pass
        else:
            res = max(res, 1.)
        return res

    runner.run('cone', 'weighted forms form a convex cone', cone)

    def diamond_pairing(rng):
        example = diamond(DualVector.basis(2, 4), WeightSequence.geometric(2., 4))
        res = abs(example.coeff(-2) - .25)
        for _ in range(par.samples):
            b = _random_dual(rng, N, n)
            c = _random_dual(rng, N, n)
            lhs = pairing(b, diamond(c, geometric))
            rhs = inner_product(b, c, geometric)
            res = max(res, abs(lhs - rhs) / max(1., abs(rhs)))
        return res

    runner.run('diamond_pairing', '<b, conj(c) <> gamma_a> = (b, c)_a',
               diamond_pairing)

    def invariance(rng):
        res = 0.
        for _ in range(par.samples):
            b = _random_dual(rng, N, n)
            lam = np.exp(2j * np.pi * rng.uniform())
            ref = norm(b, geometric)
            res = max(res, abs(norm(rotate_dual(b, lam), geometric) - ref) /
                      ref)
            res = max(res, abs(norm(involute_dual(b), geometric) - ref) / ref)
        back = weights_from_form(gram_matrix(geometric))
        res = max(res, np.max(np.abs(back.values - geometric.values)))
        skew = gram_matrix(geometric)
        skew[0, 1] = .5
        try:
            weights_from_form(skew)
        except InvariantViolation:
            pass
        else:
            res = max(res, 1.)
        return res

    runner.run('invariance', 'forms invariant under rotation and involution',
               invariance)

    def polarisation(rng):
        res = 0.
        for _ in range(par.samples):
            b = _random_dual(rng, N, n)
            twice = polarisation_J(polarisation_J(b))
            res = max(res, np.linalg.norm(twice.coeffs + b.coeffs))
            ref = norm(b, geometric)
            res = max(res, abs(norm(polarisation_J(b), geometric) - ref) / ref)
        constant = polarisation_J(DualVector.basis(0, N))
        return max(res, abs(constant.coeffs[N] + 1j))

    runner.run('polarisation', 'J^2 = -1 and J is unitary', polarisation)

    def commutators(rng):
        res, detail = 0., {}
        a = geometric
        const = FourierLoop({0: rng.normal(size=(n, n))}, config,
                            shape=(n, n))
        res = max(res, commutator_hs_norm(const, a))
        for q in par.rank_shifts:
            mat = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            loop = FourierLoop({q: mat}, config, shape=(n, n))
            rank = commutator_rank(loop, a)
            detail[str(q)] = rank
            res = max(res, abs(rank - n * q))
        loop = _random_matrix_loop(rng, config, n, 2)
        hs = commutator_hs_norm(loop, a)
        if not np.isfinite(hs):
            res = max(res, 1.)
        return res, detail

    runner.run('commutator_rank', '[A, J] has finite rank', commutators)

    def loop_action(rng):
        res = 0.
        for q in (-3, 0, 2):
            loop = FourierLoop({q: np.eye(n)}, config, shape=(n, n))
            mat = loop_operator(loop, N=N)
            for p in range(-N, N + 1):
                image = mat @ DualVector.basis(p, N, n).coeffs.ravel()
                if abs(p - q) <= N:
                    target = DualVector.basis(p - q, N, n).coeffs.ravel()
                else:
                    target = np.zeros_like(image)
                res = max(res, np.linalg.norm(image - target))
        return res

    runner.run('loop_action', 'z^q maps e_p to e_(p-q)', loop_action)

    def norm_bound(rng):
        res = 0.
        for _ in range(par.samples // 4):
            loop = _random_matrix_loop(rng, config, n, 3)
            value, bound = loop_operator_norm_bound(loop, geometric)
            res = max(res, value - bound)
        return res

    runner.run('norm_bound', '|A| <= sum_q |z^q| |A_q|', norm_bound)

    def zeta(rng):
        res = 0.
        for a in families:
            plain = zeta_homotopy(a, 0.)
            shift = np.eye(2 * N + 1, k=1)
            res = max(res, np.linalg.norm(plain - shift))
            root = np.sqrt(a.values)
            conj = root[:, None] * plain / root[None, :]
            full = zeta_homotopy(a, 1.)
            res = max(res, np.linalg.norm(full - conj) / np.linalg.norm(full))
            for t in np.linspace(0., 1., 5):
                smin = np.linalg.svd(zeta_homotopy(a, t, compressed=True),
                                     compute_uv=False).min()
                if smin <= 0.:
                    res = max(res, 1.)
            unitary, positive = zeta_polar(a)
            compressed = zeta_homotopy(a, 0., compressed=True)
            res = max(res, np.linalg.norm(unitary - compressed))
        return res

    runner.run('zeta_homotopy', 'zeta_t joins z to T z T^-1', zeta)

    def growth_certificate(rng):
        m = par.growth
        values = (1. + np.abs(np.arange(-N, N + 1)))**m
        b = DualVector(values)
        res = abs(b.growth - m) + abs(b.bound - 1.)
        res += abs(DualVector(np.ones(2 * N + 1)).growth)
        return res

    runner.run('growth_certificate', '|b^p| <= C (1 + |p|)^m',
               growth_certificate)

    return {name: runner.frame()}


if __name__ == "__main__":

    config = defaults()
    out = run('weights', **config)
    print(out['weights'])
