#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Dirac operator on the flat model fibre.

Sections are polynomials in the real loop coordinates x_(j, k, part) with
Fock space coefficients; part 0 is the coordinate along e_(j, k) / |e_(j, k)|
and part 1 the coordinate along i e_(j, k) / |e_(j, k)|. The Dirac operator
contracts the exact derivative with Clifford multiplication.
"""

import itertools
import numpy as np

from .errors import InvariantViolation, ModeOutsideWindow, NotUnitModulus
from .fock import (ModeSpace, FockVector, clifford, implement_rotation,
                   finite_rank_clifford_extension)

__all__ = [
    'MAX_DEGREE', 'DiracConfig', 'PolynomialSection',
    'covariant_derivative_flat', 'dirac', 'dirac_section', 'rotate_point',
    'rotate_section', 'equivariance_check'
]

MAX_DEGREE = 3

ROUTES = ('extension', 'direct')


class DiracConfig(object):
    """Truncation of the tangent mode sum.

    Attributes:
        modes (ModeSpace): one-particle space of dimension `dim`, window K
        particle_cap (int): Fock space particle cap P
        directions (list): tangent variables (j, k, part) entering the sum
    """

    def __init__(self, dim=1, window=3, particle_cap=4, directions=None,
                 weights=None):

        self.modes = ModeSpace(dim, window, weights)
        self.particle_cap = int(particle_cap)
        if directions is None:
            directions = [(j, k, part) for j, k in self.modes.labels
                          for part in (0, 1)]
        directions = [tuple(int(i) for i in d) for d in directions]
        assert directions, 'direction set needs to be nonempty'
        for var in directions:
            _check_variable(var, self.modes)
        self.directions = directions

    @property
    def dim(self):
        return self.modes.n

    @property
    def window(self):
        return self.modes.K

    def tangent(self, var):
        """Unit tangent vector of a coordinate direction"""
        j, k, part = var
        vec = self.modes.basis(j, k) / np.sqrt(
            self.modes.weights[self.modes.index(j, k)])
        return 1j * vec if part else vec

    def coordinate(self, var, x):
        """Value of the coordinate x_var at a point"""
        j, k, part = var
        idx = self.modes.index(j, k)
        value = x[idx] * np.sqrt(self.modes.weights[idx])
        return value.imag if part else value.real

    def __repr__(self):
        return 'DiracConfig(dim={}, window={}, cap={}, directions={})'.format(
            self.dim, self.window, self.particle_cap, len(self.directions))


def _check_variable(var, modes):
    """Ensure a coordinate lies in the window (hidden)"""
    j, k, part = var
    if not 0 <= j < modes.n or abs(k) > modes.K or part not in (0, 1):
        msg = 'coordinate {} lies outside the window (n = {}, K = {})'
        raise ModeOutsideWindow(msg.format(var, modes.n, modes.K))


class PolynomialSection(object):
    """Polynomial in the loop coordinates with FockVector coefficients.

    Monomials are sorted tuples of variables; repeated variables are powers.
    """

    __array_ufunc__ = None

    def __init__(self, terms=None, cap=4):

        data = {}
        for mono, coeff in dict(terms or {}).items():
            mono = tuple(sorted(tuple(int(i) for i in v) for v in mono))
            if len(mono) > MAX_DEGREE:
                msg = 'monomial of degree {} exceeds {}'
                raise InvariantViolation(msg.format(len(mono), MAX_DEGREE))
            if coeff.cap != cap:
                raise InvariantViolation('coefficient has particle cap {}'.format(
                    coeff.cap))
            data[mono] = data[mono] + coeff if mono in data else coeff
        self.terms = {m: c for m, c in data.items() if c.amps}
        self.cap = int(cap)

    @classmethod
    def constant(cls, coeff):
        return cls({(): coeff}, coeff.cap)

    @classmethod
    def monomial(cls, variables, coeff):
        return cls({tuple(variables): coeff}, coeff.cap)

    @property
    def degree(self):
        return max((len(m) for m in self.terms), default=0)

    @property
    def variables(self):
        return sorted(set(v for mono in self.terms for v in mono))

    @property
    def parity(self):
        """Common parity of the coefficients (None if mixed)"""
        parities = set(c.parity for c in self.terms.values())
        if len(parities) == 1:
            return parities.pop()
        return None

    def __add__(self, other):
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms[mono] + coeff if mono in terms else coeff
        return PolynomialSection(terms, self.cap)

    def __sub__(self, other):
        return self + (-1.) * other

    def __mul__(self, scalar):
        return PolynomialSection(
            {m: scalar * c for m, c in self.terms.items()}, self.cap)

    __rmul__ = __mul__

    def derivative(self, var):
        """Exact partial derivative along a coordinate"""
        var = tuple(var)
        terms = {}
        for mono, coeff in self.terms.items():
            power = mono.count(var)
            if not power:
                continue
            rest = list(mono)
            rest.remove(var)
            rest = tuple(rest)
            value = power * coeff
            terms[rest] = terms[rest] + value if rest in terms else value
        return PolynomialSection(terms, self.cap)

    def evaluate(self, cfg, x):
        """Value at the point x (complex mode vector)"""
        x = cfg.modes.check(x)
        out = FockVector({}, self.cap)
        for mono, coeff in self.terms.items():
            factor = np.prod([cfg.coordinate(v, x) for v in mono])
            out = out + float(factor) * coeff
        return out

    def __repr__(self):
        return 'PolynomialSection(terms={}, degree={})'.format(
            len(self.terms), self.degree)


def covariant_derivative_flat(s):
    """Map from coordinate direction to the partial derivative of s"""
    out = {}
    for var in s.variables:
        deriv = s.derivative(var)
        if deriv.terms:
            out[var] = deriv
    return out


def _check_section(s, cfg):
    for var in s.variables:
        _check_variable(var, cfg.modes)
    if s.cap != cfg.particle_cap:
        raise InvariantViolation('section has particle cap {} (config {})'.format(
            s.cap, cfg.particle_cap))


def dirac(s, cfg, x, route='extension'):
    """Dirac operator sum_a pi(e_a) (d_a s)(x) at a point.

    Arguments:
        s (PolynomialSection): section
        cfg (DiracConfig): truncation of the tangent sum
        x (array): point in the truncated loop space

    Keyword Arguments:
        route (str): 'extension' contracts through the finite-rank
            Clifford extension; 'direct' applies pi termwise
    """

    assert route in ROUTES, 'unknown route `{}`'.format(route)
    _check_section(s, cfg)

    terms = []
    for var in cfg.directions:
        deriv = s.derivative(var)
        if not deriv.terms:
            continue
        terms.append((cfg.tangent(var), deriv.evaluate(cfg, x)))

    if not terms:
        return FockVector({}, s.cap)

    if route == 'extension':
        pairs = [(cfg.modes.dual_of(vec), state) for vec, state in terms]
        return finite_rank_clifford_extension(pairs, cfg.modes, s.cap)

    out = FockVector({}, s.cap)
    for vec, state in terms:
        out = out + clifford(vec, state, cfg.modes)
    return out


def dirac_section(s, cfg):
    """Dirac operator as a map of polynomial sections"""

    _check_section(s, cfg)
    out = PolynomialSection({}, s.cap)
    for var in cfg.directions:
        deriv = s.derivative(var)
        vec = cfg.tangent(var)
        terms = {
            mono: clifford(vec, coeff, cfg.modes)
            for mono, coeff in deriv.terms.items()
        }
        out = out + PolynomialSection(terms, s.cap)
    return out


def _unit(lam, tol=1e-12):
    lam = complex(lam)
    if abs(abs(lam) - 1.) > tol:
        raise NotUnitModulus('|lambda| = {!r} is not 1'.format(abs(lam)))
    return lam


def rotate_point(x, lam, cfg):
    """Circle action on points, x_(j, k) -> lam^k x_(j, k)"""
    return cfg.modes.rotate(x, _unit(lam))


def rotate_section(s, lam, cfg):
    """Rotated section (lam . s)(y) = U_lam s(R_lam^-1 y).

    With theta = k arg(lam) the coordinates of R_lam^-1 y are
    x_(j,k,0) = cos(theta) y_(j,k,0) + sin(theta) y_(j,k,1) and
    x_(j,k,1) = -sin(theta) y_(j,k,0) + cos(theta) y_(j,k,1).
    """

    lam = _unit(lam)
    rot = implement_rotation(lam, cfg.modes)
    angle = np.angle(lam)

    def substitute(var):
        j, k, part = var
        c, s_ = np.cos(k * angle), np.sin(k * angle)
        if part == 0:
            return [(c, (j, k, 0)), (s_, (j, k, 1))]
        return [(-s_, (j, k, 0)), (c, (j, k, 1))]

    terms = {}
    for mono, coeff in s.terms.items():
        image = rot(coeff)
        for choice in itertools.product(*[substitute(v) for v in mono]):
            factor = np.prod([c for c, _ in choice]) if choice else 1.
            if factor == 0.:
                continue
            key = tuple(sorted(v for _, v in choice))
            value = float(factor) * image
            terms[key] = terms[key] + value if key in terms else value
    return PolynomialSection(terms, s.cap)


def equivariance_check(s, cfg, lam, x):
    """Residual |U_lam (D s)(x) - (D (lam . s))(lam . x)|"""

    lam = _unit(lam)
    rot = implement_rotation(lam, cfg.modes)
    left = rot(dirac(s, cfg, x))
    right = dirac(rotate_section(s, lam, cfg), cfg, rotate_point(x, lam, cfg))
    return left.distance(right)
