#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Quasi-periodic paths: P_per G, its polynomial part P_pol G, and sections.

A path alpha: R -> G is quasi-periodic when alpha(t+1) alpha(t)^-1 is
constant; that constant is its projection to G. Polynomial paths are those
of the form t -> exp(t xi) gamma(t) with gamma a polynomial loop.
"""

import warnings
import numpy as np
from scipy import interpolate
from scipy import linalg

from .errors import (InvariantViolation, NotInGroup, NotUnitaryStructure,
                     DimensionMismatch, DifferentFibres, NonUnitVector,
                     EigenvalueOnCut, EigenvalueOnWall, ProjectionDegenerate,
                     EigenvalueMinusOne, ModeOutsideWindow, OddDimension,
                     TruncationWarning)
from .loops import (DEFAULT_TOL, TruncationConfig, FourierLoop, constant,
                    evaluate, evaluate_many, product, adjoint,
                    fourier_tail_norm, from_samples, sample_times)
from .lie import (SUBGROUPS, GroupElement, AlgebraElement, UnitaryStructure,
                  normal_eig, exp_matrix, log_sector, commuting_log,
                  log_decompose_so, block_j0, group_residual)

__all__ = [
    'PolynomialPath', 'PeriodicPathSampled', 'project', 'act_left',
    'act_conj', 'act_loop', 'quotient_degree_bound', 'fibre_quotient',
    'section_un', 'section_sun', 'section_son', 'minus_space',
    'default_j_field', 'son_direct'
]

WALL_TOL = 1e-8


def _identity_loop(n, config):
    return constant(np.eye(n), config, real=True)


class PolynomialPath(object):
    """Path t -> exp(t xi) gamma(t) in P_pol G.

    Attributes:
        xi (AlgebraElement): generator of the quasi-periodic part
        gamma (FourierLoop): matrix-valued polynomial loop
        group (str): group the path takes values in
        degree (int): declared polynomial degree of gamma
    """

    def __init__(self, xi, gamma, group='U', degree=None, tol=DEFAULT_TOL):

        if gamma.shape != (xi.n, xi.n):
            msg = 'loop of shape {} does not match {}x{} generator'
            raise DimensionMismatch(msg.format(gamma.shape, xi.n, xi.n))

        if degree is None:
            degree = gamma.degree
        if degree > gamma.config.max_mode:
            msg = 'degree {} exceeds the window N = {}'
            raise ModeOutsideWindow(msg.format(degree, gamma.config.max_mode))

        tail = fourier_tail_norm(gamma, degree)
        if tail > tol:
            msg = 'loop part has tail {:.3e} beyond degree {}'
            raise InvariantViolation(msg.format(tail, degree))

        self.xi = xi
        self.gamma = gamma
        self.group = group
        self.degree = int(degree)
        self.tol = tol
        self._spectrum = normal_eig(xi.matrix)[:2]

    @property
    def n(self):
        return self.xi.n

    @property
    def config(self):
        return self.gamma.config

    def flow(self, t):
        """exp(t xi)"""
        evals, vecs = self._spectrum
        return (vecs * np.exp(t * evals)) @ vecs.conj().T

    def evaluate(self, t):
        """Path value exp(t xi) gamma(t)"""
        return self.flow(t) @ evaluate(self.gamma, t)

    def evaluate_many(self, times):
        loops = evaluate_many(self.gamma, times)
        return np.array([self.flow(t) @ g for t, g in zip(times, loops)])

    def element(self, t):
        return GroupElement(self.evaluate(t), self.group, tol=10 * self.tol)

    def residuals(self, count=64):
        """Sampled membership and quasi-periodicity residuals"""

        times = sample_times(count)
        values = self.evaluate_many(times)
        shifted = self.evaluate_many(times + 1.)
        proj = project(self).matrix
        member = max(group_residual(v, self.group) for v in values)
        period = max(
            np.linalg.norm(b @ a.conj().T - proj)
            for a, b in zip(values, shifted))
        return {'group': float(member), 'periodicity': float(period)}

    def to_dict(self):
        """Path file representation"""
        xi = self.xi.matrix
        return {
            'group': self.group,
            'degree': self.degree,
            'xi': [[[float(c.real), float(c.imag)] for c in row] for row in xi],
            'loop': self.gamma.to_dict()
        }

    def __repr__(self):
        return 'PolynomialPath({}, n={}, degree={})'.format(
            self.group, self.n, self.degree)


class PeriodicPathSampled(object):
    """Quasi-periodic path known through samples on [0, 1].

    Values outside [0, 1] follow from alpha(t + 1) = g alpha(t).
    """

    def __init__(self, holonomy, samples, order=3, tol=DEFAULT_TOL):
        """Constructor.

        Arguments:
            holonomy (GroupElement): candidate g = alpha(1) alpha(0)^-1
            samples (array): values at t_i = i/M, i = 0..M

        Keyword Arguments:
            order (int): spline interpolation order
            tol (float): residual threshold
        """

        samples = np.array(samples, dtype=complex)
        n = holonomy.n
        if samples.ndim != 3 or samples.shape[1:] != (n, n):
            raise DimensionMismatch('samples need shape (M+1, {0}, {0})'.format(n))

        member = max(group_residual(s, holonomy.group) for s in samples)
        if member > tol:
            msg = 'samples miss {} by {:.3e}'
            raise NotInGroup(msg.format(holonomy.group, member))

        consistency = np.linalg.norm(samples[-1] @ samples[0].conj().T -
                                     holonomy.matrix)
        if consistency > tol:
            msg = 'holonomy differs from alpha(1) alpha(0)^-1 by {:.3e}'
            raise InvariantViolation(msg.format(consistency))

        self.holonomy = holonomy
        self.samples = samples
        self.order = order
        self.group = holonomy.group
        self.tol = tol

        times = np.linspace(0., 1., len(samples))
        flat = samples.reshape(len(samples), n * n)
        self._re = interpolate.make_interp_spline(times, flat.real, k=order)
        self._im = interpolate.make_interp_spline(times, flat.imag, k=order)

    @classmethod
    def from_path(cls, path, count=64, order=3):
        """Alternative constructor sampling a `PolynomialPath`"""
        times = np.linspace(0., 1., count + 1)
        return cls(project(path), path.evaluate_many(times), order=order,
                   tol=10 * path.tol)

    @property
    def n(self):
        return self.holonomy.n

    def evaluate(self, t):
        whole = int(np.floor(t))
        frac = t - whole
        n = self.n
        value = (self._re(frac) + 1j * self._im(frac)).reshape(n, n)
        g = self.holonomy.matrix
        if whole < 0:
            g = g.conj().T
        return np.linalg.matrix_power(g, abs(whole)) @ value

    def __repr__(self):
        return 'PeriodicPathSampled({}, n={}, samples={})'.format(
            self.group, self.n, len(self.samples))


def project(alpha):
    """Projection alpha -> alpha(1) alpha(0)^-1 onto G"""

    if isinstance(alpha, PolynomialPath):
        flow = alpha.flow(1.)
        return GroupElement(flow, alpha.group, tol=10 * alpha.tol)
    return alpha.holonomy


def _check_action(g, alpha):
    """Ensure g can act on alpha (hidden)"""
    if g.n != alpha.n:
        msg = 'cannot act with {}x{} matrix on paths in dimension {}'
        raise DimensionMismatch(msg.format(g.n, g.n, alpha.n))
    if g.group not in SUBGROUPS[alpha.group]:
        msg = 'element of {} does not act on paths in {}'
        raise NotInGroup(msg.format(g.group, alpha.group))


def _warn_overflow(mass, tol, what):
    if mass > tol:
        msg = '{} lost mass {:.3e} to the window'
        warnings.warn(msg.format(what, mass), TruncationWarning)


def act_left(g, alpha):
    """Left multiplication g . alpha = g alpha"""

    _check_action(g, alpha)
    gm = g.matrix

    if isinstance(alpha, PolynomialPath):
        # g exp(t xi) gamma = exp(t Ad_g xi) g gamma
        xi = AlgebraElement(gm @ alpha.xi.matrix @ gm.conj().T,
                            alpha.xi.algebra, tol=1e-8)
        gamma, lost = product(constant(gm, alpha.config), alpha.gamma)
        _warn_overflow(lost, alpha.tol, 'act_left')
        return PolynomialPath(xi, gamma, alpha.group, alpha.degree, alpha.tol)

    hol = GroupElement(gm @ alpha.holonomy.matrix @ gm.conj().T, alpha.group,
                       check=False)
    return PeriodicPathSampled(hol, gm @ alpha.samples, alpha.order, alpha.tol)


def act_conj(g, alpha):
    """Conjugation g . alpha = g alpha g^-1"""

    _check_action(g, alpha)
    gm = g.matrix
    gi = gm.conj().T

    if isinstance(alpha, PolynomialPath):
        xi = AlgebraElement(gm @ alpha.xi.matrix @ gi, alpha.xi.algebra,
                            tol=1e-8)
        left, lost1 = product(constant(gm, alpha.config), alpha.gamma)
        gamma, lost2 = product(left, constant(gi, alpha.config))
        _warn_overflow(lost1 + lost2, alpha.tol, 'act_conj')
        return PolynomialPath(xi, gamma, alpha.group, alpha.degree, alpha.tol)

    hol = GroupElement(gm @ alpha.holonomy.matrix @ gi, alpha.group,
                       check=False)
    return PeriodicPathSampled(hol, gm @ alpha.samples @ gi, alpha.order,
                               alpha.tol)


def act_loop(alpha, loop, degree=None):
    """Right action of a polynomial loop: t -> alpha(t) loop(t)"""

    if loop.shape != (alpha.n, alpha.n):
        raise DimensionMismatch('loop shape {} does not match path'.format(
            loop.shape))
    if degree is None:
        degree = loop.degree

    gamma, lost = product(alpha.gamma, loop)
    _warn_overflow(lost, alpha.tol, 'act_loop')
    total = min(alpha.degree + degree, alpha.config.max_mode)
    return PolynomialPath(alpha.xi, gamma, alpha.group, total, alpha.tol)


def _integer_spread(xi, zeta):
    """Largest |eigenvalue| / 2 pi of xi - zeta (hidden)"""
    evals = np.linalg.eigvals(xi - zeta)
    if not len(evals):
        return 0
    return int(np.round(np.max(np.abs(evals)) / (2 * np.pi)))


def quotient_degree_bound(alpha, beta):
    """Degree bound for the loop alpha^-1 beta.

    With zeta the commuting logarithm of the common projection,
    exp(-t xi1) exp(t xi2) = exp(t (zeta - xi1)) exp(t (xi2 - zeta)) and
    both factors are polynomial of degree max |eigenvalue| / 2 pi.
    """

    zeta = commuting_log(project(alpha)).matrix
    bound = _integer_spread(alpha.xi.matrix, zeta)
    bound += _integer_spread(beta.xi.matrix, zeta)
    return bound + alpha.degree + beta.degree


def fibre_quotient(alpha, beta, tol=None):
    """Loop gamma = alpha^-1 beta relating two paths in one fibre.

    Raises:
        DifferentFibres: if the projections disagree
    """

    if tol is None:
        tol = alpha.tol
    if alpha.n != beta.n:
        raise DimensionMismatch('paths live in different dimensions')

    mismatch = np.linalg.norm(project(alpha).matrix - project(beta).matrix)
    if mismatch > 10 * tol:
        msg = 'projections differ by {:.3e}'
        raise DifferentFibres(msg.format(mismatch))

    config = alpha.config
    bound = quotient_degree_bound(alpha, beta)
    count = 4 * max(config.max_mode, bound) + 1
    times = sample_times(count)

    a = alpha.evaluate_many(times)
    b = beta.evaluate_many(times)
    samples = np.matmul(np.conj(np.transpose(a, (0, 2, 1))), b)

    return from_samples(samples, config, real=False)


def section_un(g, s=0j, config=None):
    """Local section alpha_s(g)(t) = exp(t log_s g) of P_pol U_n -> U_n"""

    if config is None:
        config = TruncationConfig(16, g.n)
    xi = log_sector(g, s)
    return PolynomialPath(xi, _identity_loop(g.n, config), 'U', 0)


def section_sun(g, s=0j, v=None, config=None):
    """Local section of P_pol SU_n -> SU_n.

    beta_s(g)(t) = alpha_s(g)(t) sigma(det alpha_s(g)(-t)), where
    sigma(lam) = 1 - v v* + lam v v*. With tr log_s g = 2 pi i k the
    correction is the polynomial loop sigma(z^-k) of degree |k|.
    """

    n = g.n
    if config is None:
        config = TruncationConfig(16, n)
    if abs(np.linalg.det(g.matrix) - 1.) > 1e-8:
        raise NotInGroup('section_sun needs det g = 1')

    if v is None:
        v = np.eye(n)[0]
    v = np.asarray(v, dtype=complex)
    if v.shape != (n, ) or abs(np.linalg.norm(v) - 1.) > DEFAULT_TOL:
        raise NonUnitVector('v needs to be a unit vector in C^{}'.format(n))

    xi = log_sector(g, s)
    k = int(np.round(np.trace(xi.matrix).imag / (2 * np.pi)))
    if abs(k) > config.max_mode:
        msg = 'determinant correction z^{} exceeds the window'
        raise ModeOutsideWindow(msg.format(-k))

    proj = np.outer(v, v.conj())
    if k:
        coeffs = {0: np.eye(n) - proj, -k: proj}
    else:
        coeffs = {0: np.eye(n)}
    gamma = FourierLoop(coeffs, config, shape=(n, n))

    return PolynomialPath(xi, gamma, 'SU', abs(k))


def minus_space(h, r, wall_tol=WALL_TOL):
    """Orthonormal basis of E^r(h), the sum of eigenspaces with real part < r.

    Raises:
        EigenvalueOnWall: if some eigenvalue has real part within wall_tol of r
    """

    mat = np.asarray(h.matrix, dtype=float)
    vals, vecs = np.linalg.eigh(.5 * (mat + mat.T))
    if len(vals) and np.min(np.abs(vals - r)) <= wall_tol:
        msg = 'eigenvalue with real part {:.6f} on the wall r = {}'
        raise EigenvalueOnWall(msg.format(vals[np.argmin(np.abs(vals - r))], r))
    return vecs[:, vals < r]


def _chart(h, r, g, tol):
    """Bases of E^r(h), E^r(g) after validating h in W_r(g) (hidden)"""

    bh = minus_space(h, r)
    bg = minus_space(g, r)
    if bh.shape[1] != bg.shape[1]:
        msg = 'E^r(h) and E^r(g) differ in dimension ({} vs {})'
        raise ProjectionDegenerate(msg.format(bh.shape[1], bg.shape[1]))
    if bh.shape[1]:
        smin = np.linalg.svd(bg.T @ bh, compute_uv=False).min()
        if smin <= tol:
            msg = 'projection E^r(h) -> E^r(g) degenerates ({:.3e})'
            raise ProjectionDegenerate(msg.format(smin))
    return bh, bg


def default_j_field(g, r):
    """Unitary structures on E^r(h) transported from a basepoint g.

    A basis of E^r(g) is paired into J0 blocks, projected orthogonally onto
    E^r(h) and orthonormalised by the polar decomposition.

    Returns:
        Callable h -> m x m real matrix J_h vanishing off E^r(h)
    """

    bg = minus_space(g, r)
    d = bg.shape[1]
    if d % 2:
        raise OddDimension('E^r(g) has odd dimension {}'.format(d))
    blocks = block_j0(d) if d else np.zeros((0, 0))

    def field(h):
        bh = minus_space(h, r)
        if bh.shape[1] != d:
            raise ProjectionDegenerate('dimension of E^r(h) changed')
        if not d:
            return np.zeros((h.n, h.n))
        frame, _ = linalg.polar(bh @ (bh.T @ bg))
        return frame @ blocks @ frame.T

    return field


def _rotation_parts(h, r, g, j_field, tol):
    """Ingredients of the SO_m section (hidden)

    Returns:
        Tuple (L, J_h, J_zeta, projector onto E^r(h))
    """

    bh, bg = _chart(h, r, g, tol)
    m = h.n
    d = bh.shape[1]

    if j_field is None:
        j_field = default_j_field(g, r)
    jh = np.asarray(j_field(h), dtype=float)
    proj = bh @ bh.T

    if d:
        UnitaryStructure(bh.T @ jh @ bh, tol=1e-8)
    if np.linalg.norm(jh - proj @ jh @ proj) > 1e-8:
        raise NotUnitaryStructure('J_h does not vanish off E^r(h)')

    # eps(h) = h exp(-pi J_h), and exp(-pi J_h) = -1 on E^r(h)
    eps = h.matrix @ (np.eye(m) - 2 * proj)
    try:
        ell = log_sector(GroupElement(eps, 'SO', tol=1e-8), 0j).matrix
    except EigenvalueOnCut as err:
        raise EigenvalueMinusOne(
            'eps(h) has eigenvalue -1; inconsistent J field ({})'.format(err))

    jz = np.zeros((m, m))
    if d:
        restricted = GroupElement(bh.T @ h.matrix @ bh, 'SO', tol=1e-8)
        _, struct = log_decompose_so(restricted)
        jz = bh @ struct.matrix @ bh.T

    return ell, jh, jz, proj


def son_direct(h, r, g=None, j_field=None, tol=DEFAULT_TOL):
    """Callable t -> exp(t log_0 eps(h)) exp(t pi J_h), evaluated directly"""

    if g is None:
        g = h
    ell, jh, _, _ = _rotation_parts(h, r, g, j_field, tol)
    lev, lvecs, _ = normal_eig(ell)
    jev, jvecs, _ = normal_eig(jh)

    def path(t):
        a = (lvecs * np.exp(t * lev)) @ lvecs.conj().T
        b = (jvecs * np.exp(t * np.pi * jev)) @ jvecs.conj().T
        return (a @ b).real

    return path


def section_son(h, r, g=None, j_field=None, config=None, tol=DEFAULT_TOL):
    """Local section beta_{r,g} of P_pol SO_m -> SO_m on W_r(g).

    beta(t) = exp(t log_0 eps(h)) exp(t pi J_h) with eps(h) = h exp(-pi J_h).
    Writing h on E^r(h) as exp(zeta) with log_0(-h) = zeta - pi J_zeta gives
    beta = exp(t xi) gamma with xi = log_0 eps(h) + pi J_zeta and the loop
    gamma(t) = exp(-t pi J_zeta) exp(t pi J_h) of degree at most 1.

    Arguments:
        h (GroupElement): point of SO_m in W_r(g)
        r (float): wall position in [-1, 1]

    Keyword Arguments:
        g (GroupElement): basepoint of the chart (default h)
        j_field (callable): h -> J_h; default transports J0 blocks from g
        config (TruncationConfig): window of the loop part
    """

    if g is None:
        g = h
    if config is None:
        config = TruncationConfig(16, h.n)
    m = h.n

    ell, jh, jz, proj = _rotation_parts(h, r, g, j_field, tol)
    xi = AlgebraElement(ell + np.pi * jz, 'so', tol=1e-8)

    if not np.any(proj):
        gamma = _identity_loop(m, config)
        return PolynomialPath(xi, gamma, 'SO', 0, tol)

    # cos^2, sin^2 and cos sin of pi t in powers of z
    eye = np.eye(m)
    mixed = (jh - jz) / 4j
    coeffs = {
        0: eye - proj + .5 * proj - .5 * jz @ jh,
        1: .25 * proj + mixed + .25 * jz @ jh,
        -1: .25 * proj - mixed + .25 * jz @ jh,
    }
    gamma = FourierLoop(coeffs, config, shape=(m, m), real=True)
    return PolynomialPath(xi, gamma, 'SO', 1, tol)
