#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Parallel transport along a loop and the polynomial fibre of D.

A connection is represented by its pull-back A along a fixed base loop, so
that the covariant derivative reads D alpha = alpha' + A alpha. The
fundamental solution Phi' = -A Phi, Phi(0) = 1 is integrated with a fixed
step RK4 scheme and projected back onto the group at regular intervals.
"""

import warnings
import numpy as np
import pandas as pd
from scipy import linalg

from .errors import (NotInAlgebra, DimensionMismatch, ModeOutsideWindow,
                     InvariantViolation, TruncationWarning)
from .loops import (FourierLoop, TruncationConfig, constant, evaluate,
                    evaluate_many, shift, derivative, product, adjoint,
                    from_samples, from_function, sample_times)
from .lie import GroupElement, normal_eig

__all__ = [
    'TRANSPORT_TOL', 'MAX_WINDOW', 'LoopConnection', 'parallel_transport',
    'holonomy', 'covariant_derivative', 'gauge_transform', 'block_sum',
    'PolFibreBasis', 'pol_fibre_basis', 'cos_D', 'cos_D_series',
    'cosh_sandwich_residual', 'CircleMap', 'reparametrize',
    'chain_rule_residual', 'fibre_tail', 'subbundle_counterexample_check'
]

# membership threshold for integrated transport operators
TRANSPORT_TOL = 1e-7

# cosh(2 pi k) overflows double precision near k = 113
MAX_WINDOW = 100

FIELDS = ('C', 'R')


def _rk4(phi, a0, am, a1, h):
    """Single RK4 step for Phi' = -A Phi (hidden)"""
    k1 = -a0 @ phi
    k2 = -am @ (phi + .5 * h * k1)
    k3 = -am @ (phi + .5 * h * k2)
    k4 = -a1 @ (phi + h * k3)
    return phi + h / 6. * (k1 + 2. * k2 + 2. * k3 + k4)


def _project(phi):
    """Closest unitary matrix (polar decomposition, hidden)"""
    unitary, _ = linalg.polar(phi)
    return unitary


class LoopConnection(object):
    """Pulled-back connection form along a loop.

    Attributes:
        A (FourierLoop): loop of skew-Hermitian (or real skew) n x n matrices
        field (str): 'C' for unitary, 'R' for orthogonal structure group
        steps (int): RK4 steps per unit interval
        project_every (int): steps between projections onto the group
    """

    def __init__(self, A, field='C', steps=4096, project_every=64, tol=None):
        """Constructor for `LoopConnection` object.

        Arguments:
            A (FourierLoop): connection form, values of shape (n, n)

        Keyword Arguments:
            field (str): 'C' or 'R'
            steps (int): integrator steps per unit interval
            project_every (int): projection interval (in steps)
            tol (float): skewness threshold (default: window tolerance)
        """

        assert field in FIELDS, 'unknown field `{}`'.format(field)
        assert int(steps) > 0, 'steps needs to be positive'
        assert int(project_every) > 0, 'project_every needs to be positive'

        if len(A.shape) != 2 or A.shape[0] != A.shape[1]:
            msg = 'connection form needs square matrix values (got {})'
            raise DimensionMismatch(msg.format(A.shape))
        if tol is None:
            tol = A.config.tol

        values = evaluate_many(A, sample_times(4 * A.config.max_mode + 1))
        scale = max(1., float(np.max(np.abs(values), initial=0.)))
        skew = float(
            np.max(np.abs(values + np.conj(np.transpose(values, (0, 2, 1)))),
                   initial=0.))
        if skew > tol * scale:
            msg = 'connection form is not skew-Hermitian ({:.3e})'
            raise NotInAlgebra(msg.format(skew))
        if field == 'R':
            imag = float(np.max(np.abs(values.imag), initial=0.))
            if imag > tol * scale:
                msg = 'real connection form has imaginary part {:.3e}'
                raise NotInAlgebra(msg.format(imag))

        self.A = A
        self.field = field
        self.steps = int(steps)
        self.project_every = int(project_every)
        self.tol = tol
        self._grid = None

    @classmethod
    def constant(cls, xi, config, field=None, **kwargs):
        """Alternative constructor for a constant connection form"""
        xi = np.asarray(xi, dtype=complex)
        if field is None:
            field = 'R' if np.all(xi.imag == 0) else 'C'
        return cls(constant(xi, config, real=field == 'R'), field, **kwargs)

    @classmethod
    def from_dict(cls, dct, tol=None):
        """Alternative constructor from the connection file format"""
        field = dct.get('field', 'C')
        loop = FourierLoop.from_dict(dct['loop'])
        return cls(loop, field, steps=dct.get('steps', 4096), tol=tol)

    def to_dict(self):
        """Connection file representation"""
        return {
            'field': self.field,
            'steps': self.steps,
            'loop': self.A.to_dict()
        }

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def config(self):
        return self.A.config

    @property
    def group(self):
        return 'SO' if self.field == 'R' else 'U'

    @property
    def grid(self):
        """Fundamental solution on t_i = i / steps, i = 0..steps"""

        if self._grid is None:
            count = self.steps
            h = 1. / count
            values = evaluate_many(self.A, np.linspace(0., 1., 2 * count + 1))
            out = np.empty((count + 1, self.n, self.n), dtype=complex)
            phi = np.eye(self.n, dtype=complex)
            out[0] = phi
            for i in range(count):
                phi = _rk4(phi, values[2 * i], values[2 * i + 1],
                           values[2 * i + 2], h)
                if (i + 1) % self.project_every == 0 or i + 1 == count:
                    phi = _project(phi)
                out[i + 1] = phi
            out.setflags(write=False)
            self._grid = out

        return self._grid

    def frame(self, t):
        """Fundamental solution Phi(t) for any real t.

        Uses Phi(t + 1) = Phi(t) Phi(1) outside the unit interval.
        """

        grid = self.grid
        whole = int(np.floor(t))
        frac = t - whole
        count = self.steps
        i = min(int(frac * count), count - 1)
        h = frac - i / float(count)

        phi = grid[i]
        if h > 0.:
            a0 = evaluate(self.A, i / float(count))
            am = evaluate(self.A, i / float(count) + .5 * h)
            a1 = evaluate(self.A, frac)
            phi = _rk4(phi, a0, am, a1, h)

        if whole:
            hol = grid[-1] if whole > 0 else grid[-1].conj().T
            phi = phi @ np.linalg.matrix_power(hol, abs(whole))
        return phi

    def __repr__(self):
        return 'LoopConnection({}, n={}, N={}, steps={})'.format(
            self.field, self.n, self.config.max_mode, self.steps)


def parallel_transport(conn, t0, t1):
    """Transport operator Phi(t1) Phi(t0)^-1 from t0 to t1"""
    out = conn.frame(t1) @ conn.frame(t0).conj().T
    return GroupElement(out, conn.group, tol=TRANSPORT_TOL)


def holonomy(conn):
    """Holonomy h = Phi(1) around the loop"""
    return parallel_transport(conn, 0., 1.)


def _warn_lost(mass, tol, what):
    if mass > tol:
        warnings.warn('{} lost mass {:.3e} to the window'.format(what, mass),
                      TruncationWarning)


def covariant_derivative(conn, alpha):
    """Covariant derivative D alpha = alpha' + A alpha.

    Arguments:
        conn (LoopConnection): connection along the loop
        alpha (FourierLoop): section with values of shape (n,) or (n, m)

    Returns:
        Tuple of the truncated derivative and the mass lost to the window
    """

    if not alpha.shape or alpha.shape[0] != conn.n:
        msg = 'section of shape {} does not match rank {}'
        raise DimensionMismatch(msg.format(alpha.shape, conn.n))

    acted, lost = product(conn.A, alpha)
    out = derivative(alpha) + acted
    return out, lost


def gauge_transform(conn, u):
    """Connection form seen by u alpha, A -> u A u^-1 - u' u^-1.

    Arguments:
        conn (LoopConnection): connection to transform
        u (FourierLoop): polynomial loop of unitary matrices
    """

    uinv = adjoint(u)
    left, lost1 = product(u, conn.A)
    conj, lost2 = product(left, uinv)
    drift, lost3 = product(derivative(u), uinv)
    _warn_lost(lost1 + lost2 + lost3, conn.tol, 'gauge_transform')

    field = 'R' if conn.field == 'R' and u.real else 'C'
    return LoopConnection(conj - drift, field, conn.steps, conn.project_every,
                          conn.tol)


def block_sum(first, second):
    """Block diagonal connection on the direct sum of two bundles"""

    if first.config.max_mode != second.config.max_mode:
        raise DimensionMismatch('connections live in different windows')

    n1, n2 = first.n, second.n
    config = first.config.replace(dim=n1 + n2)
    coeffs = {}
    for k in set(first.A.modes) | set(second.A.modes):
        block = np.zeros((n1 + n2, n1 + n2), dtype=complex)
        block[:n1, :n1] = first.A.coeff(k)
        block[n1:, n1:] = second.A.coeff(k)
        coeffs[k] = block

    field = 'R' if first.field == second.field == 'R' else 'C'
    form = FourierLoop(coeffs, config, shape=(n1 + n2, n1 + n2),
                       real=first.A.real and second.A.real)
    return LoopConnection(form, field, first.steps, first.project_every,
                          first.tol)


class PolFibreBasis(object):
    """Eigenbasis z^k v_j of D on the polynomial fibre.

    With h w_j = mu_j w_j and s_j = -arg(mu_j) mod 2 pi, the sections
    v_j(t) = Phi(t) exp(i s_j t) w_j are periodic and satisfy
    D (z^k v_j) = i (s_j + 2 pi k) z^k v_j.

    Attributes:
        holonomy (GroupElement): holonomy of the connection
        exponents (numpy.ndarray): s_j in [0, 2 pi)
        vectors (list): FourierLoop v_j for each j
        modes (pandas.DataFrame): mode table over j and |k| <= window
    """

    def __init__(self, conn, window, tol=None):

        window = int(window)
        if window < 0 or window > MAX_WINDOW:
            msg = 'mode window {} lies outside [0, {}]'
            raise ModeOutsideWindow(msg.format(window, MAX_WINDOW))
        if tol is None:
            tol = conn.tol

        self.connection = conn
        self.window = window
        self.tol = tol
        self.holonomy = holonomy(conn)

        evals, vecs, _ = normal_eig(self.holonomy.matrix, tol=TRANSPORT_TOL)
        exps = np.mod(-np.angle(evals), 2 * np.pi)
        exps[exps > 2 * np.pi - tol] = 0.
        order = np.argsort(exps, kind='stable')
        self.exponents = exps[order]
        self.base = vecs[:, order]

        self.vectors = []
        self.vector_overflow = []
        for j, s in enumerate(self.exponents):
            w = self.base[:, j]
            vec = from_function(
                lambda t, w=w, s=s: conn.frame(t) @ w * np.exp(1j * s * t),
                conn.config, real=False, warn=False)
            self.vectors.append(vec)
            self.vector_overflow.append(vec.overflow)

        self.modes = self._tabulate()

    @property
    def n(self):
        return len(self.exponents)

    def eigenvalue(self, j, k):
        """Imaginary part s_j + 2 pi k of the eigenvalue of z^k v_j"""
        return self.exponents[j] + 2 * np.pi * k

    def function(self, j, k):
        """Basis section z^k v_j as a truncated loop"""
        out, _ = shift(self.vectors[j], k)
        return out

    def _tabulate(self):
        """Mode table with eigen relation residuals (hidden)"""

        rows = []
        for j in range(self.n):
            for k in range(-self.window, self.window + 1):
                func, lost = shift(self.vectors[j], k)
                lam = self.eigenvalue(j, k)
                deriv, lost2 = covariant_derivative(self.connection, func)
                res = (deriv - 1j * lam * func).norm() / max(1., abs(lam))
                rows.append({
                    'j': j,
                    'k': k,
                    's': self.exponents[j],
                    'eigenvalue': lam,
                    'cosh': np.cosh(lam),
                    'residual': res,
                    'overflow': lost + lost2 + self.vector_overflow[j],
                })
        return pd.DataFrame(rows)

    def span_matrix(self, degree):
        """Dense coefficient columns of z^k v_j, j-major, |k| <= degree"""
        cols = [
            self.function(j, k).dense().ravel() for j in range(self.n)
            for k in range(-degree, degree + 1)
        ]
        return np.array(cols).T

    def coordinates(self, loop, degree):
        """Least-squares coordinates of a loop in the span at `degree`.

        Returns:
            Tuple of coordinates (n, 2 degree + 1) and relative residual
        """

        span = self.span_matrix(degree)
        target = loop.dense().ravel()
        coords, _, _, _ = np.linalg.lstsq(span, target, rcond=None)
        res = np.linalg.norm(span @ coords - target)
        res /= max(1e-300, np.linalg.norm(target))
        return coords.reshape(self.n, 2 * degree + 1), float(res)

    def synthesize(self, coords):
        """Loop sum_jk c_jk z^k v_j from a coordinate array"""
        coords = np.asarray(coords, dtype=complex)
        degree = (coords.shape[1] - 1) // 2
        out = None
        for j in range(self.n):
            for i, k in enumerate(range(-degree, degree + 1)):
                term = coords[j, i] * self.function(j, k)
                out = term if out is None else out + term
        return out

    def __repr__(self):
        return 'PolFibreBasis(n={}, window={})'.format(self.n, self.window)


def pol_fibre_basis(conn, window):
    """Tabulated eigenbasis of D on the polynomial fibre"""
    return PolFibreBasis(conn, window)


def cos_D(conn, basis, coords):
    """Apply cos(D) in eigencoordinates.

    Coordinate (j, k) is multiplied by cosh(s_j + 2 pi k).

    Arguments:
        conn (LoopConnection): connection the basis belongs to
        basis (PolFibreBasis): tabulated eigenbasis
        coords (numpy.ndarray or dict): array of shape (n, 2K + 1) or map
            (j, k) -> coefficient

    Raises:
        ModeOutsideWindow: for coordinates beyond the tabulated window
    """

    if basis.connection is not conn:
        raise DimensionMismatch('basis was tabulated for another connection')

    if isinstance(coords, dict):
        out = {}
        for (j, k), c in coords.items():
            if abs(k) > basis.window or not 0 <= j < basis.n:
                msg = 'coordinate ({}, {}) outside the tabulated window'
                raise ModeOutsideWindow(msg.format(j, k))
            out[(j, k)] = np.cosh(basis.eigenvalue(j, k)) * c
        return out

    coords = np.asarray(coords, dtype=complex)
    if coords.ndim != 2 or coords.shape[0] != basis.n or \
            coords.shape[1] % 2 == 0:
        raise DimensionMismatch('coordinates need shape (n, 2K + 1)')
    degree = (coords.shape[1] - 1) // 2
    if degree > basis.window:
        msg = 'coordinates reach mode {} (window {})'
        raise ModeOutsideWindow(msg.format(degree, basis.window))

    ks = np.arange(-degree, degree + 1)
    lam = basis.exponents[:, None] + 2 * np.pi * ks[None, :]
    return np.cosh(lam) * coords


def cos_D_series(conn, basis, coords, max_terms=400):
    """Apply cos(D) as the power series sum (-1)^m D^2m / (2m)!.

    D is represented on the span at the coordinate degree by projecting
    D (z^k v_j) back onto the basis; the series is summed until the next
    term no longer changes the result.
    """

    coords = np.asarray(coords, dtype=complex)
    degree = (coords.shape[1] - 1) // 2
    if degree > basis.window:
        msg = 'coordinates reach mode {} (window {})'
        raise ModeOutsideWindow(msg.format(degree, basis.window))

    span = basis.span_matrix(degree)
    images = []
    for j in range(basis.n):
        for k in range(-degree, degree + 1):
            image, _ = covariant_derivative(conn, basis.function(j, k))
            images.append(image.dense().ravel())
    dmat, _, _, _ = np.linalg.lstsq(span, np.array(images).T, rcond=None)
    square = dmat @ dmat

    vec = coords.ravel()
    term = vec.copy()
    total = vec.copy()
    for m in range(1, max_terms + 1):
        term = -(square @ term) / ((2 * m) * (2 * m - 1))
        total = total + term
        if np.linalg.norm(term) <= 1e-17 * np.linalg.norm(total):
            break

    return total.reshape(coords.shape)


def cosh_sandwich_residual(basis):
    """Largest violation of cosh(s) >= cosh(x + s) / e^|x| >= min(e^s, e^-s) / 2"""

    table = basis.modes
    s = table['s'].values
    x = 2 * np.pi * table['k'].values
    middle = np.cosh(x + s) / np.exp(np.abs(x))
    upper = middle - np.cosh(s)
    lower = .5 * np.minimum(np.exp(s), np.exp(-s)) - middle
    scale = np.cosh(s)
    return float(max(0., np.max(upper / scale), np.max(lower / scale)))


class CircleMap(object):
    """Smooth map of the circle t -> degree * t + offset + phase(t).

    Attributes:
        degree (int): winding number, +1 or -1
        offset (float): constant shift
        phase (FourierLoop): real periodic correction (scalar valued)
    """

    def __init__(self, degree=1, offset=0., phase=None, config=None):

        assert degree in (1, -1), 'circle maps need winding number +1 or -1'
        if phase is None:
            if config is None:
                config = TruncationConfig(16, 1)
            phase = FourierLoop({}, config, shape=(), real=True)
        if phase.shape != ():
            raise DimensionMismatch('phase needs to be scalar valued')
        if not phase.real:
            raise InvariantViolation('phase needs to be real valued')

        self.degree = degree
        self.offset = float(offset)
        self.phase = phase

    @classmethod
    def identity(cls, config=None):
        return cls(1, 0., config=config)

    @classmethod
    def rotation(cls, offset, config=None):
        """Rotation t -> t + offset (R_lambda for lambda = exp(2 pi i offset))"""
        return cls(1, offset, config=config)

    @classmethod
    def reflection(cls, config=None):
        """Reflection t -> -t"""
        return cls(-1, 0., config=config)

    @classmethod
    def wobble(cls, eps, config):
        """Diffeomorphism t -> t + eps sin(2 pi t) / 2 pi"""
        amp = eps / (2 * np.pi) / 2j
        phase = FourierLoop({1: amp, -1: -amp}, config, shape=(), real=True)
        return cls(1, 0., phase)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.degree * t + self.offset + np.real(
            evaluate_many(self.phase, np.atleast_1d(t))).reshape(t.shape)

    def velocity(self, t):
        """Derivative sigma'(t)"""
        t = np.asarray(t, dtype=float)
        dphase = evaluate_many(derivative(self.phase), np.atleast_1d(t))
        return self.degree + np.real(dphase).reshape(t.shape)

    def __repr__(self):
        return 'CircleMap(degree={}, offset={}, phase modes={})'.format(
            self.degree, self.offset, self.phase.modes)


def _compose(loop, sigma, times, weight=None):
    """Samples of (loop o sigma) * weight (hidden)"""
    values = evaluate_many(loop, sigma(times))
    if weight is not None:
        values = values * weight.reshape((-1, ) + (1, ) * len(loop.shape))
    return values


def reparametrize(conn, alpha, sigma):
    """Pull back a connection and a section along a circle map.

    Returns:
        Tuple (conn', alpha') with A'(t) = A(sigma(t)) sigma'(t) and
        alpha' = alpha o sigma, resampled at 4 (2N + 1) points
    """

    config = conn.config
    count = 4 * config.size
    times = sample_times(count)
    speed = sigma.velocity(times)

    real = conn.field == 'R'
    form = from_samples(_compose(conn.A, sigma, times, speed), config,
                        real=real, warn=False)
    section = from_samples(_compose(alpha, sigma, times), alpha.config,
                           real=alpha.real, warn=False)

    pulled = LoopConnection(form, conn.field, conn.steps, conn.project_every,
                            conn.tol)
    return pulled, section


def chain_rule_residual(conn, alpha, sigma):
    """Residual of D'(alpha o sigma) = ((D alpha) o sigma) sigma'.

    Both sides are formed in the window of `conn`; the result is relative
    to the norm of the right-hand side.
    """

    pulled, section = reparametrize(conn, alpha, sigma)
    left, _ = covariant_derivative(pulled, section)

    deriv, _ = covariant_derivative(conn, alpha)
    times = sample_times(4 * conn.config.size)
    right = from_samples(
        _compose(deriv, sigma, times, sigma.velocity(times)), alpha.config,
        real=False, warn=False)

    return (left - right).norm() / max(1., right.norm())


def fibre_tail(basis, loop, degree):
    """Relative distance of a loop from span{z^k v_j : |k| <= degree}"""
    _, res = basis.coordinates(loop, degree)
    return res


def _twist_phase(kind, amplitude):
    """Periodic (or integer-linear) twist gamma as a callable (hidden)"""

    if kind == 'zero':
        return lambda t: 0.
    if kind == 'sine':
        return lambda t: amplitude * np.sin(2 * np.pi * t)
    if kind == 'two-mode':
        return lambda t: amplitude * (np.sin(2 * np.pi * t) +
                                      .5 * np.cos(6 * np.pi * t))
    if kind == 'linear':
        # integer slope keeps exp(2 pi i gamma) periodic
        return lambda t: int(amplitude) * t
    raise ValueError('unknown twist `{}`'.format(kind))


def subbundle_counterexample_check(N, tol=1e-9, twist='sine', amplitude=1.,
                                   slack=None, window=None):
    """Line bundle spanned by (1, exp(2 pi i gamma)) / sqrt(2) in C^2.

    A polynomial section of the line is beta (1, exp(2 pi i gamma)) / sqrt(2)
    with both beta and exp(2 pi i gamma) beta polynomial. For beta of degree
    <= N the map beta -> tail of exp(2 pi i gamma) beta beyond N + slack is
    tabulated; its smallest singular value bounds how close any nonzero beta
    comes to a polynomial section.

    Arguments:
        N (int): degree of the candidate loops beta

    Keyword Arguments:
        tol (float): threshold for reporting a mode as non-polynomial
        twist (str): 'zero', 'sine', 'two-mode' or 'linear'
        amplitude (float): amplitude (slope for 'linear')
        slack (int): extra degree allowed for exp(2 pi i gamma) beta
            (default |slope| for 'linear', else 0)
        window (int): Fourier window used for the twist factor

    Returns:
        Tuple of the smallest singular value and a DataFrame with the tail
        norm of exp(2 pi i gamma) z^k for |k| <= N
    """

    if slack is None:
        slack = abs(int(amplitude)) if twist == 'linear' else 0
    if window is None:
        window = max(40, N + 30)
    window = max(window, N + slack + abs(int(amplitude)) + 1)

    config = TruncationConfig(window, 1, tol)
    gamma = _twist_phase(twist, amplitude)
    factor = from_function(lambda t: np.exp(2j * np.pi * gamma(t)), config,
                           real=False, warn=False)

    cutoff = N + slack
    modes = config.modes
    outside = np.abs(modes) > cutoff

    columns = []
    rows = []
    for k in range(-N, N + 1):
        image, lost = shift(factor, k)
        tail = image.dense()[outside]
        columns.append(tail)
        norm = float(np.sqrt(np.sum(np.abs(tail)**2) + lost))
        rows.append({'k': k, 'tail': norm, 'polynomial': norm <= tol})

    operator = np.array(columns).T
    if operator.size:
        smin = float(np.linalg.svd(operator, compute_uv=False).min())
        if operator.shape[0] < operator.shape[1]:
            smin = 0.
    else:
        smin = 0.

    return smin, pd.DataFrame(rows)
