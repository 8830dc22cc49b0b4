#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Truncated Fourier loops.

A loop t -> C^n (or a matrix-valued loop) is stored as a sparse map from
modes k in [-N, N] to coefficients, where the basis loop e^k evaluates to
z^k = exp(2 pi i k t). Operations that can push modes out of the window
return the lost mass (sum of squared coefficient norms) alongside the
truncated result.
"""

import warnings
import numpy as np

from .errors import (InvariantViolation, NotRealLoop, NotUnitModulus,
                     DimensionMismatch, WindowMismatch, ModeOutsideWindow,
                     TooFewSamples, AliasingWarning)

__all__ = [
    'DEFAULT_TOL', 'TruncationConfig', 'FourierLoop', 'constant', 'basis',
    'evaluate', 'evaluate_many', 'rotate', 'involute', 'shift', 'derivative',
    'product', 'adjoint', 'fourier_tail_norm', 'from_samples', 'from_function',
    'sample_times'
]

DEFAULT_TOL = 1e-9


class TruncationConfig(object):
    """Finite Fourier window shared by loops.

    Arguments:
        max_mode (int): largest retained mode N (modes k in [-N, N])
        dim (int): fibre dimension n
        tol (float): default residual threshold
    """

    def __init__(self, max_mode=16, dim=2, tol=DEFAULT_TOL):

        if int(max_mode) < 1:
            raise InvariantViolation(
                'max_mode needs to be at least 1 (got {})'.format(max_mode))
        if int(dim) < 1:
            raise InvariantViolation(
                'dim needs to be at least 1 (got {})'.format(dim))
        if tol < 0:
            raise InvariantViolation('tol needs to be nonnegative')

        self.max_mode = int(max_mode)
        self.dim = int(dim)
        self.tol = float(tol)

    @property
    def modes(self):
        """Array of retained modes"""
        return np.arange(-self.max_mode, self.max_mode + 1)

    @property
    def size(self):
        """Number of retained modes"""
        return 2 * self.max_mode + 1

    def replace(self, **kwargs):
        """Return a copy with some fields replaced"""
        out = {'max_mode': self.max_mode, 'dim': self.dim, 'tol': self.tol}
        out.update(kwargs)
        return TruncationConfig(**out)

    def __eq__(self, other):
        if not isinstance(other, TruncationConfig):
            return NotImplemented
        return (self.max_mode, self.dim, self.tol) == (other.max_mode,
                                                       other.dim, other.tol)

    def __hash__(self):
        return hash((self.max_mode, self.dim, self.tol))

    def __repr__(self):
        return 'TruncationConfig(max_mode={}, dim={}, tol={})'.format(
            self.max_mode, self.dim, self.tol)


class FourierLoop(object):
    """Truncated Laurent series with scalar, vector or matrix coefficients.

    Attributes:
        config (TruncationConfig): window the loop lives in
        shape (tuple): shape of a single value; (), (n,) or (n, n)
        real (bool): loop takes real values, i.e. c(-k) = conj(c(k))
        overflow (float): accumulated mass lost to the window
    """

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, coeffs, config, shape=None, real=False, overflow=0.):
        """Constructor for `FourierLoop` object.

        Arguments:
            coeffs (dict): map from mode k to coefficient (absent = zero)
            config (TruncationConfig): finite window

        Keyword Arguments:
            shape (tuple): value shape; inferred from coefficients if omitted
            real (bool): flag the loop as real-valued (checked)
            overflow (float): mass already lost to truncation
        """

        nmax = config.max_mode
        data = {}
        for k, value in dict(coeffs).items():
            k = int(k)
            if abs(k) > nmax:
                msg = 'mode {} lies outside the window [-{}, {}]'
                raise ModeOutsideWindow(msg.format(k, nmax, nmax))
            arr = np.array(value, dtype=complex)
            if shape is None:
                shape = arr.shape
            elif arr.shape != tuple(shape):
                msg = 'coefficient of mode {} has shape {} (expected {})'
                raise DimensionMismatch(msg.format(k, arr.shape, shape))
            arr.setflags(write=False)
            data[k] = arr

        if shape is None:
            shape = (config.dim, )

        self.config = config
        self.shape = tuple(shape)
        self.overflow = float(overflow)
        self._coeffs = data
        self.real = bool(real)

        if self.real:
            residual = self.reality_residual()
            if residual > config.tol * max(1., self.norm()):
                msg = 'loop flagged real violates c(-k) = conj(c(k)) by {:.3e}'
                raise NotRealLoop(msg.format(residual))

    @classmethod
    def from_dense(cls, array, config, real=False, overflow=0.):
        """Alternative constructor from a dense coefficient array.

        Arguments:
            array (numpy.ndarray): coefficients of modes -N..N along axis 0
            config (TruncationConfig): finite window
        """

        array = np.asarray(array, dtype=complex)
        if array.shape[0] != config.size:
            msg = 'dense array holds {} modes (window needs {})'
            raise WindowMismatch(msg.format(array.shape[0], config.size))

        coeffs = {
            int(k): array[i]
            for i, k in enumerate(config.modes) if np.any(array[i] != 0)
        }
        return cls(coeffs, config, shape=array.shape[1:], real=real,
                   overflow=overflow)

    @classmethod
    def from_dict(cls, dct, tol=DEFAULT_TOL):
        """Alternative constructor from the loop file format"""

        msg = 'missing entry `{}` in loop file'
        for key in ['dim', 'max_mode', 'modes']:
            assert key in dct, msg.format(key)

        shape = tuple(dct.get('shape', [dct['dim']]))
        config = TruncationConfig(dct['max_mode'], dct['dim'], tol)
        coeffs = {}
        for k, pairs in dct['modes'].items():
            pairs = np.array(pairs, dtype=float).reshape(-1, 2)
            coeffs[int(k)] = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(shape)

        return cls(coeffs, config, shape=shape, real=dct.get('real', False))

    def to_dict(self):
        """Loop file representation (row-major [re, im] pairs per mode)"""

        out = {
            'dim': self.shape[0] if self.shape else 1,
            'max_mode': self.config.max_mode,
            'real': self.real,
        }
        if self.shape != (out['dim'], ):
            out['shape'] = list(self.shape)

        modes = {}
        for k in self.modes:
            flat = np.ravel(self._coeffs[k])
            modes[str(k)] = [[float(c.real), float(c.imag)] for c in flat]
        out['modes'] = modes

        return out

    @property
    def modes(self):
        """Sorted list of stored modes"""
        return sorted(self._coeffs)

    @property
    def degree(self):
        """Largest |k| carrying a nonzero coefficient"""
        nonzero = [abs(k) for k, c in self._coeffs.items() if np.any(c != 0)]
        return max(nonzero) if nonzero else 0

    def coeff(self, k):
        """Coefficient of mode k (zero if absent)"""
        if k in self._coeffs:
            return self._coeffs[k]
        return np.zeros(self.shape, dtype=complex)

    def items(self):
        for k in self.modes:
            yield k, self._coeffs[k]

    def dense(self):
        """Dense coefficient array, modes -N..N along axis 0"""
        out = np.zeros((self.config.size, ) + self.shape, dtype=complex)
        nmax = self.config.max_mode
        for k, c in self._coeffs.items():
            out[k + nmax] = c
        return out

    def norm(self):
        """L2 norm of the coefficient sequence"""
        return float(
            np.sqrt(sum(np.sum(np.abs(c)**2) for c in self._coeffs.values())))

    def reality_residual(self):
        """Largest violation of c(-k) = conj(c(k))"""
        res = 0.
        for k in set(self._coeffs) | set(-k for k in self._coeffs):
            diff = self.coeff(-k) - np.conj(self.coeff(k))
            res = max(res, float(np.max(np.abs(diff), initial=0.)))
        return res

    def _like(self, coeffs, real=None, overflow=None, shape=None):
        """Create loop in the same window (hidden)"""
        if real is None:
            real = self.real
        if overflow is None:
            overflow = self.overflow
        if shape is None:
            shape = self.shape
        return FourierLoop(coeffs, self.config, shape=shape, real=real,
                           overflow=overflow)

    def __add__(self, other):
        if not isinstance(other, FourierLoop):
            return NotImplemented
        _check_window(self, other)
        if self.shape != other.shape:
            msg = 'cannot add loops of shape {} and {}'
            raise DimensionMismatch(msg.format(self.shape, other.shape))
        coeffs = dict(self._coeffs)
        for k, c in other.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return self._like(coeffs, real=self.real and other.real,
                          overflow=self.overflow + other.overflow)

    def __neg__(self):
        return self._like({k: -c for k, c in self.items()})

    def __sub__(self, other):
        if not isinstance(other, FourierLoop):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, FourierLoop):
            return NotImplemented
        real = self.real and np.isreal(scalar)
        return self._like({k: scalar * c for k, c in self.items()}, real=real)

    __rmul__ = __mul__

    def __repr__(self):
        return 'FourierLoop(modes={}, shape={}, N={})'.format(
            self.modes, self.shape, self.config.max_mode)


def _check_window(f, g):
    """Ensure that loops share a window (hidden)"""
    if f.config.max_mode != g.config.max_mode:
        msg = 'loops live in different windows (N = {} and {})'
        raise WindowMismatch(msg.format(f.config.max_mode, g.config.max_mode))


def constant(value, config, real=None):
    """Constant loop with the given value"""
    value = np.asarray(value, dtype=complex)
    if real is None:
        real = bool(np.all(value.imag == 0))
    return FourierLoop({0: value}, config, shape=value.shape, real=real)


def basis(p, config, value=1.):
    """Basis loop e^p (times a constant value)"""
    value = np.asarray(value, dtype=complex)
    return FourierLoop({p: value}, config, shape=value.shape)


def sample_times(count):
    """Equispaced times on [0, 1)"""
    return np.arange(count) / float(count)


def evaluate(loop, t):
    """Evaluate sum_k coeff(k) exp(2 pi i k t)"""
    out = np.zeros(loop.shape, dtype=complex)
    for k, c in loop.items():
        out = out + c * np.exp(2j * np.pi * k * t)
    if out.shape == ():
        return complex(out)
    return out


def evaluate_many(loop, times):
    """Evaluate a loop on an array of times.

    Returns:
        Array of shape (len(times),) + loop.shape
    """

    times = np.asarray(times, dtype=float)
    modes = loop.modes
    if not modes:
        return np.zeros(times.shape + loop.shape, dtype=complex)

    phases = np.exp(2j * np.pi * np.outer(times, modes))
    stack = np.array([loop.coeff(k) for k in modes])
    return np.tensordot(phases, stack, axes=(1, 0))


def rotate(loop, lam, tol=None):
    """Rotation R_lam e^p = lam^p e^p"""

    if tol is None:
        tol = loop.config.tol
    lam = complex(lam)
    if abs(abs(lam) - 1.) > tol:
        raise NotUnitModulus('|lambda| = {!r} is not 1'.format(abs(lam)))

    real = loop.real and abs(lam.imag) <= tol
    return loop._like({k: lam**k * c for k, c in loop.items()}, real=real)


def involute(loop):
    """Reversal e^p -> e^{-p}"""
    return loop._like({-k: c for k, c in loop.items()})


def shift(loop, q):
    """Multiplication by z^q.

    Returns:
        Tuple of shifted loop and the mass pushed outside the window
    """

    nmax = loop.config.max_mode
    coeffs = {}
    lost = 0.
    for k, c in loop.items():
        if abs(k + q) <= nmax:
            coeffs[k + q] = c
        else:
            lost += float(np.sum(np.abs(c)**2))

    out = loop._like(coeffs, real=loop.real and q == 0,
                     overflow=loop.overflow + lost)
    return out, lost


def derivative(loop):
    """Derivative d/dt acting by 2 pi i k on mode k"""
    return loop._like({k: 2j * np.pi * k * c for k, c in loop.items()})


def _compose_shape(f, g):
    """Value shape of the pointwise product (hidden)"""

    if f.shape == ():
        return g.shape
    if g.shape == ():
        return f.shape
    if len(f.shape) == 2 and f.shape[1] == g.shape[0]:
        return f.shape[:1] + g.shape[1:]

    msg = 'cannot multiply loops of shape {} and {}'
    raise DimensionMismatch(msg.format(f.shape, g.shape))


def product(f, g):
    """Pointwise product of loops (truncated Cauchy product).

    Arguments:
        f (FourierLoop): scalar- or matrix-valued loop
        g (FourierLoop): loop whose values f acts on

    Returns:
        Tuple of truncated product and the mass outside the window
    """

    _check_window(f, g)
    shape = _compose_shape(f, g)
    nmax = f.config.max_mode

    if f.shape == () or g.shape == ():
        mult = np.multiply
    else:
        mult = np.matmul

    full = {}
    for k1, c1 in f.items():
        for k2, c2 in g.items():
            val = mult(c1, c2)
            k = k1 + k2
            full[k] = full[k] + val if k in full else val

    coeffs = {k: c for k, c in full.items() if abs(k) <= nmax}
    lost = sum(
        float(np.sum(np.abs(c)**2)) for k, c in full.items() if abs(k) > nmax)

    out = FourierLoop(coeffs, f.config, shape=shape, real=f.real and g.real,
                      overflow=f.overflow + g.overflow + lost)
    return out, lost


def adjoint(loop):
    """Pointwise conjugate transpose t -> loop(t)^*"""

    if len(loop.shape) == 2:
        coeffs = {-k: np.conj(c).T for k, c in loop.items()}
    else:
        coeffs = {-k: np.conj(c) for k, c in loop.items()}
    shape = loop.shape[::-1] if len(loop.shape) == 2 else loop.shape
    return loop._like(coeffs, shape=shape)


def fourier_tail_norm(loop, degree):
    """Norm of all coefficients with |k| > degree.

    A loop counts as polynomial of degree <= K when this is below tol.
    """

    nmax = loop.config.max_mode
    if degree < 0 or degree > nmax:
        msg = 'degree {} lies outside [0, {}]'
        raise ModeOutsideWindow(msg.format(degree, nmax))

    tail = sum(
        float(np.sum(np.abs(c)**2)) for k, c in loop.items()
        if abs(k) > degree)
    return float(np.sqrt(tail))


def from_samples(samples, config, real=None, warn=True):
    """Discrete Fourier transform of equispaced samples.

    Arguments:
        samples (array): values at t_m = m/M along axis 0
        config (TruncationConfig): target window

    Keyword Arguments:
        real (bool): flag result as real (default: real input)
        warn (bool): warn when energy falls outside the window or the
            sample count is below 4N+1

    Returns:
        FourierLoop whose `overflow` holds the out-of-band mass
    """

    samples = np.asarray(samples)
    count = samples.shape[0]
    nmax = config.max_mode
    if count < 2 * nmax + 1:
        msg = '{} samples cannot resolve modes up to {} (need {})'
        raise TooFewSamples(msg.format(count, nmax, 2 * nmax + 1))

    if real is None:
        real = not np.iscomplexobj(samples)

    spectrum = np.fft.fft(samples.astype(complex), axis=0) / count
    bins = np.mod(config.modes, count)
    inband = np.zeros(count, dtype=bool)
    inband[bins] = True
    lost = float(np.sum(np.abs(spectrum[~inband])**2))

    coeffs = {int(k): spectrum[b] for k, b in zip(config.modes, bins)}
    if real:
        for k in range(1, nmax + 1):
            avg = .5 * (coeffs[k] + np.conj(coeffs[-k]))
            coeffs[k] = avg
            coeffs[-k] = np.conj(avg)
        coeffs[0] = coeffs[0].real + 0j

    if warn and lost > config.tol:
        msg = 'out-of-band mass {:.3e} at {} samples (window N = {})'
        warnings.warn(msg.format(lost, count, nmax), AliasingWarning)
    elif warn and count < 4 * nmax + 1:
        # content above N folds into the window without leaving a trace
        msg = '{} samples below the alias-free count 4N+1 = {}'
        warnings.warn(msg.format(count, 4 * nmax + 1), AliasingWarning)

    return FourierLoop(coeffs, config, shape=samples.shape[1:], real=real,
                       overflow=lost)


def from_function(func, config, count=None, real=None, warn=True):
    """Sample a callable t -> value and transform.

    Uses 4N+1 samples unless `count` is given.
    """

    if count is None:
        count = 4 * config.max_mode + 1
    values = np.array([func(t) for t in sample_times(count)])
    return from_samples(values, config, real=real, warn=warn)
