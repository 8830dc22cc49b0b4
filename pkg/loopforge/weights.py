#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Weight sequences and the weighted dual of the loop space.

A symmetric positive sequence (a_p) defines the diagonal inner product
(b, c) -> sum_p b^p conj(c^p) a_p on finitely supported dual vectors. The
action of the loop z^q sends e_p to e_{p-q}.
"""

import numpy as np
import pandas as pd
from scipy import linalg

from .errors import (InvariantViolation, NotUnitModulus, DimensionMismatch,
                     WindowMismatch, ModeOutsideWindow)
from .loops import DEFAULT_TOL, TruncationConfig, FourierLoop

__all__ = [
    'WeightSequence', 'DualVector', 'inner_product', 'equivalence_check',
    'z_operator_norm', 'weighted_shift_matrix', 'cone_combine', 'diamond',
    'pairing', 'polarisation_J', 'loop_operator', 'commutator_hs_norm',
    'commutator_rank', 'loop_operator_norm_bound', 'zeta_homotopy',
    'unbounded_growth_witness', 'gram_matrix', 'weights_from_form',
    'rotate_dual', 'involute_dual', 'norm', 'zeta_polar'
]

FAMILIES = ('geometric', 'cosh', 'mixture', 'custom')


class WeightSequence(object):
    """Positive symmetric weights a_p for |p| <= N.

    Attributes:
        values (numpy.ndarray): a_{-N}, ..., a_N
        family (str): decay family ('geometric', 'cosh', 'mixture', 'custom')
        rho (float): ratio of a geometric family
        scale (float): prefactor of a geometric family
        rate (float): asymptotic ratio a_p / a_{p+1}; None if unknown
    """

    def __init__(self, values, family='custom', rho=None, scale=1.,
                 rate=None, tol=DEFAULT_TOL):

        assert family in FAMILIES, 'unknown decay family `{}`'.format(family)

        values = np.array(values, dtype=float)
        if values.ndim != 1 or len(values) % 2 == 0:
            raise DimensionMismatch('weights need 2N + 1 entries')
        if np.any(values <= 0.):
            raise InvariantViolation('weights need to be positive')
        asym = np.max(np.abs(values - values[::-1]) / values)
        if asym > tol:
            msg = 'weights violate a_p = a_(-p) by {:.3e}'
            raise InvariantViolation(msg.format(asym))

        if family == 'geometric':
            assert rho is not None and rho > 1., 'geometric family needs rho > 1'
            rate = rho

        values.setflags(write=False)
        self.values = values
        self.family = family
        self.rho = rho
        self.scale = float(scale)
        self.rate = rate

    @classmethod
    def geometric(cls, rho, N, scale=1.):
        """a_p = scale * rho^-|p|"""
        p = np.arange(-N, N + 1)
        return cls(scale * float(rho)**(-np.abs(p)), 'geometric', rho=rho,
                   scale=scale)

    @classmethod
    def cosh_family(cls, N):
        """a_p = cosh(2 pi p)^-2, the weights produced by cos(D) at s = 0"""
        p = np.arange(-N, N + 1)
        return cls(np.cosh(2 * np.pi * p)**-2, 'cosh',
                   rate=np.exp(4 * np.pi))

    @classmethod
    def from_dict(cls, dct):
        """Alternative constructor from the weight file format"""
        for key in ['family', 'N', 'values']:
            assert key in dct, 'missing entry `{}` in weight file'.format(key)
        values = np.asarray(dct['values'], dtype=float)
        assert len(values) == 2 * dct['N'] + 1, 'weight file holds wrong count'
        family = dct['family']
        rho = dct.get('rho')
        scale = float(values[dct['N']]) if family == 'geometric' else 1.
        return cls(values, family, rho=rho, scale=scale)

    def to_dict(self):
        out = {'family': self.family, 'N': self.N,
               'values': [float(v) for v in self.values]}
        if self.rho is not None:
            out['rho'] = float(self.rho)
        return out

    @property
    def N(self):
        return (len(self.values) - 1) // 2

    @property
    def modes(self):
        return np.arange(-self.N, self.N + 1)

    @property
    def extrapolable(self):
        """Decay family known beyond the window"""
        return self.rate is not None

    def __getitem__(self, p):
        if abs(p) > self.N:
            raise ModeOutsideWindow('mode {} outside window {}'.format(
                p, self.N))
        return self.values[p + self.N]

    def decay_bound(self, m):
        """Window sup of a_p (1 + |p|)^m"""
        return float(np.max(self.values * (1. + np.abs(self.modes))**m))

    def __repr__(self):
        return 'WeightSequence({}, N={})'.format(self.family, self.N)


class DualVector(object):
    """Finitely supported dual vector b = (b^p), |p| <= N.

    Coefficients are stored with shape (2N + 1,) or (2N + 1, n).
    """

    __array_ufunc__ = None

    def __init__(self, coeffs, bound=None):

        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.ndim not in (1, 2) or coeffs.shape[0] % 2 == 0:
            raise DimensionMismatch('dual vectors need 2N + 1 modes')
        coeffs.setflags(write=False)
        self.coeffs = coeffs

        mags = np.abs(coeffs).reshape(len(coeffs), -1).max(axis=1)
        if bound is None:
            bound = max(1., mags[self.N])
        self.bound = float(bound)
        self.growth = self._certificate(mags)

    def _certificate(self, mags):
        """Smallest m with |b^p| (1 + |p|)^-m <= bound (hidden)"""
        m = 0
        for p, mag in zip(self.modes, mags):
            if p and mag > self.bound:
                need = np.log(mag / self.bound) / np.log(1. + abs(p))
                m = max(m, int(np.ceil(need - 1e-12)))
        return m

    @classmethod
    def basis(cls, p, N, n=None):
        """Dual basis vector e_p"""
        shape = (2 * N + 1, ) if n is None else (2 * N + 1, n)
        out = np.zeros(shape, dtype=complex)
        out[p + N] = 1.
        return cls(out)

    @property
    def N(self):
        return (len(self.coeffs) - 1) // 2

    @property
    def modes(self):
        return np.arange(-self.N, self.N + 1)

    def __add__(self, other):
        _check_window(self, other)
        return DualVector(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_window(self, other)
        return DualVector(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return DualVector(scalar * self.coeffs)

    __rmul__ = __mul__

    def __repr__(self):
        return 'DualVector(N={}, growth={})'.format(self.N, self.growth)


def _check_window(*items):
    """Ensure that sequences share a window (hidden)"""
    sizes = set(item.N for item in items)
    if len(sizes) > 1:
        msg = 'sequences live in different windows ({})'
        raise WindowMismatch(msg.format(sorted(sizes)))


def inner_product(b, c, a):
    """Weighted inner product sum_p b^p conj(c^p) a_p"""
    _check_window(b, c, a)
    if b.coeffs.shape != c.coeffs.shape:
        raise DimensionMismatch('dual vectors of different shape')
    prod = b.coeffs * np.conj(c.coeffs)
    if prod.ndim == 2:
        prod = prod.sum(axis=1)
    return complex(np.sum(prod * a.values))


def norm(b, a):
    """Weighted norm of a dual vector"""
    return float(np.sqrt(inner_product(b, b, a).real))


def equivalence_check(a, b, tol=1e-9):
    """Compare the completions defined by two weight sequences.

    Returns:
        dict with window constants (sup a/b, sup b/a), an `equivalent`
        verdict and whether the verdict extrapolates beyond the window
    """

    _check_window(a, b)
    ratio = a.values / b.values
    constants = (float(np.max(ratio)), float(np.max(1. / ratio)))

    extrapolable = a.extrapolable and b.extrapolable
    if extrapolable:
        equivalent = abs(np.log(a.rate) - np.log(b.rate)) <= tol
    else:
        equivalent = bool(np.all(np.isfinite(constants)))

    return {
        'equivalent': bool(equivalent),
        'constants': constants,
        'extrapolable': extrapolable
    }


def weighted_shift_matrix(a, q):
    """Matrix of z^q in the orthonormal basis e_p / sqrt(a_p).

    Column p holds sqrt(a_{p-q} / a_p) in row p - q; columns whose image
    leaves the window are zero.
    """

    N = a.N
    size = 2 * N + 1
    out = np.zeros((size, size))
    for p in range(-N, N + 1):
        if abs(p - q) <= N:
            out[p - q + N, p + N] = np.sqrt(a[p - q] / a[p])
    return out


def _window_sup(a, q):
    """sup over the window of a_p / a_{p+q} (hidden)"""
    N = a.N
    ps = [p for p in range(-N, N + 1) if abs(p + q) <= N]
    return max(a[p] / a[p + q] for p in ps)


def z_operator_norm(a, q):
    """Operator norm of z^q, sqrt(sup_p a_p / a_{p+q}).

    Geometric families use the closed form rho^(|q|/2) for |q| <= N.
    """

    q = int(q)
    if abs(q) > 2 * a.N:
        msg = 'shift {} exceeds the window 2N = {}'
        raise ModeOutsideWindow(msg.format(q, 2 * a.N))
    if q == 0:
        return 1.
    if a.family == 'geometric' and abs(q) <= a.N:
        return float(a.rho**(abs(q) / 2.))
    return float(np.sqrt(_window_sup(a, q)))


def cone_combine(a, b, s, t):
    """Positive combination s a + t b of two weight sequences"""

    _check_window(a, b)
    if s < 0 or t < 0 or s + t == 0:
        raise InvariantViolation('cone coefficients need s, t >= 0, s + t > 0')

    if t == 0:
        return WeightSequence(s * a.values, a.family, rho=a.rho,
                              scale=s * a.scale, rate=a.rate)
    if s == 0:
        return WeightSequence(t * b.values, b.family, rho=b.rho,
                              scale=t * b.scale, rate=b.rate)

    values = s * a.values + t * b.values
    if a.family == b.family == 'geometric' and a.rho == b.rho:
        return WeightSequence(values, 'geometric', rho=a.rho,
                              scale=s * a.scale + t * b.scale)

    # slower decay dominates the tail
    rate = None
    if a.extrapolable and b.extrapolable:
        rate = min(a.rate, b.rate)
    return WeightSequence(values, 'mixture' if rate else 'custom', rate=rate)


def diamond(c, a):
    """Loop conj(c) <> gamma_a, with coefficient conj(c^p) a_p at mode -p"""

    _check_window(c, a)
    N = a.N
    shape = c.coeffs.shape[1:]
    config = TruncationConfig(max(N, 1), shape[0] if shape else 1)
    coeffs = {}
    for p in range(-N, N + 1):
        val = np.conj(c.coeffs[p + N]) * a[p]
        if np.any(val != 0):
            coeffs[-p] = val
    return FourierLoop(coeffs, config, shape=shape)


def pairing(b, loop):
    """Evaluate the dual vector b on a loop: sum_p b^p loop_{-p}"""

    N = b.N
    total = 0j
    for p in range(-N, N + 1):
        if abs(p) <= loop.config.max_mode:
            total += np.sum(b.coeffs[p + N] * loop.coeff(-p))
    return complex(total)


def _j_phases(N):
    """Diagonal of J: -i for p >= 0, +i for p < 0 (hidden)"""
    p = np.arange(-N, N + 1)
    return np.where(p >= 0, -1j, 1j)


def polarisation_J(x):
    """Polarisation J e_p = -(-1)^sign(p) i e_p with sign(0) = 0"""
    phases = _j_phases(x.N)
    if x.coeffs.ndim == 2:
        phases = phases[:, None]
    return DualVector(phases * x.coeffs)


def loop_operator(A, a=None, N=None):
    """Truncated action of a matrix loop A = sum_q A_q z^q on dual vectors.

    Indices run over (p, j) as (p + N) n + j. With weights given, the matrix
    is expressed in the orthonormal basis e_p / sqrt(a_p).
    """

    if len(A.shape) != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch('loop operator needs square matrix values')
    if a is not None:
        N = a.N
    assert N is not None, 'window needs to be specified'

    n = A.shape[0]
    size = 2 * N + 1
    out = np.zeros((size * n, size * n), dtype=complex)
    for q, coeff in A.items():
        for p in range(-N, N + 1):
            if abs(p - q) <= N:
                row = (p - q + N) * n
                col = (p + N) * n
                out[row:row + n, col:col + n] += coeff

    if a is not None:
        root = np.repeat(np.sqrt(a.values), n)
        out = root[:, None] * out / root[None, :]
    return out


def _commutator_with_J(A, a=None, N=None):
    """Matrix of [A, J] (hidden)"""
    mat = loop_operator(A, a, N)
    if a is not None:
        N = a.N
    phases = np.repeat(_j_phases(N), A.shape[0])
    return mat * phases[None, :] - phases[:, None] * mat


def commutator_hs_norm(A, a):
    """Hilbert-Schmidt norm of [A, J] on the weighted space"""
    return float(np.linalg.norm(_commutator_with_J(A, a)))


def commutator_rank(A, a, tol=1e-9):
    """Numerical rank of [A, J]"""
    comm = _commutator_with_J(A, a)
    return int(np.linalg.matrix_rank(comm, tol=tol * max(1., np.abs(comm).max(
        initial=0.))))


def loop_operator_norm_bound(A, a):
    """Operator norm of A and the bound sum_q |z^q| |A_q|.

    Returns:
        Tuple (norm, bound)
    """

    op = np.linalg.norm(loop_operator(A, a), 2)
    bound = sum(
        z_operator_norm(a, q) * np.linalg.norm(coeff, 2)
        for q, coeff in A.items())
    return float(op), float(bound)


def zeta_homotopy(a, t, compressed=False):
    """Matrix of zeta_t e_p = (a_{p-1} / a_p)^(t / 2) e_{p-1}.

    zeta_0 is the shift z and zeta_1 = T z T^-1 with T e_p = sqrt(a_p) e_p.
    The compressed form maps modes [-N + 1, N] onto [-N, N - 1] and is
    square and invertible.
    """

    N = a.N
    size = 2 * N + 1
    out = np.zeros((size, size))
    for p in range(-N + 1, N + 1):
        out[p - 1 + N, p + N] = (a[p - 1] / a[p])**(t / 2.)
    if compressed:
        return out[:-1, 1:]
    return out


def zeta_polar(a):
    """Polar decomposition (unitary, positive) of the compressed zeta_1"""
    return linalg.polar(zeta_homotopy(a, 1., compressed=True))


def unbounded_growth_witness(a, qmax):
    """Table of |z^q| for q = 0..qmax.

    Returns:
        pandas.DataFrame with columns q, norm, norm_sq and `increasing`
    """

    if qmax > 2 * a.N:
        msg = 'qmax {} exceeds the window 2N = {}'
        raise ModeOutsideWindow(msg.format(qmax, 2 * a.N))

    norms = [z_operator_norm(a, q) for q in range(qmax + 1)]
    rows = []
    for q, value in enumerate(norms):
        rows.append({
            'q': q,
            'norm': value,
            'norm_sq': value**2,
            'increasing': bool(q == 0 or value > norms[q - 1])
        })
    return pd.DataFrame(rows)


def gram_matrix(a):
    """Gram matrix of the inner product in the basis e_p"""
    return np.diag(a.values).astype(complex)


def weights_from_form(gram, tol=DEFAULT_TOL):
    """Weight sequence of a circle- and involution-invariant form.

    Raises:
        InvariantViolation: if the form is not diagonal, positive and
            symmetric under p -> -p
    """

    gram = np.asarray(gram, dtype=complex)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1] or \
            gram.shape[0] % 2 == 0:
        raise DimensionMismatch('form needs shape (2N + 1, 2N + 1)')

    diag = np.diag(gram)
    scale = max(1., float(np.max(np.abs(diag))))
    off = np.abs(gram - np.diag(diag)).max(initial=0.)
    if off > tol * scale:
        msg = 'form is not circle invariant (off-diagonal {:.3e})'
        raise InvariantViolation(msg.format(off))
    if np.max(np.abs(diag.imag)) > tol * scale:
        raise InvariantViolation('form is not hermitian')
    return WeightSequence(diag.real, 'custom', tol=tol)


def rotate_dual(b, lam, tol=DEFAULT_TOL):
    """Circle action R_lam e_p = lam^p e_p"""
    lam = complex(lam)
    if abs(abs(lam) - 1.) > tol:
        raise NotUnitModulus('|lambda| = {!r} is not 1'.format(abs(lam)))
    phases = lam**b.modes.astype(float)
    if b.coeffs.ndim == 2:
        phases = phases[:, None]
    return DualVector(phases * b.coeffs)


def involute_dual(b):
    """Involution e_p -> e_{-p}"""
    return DualVector(b.coeffs[::-1])
