#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Truncated fermionic Fock space over a polarised one-particle space.

One-particle vectors are complex arrays over the modes (j, k), j < n,
|k| <= K, flattened as j (2K + 1) + k + K. Fock states are finite sums of
wedge products of basis modes, stored by strictly increasing mode tuples.
"""

import itertools
import numpy as np
from scipy import sparse

from .errors import (InvariantViolation, NotPolarising, NotUnitModulus,
                     DimensionMismatch, WindowMismatch)
from .lie import block_j0
from .weights import DualVector

__all__ = [
    'ModeSpace', 'FockVector', 'create', 'annihilate', 'clifford',
    'FockSpace', 'car_check', 'PolarisingOperator', 'standard_polarisation',
    'standard_unitary_structure', 'polarisation_compare', 'RotationOperator',
    'implement_rotation', 'finite_rank_clifford_extension'
]


class ModeSpace(object):
    """One-particle space spanned by e_(j, k) with weights w_(j, k).

    Arguments:
        n (int): number of components j
        K (int): mode window, |k| <= K

    Keyword Arguments:
        weights (WeightSequence): weights a_k shared by all components;
            standard L2 weights (a = 1) if omitted
    """

    def __init__(self, n, K, weights=None):

        assert n > 0 and K >= 0, 'mode space needs n > 0 and K >= 0'
        self.n = int(n)
        self.K = int(K)

        if weights is None:
            per_mode = np.ones(2 * self.K + 1)
        else:
            if weights.N != self.K:
                msg = 'weights hold window {} (mode space has {})'
                raise WindowMismatch(msg.format(weights.N, self.K))
            per_mode = np.asarray(weights.values, dtype=float)
        self.weights = np.tile(per_mode, self.n)
        self.weights.setflags(write=False)

    @property
    def size(self):
        return self.n * (2 * self.K + 1)

    @property
    def labels(self):
        """Mode labels (j, k) in index order"""
        return [(j, k) for j in range(self.n)
                for k in range(-self.K, self.K + 1)]

    @property
    def ks(self):
        """Mode number k of every index"""
        return np.tile(np.arange(-self.K, self.K + 1), self.n)

    def index(self, j, k):
        if not 0 <= j < self.n or abs(k) > self.K:
            raise DimensionMismatch('mode ({}, {}) outside the space'.format(
                j, k))
        return j * (2 * self.K + 1) + k + self.K

    def basis(self, j, k):
        out = np.zeros(self.size, dtype=complex)
        out[self.index(j, k)] = 1.
        return out

    def check(self, v):
        v = np.asarray(v, dtype=complex)
        if v.shape != (self.size, ):
            msg = 'one-particle vector of shape {} (expected ({},))'
            raise DimensionMismatch(msg.format(v.shape, self.size))
        return v

    def inner(self, u, v):
        """Hermitian inner product sum_m u_m conj(v_m) w_m"""
        return complex(np.sum(self.check(u) * np.conj(self.check(v)) *
                              self.weights))

    def norm(self, v):
        return float(np.sqrt(self.inner(v, v).real))

    def riesz(self, f):
        """Vector r with <x, r> = f(x) for a functional f.

        Arguments:
            f (DualVector or array): coefficients f^m, either flat over
                modes or shaped (2K + 1, n)
        """

        if isinstance(f, DualVector):
            f = f.coeffs
        f = np.asarray(f, dtype=complex)
        if f.ndim == 2:
            f = f.T.ravel()
        elif self.n > 1 and f.shape == (2 * self.K + 1, ):
            raise DimensionMismatch('functional needs one column per component')
        return np.conj(self.check(f)) / self.weights

    def dual_of(self, v):
        """Functional x -> <x, v> as a DualVector of shape (2K + 1, n)"""
        flat = np.conj(self.check(v)) * self.weights
        return DualVector(flat.reshape(self.n, 2 * self.K + 1).T)

    def rotate(self, v, lam):
        """Rotation R_lam e_(j, k) = lam^k e_(j, k)"""
        return self.check(v) * complex(lam)**self.ks.astype(float)

    def __repr__(self):
        return 'ModeSpace(n={}, K={})'.format(self.n, self.K)


def _check_tuple(key):
    """Validate a canonical mode tuple (hidden)"""
    key = tuple(int(m) for m in key)
    if any(a >= b for a, b in zip(key, key[1:])):
        raise InvariantViolation('mode tuple {} not strictly increasing'.format(
            key))
    return key


class FockVector(object):
    """Finite sum of wedge products of basis modes.

    Attributes:
        amps (dict): strictly increasing mode tuples -> complex amplitude
        cap (int): particle cap P
        overflow (float): squared amplitude dropped at the cap
    """

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, amps=None, cap=8, overflow=0.):

        data = {}
        for key, amp in dict(amps or {}).items():
            key = _check_tuple(key)
            if len(key) > cap:
                msg = 'state {} exceeds the particle cap {}'
                raise InvariantViolation(msg.format(key, cap))
            amp = complex(amp)
            if amp != 0:
                data[key] = data.get(key, 0j) + amp
        self.amps = data
        self.cap = int(cap)
        self.overflow = float(overflow)

    @classmethod
    def vacuum(cls, cap=8):
        return cls({(): 1.}, cap)

    @classmethod
    def basis_state(cls, modes, cap=8):
        """Single wedge product of the given modes (in any order)"""
        order = np.argsort(modes, kind='stable')
        sign = _permutation_sign(order)
        return cls({tuple(sorted(modes)): sign}, cap)

    @classmethod
    def from_dict(cls, dct, cap=8):
        """Alternative constructor from the Fock state file format"""
        amps = {
            tuple(t): complex(re, im)
            for t, (re, im) in zip(dct['tuples'], dct['amps'])
        }
        return cls(amps, cap)

    def to_dict(self):
        keys = sorted(self.amps, key=lambda t: (len(t), t))
        return {
            'tuples': [list(t) for t in keys],
            'amps': [[self.amps[t].real, self.amps[t].imag] for t in keys]
        }

    def norm(self, modes=None):
        """Norm with basis weights prod_m w_m (unweighted if no modes)"""
        total = 0.
        for key, amp in self.amps.items():
            weight = 1.
            if modes is not None:
                weight = float(np.prod(modes.weights[list(key)]))
            total += abs(amp)**2 * weight
        return float(np.sqrt(total))

    @property
    def parity(self):
        """0 for even, 1 for odd, None for mixed states (or zero)"""
        parities = set(len(key) % 2 for key in self.amps)
        if len(parities) == 1:
            return parities.pop()
        return None

    def _combine(self, other, factor):
        if self.cap != other.cap:
            raise DimensionMismatch('states with different particle caps')
        amps = dict(self.amps)
        for key, amp in other.amps.items():
            amps[key] = amps.get(key, 0j) + factor * amp
        return FockVector(amps, self.cap, self.overflow + other.overflow)

    def __add__(self, other):
        return self._combine(other, 1.)

    def __sub__(self, other):
        return self._combine(other, -1.)

    def __mul__(self, scalar):
        scalar = complex(scalar)
        return FockVector({k: scalar * a for k, a in self.amps.items()},
                          self.cap, self.overflow)

    __rmul__ = __mul__

    def distance(self, other):
        """Unweighted norm of the difference"""
        return (self - other).norm()

    def __repr__(self):
        return 'FockVector(terms={}, cap={})'.format(len(self.amps), self.cap)


def _permutation_sign(order):
    """Sign of a permutation given as an index array (hidden)"""
    order = list(order)
    sign = 1
    for i in range(len(order)):
        while order[i] != i:
            j = order[i]
            order[i], order[j] = order[j], order[i]
            sign = -sign
    return sign


def create(v, psi, modes):
    """Creation operator c(v) psi = v ^ psi.

    States pushed above the particle cap are dropped; their squared
    amplitude is added to the overflow of the result.
    """

    v = modes.check(v)
    support = np.flatnonzero(v)
    amps = {}
    lost = 0.
    for key, amp in psi.amps.items():
        members = set(key)
        for m in support:
            m = int(m)
            if m in members:
                continue
            value = v[m] * amp
            if len(key) + 1 > psi.cap:
                lost += abs(value)**2
                continue
            # moving v past the smaller entries
            less = sum(1 for x in key if x < m)
            new = tuple(sorted(key + (m, )))
            amps[new] = amps.get(new, 0j) + (-1)**less * value
    return FockVector(amps, psi.cap, psi.overflow + lost)


def annihilate(v, psi, modes):
    """Annihilation a(v) u_1 ^ ... ^ u_k = sum_i (-1)^(i-1) <u_i, v> ..."""

    v = modes.check(v)
    contraction = np.conj(v) * modes.weights
    amps = {}
    for key, amp in psi.amps.items():
        for i, m in enumerate(key):
            coeff = contraction[m]
            if coeff == 0:
                continue
            new = key[:i] + key[i + 1:]
            amps[new] = amps.get(new, 0j) + (-1)**i * coeff * amp
    return FockVector(amps, psi.cap, psi.overflow)


def clifford(v, psi, modes):
    """Clifford multiplication pi(v) = c(v) + a(v)"""
    return create(v, psi, modes) + annihilate(v, psi, modes)


class FockSpace(object):
    """Truncated Fock space with sparse matrix representatives.

    States are all strictly increasing mode tuples of length <= cap.
    """

    def __init__(self, modes, cap):

        self.modes = modes
        self.cap = int(cap)
        self.states = [
            key for length in range(self.cap + 1)
            for key in itertools.combinations(range(modes.size), length)
        ]
        self.index = {key: i for i, key in enumerate(self.states)}
        self.lengths = np.array([len(key) for key in self.states])
        self._create = [self._creation(m) for m in range(modes.size)]

    @property
    def dim(self):
        return len(self.states)

    def _creation(self, m):
        """Sparse matrix of c(e_m) (hidden)"""
        rows, cols, vals = [], [], []
        for col, key in enumerate(self.states):
            if m in key or len(key) >= self.cap:
                continue
            less = sum(1 for x in key if x < m)
            rows.append(self.index[tuple(sorted(key + (m, )))])
            cols.append(col)
            vals.append((-1.)**less)
        return sparse.csr_matrix((vals, (rows, cols)),
                                 shape=(self.dim, self.dim), dtype=complex)

    def creation(self, v):
        v = self.modes.check(v)
        out = sparse.csr_matrix((self.dim, self.dim), dtype=complex)
        for m in np.flatnonzero(v):
            out = out + v[m] * self._create[m]
        return out

    def annihilation(self, v):
        v = self.modes.check(v)
        contraction = np.conj(v) * self.modes.weights
        out = sparse.csr_matrix((self.dim, self.dim), dtype=complex)
        for m in np.flatnonzero(contraction):
            out = out + contraction[m] * self._create[m].T
        return out

    def clifford(self, v):
        return self.creation(v) + self.annihilation(v)

    def parity_operator(self):
        return sparse.diags((-1.)**self.lengths).astype(complex)

    def to_array(self, psi):
        out = np.zeros(self.dim, dtype=complex)
        for key, amp in psi.amps.items():
            out[self.index[key]] = amp
        return out

    def from_array(self, array):
        return FockVector(
            {self.states[i]: array[i]
             for i in np.flatnonzero(array)}, self.cap)

    def __repr__(self):
        return 'FockSpace({}, cap={}, dim={})'.format(self.modes, self.cap,
                                                      self.dim)


def _anticommutator(x, y):
    return x @ y + y @ x


def _max_abs(mat, columns):
    block = mat[:, columns]
    if block.nnz == 0:
        return 0.
    return float(np.max(np.abs(block.data)))


def car_check(u, v, space):
    """Residuals of the canonical anticommutation relations.

    The relations are evaluated on basis states whose images stay below the
    particle cap: length <= P - 1 for {c(u), a(v)} and length <= P - 2 for
    {c(u), c(v)}.

    Returns:
        Tuple (|{c(u), a(v)} - <u, v>|, |{c(u), c(v)}|, |{a(u), a(v)}|)
    """

    cu = space.creation(u)
    cv = space.creation(v)
    au = space.annihilation(u)
    av = space.annihilation(v)
    eye = sparse.identity(space.dim, dtype=complex, format='csr')

    mixed = (_anticommutator(cu, av) - space.modes.inner(u, v) * eye).tocsc()
    both_c = _anticommutator(cu, cv).tocsc()
    both_a = _anticommutator(au, av).tocsc()

    below = np.flatnonzero(space.lengths <= space.cap - 1)
    below2 = np.flatnonzero(space.lengths <= space.cap - 2)
    every = np.arange(space.dim)

    return (_max_abs(mixed, below), _max_abs(both_c, below2),
            _max_abs(both_a, every))


class PolarisingOperator(object):
    """Complex-linear J on a mode space with J^2 = -1, unitary.

    Attributes:
        modes (ModeSpace): one-particle space
        matrix (numpy.ndarray): J in the basis e_(j, k)
    """

    def __init__(self, matrix, modes, tol=1e-12):

        mat = np.array(matrix, dtype=complex)
        if mat.shape != (modes.size, modes.size):
            raise DimensionMismatch('operator of shape {} on {}'.format(
                mat.shape, modes))

        eye = np.eye(modes.size)
        root = np.sqrt(modes.weights)
        ortho = root[:, None] * mat / root[None, :]
        square = np.abs(mat @ mat + eye).max(initial=0.)
        unitary = np.abs(ortho.conj().T @ ortho - eye).max(initial=0.)
        self.residual = float(max(square, unitary))
        if self.residual > tol:
            msg = 'not a polarising operator (J^2 + 1: {:.3e}, unitarity: {:.3e})'
            raise NotPolarising(msg.format(square, unitary))

        mat.setflags(write=False)
        self.matrix = mat
        self.modes = modes

    def __call__(self, v):
        return self.matrix @ self.modes.check(v)

    def __repr__(self):
        return 'PolarisingOperator({})'.format(self.modes)


def standard_polarisation(modes):
    """J_C: -i on modes k >= 0 and +i on modes k < 0"""
    phases = np.where(modes.ks >= 0, -1j, 1j)
    return PolarisingOperator(np.diag(phases), modes)


def standard_unitary_structure(n, K, fibre_dim=None, weights=None):
    """Real form J_R on L2(S^1, R^2n), written in exponentials.

    Acts by -i on modes k > 0, +i on k < 0 and by J0 + ... + J0 on
    constants. For an odd fibre dimension the last constant direction is
    sent to zero and the result fails J^2 = -1.

    Raises:
        NotPolarising: for odd fibre dimensions
    """

    if fibre_dim is None:
        fibre_dim = 2 * n
    modes = ModeSpace(fibre_dim, K, weights)

    mat = np.diag(np.where(modes.ks > 0, -1j, 1j)).astype(complex)
    if fibre_dim % 2:
        block = np.zeros((fibre_dim, fibre_dim))
        if fibre_dim > 1:
            block[:-1, :-1] = block_j0(fibre_dim - 1)
    else:
        block = block_j0(fibre_dim)

    constants = [modes.index(j, 0) for j in range(fibre_dim)]
    mat[np.ix_(constants, constants)] = block
    return PolarisingOperator(mat, modes)


def polarisation_compare(first, second, tol=1e-9):
    """Rank and Hilbert-Schmidt norm of J1 - J2"""

    if first.matrix.shape != second.matrix.shape:
        raise WindowMismatch('polarisations live on different windows')
    diff = first.matrix - second.matrix
    root = np.sqrt(first.modes.weights)
    diff = root[:, None] * diff / root[None, :]
    return {
        'rank': int(np.linalg.matrix_rank(diff, tol=tol)),
        'hs_norm': float(np.linalg.norm(diff))
    }


class RotationOperator(object):
    """Second quantised rotation U_lam, diagonal on wedge products."""

    def __init__(self, lam, modes):
        self.lam = complex(lam)
        self.modes = modes
        self._phases = self.lam**modes.ks.astype(float)

    def phase(self, key):
        return complex(np.prod(self._phases[list(key)]))

    def __call__(self, psi):
        return FockVector(
            {key: self.phase(key) * amp for key, amp in psi.amps.items()},
            psi.cap, psi.overflow)

    def matrix(self, space):
        return sparse.diags([self.phase(key) for key in space.states])

    def __matmul__(self, other):
        return RotationOperator(self.lam * other.lam, self.modes)

    def __repr__(self):
        return 'RotationOperator({:.6f})'.format(self.lam)


def implement_rotation(lam, modes, tol=1e-12):
    """Lift of the circle action R_lam to the Fock space"""
    lam = complex(lam)
    if abs(abs(lam) - 1.) > tol:
        raise NotUnitModulus('|lambda| = {!r} is not 1'.format(abs(lam)))
    return RotationOperator(lam, modes)


def finite_rank_clifford_extension(terms, modes, cap=None):
    """Finite-rank Clifford contraction sum_i pi(riesz(f_i)) xi_i.

    Arguments:
        terms (list): pairs (functional f_i, FockVector xi_i)
        modes (ModeSpace): one-particle space identifying functionals

    Keyword Arguments:
        cap (int): particle cap of the result (default: of the first state)
    """

    out = None
    for functional, state in terms:
        term = clifford(modes.riesz(functional), state, modes)
        out = term if out is None else out + term
    if out is None:
        return FockVector({}, cap or 8)
    return out
