#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Spectral calculus on the compact matrix groups U_n, SU_n and SO_n.

Every matrix handled here is normal; matrix functions are evaluated on the
unitary eigendecomposition obtained from a complex Schur form.
"""

import numpy as np
from scipy import linalg
from scipy import stats

from .errors import (NotInGroup, NotInAlgebra, NotUnitaryStructure,
                     DimensionMismatch, NonNormalInput, EigenvalueOnCut,
                     ZeroEigenvalue, EigenvalueOne, OddDimension)
from .loops import DEFAULT_TOL

__all__ = [
    'J0', 'CUT_ANGLE', 'CLUSTER_TOL', 'GroupElement', 'AlgebraElement',
    'UnitaryStructure', 'normal_eig', 'exp_matrix', 'log_sector',
    'log_principal', 'commuting_log', 'unitary_structure_from',
    'log_decompose_so', 'random_unitary_structure', 'random_group_element',
    'random_algebra_element', 'block_j0', 'commutator'
]

J0 = np.array([[0., -1.], [1., 0.]])

# angular distance (radian) below which an eigenvalue sits on a log cut
CUT_ANGLE = 1e-8

# eigenvalues closer than this share an eigenspace
CLUSTER_TOL = 1e-7

GROUPS = {'U': 'u', 'SU': 'su', 'SO': 'so'}
ALGEBRAS = {v: k for k, v in GROUPS.items()}

# groups acting on paths with values in the key group
SUBGROUPS = {'U': ('U', 'SU', 'SO'), 'SU': ('SU', 'SO'), 'SO': ('SO', )}


def _square(matrix):
    """Coerce to square complex array (hidden)"""
    m = np.array(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch('expected a square matrix, got shape {}'.format(
            m.shape))
    return m


def commutator(a, b):
    """Matrix commutator [a, b]"""
    return a @ b - b @ a


def group_residual(matrix, group):
    """Largest violation of the defining relations of `group`"""

    n = matrix.shape[0]
    res = np.linalg.norm(matrix.conj().T @ matrix - np.eye(n))
    if group in ('SU', 'SO') and n:
        res = max(res, abs(np.linalg.det(matrix) - 1.))
    if group == 'SO':
        res = max(res, np.linalg.norm(matrix.imag))
    return float(res)


def algebra_residual(matrix, algebra):
    """Largest violation of the defining relations of `algebra`"""

    res = np.linalg.norm(matrix.conj().T + matrix)
    if algebra == 'su':
        res = max(res, abs(np.trace(matrix)))
    if algebra == 'so':
        res = max(res, np.linalg.norm(matrix.imag),
                  np.linalg.norm(matrix.T + matrix))
    return float(res)


class GroupElement(object):
    """Square matrix tagged with its group (U, SU or SO).

    Attributes:
        matrix (numpy.ndarray): read-only matrix (real for SO)
        group (str): group tag
        n (int): matrix size
        residual (float): membership residual at construction
    """

    def __init__(self, matrix, group='U', tol=DEFAULT_TOL, check=True):

        assert group in GROUPS, 'unknown group `{}`'.format(group)

        m = _square(matrix)
        self.residual = group_residual(m, group)
        if check and self.residual > tol:
            msg = 'matrix misses {} by {:.3e} (tol {:.1e})'
            raise NotInGroup(msg.format(group, self.residual, tol))

        if group == 'SO':
            m = m.real.copy()
        m.setflags(write=False)

        self.matrix = m
        self.group = group
        self.n = m.shape[0]

    @property
    def inverse(self):
        return GroupElement(self.matrix.conj().T, self.group, check=False)

    def __matmul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch('cannot compose {} and {} matrices'.format(
                self.n, other.n))
        group = self.group if self.group == other.group else 'U'
        return GroupElement(self.matrix @ other.matrix, group, check=False)

    def __repr__(self):
        return 'GroupElement({}, n={})'.format(self.group, self.n)


class AlgebraElement(object):
    """Square matrix tagged with its Lie algebra (u, su or so)."""

    def __init__(self, matrix, algebra='u', tol=DEFAULT_TOL, check=True):

        assert algebra in ALGEBRAS, 'unknown algebra `{}`'.format(algebra)

        m = _square(matrix)
        scale = max(1., np.linalg.norm(m))
        self.residual = algebra_residual(m, algebra)
        if check and self.residual > tol * scale:
            msg = 'matrix misses {} by {:.3e} (tol {:.1e})'
            raise NotInAlgebra(msg.format(algebra, self.residual, tol))

        if algebra == 'so':
            m = m.real.copy()
        m.setflags(write=False)

        self.matrix = m
        self.algebra = algebra
        self.n = m.shape[0]

    @property
    def group(self):
        return ALGEBRAS[self.algebra]

    def __repr__(self):
        return 'AlgebraElement({}, n={})'.format(self.algebra, self.n)


class UnitaryStructure(object):
    """Real orthogonal J with J^2 = -1 on an even-dimensional space."""

    def __init__(self, matrix, tol=DEFAULT_TOL):

        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch('expected a square matrix')
        if m.shape[0] % 2:
            raise OddDimension('unitary structures need even dimension '
                               '(got {})'.format(m.shape[0]))

        eye = np.eye(m.shape[0])
        self.residual = float(
            max(np.linalg.norm(m.T @ m - eye), np.linalg.norm(m @ m + eye)))
        if self.residual > tol:
            msg = 'not a unitary structure (residual {:.3e})'
            raise NotUnitaryStructure(msg.format(self.residual))

        m.setflags(write=False)
        self.matrix = m
        self.m = m.shape[0]

    def __repr__(self):
        return 'UnitaryStructure(m={})'.format(self.m)


def block_j0(m):
    """Block diagonal J0 + ... + J0 on R^m (m even)"""
    if m % 2:
        raise OddDimension('block structure needs even dimension')
    return np.kron(np.eye(m // 2), J0)


def _clusters(evals, tol=CLUSTER_TOL):
    """Group eigenvalues closer than `tol` (hidden)"""

    labels = -np.ones(len(evals), dtype=int)
    reps = []
    for i, ev in enumerate(evals):
        for j, rep in enumerate(reps):
            if abs(ev - rep) < tol:
                labels[i] = j
                break
        else:
            labels[i] = len(reps)
            reps.append(ev)
    return labels


def normal_eig(matrix, tol=DEFAULT_TOL):
    """Unitary eigendecomposition of a normal matrix.

    Returns:
        Tuple (eigenvalues, unitary eigenvector matrix, cluster labels)
    """

    m = _square(matrix)
    scale = max(1., np.linalg.norm(m))**2
    defect = np.linalg.norm(m @ m.conj().T - m.conj().T @ m)
    if defect > tol * scale:
        msg = 'matrix is not normal (|[A, A*]| = {:.3e})'
        raise NonNormalInput(msg.format(defect))

    if m.shape[0] == 0:
        return np.zeros(0, dtype=complex), m, np.zeros(0, dtype=int)

    tri, vecs = linalg.schur(m, output='complex')
    evals = np.diag(tri).copy()
    labels = _clusters(evals)

    # orthonormalize grouped eigenbases
    for lab in np.unique(labels):
        idx = np.flatnonzero(labels == lab)
        if len(idx) > 1:
            q, _ = np.linalg.qr(vecs[:, idx])
            vecs[:, idx] = q

    return evals, vecs, labels


def _synth(vecs, values):
    """Spectral synthesis Z diag(values) Z^* (hidden)"""
    return (vecs * values) @ vecs.conj().T


def exp_matrix(xi, t=1.):
    """exp(t xi) for an algebra element, as a group element"""

    evals, vecs, _ = normal_eig(xi.matrix)
    out = _synth(vecs, np.exp(t * evals))
    group = xi.group
    if group == 'SU' and abs(t * np.trace(xi.matrix)) > CLUSTER_TOL:
        group = 'U'
    return GroupElement(out, group, tol=1e-8)


def _branch_angles(evals, labels, theta, cut):
    """Arguments of eigenvalues on the branch centred at theta (hidden)

    Eigenvalues of one cluster share the branch of their representative.
    """

    out = np.empty(len(evals))
    for lab in np.unique(labels):
        idx = np.flatnonzero(labels == lab)
        rep = evals[idx[0]]
        base = np.angle(rep * np.exp(-1j * theta))
        if np.pi - abs(base) < cut:
            msg = 'eigenvalue {:.6f} lies on the cut at angle {:.6f}'
            raise EigenvalueOnCut(msg.format(rep, theta + np.pi))
        out[idx] = theta + base + np.angle(evals[idx] / rep)
    return out


def log_sector(g, s=0j, cut=CUT_ANGLE):
    """Sector logarithm log_s on U_n.

    Arguments:
        g (GroupElement): unitary matrix
        s (complex): purely imaginary centre of the sector

    Keyword Arguments:
        cut (float): angular distance (radian) treated as on the cut

    Returns:
        AlgebraElement xi with exp(xi) = g and eigenvalues in
        (s - i pi, s + i pi); real (so) when g is in SO_n and s = 0
    """

    s = complex(s)
    if abs(s.real) > DEFAULT_TOL:
        raise ValueError('sector centre needs to be purely imaginary')

    theta = s.imag
    evals, vecs, labels = normal_eig(g.matrix)
    angles = _branch_angles(evals, labels, theta, cut)
    out = _synth(vecs, 1j * angles)

    if g.group == 'SO' and theta == 0.:
        return AlgebraElement(out.real, 'so', check=False)
    return AlgebraElement(out, 'u', tol=1e-8)


def log_principal(g):
    """Principal logarithm log_0 (cut along the negative axis)"""
    return log_sector(g, 0j)


def commuting_log(g):
    """Spectral logarithm of g with arguments in (-pi, pi].

    The result acts by a scalar on every eigenspace of g, hence commutes
    with every logarithm of g; -1 is mapped to i pi.
    """

    evals, vecs, labels = normal_eig(g.matrix)
    angles = np.empty(len(evals))
    for lab in np.unique(labels):
        idx = np.flatnonzero(labels == lab)
        rep = evals[idx[0]]
        base = np.angle(rep)
        if base <= -np.pi + CUT_ANGLE:
            base += 2 * np.pi
        angles[idx] = base + np.angle(evals[idx] / rep)

    return AlgebraElement(_synth(vecs, 1j * angles), 'u', tol=1e-8)


def unitary_structure_from(xi, tol=DEFAULT_TOL):
    """Natural unitary structure J_xi of an invertible xi in so_m.

    J_xi acts by +i on the eigenspaces of xi with eigenvalue i s, s > 0.
    """

    if xi.algebra != 'so':
        raise NotInAlgebra('unitary structures need an element of so_m')

    evals, vecs, _ = normal_eig(xi.matrix)
    if len(evals) and np.min(np.abs(evals)) <= tol:
        msg = 'xi has an eigenvalue within {:.1e} of 0'
        raise ZeroEigenvalue(msg.format(tol))

    out = _synth(vecs, 1j * np.sign(evals.imag))
    return UnitaryStructure(out.real, tol=1e-8)


def _kernel_basis(matrix, tol=CLUSTER_TOL):
    """Orthonormal basis of the numerical kernel (hidden)"""
    if matrix.shape[0] == 0:
        return np.zeros((0, 0))
    _, sv, vh = np.linalg.svd(matrix)
    return vh[sv <= tol].conj().T


def log_decompose_so(g):
    """Decompose log_0(-g) = xi - pi J_xi for g in SO_m without eigenvalue 1.

    Returns:
        Tuple (xi, J) with exp(xi) = g and J = J_xi
    """

    if g.group != 'SO':
        raise NotInGroup('log_decompose_so needs an element of SO_m')

    evals = np.linalg.eigvals(g.matrix)
    if len(evals) and np.min(np.abs(np.angle(evals))) < CUT_ANGLE:
        raise EigenvalueOne('g has an eigenvalue at +1')

    m = g.n
    base = log_sector(GroupElement(-g.matrix, 'SO', tol=1e-8), 0j).matrix

    # sign structure of log_0(-g) off its kernel
    lev, lvecs, _ = normal_eig(base)
    signs = np.where(np.abs(lev) > CLUSTER_TOL, 1j * np.sign(lev.imag), 0.)
    struct = _synth(lvecs, signs).real

    # kernel of log_0(-g) is the -1 eigenspace of g; pair up a basis
    kernel = _kernel_basis(base).real
    if kernel.shape[1] % 2:
        raise NotUnitaryStructure('odd-dimensional -1 eigenspace')
    if kernel.shape[1]:
        kernel, _ = np.linalg.qr(kernel)
        struct = struct + kernel @ block_j0(kernel.shape[1]) @ kernel.T

    xi = AlgebraElement(base + np.pi * struct, 'so', tol=1e-8)
    return xi, UnitaryStructure(struct, tol=1e-8)


def _rng(seed):
    """Coerce seed to a numpy Generator (hidden)"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary_structure(m, seed=None):
    """Q (J0 + ... + J0) Q^T for a seeded random orthogonal Q"""

    if m % 2:
        raise OddDimension('no unitary structure on R^{}'.format(m))
    if m == 0:
        return UnitaryStructure(np.zeros((0, 0)))

    rng = _rng(seed)
    q = stats.ortho_group.rvs(m, random_state=rng)
    return UnitaryStructure(q @ block_j0(m) @ q.T, tol=1e-8)


def random_group_element(group, n, seed=None):
    """Haar-distributed element of U_n, SU_n or SO_n"""

    rng = _rng(seed)
    if group == 'SO':
        if n == 1:
            return GroupElement(np.ones((1, 1)), 'SO')
        mat = stats.special_ortho_group.rvs(n, random_state=rng)
        return GroupElement(mat, 'SO', tol=1e-8)

    if n == 1:
        mat = np.exp(2j * np.pi * rng.uniform()) * np.ones((1, 1))
    else:
        mat = stats.unitary_group.rvs(n, random_state=rng)

    if group == 'SU':
        det = np.linalg.det(mat)
        mat = mat * np.exp(-1j * np.angle(det) / n)

    return GroupElement(mat, group, tol=1e-8)


def random_algebra_element(algebra, n, seed=None, scale=1.):
    """Gaussian element of u_n, su_n or so_n"""

    rng = _rng(seed)
    if algebra == 'so':
        a = rng.normal(size=(n, n))
        return AlgebraElement(scale * .5 * (a - a.T), 'so')

    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    xi = .5 * (a - a.conj().T)
    if algebra == 'su':
        xi = xi - np.trace(xi) / n * np.eye(n)
    return AlgebraElement(scale * xi, algebra)
