#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Exceptions and warnings raised by loopforge."""

__all__ = [
    'LoopforgeError', 'InvariantViolation', 'NotInGroup', 'NotInAlgebra',
    'NotUnitaryStructure', 'NotPolarising', 'NotRealLoop', 'NotUnitModulus',
    'DimensionMismatch', 'TooFewSamples', 'NonNormalInput', 'EigenvalueOnCut',
    'ZeroEigenvalue', 'EigenvalueOne', 'OddDimension', 'DifferentFibres',
    'NonUnitVector', 'EigenvalueOnWall', 'ProjectionDegenerate',
    'EigenvalueMinusOne', 'ModeOutsideWindow', 'WindowMismatch',
    'UnknownSuite', 'SkipCheck', 'TruncationWarning', 'AliasingWarning'
]


class LoopforgeError(Exception):
    """Base class of all loopforge errors."""
    pass


class InvariantViolation(LoopforgeError, ValueError):
    """A value does not satisfy the invariants of its type."""
    pass


class NotInGroup(InvariantViolation):
    pass


class NotInAlgebra(InvariantViolation):
    pass


class NotUnitaryStructure(InvariantViolation):
    pass


class NotPolarising(InvariantViolation):
    """Candidate operator does not square to -1 (or is not unitary)."""
    pass


class NotRealLoop(InvariantViolation):
    pass


class NotUnitModulus(LoopforgeError, ValueError):
    pass


class DimensionMismatch(LoopforgeError, ValueError):
    pass


class WindowMismatch(LoopforgeError, ValueError):
    pass


class ModeOutsideWindow(LoopforgeError, ValueError):
    pass


class TooFewSamples(LoopforgeError, ValueError):
    pass


class NonNormalInput(LoopforgeError, ValueError):
    pass


class NonUnitVector(LoopforgeError, ValueError):
    pass


class OddDimension(LoopforgeError, ValueError):
    pass


class DifferentFibres(LoopforgeError, ValueError):
    pass


class EigenvalueOnCut(LoopforgeError, ArithmeticError):
    """An eigenvalue lies on the branch cut of a logarithm."""
    pass


class EigenvalueMinusOne(EigenvalueOnCut):
    pass


class EigenvalueOne(LoopforgeError, ArithmeticError):
    pass


class ZeroEigenvalue(LoopforgeError, ArithmeticError):
    pass


class EigenvalueOnWall(LoopforgeError, ArithmeticError):
    pass


class ProjectionDegenerate(LoopforgeError, ArithmeticError):
    pass


class UnknownSuite(LoopforgeError, KeyError):
    pass


class SkipCheck(LoopforgeError):
    """Raised inside a check when the configuration cannot exercise it."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class TruncationWarning(UserWarning):
    """Mass was lost to the finite Fourier window."""
    pass


class AliasingWarning(TruncationWarning):
    pass
