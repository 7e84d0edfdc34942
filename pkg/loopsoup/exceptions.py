# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Exceptions used in this package."""


class LoopSoupError(Exception):
    """Base class for exceptions in this module."""


class NotIntegrable(LoopSoupError):
    """Raised when rho(|Q|) is not below one (minus the requested margin)."""


class SingularMatrix(LoopSoupError):
    """LU factorization of I - Q failed."""


class BadSubset(LoopSoupError):
    """Vertex subset with out-of-range or duplicate indices."""


class TrivialLoop(LoopSoupError):
    """A nontrivial loop was required."""


class NotACurrent(LoopSoupError):
    """Matrix violates nonnegativity, integrality or flow conservation."""


class BudgetExceeded(LoopSoupError):
    """An enumeration would exceed its budget."""

    def __init__(self, what, count, budget):
        self.count = count
        self.budget = budget
        super(BudgetExceeded, self).__init__(
            '{0} needs {1} items, budget is {2}'.format(what, count, budget))


class BadSequences(LoopSoupError):
    """Per-vertex sequences do not belong to S(C)."""


class BadInput(LoopSoupError):
    """Loop/remainder pair cannot be decoded."""


class NegativePoint(LoopSoupError):
    """Occupation point with a negative coordinate."""


class NotHermitian(LoopSoupError):
    """A Hermitian weight was required."""


class NotHermitianPD(LoopSoupError):
    """A Hermitian positive definite covariance was required."""


class QuadratureBudget(LoopSoupError):
    """Torus quadrature would need too many nodes."""


class TooLarge(LoopSoupError):
    """Input exceeds a hard size limit."""


class NotSamplable(LoopSoupError):
    """Monte Carlo needs a nonnegative, row-substochastic, integrable Q."""


class ParseError(LoopSoupError):
    """Malformed weight matrix file."""

    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            msg = '{0} (line {1}, column {2})'.format(msg, line, column)
        super(ParseError, self).__init__(msg)


class OptionError(LoopSoupError):
    """Invalid command line option value."""
