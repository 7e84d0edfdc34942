# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Periodic trapezoid rule on the torus ``[0, 2 pi)^N``.

Every integrand handled here has the form
``exp(sum_jk A_jk exp(i (theta_k - theta_j)))`` (or a product of such
phases) and depends on angle differences only, so the first angle is pinned
to zero and the remaining ``N - 1`` angles carry ``K`` equispaced nodes each.
"""

import logging
from dataclasses import dataclass

import numpy as np

from loopsoup.exceptions import QuadratureBudget

log = logging.getLogger(__name__)

DEFAULT_QUAD_POINTS = 64
DEFAULT_NODE_BUDGET = 2 * 10 ** 6


@dataclass(frozen=True)
class TorusQuadrature(object):
    """``points`` nodes per angular dimension on an ``dims``-torus."""

    points: int = DEFAULT_QUAD_POINTS
    dims: int = 1
    budget: int = DEFAULT_NODE_BUDGET

    @property
    def nodes(self):
        """Node count after pinning the first angle."""
        return self.points ** max(self.dims - 1, 0)

    def refined(self):
        return TorusQuadrature(points=2 * self.points, dims=self.dims,
                               budget=self.budget)

    def check(self):
        if self.points < 1:
            raise QuadratureBudget('need at least one node per dimension')
        if self.nodes > self.budget:
            raise QuadratureBudget(
                '{0} nodes exceed the budget of {1}'.format(
                    self.nodes, self.budget))


def phases(quad):
    """``exp(i theta_j)`` at every node, shape ``(nodes, dims)``; column 0 is
    the pinned angle."""
    quad.check()
    k = quad.points
    free = quad.dims - 1
    angles = 2 * np.pi * np.arange(k) / k
    out = np.ones((quad.nodes, quad.dims), dtype=complex)
    if free:
        grid = np.meshgrid(*([angles] * free), indexing='ij')
        for j, g in enumerate(grid, start=1):
            out[:, j] = np.exp(1j * g.ravel())
    return out


def torus_average(a, quad, shift=0.0):
    """Normalized torus integral of
    ``exp(sum_jk a_jk e^{i(th_k - th_j)} - shift)``.

    Subtracting ``shift`` inside the exponent keeps large exponents finite.

    :param a: ``dims x dims`` complex coefficient matrix.
    :returns: the trapezoid value (complex).
    """
    p = phases(quad)
    exponent = np.einsum('mj,jk,mk->m', p.conj(), np.asarray(a), p)
    return complex(np.exp(exponent - shift).mean())


def winding_average(c, quad):
    """Normalized torus integral of ``prod_jk e^{i C_jk (th_k - th_j)}``."""
    c = np.asarray(c)
    p = phases(quad)
    angles = np.angle(p)
    winding = c.sum(axis=0) - c.sum(axis=1)
    return complex(np.exp(1j * angles @ winding).mean())
