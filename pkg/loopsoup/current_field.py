# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Closed forms for the current field and the occupation fields.

The loop soup pushed forward to currents has mass

    nu_c(C) = det(I - Q) q(C) prod_u n_u(C)! / prod_uv C_uv!

and every series over currents evaluated here is absolutely dominated by the
same series with ``Q`` replaced by ``|Q|``. Tail bounds are computed from the
closed form of that nonnegative series.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from loopsoup import torus, weights
from loopsoup.exceptions import NegativePoint, NotACurrent, TooLarge
from loopsoup.loops import (Current, current_weight, currents_with_local_time,
                            iter_currents, iter_skeletons)
from loopsoup.utils import multinomial

log = logging.getLogger(__name__)

DEFAULT_MAX_TOTAL = 20

# Largest total mass whose factorials still fit a double.
MAX_FACTORIAL_TOTAL = 170

ROUNDING = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class CurrentFieldValue(object):
    current: Current
    value: complex


@dataclass(frozen=True)
class SeriesResult(object):
    """Partial sum of a series over currents of mass ``<= max_total``.

    ``partial_abs`` is the same partial sum with ``|Q|``; ``tail_bound``
    bounds ``|full - value|``.
    """

    value: complex
    max_total: int
    tail_bound: float
    partial_abs: float


@dataclass(frozen=True)
class OccupationDensityResult(object):
    point: tuple
    value: complex
    max_total: int
    tail_bound: float


def _check_total(total):
    if total < 0:
        raise ValueError('max_total must be nonnegative')
    if total > MAX_FACTORIAL_TOTAL:
        raise TooLarge('total mass {0} exceeds {1}'.format(
            total, MAX_FACTORIAL_TOTAL))


def nu_c(Q, current):
    """Mass of the current field at ``current``.

    :raises NotIntegrable: unless ``rho(|Q|) < 1``.
    :raises NotACurrent: if ``current`` breaks conservation or has the wrong
        size.
    :raises TooLarge: for total mass above 170.
    """
    if not isinstance(current, Current):
        current = Current(current)
    if current.n != Q.n:
        raise NotACurrent('current has size {0}, weights {1}'.format(
            current.n, Q.n))
    _check_total(current.total)
    G = weights.green(Q)
    return G.det_I_minus_Q * _unnormalized(Q, current)


def _unnormalized(Q, current):
    weight = current_weight(Q, current)
    if weight == 0:
        return 0j
    # n_u! / prod_v C_uv! is the multinomial of row u, exactly.
    combinatorial = 1
    for row in current.entries:
        combinatorial *= multinomial(row)
    return weight * float(combinatorial)


def nu_star(Q, n_prime):
    """Discrete occupation field: sum of ``nu_c`` over the currents whose
    vertex local time is ``n_prime``."""
    n_prime = tuple(int(k) for k in n_prime)
    if len(n_prime) != Q.n or any(k < 0 for k in n_prime):
        raise ValueError('local time must hold {0} nonnegative '
                         'integers'.format(Q.n))
    _check_total(sum(n_prime))
    G = weights.green(Q)
    total = 0j
    count = 0
    for current in currents_with_local_time(n_prime):
        total += _unnormalized(Q, current)
        count += 1
    log.debug('nu_star%r: %d currents', n_prime, count)
    return G.det_I_minus_Q * total


def current_field_table(Q, max_total):
    """``nu_c`` on every current of mass ``<= max_total``, by mass."""
    _check_total(max_total)
    G = weights.green(Q)
    return [CurrentFieldValue(c, G.det_I_minus_Q * _unnormalized(Q, c))
            for total in range(max_total + 1)
            for c in iter_currents(Q.n, total)]


def _powers(z, count):
    out = np.ones(count, dtype=type(z))
    if count > 1:
        out[1:] = z
        out = np.cumprod(out)
    return out


def current_series(Q, max_total, vertex_factor):
    """Sum ``q(C) prod_u h_u(n_u) / prod_{u != v} C_uv!`` over currents of
    mass ``<= max_total``, weighting the diagonal through ``vertex_factor``.

    Each current splits into its off-diagonal skeleton and a diagonal. Given
    the skeleton row sums ``o_u``, vertex ``u`` contributes
    ``q_uu**d * vertex_factor(u, o_u, R)[d]`` for its diagonal entry ``d``;
    the factors are convolved and truncated at the remaining mass ``R``.

    :param vertex_factor: ``(u, o, R) -> ndarray`` of ``R + 1`` nonnegative
        reals, the ``d``-th being ``phi_u(o + d) / d!``.
    :returns: ``(value, partial_abs)``, the latter with ``|Q|``.
    """
    _check_total(max_total)
    q = Q.entries
    a = np.abs(q)
    n = Q.n
    value = 0j
    partial_abs = 0.0
    skeletons = 0
    for skeleton in iter_skeletons(n, max_total):
        skeletons += 1
        weight = 1 + 0j
        weight_abs = 1.0
        for u, row in enumerate(skeleton.entries):
            for v, c in enumerate(row):
                if c:
                    f = math.factorial(c)
                    weight *= complex(q[u, v]) ** c / f
                    weight_abs *= float(a[u, v]) ** c / f
        if weight_abs == 0:
            continue
        rest = max_total - skeleton.total
        poly = np.ones(1, dtype=complex)
        poly_abs = np.ones(1)
        for u in range(n):
            h = vertex_factor(u, sum(skeleton.entries[u]), rest)
            poly = np.convolve(poly, _powers(complex(q[u, u]), rest + 1) * h)
            poly = poly[:rest + 1]
            poly_abs = np.convolve(poly_abs, _powers(float(a[u, u]),
                                                     rest + 1) * h)
            poly_abs = poly_abs[:rest + 1]
        value += weight * poly.sum()
        partial_abs += weight_abs * poly_abs.sum()
    log.debug('current series to mass %d: %d skeletons', max_total, skeletons)
    return complex(value), float(partial_abs)


def _factorial_factor(u, o, rest):
    # (o + d)! / d!
    return np.array([float(math.perm(o + d, o)) for d in range(rest + 1)])


def normalization_series(Q, max_total=DEFAULT_MAX_TOTAL):
    """Partial sum of ``nu_c`` over currents of mass ``<= max_total``.

    The full sum is 1 for every integrable ``Q``. The full ``|Q|`` sum is
    ``1 / det(I - |Q|)``, which bounds the tail.
    """
    G = weights.green(Q)
    G_abs = weights.green(Q.abs_weights())
    value, partial_abs = current_series(Q, max_total, _factorial_factor)
    det = G.det_I_minus_Q
    full_abs = 1.0 / G_abs.det_I_minus_Q.real
    tail = abs(det) * (max(0.0, full_abs - partial_abs) + ROUNDING * full_abs)
    log.debug('normalization to mass %d: tail %.3e', max_total, tail)
    return SeriesResult(value=det * value, max_total=max_total,
                        tail_bound=tail, partial_abs=partial_abs)


def check_point(Q, t):
    t = tuple(float(x) for x in t)
    if len(t) != Q.n:
        raise ValueError('point must have {0} coordinates, got {1}'.format(
            Q.n, len(t)))
    if any(not x >= 0 for x in t):
        raise NegativePoint('occupation point {0!r} has a negative '
                            'coordinate'.format(t))
    return t


def _gamma_factor(tu, o, rest):
    # t**(o + d) e**-t / d!, in logs so that large t stays finite.
    if tu == 0:
        h = np.zeros(rest + 1)
        if o == 0:
            h[0] = 1.0
        return h
    log_t = math.log(tu)
    return np.array([math.exp((o + d) * log_t - tu - math.lgamma(d + 1))
                     for d in range(rest + 1)])


def occupation_density_series(Q, t, max_total=DEFAULT_MAX_TOTAL,
                              quad_points=torus.DEFAULT_QUAD_POINTS):
    """Density of the continuous occupation field at ``t``, truncated at
    total current mass ``max_total``.

    Conditionally on the current, ``t_u`` is Gamma(``n_u + 1``, 1), so each
    current contributes ``nu_c(C) prod_u t_u**n_u e**-t_u / n_u!``.

    The tail bound uses the torus representation of the full ``|Q|`` sum:
    its trapezoid value can only overshoot, the aliased Fourier coefficients
    being nonnegative.

    :raises NotIntegrable: unless ``rho(|Q|) < 1``.
    :raises NegativePoint: if some ``t_u < 0``.
    :raises TooLarge: if the ``|Q|`` bound is not a finite number.
    """
    t = check_point(Q, t)
    G = weights.green(Q)

    def factor(u, o, rest):
        return _gamma_factor(t[u], o, rest)

    value, partial_abs = current_series(Q, max_total, factor)
    det = G.det_I_minus_Q

    shift = sum(t)
    root = np.sqrt(np.asarray(t))
    coefficients = np.outer(root, root) * Q.abs
    quad = torus.TorusQuadrature(points=quad_points, dims=Q.n)
    with np.errstate(over='ignore', invalid='ignore'):
        full_abs = torus.torus_average(coefficients, quad, shift=shift).real
        peak = float(np.exp(coefficients.sum() - shift))
    if not (math.isfinite(full_abs) and math.isfinite(peak)):
        raise TooLarge('tail bound at {0!r} is not finite'.format(t))
    tail = abs(det) * (max(0.0, full_abs - partial_abs) + ROUNDING * peak)
    log.debug('density at %r to mass %d: tail %.3e', t, max_total, tail)
    return OccupationDensityResult(point=t, value=det * value,
                                   max_total=max_total, tail_bound=tail)
