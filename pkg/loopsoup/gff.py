# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Complex Gaussian free field with covariance ``G = (I - Q)^-1``.

``Z`` has density ``exp(-<z, G^-1 z>) / (pi^N det G)`` with
``<z, w> = sum conj(z_u) w_u``, so ``E[Z Z^*] = G`` and ``E[Z Z^T] = 0``.
The squared moduli ``|Z_u|^2`` share their law with the continuous occupation
field of the loop soup; :func:`verify_isomorphism` checks this pointwise at
the level of densities.
"""

import cmath
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from loopsoup import current_field, weights
from loopsoup.current_field import DEFAULT_MAX_TOTAL
from loopsoup.exceptions import NotHermitian, NotHermitianPD, TooLarge
from loopsoup.report import VerificationReport
from loopsoup.torus import (DEFAULT_QUAD_POINTS, TorusQuadrature,
                            torus_average, winding_average)

log = logging.getLogger(__name__)

FACTOR_TOL = 1e-10
EXPONENT_IMAG_TOL = 1e-10
QUADRATURE_IMAG_TOL = 1e-8
PERMANENT_MAX = 12
DEFAULT_TOL = 1e-6

__all__ = [
    'GFFSpec',
    'TorusQuadrature',
    'gff_spec',
    'density_f_Z',
    'sample_gff',
    'real_embedding',
    'sample_real_embedding',
    'density_f_absZ2',
    'torus_indicator',
    'permanent',
    'moment_from_currents',
    'verify_isomorphism',
]


@dataclass(frozen=True, eq=False)
class GFFSpec(object):
    """Covariance ``G`` with a factor ``A``, ``A A^* = G``."""

    covariance: np.ndarray
    factor: np.ndarray

    @property
    def n(self):
        return self.covariance.shape[0]

    @property
    def det(self):
        """``det G``, real and positive."""
        return float(np.prod(linalg.eigvalsh(self.covariance)))


def _as_covariance(G):
    if isinstance(G, GFFSpec):
        return G.covariance
    if isinstance(G, weights.GreenFunction):
        return np.asarray(G.entries)
    return np.asarray(G, dtype=complex)


def gff_spec(G):
    """Factor a Hermitian positive definite covariance.

    Complex Cholesky first; an eigendecomposition when the factorization
    breaks down on a numerically borderline matrix.

    :raises NotHermitianPD: if ``G`` is not Hermitian positive definite.
    """
    if isinstance(G, GFFSpec):
        return G
    g = _as_covariance(G)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise NotHermitianPD('covariance must be square')
    scale = max(1.0, float(np.linalg.norm(g)))
    if not np.allclose(g, g.conj().T, rtol=0, atol=FACTOR_TOL * scale):
        raise NotHermitianPD('covariance is not Hermitian')
    try:
        a = linalg.cholesky(g, lower=True)
    except linalg.LinAlgError:
        w, v = linalg.eigh(g)
        if np.any(w <= 0):
            raise NotHermitianPD(
                'covariance has eigenvalue {0!r}'.format(float(w.min())))
        log.debug('Cholesky failed, using eigendecomposition')
        a = v * np.sqrt(w)
    if np.linalg.norm(a @ a.conj().T - g) > FACTOR_TOL * scale:
        raise NotHermitianPD('factorization residual too large')
    return GFFSpec(covariance=g, factor=a)


def density_f_Z(G, z):
    """``exp(-<z, G^-1 z>) / (pi^N det G)``.

    :raises NotHermitianPD: if ``G`` is not Hermitian positive definite.
    """
    spec = gff_spec(G)
    z = np.asarray(z, dtype=complex)
    if z.shape != (spec.n,):
        raise ValueError('z must have {0} coordinates'.format(spec.n))
    exponent = complex(np.vdot(z, linalg.solve(spec.covariance, z)))
    if abs(exponent.imag) > EXPONENT_IMAG_TOL * max(1.0, abs(exponent)):
        raise NotHermitianPD(
            'quadratic form has imaginary part {0!r}'.format(exponent.imag))
    return math.exp(-exponent.real) / (math.pi ** spec.n * spec.det)


def _generator(seed):
    return np.random.Generator(np.random.Philox(seed))


def sample_gff(G, count, seed):
    """``count`` draws of ``Z = A xi``, one per row.

    ``xi`` has i.i.d. standard complex normal coordinates: independent real
    and imaginary parts of variance 1/2.

    The covariance is ``E[Z_u conj(Z_v)] = G_uv``, so the conjugate is on the
    second factor: ``E[conj(Z_1) Z_2] = conj(G_12)``.
    """
    spec = gff_spec(G)
    rng = _generator(seed)
    xi = (rng.standard_normal((count, spec.n))
          + 1j * rng.standard_normal((count, spec.n))) / math.sqrt(2)
    return xi @ spec.factor.T


def real_embedding(G):
    """Covariance ``[[G^R, -G^I], [G^I, G^R]]`` of the real ``2N`` field."""
    spec = gff_spec(G)
    g = spec.covariance
    return np.block([[g.real, -g.imag], [g.imag, g.real]])


def sample_real_embedding(G, count, seed):
    """Draw ``(Z', Z'')`` from :func:`real_embedding` and return
    ``(Z' + i Z'') / sqrt(2)``, one row per draw."""
    r = real_embedding(G)
    n = r.shape[0] // 2
    factor = linalg.cholesky(r, lower=True)
    x = _generator(seed).standard_normal((count, 2 * n)) @ factor.T
    return (x[:, :n] + 1j * x[:, n:]) / math.sqrt(2)


@dataclass(frozen=True)
class DensityEstimate(object):
    """Quadrature value with ``error`` = ``|I_2K - I_K|``."""

    point: tuple
    value: float
    error: float
    points: int


def _as_quadrature(quad, dims):
    if quad is None:
        return TorusQuadrature(points=DEFAULT_QUAD_POINTS, dims=dims)
    if isinstance(quad, int):
        return TorusQuadrature(points=quad, dims=dims)
    if quad.dims != dims:
        return TorusQuadrature(points=quad.points, dims=dims,
                               budget=quad.budget)
    return quad


def density_f_absZ2(Q, t, quad=None):
    """Density of ``(|Z_u|^2)_u`` at ``t`` for ``G = (I - Q)^-1``.

    ``e^{-sum t} det(I - Q)`` times the torus mean of
    ``exp(sum_jk sqrt(t_j t_k) q_jk e^{i(th_k - th_j)})``, evaluated with the
    trapezoid rule at ``K`` and ``2K`` nodes per free angle.

    :raises NotHermitian: unless ``Q`` is Hermitian.
    :raises NotIntegrable: unless ``rho(|Q|) < 1``.
    :raises QuadratureBudget: if ``2K`` nodes exceed the budget.
    :raises TooLarge: if the quadrature is not finite.
    """
    if not weights.is_hermitian(Q):
        raise NotHermitian('the |Z|^2 density needs Hermitian weights')
    t = current_field.check_point(Q, t)
    G = weights.green(Q)
    quad = _as_quadrature(quad, Q.n)
    fine = quad.refined()
    fine.check()

    root = np.sqrt(np.asarray(t))
    a = np.outer(root, root) * Q.entries
    det = G.det_I_minus_Q
    shift = sum(t)
    with np.errstate(over='ignore', invalid='ignore'):
        coarse_value = det * torus_average(a, quad, shift=shift)
        fine_value = det * torus_average(a, fine, shift=shift)
    if not (cmath.isfinite(coarse_value) and cmath.isfinite(fine_value)):
        raise TooLarge('quadrature at {0!r} is not finite'.format(t))
    if abs(fine_value.imag) > QUADRATURE_IMAG_TOL * max(1.0, abs(fine_value)):
        raise NotHermitian('quadrature has imaginary part {0!r}'.format(
            fine_value.imag))
    error = abs(fine_value - coarse_value)
    log.debug('|Z|^2 density at %r: K=%d, error %.3e', t, fine.points, error)
    return DensityEstimate(point=t, value=float(fine_value.real),
                           error=float(error), points=fine.points)


def torus_indicator(c, quad=None):
    """Torus mean of ``prod_jk e^{i C_jk (th_k - th_j)}``: 1 when ``C``
    conserves flow at every vertex, 0 otherwise.

    With ``K`` nodes the rule is exact as long as every imbalance is below
    ``K``; the default picks ``K = total mass + 1``.
    """
    c = np.asarray(c, dtype=np.int64)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError('matrix must be square')
    if quad is None:
        quad = TorusQuadrature(points=int(c.sum()) + 1, dims=c.shape[0])
    quad = _as_quadrature(quad, c.shape[0])
    return winding_average(c, quad).real


def permanent(m):
    """Permanent by Ryser's inclusion-exclusion formula.

    :raises TooLarge: above 12 x 12.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise ValueError('matrix must be square')
    if n > PERMANENT_MAX:
        raise TooLarge('permanent of size {0} exceeds {1}'.format(
            n, PERMANENT_MAX))
    if n == 0:
        return 1 + 0j
    total = 0j
    for k in range(1, n + 1):
        sign = (-1) ** k
        for cols in itertools.combinations(range(n), k):
            total += sign * np.prod(m[:, cols].sum(axis=1))
    return complex((-1) ** n * total)


@dataclass(frozen=True)
class MomentResult(object):
    subset: tuple
    value: complex
    max_total: int
    tail_bound: float


def moment_from_currents(Q, subset, max_total=DEFAULT_MAX_TOTAL):
    """``sum_C nu_c(C) prod_{u in S} (n_u(C) + 1)`` to mass ``max_total``.

    Given the current, ``t_u`` is Gamma(``n_u + 1``, 1) with mean
    ``n_u + 1``, so this is ``E[prod_S t_u]``; for Hermitian ``Q`` it tends
    to ``perm(G_S)``. The ``|Q|`` series sums to ``perm(G^|Q|_S) /
    det(I - |Q|)`` for any integrable ``Q``, which bounds the tail.
    """
    subset = tuple(sorted(weights.check_subset(Q.n, subset)))
    chosen = set(subset)
    G = weights.green(Q)
    G_abs = weights.green(Q.abs_weights())

    def factor(u, o, rest):
        bump = 1 if u in chosen else 0
        return np.array([float(math.perm(o + d, o)) * (o + d + 1) ** bump
                         for d in range(rest + 1)])

    value, partial_abs = current_field.current_series(Q, max_total, factor)
    idx = np.ix_(subset, subset)
    full_abs = (permanent(G_abs.entries[idx]).real
                / G_abs.det_I_minus_Q.real)
    det = G.det_I_minus_Q
    tail = abs(det) * (max(0.0, full_abs - partial_abs)
                       + current_field.ROUNDING * full_abs)
    return MomentResult(subset=subset, value=det * value,
                        max_total=max_total, tail_bound=tail)


def verify_isomorphism(Q, grid, max_total=DEFAULT_MAX_TOTAL, quad=None,
                       tol=DEFAULT_TOL):
    """Compare the occupation density series with the ``|Z|^2`` density on
    every point of ``grid`` (one list of values per coordinate).

    A point passes when the discrepancy is within the series tail plus the
    quadrature estimate plus ``tol``.
    """
    if not weights.is_hermitian(Q):
        raise NotHermitian('the isomorphism needs Hermitian weights')
    if len(grid) != Q.n:
        raise ValueError('grid needs one list per vertex')
    quad = _as_quadrature(quad, Q.n)
    rows = []
    ok = True
    for t in itertools.product(*grid):
        series = current_field.occupation_density_series(
            Q, t, max_total, quad_points=quad.points)
        density = density_f_absZ2(Q, t, quad)
        discrepancy = abs(series.value - density.value)
        bound = series.tail_bound + density.error
        good = discrepancy <= bound + tol
        ok = ok and good
        rows.append({'point': list(t), 'series': series.value,
                     'quadrature': density.value,
                     'discrepancy': discrepancy, 'tail_bound':
                     series.tail_bound, 'quadrature_error': density.error,
                     'ok': good})
    log.info('isomorphism: %d points, %s', len(rows),
             'ok' if ok else 'mismatch')
    return VerificationReport.judge(
        'isomorphism', rows, ok, tol,
        quantity_a='occupation_density_series',
        quantity_b='density_f_absZ2',
        parameters={'max_total': max_total, 'quad_points': quad.points})

