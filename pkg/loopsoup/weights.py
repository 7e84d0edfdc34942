# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Complex edge weights on a finite complete digraph.

A :class:`WeightMatrix` holds the ``N x N`` matrix ``Q`` of weights ``q_uv``.
Vertices are ``0 .. N-1`` inside the library; the JSON file format uses
``1 .. N`` only implicitly through row order.
"""

import cmath
import io
import json
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from loopsoup.exceptions import (BadSubset, NotIntegrable, ParseError,
                                 SingularMatrix)

log = logging.getLogger(__name__)

HERMITIAN_ATOL = 1e-14
RESIDUAL_TOL = 1e-10
SUBSTOCHASTIC_TOL = 1e-12

# Truncated series refuse matrices closer to rho(|Q|) = 1 than this.
SERIES_MARGIN = 1e-3


class WeightMatrix(object):
    """Square complex weight matrix ``Q``; immutable after construction."""

    __slots__ = ('entries',)

    def __init__(self, entries):
        arr = np.array(entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or not arr.size:
            raise ValueError(
                'weight matrix must be square and nonempty, got shape '
                '{0}'.format(arr.shape))
        arr.setflags(write=False)
        self.entries = arr

    def __repr__(self):
        return '<WeightMatrix n={0} rho={1:.6g} at 0x{2:X}>'.format(
            self.n, spectral_radius_abs(self), id(self))

    def __getitem__(self, key):
        return self.entries[key]

    def __eq__(self, other):
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def abs(self):
        """Entrywise absolute values ``|Q|`` as a real array."""
        return np.abs(self.entries)

    def abs_weights(self):
        """The nonnegative surrogate ``|Q|`` as a :class:`WeightMatrix`."""
        return WeightMatrix(self.abs)

    def is_nonnegative(self):
        return bool(np.all(self.entries.imag == 0)
                    and np.all(self.entries.real >= 0))

    def row_sums(self):
        return self.entries.sum(axis=1)

    def permuted(self, order):
        """Permutation similarity: vertex ``order[i]`` becomes vertex ``i``."""
        order = check_subset(self.n, order)
        if len(order) != self.n:
            raise BadSubset('order must list every vertex exactly once')
        return WeightMatrix(self.entries[np.ix_(order, order)])

    def restrict(self, vertices):
        return restrict(self, vertices)


@dataclass(frozen=True, eq=False)
class GreenFunction(object):
    """``G = (I - Q)^-1`` together with ``det(I - Q)``."""

    entries: np.ndarray
    det_I_minus_Q: complex

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def det(self):
        """``det G = 1 / det(I - Q)``."""
        return 1 / self.det_I_minus_Q

    def __getitem__(self, key):
        return self.entries[key]

    def is_hermitian(self, atol=1e-10):
        return bool(np.allclose(self.entries, self.entries.conj().T,
                                rtol=0, atol=atol))


def spectral_radius_abs(Q):
    """Return ``rho(|Q|)``, the Perron root of the entrywise modulus."""
    eigenvalues = linalg.eigvals(Q.abs)
    return float(np.max(np.abs(eigenvalues)))


def is_integrable(Q, margin=0.0):
    """``True`` iff ``rho(|Q|) < 1 - margin``."""
    return spectral_radius_abs(Q) < 1.0 - margin


def require_integrable(Q, margin=0.0):
    """Raise :class:`NotIntegrable` unless ``Q`` is integrable.

    :returns: ``rho(|Q|)`` for callers that report it.
    """
    rho = spectral_radius_abs(Q)
    if not rho < 1.0 - margin:
        raise NotIntegrable(
            'rho(|Q|) = {0!r} is not below 1 - {1!r}'.format(rho, margin))
    return rho


def is_hermitian(Q, atol=HERMITIAN_ATOL):
    q = Q.entries
    return bool(np.all(np.abs(q - q.conj().T) <= atol))


def is_samplable(Q):
    """Nonnegative real, every row sum at most one, and integrable."""
    if not Q.is_nonnegative():
        return False
    if np.any(Q.row_sums().real > 1 + SUBSTOCHASTIC_TOL):
        return False
    return is_integrable(Q)


def green(Q, margin=0.0):
    """Compute ``G = (I - Q)^-1`` and ``det(I - Q)`` from one LU factorization.

    :raises NotIntegrable: if ``rho(|Q|) >= 1 - margin``.
    :raises SingularMatrix: if the factorization breaks down.
    """
    require_integrable(Q, margin)
    n = Q.n
    eye = np.eye(n, dtype=complex)
    a = eye - Q.entries
    lu, piv = linalg.lu_factor(a, check_finite=True)
    diag = np.diag(lu)
    if np.any(diag == 0):
        raise SingularMatrix('I - Q is singular')
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    det = complex(np.prod(diag)) * (-1) ** swaps
    g = linalg.lu_solve((lu, piv), eye)
    residual = np.linalg.norm(a @ g - eye)
    if residual > RESIDUAL_TOL * max(1.0, np.linalg.norm(g)):
        raise SingularMatrix(
            'residual {0!r} of (I - Q) G = I too large'.format(residual))
    g.setflags(write=False)
    return GreenFunction(entries=g, det_I_minus_Q=det)


def check_subset(n, vertices):
    vertices = [int(v) for v in vertices]
    if any(v < 0 or v >= n for v in vertices):
        raise BadSubset('vertex out of range 0..{0}: {1!r}'.format(
            n - 1, vertices))
    if len(set(vertices)) != len(vertices):
        raise BadSubset('duplicate vertex in {0!r}'.format(vertices))
    return vertices


def restrict(Q, vertices):
    """Return ``Q_U``; rows and columns are taken in the vertex order of
    ``Q``, whatever order ``vertices`` lists them in.

    ``rho(|Q_U|) <= rho(|Q|)``, so ``Q_U`` is integrable whenever ``Q`` is.
    """
    vertices = sorted(check_subset(Q.n, vertices))
    if not vertices:
        raise BadSubset('empty vertex subset')
    R = WeightMatrix(Q.entries[np.ix_(vertices, vertices)])
    assert spectral_radius_abs(R) <= spectral_radius_abs(Q) * (1 + 1e-9) \
        + 1e-12
    return R


def green_diagonal(Q, vertices, v):
    """``G_U(v, v)`` for ``v`` in ``U``."""
    vertices = sorted(check_subset(Q.n, vertices))
    if v not in vertices:
        raise BadSubset('{0} is not in {1!r}'.format(v, vertices))
    G = green(restrict(Q, vertices))
    i = vertices.index(v)
    return complex(G.entries[i, i])


def determinant_chain(Q):
    """Factors ``G_{V_j}(v_j, v_j)``, ``V_j = (v_j, ..., v_N)``, whose product
    is ``det G``."""
    n = Q.n
    return [green_diagonal(Q, range(j, n), j) for j in range(n)]


def load_weights(source):
    """Read a weight matrix from a path or a text stream.

    The format is ``{"n": N, "q": [[entry, ...], ...]}`` where an entry is a
    number, ``[re]`` or ``[re, im]``.

    :raises ParseError: on malformed JSON (with line and column) or shape
        errors (naming the 1-based row and entry).
    """
    if isinstance(source, io.IOBase) or hasattr(source, 'read'):
        text = source.read()
    else:
        with io.open(source, encoding='utf-8') as f:
            text = f.read()
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise ParseError(getattr(e, 'msg', str(e)),
                         getattr(e, 'lineno', None), getattr(e, 'colno', None))

    if not isinstance(doc, dict) or 'q' not in doc:
        raise ParseError('expected an object with keys "n" and "q"')
    rows = doc['q']
    n = doc.get('n', len(rows) if isinstance(rows, list) else None)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError('"n" must be a positive integer, got {0!r}'.format(n))
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError('"q" must hold {0} rows'.format(n))

    entries = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError('row {0} must hold {1} entries'.format(i + 1, n))
        for j, value in enumerate(row):
            entries[i, j] = _parse_entry(value, i, j)
    Q = WeightMatrix(entries)
    log.debug('loaded %d x %d weight matrix', n, n)
    return Q


def _parse_entry(value, i, j):
    def bad():
        return ParseError('row {0}, entry {1}: cannot read {2!r}'.format(
            i + 1, j + 1, value))

    if isinstance(value, bool):
        raise bad()
    parts = [value] if isinstance(value, (int, float)) else value
    if not (isinstance(parts, list) and 1 <= len(parts) <= 2):
        raise bad()
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool)
               for x in parts):
        raise bad()
    try:
        z = complex(parts[0], parts[1] if len(parts) == 2 else 0)
    except OverflowError:
        raise bad()
    # json accepts NaN and Infinity.
    if not cmath.isfinite(z):
        raise bad()
    return z


def dump_weights(Q):
    """Inverse of :func:`load_weights` as a JSON-ready dict."""
    return {
        'n': Q.n,
        'q': [[[float(x.real), float(x.imag)] for x in row]
              for row in Q.entries],
    }


def random_integrable(n, rho, rng, hermitian=False, nonnegative=False):
    """Random weight matrix scaled so that ``rho(|Q|) == rho``.

    :param rng: a :class:`numpy.random.Generator`.
    """
    if nonnegative:
        a = rng.random((n, n)).astype(complex)
    else:
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if hermitian:
        a = (a + a.conj().T) / 2
    radius = spectral_radius_abs(WeightMatrix(a))
    if radius > 0:
        a = a * (rho / radius)
    return WeightMatrix(a)


def random_substochastic(n, rng, row_sum=0.8):
    """Random nonnegative matrix whose largest row sum is ``row_sum``."""
    a = rng.random((n, n))
    a *= row_sum / a.sum(axis=1).max()
    return WeightMatrix(a)
