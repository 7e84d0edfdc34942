# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Exhaustive oracles.

Everything here enumerates finite sets exactly: rooted loops, bubble-soup
tuples and loop multisets with a prescribed current, current decompositions
and sequence collections. Identities that are statements about integers are
checked with Python integers and :class:`fractions.Fraction`.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from loopsoup import weights
from loopsoup.exceptions import (BadInput, BadSequences, BadSubset,
                                 BudgetExceeded, NotACurrent)
from loopsoup.loops import (Current, RootedLoop, canonicalize, loop_current,
                            loop_measure, path_weight, vertex_local_time)
from loopsoup.utils import (compositions, distinct_permutations, multinomial,
                            multiset_word, use_edge)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 7

_ROUNDING = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class LoopInventory(object):
    """All rooted loops at ``root`` inside ``vertices`` with length
    ``1 .. max_len``, ordered by length then lexicographically."""

    root: int
    vertices: tuple
    max_len: int
    loops: tuple

    def __len__(self):
        return len(self.loops)

    def count_at_length(self, k):
        return sum(1 for loop in self.loops if len(loop) == k)


@dataclass(frozen=True)
class TruncatedLogGreen(object):
    """Partial sum of ``m(l)`` over unrooted loops visiting ``v``.

    ``tail_bound`` bounds the omitted part of the log-sum, ``exp_tail_bound``
    bounds ``|exp(value) - G_U(v, v)|``.
    """

    value: complex
    tail_bound: float
    exp_tail_bound: float
    max_len: int
    rho: float
    classes: int


@dataclass(frozen=True)
class CurrentDecomposition(object):
    """A pair ``(C+, C0)`` with ``C+ + C0 = C`` and ``C0`` avoiding ``x``."""

    plus: Current
    zero: Current


def _as_current(matrix):
    if isinstance(matrix, Current):
        return matrix
    return Current(matrix)


def _check_vertices(n, vertices, v):
    vertices = sorted(set(int(u) for u in vertices))
    if not vertices or vertices[0] < 0 or vertices[-1] >= n:
        raise BadSubset('vertices must lie in 0..{0}'.format(n - 1))
    if v not in vertices:
        raise BadSubset('root {0} is not in {1!r}'.format(v, vertices))
    return vertices


def enumerate_loops(vertices, v, max_len, budget=DEFAULT_BUDGET):
    """List every rooted loop at ``v`` inside ``vertices`` of length
    ``1 .. max_len``.

    :raises BudgetExceeded: when ``sum_k |U|**(k-1)`` exceeds ``budget``.
    """
    vertices = sorted(set(int(u) for u in vertices))
    if v not in vertices:
        raise BadSubset('root {0} is not in {1!r}'.format(v, vertices))
    if max_len < 1:
        raise ValueError('max_len must be at least 1')
    size = len(vertices)
    count = sum(size ** (k - 1) for k in range(1, max_len + 1))
    if count > budget:
        raise BudgetExceeded('loop enumeration', count, budget)
    loops = []
    for k in range(1, max_len + 1):
        for middle in itertools.product(vertices, repeat=k - 1):
            loops.append(RootedLoop((v,) + middle + (v,)))
    log.debug('enumerated %d loops at %d in %r up to length %d',
              len(loops), v, vertices, max_len)
    return LoopInventory(root=v, vertices=tuple(vertices), max_len=max_len,
                         loops=tuple(loops))


def _loop_tail(Q, vertices, v, max_len):
    # sum_{k > L} (|Q_U|^k)_vv, which dominates sum |m(l)| over omitted l.
    a = weights.restrict(Q, vertices).abs
    i = vertices.index(v)
    eye = np.eye(len(vertices))
    tail = np.linalg.matrix_power(a, max_len + 1) @ np.linalg.inv(eye - a)
    return float(tail[i, i])


def truncated_log_green(Q, vertices, v, max_len, budget=DEFAULT_BUDGET,
                        margin=weights.SERIES_MARGIN):
    """Sum ``m(l)`` over unrooted loops in ``vertices`` that visit ``v`` and
    have length at most ``max_len``.

    The rooted inventory at ``v`` is grouped into rotation classes, each
    class counted once.
    """
    vertices = _check_vertices(Q.n, vertices, v)
    weights.require_integrable(Q, margin)
    rho = weights.spectral_radius_abs(weights.restrict(Q, vertices))
    inventory = enumerate_loops(vertices, v, max_len, budget)
    classes = set(canonicalize(loop) for loop in inventory.loops)
    value = sum((loop_measure(Q, l) for l in sorted(classes)), 0j)

    tail = _loop_tail(Q, vertices, v, max_len)
    scale = abs(np.exp(value))
    exp_tail = scale * math.expm1(tail) + _ROUNDING * scale * max_len
    log.debug('log-Green at %d, L=%d: %d classes, tail %.3e',
              v, max_len, len(classes), tail)
    return TruncatedLogGreen(value=complex(value), tail_bound=tail,
                             exp_tail_bound=exp_tail, max_len=max_len,
                             rho=rho, classes=len(classes))


def log_green_rooted(Q, vertices, v, max_len, budget=DEFAULT_BUDGET):
    """Same partial sum as :func:`truncated_log_green`, evaluated on rooted
    loops as ``sum q(w) / n_v(w)``."""
    vertices = _check_vertices(Q.n, vertices, v)
    inventory = enumerate_loops(vertices, v, max_len, budget)
    total = 0j
    for loop in inventory.loops:
        total += path_weight(Q, loop) / vertex_local_time(loop, Q.n)[v]
    return total


def iter_bounded_loops(remaining, root, allowed):
    """Generate rooted loops at ``root`` through ``allowed`` vertices whose
    edge crossings fit in ``remaining`` (a list of lists, updated in place
    while a loop is being yielded and restored afterwards).

    The trivial loop comes first.
    """
    path = [root]

    def walk(u):
        if u == root:
            yield tuple(path)
        for w in allowed:
            if remaining[u][w]:
                with use_edge(remaining, u, w):
                    path.append(w)
                    for found in walk(w):
                        yield found
                    path.pop()

    return walk(root)


def _check_budget(current, budget, what):
    estimate = _multinomial_product(current)
    if estimate > budget:
        raise BudgetExceeded(what, estimate, budget)


def nu_c_oracle_bubble(Q, current, budget=DEFAULT_BUDGET):
    """Bubble-soup mass of ``current``: sum of ``q(w_1) ... q(w_N)`` over
    tuples with ``w_j`` a loop at ``v_j`` inside ``(v_j, ..., v_N)`` and total
    current ``C``, divided by ``det G``.

    :raises NotACurrent: if ``current`` is not a current.
    """
    current = _as_current(current)
    n = Q.n
    if current.n != n:
        raise NotACurrent('current has size {0}, weights {1}'.format(
            current.n, n))
    G = weights.green(Q)
    _check_budget(current, budget, 'bubble tuples')
    remaining = [list(row) for row in current.entries]

    def exhausted(v):
        return not any(remaining[v][w] or remaining[w][v] for w in range(n))

    def bubble(j):
        if j == n:
            return 1 + 0j
        allowed = range(j, n)
        total = 0j
        for vertices in iter_bounded_loops(remaining, j, allowed):
            if not exhausted(j):
                continue
            total += path_weight(Q, RootedLoop(vertices)) * bubble(j + 1)
        return total

    return G.det_I_minus_Q * bubble(0)


def unrooted_loops_within(current):
    """Canonical unrooted loops ``l`` with ``c(l) <= C`` entrywise, sorted by
    length then vertices."""
    current = _as_current(current)
    n = current.n
    remaining = [list(row) for row in current.entries]
    found = set()
    for root in range(n):
        for vertices in iter_bounded_loops(remaining, root, range(n)):
            if len(vertices) > 1:
                found.add(canonicalize(RootedLoop(vertices)))
    return sorted(found)


def nu_c_oracle_loopsoup(Q, current, budget=DEFAULT_BUDGET):
    """Loop-soup mass of ``current``: sum over finite multisets ``s`` of
    unrooted loops with ``c(s) = C`` of ``prod m(l)**s_l / s_l!``, divided by
    ``det G``."""
    current = _as_current(current)
    n = Q.n
    if current.n != n:
        raise NotACurrent('current has size {0}, weights {1}'.format(
            current.n, n))
    G = weights.green(Q)
    _check_budget(current, budget, 'loop multisets')
    loops = unrooted_loops_within(current)
    crossings = [loop_current(l.representative, n).entries for l in loops]
    measures = [loop_measure(Q, l) for l in loops]
    remaining = [list(row) for row in current.entries]
    log.debug('loop soup oracle: %d candidate loops for mass %d',
              len(loops), current.total)

    def fits(c):
        return all(remaining[u][v] >= c[u][v]
                   for u in range(n) for v in range(n))

    def take(c, sign):
        for u in range(n):
            for v in range(n):
                remaining[u][v] -= sign * c[u][v]

    def choose(i):
        if not any(any(row) for row in remaining):
            return 1 + 0j
        if i == len(loops):
            return 0j
        total = choose(i + 1)
        factor = 1 + 0j
        s = 0
        while fits(crossings[i]):
            take(crossings[i], 1)
            s += 1
            factor *= measures[i] / s
            total += factor * choose(i + 1)
        for _ in range(s):
            take(crossings[i], -1)
        return total

    return G.det_I_minus_Q * choose(0)


def verify_cycle_identity(n0):
    """Check ``sum_k sum_{seq(k, n0)} n0! / (k! prod n_j) == n0!`` exactly.

    :returns: ``(value, holds)`` with ``value`` a :class:`Fraction`.
    """
    if n0 < 1:
        raise ValueError('n0 must be positive')
    top = math.factorial(n0)
    value = Fraction(0)
    for parts in compositions(n0):
        value += Fraction(top, math.factorial(len(parts)) * math.prod(parts))
    return value, value == top


def loops_with_current(x, current):
    """Generate the rooted loops at ``x`` whose edge local time is exactly
    ``current``."""
    current = _as_current(current)
    n = current.n
    remaining = [list(row) for row in current.entries]
    path = [x]

    def walk(u, left):
        if left == 0:
            if u == x:
                yield RootedLoop(path)
            return
        for w in range(n):
            if remaining[u][w]:
                with use_edge(remaining, u, w):
                    path.append(w)
                    for found in walk(w, left - 1):
                        yield found
                    path.pop()

    return walk(x, current.total)


def count_loops_with_current(x, current):
    """``W(C+) = |L(C+)|``; the trivial loop accounts for ``C+ = 0``."""
    return sum(1 for _ in loops_with_current(x, current))


def decompositions(current, x):
    """Generate ``P_C``: pairs ``(C+, C0)`` of currents with ``C+ + C0 = C``
    and ``C0`` supported away from ``x``."""
    current = _as_current(current)
    n = current.n
    inner = [(u, v) for u in range(n) for v in range(n) if u != x and v != x]
    ranges = [range(current[u, v] + 1) for u, v in inner]
    for choice in itertools.product(*ranges):
        c0 = [[0] * n for _ in range(n)]
        for (u, v), k in zip(inner, choice):
            c0[u][v] = k
        try:
            zero = Current(c0)
        except NotACurrent:
            continue
        yield CurrentDecomposition(plus=current - zero, zero=zero)


def _multinomial_product(current):
    return math.prod(multinomial(row) for row in current.entries)


def verify_comb_identity(current, x):
    """Both sides of the multinomial identity behind the current
    distribution, in exact integers.

    :returns: ``(lhs, rhs, lhs == rhs)``.
    """
    current = _as_current(current)
    lhs = _multinomial_product(current)
    rhs = 0
    for dec in decompositions(current, x):
        w = count_loops_with_current(x, dec.plus)
        if w:
            rhs += w * _multinomial_product(dec.zero)
    return lhs, rhs, lhs == rhs


def sequence_collection(current):
    """Generate ``S(C)``: for every vertex ``u`` an ordering of the multiset
    with ``C_uv`` copies of ``v``."""
    current = _as_current(current)
    per_vertex = [distinct_permutations(multiset_word(row))
                  for row in current.entries]
    return itertools.product(*per_vertex)


def primed_collection(current, x):
    """Generate ``S'(C)`` as ``(loop, remainder)`` pairs."""
    for dec in decompositions(current, x):
        for loop in loops_with_current(x, dec.plus):
            for remainder in sequence_collection(dec.zero):
                yield loop, remainder


def _sequence_counts(sequences, n):
    c = [[0] * n for _ in range(n)]
    for u, seq in enumerate(sequences):
        for v in seq:
            if not 0 <= v < n:
                raise BadSequences('vertex {0!r} out of range'.format(v))
            c[u][v] += 1
    return c


def bijection_encode(sequences, x, current=None):
    """Walk from ``x`` reading the head of the sequence of the current vertex
    until ``x`` is reached with its sequence used up.

    :returns: ``(loop, remainder)``; ``remainder[u]`` holds the unread tail of
        the sequence of ``u`` and ``remainder[x]`` is empty.
    :raises BadSequences: if ``sequences`` is not in ``S(C)``.
    """
    sequences = tuple(tuple(int(v) for v in seq) for seq in sequences)
    n = len(sequences)
    if not 0 <= x < n:
        raise BadSequences('root {0!r} out of range'.format(x))
    counts = _sequence_counts(sequences, n)
    try:
        implied = Current(counts)
    except NotACurrent as e:
        raise BadSequences(
            'sequences do not describe a current: {0}'.format(e))
    if current is not None and implied != _as_current(current):
        raise BadSequences('sequences do not match {0!r}'.format(current))

    pos = [0] * n
    walk = [x]
    while True:
        u = walk[-1]
        if u == x and pos[x] == len(sequences[x]):
            break
        if pos[u] == len(sequences[u]):
            raise BadSequences('sequence of vertex {0} ran out'.format(u))
        walk.append(sequences[u][pos[u]])
        pos[u] += 1
    remainder = tuple(sequences[u][pos[u]:] for u in range(n))
    return RootedLoop(walk), remainder


def bijection_decode(loop, remainder):
    """Inverse of :func:`bijection_encode`: each vertex's successors along
    ``loop`` come first, followed by its remainder.

    :raises BadInput: if ``remainder`` touches the root or is not the
        sequence collection of a current.
    """
    remainder = tuple(tuple(int(v) for v in seq) for seq in remainder)
    n = len(remainder)
    x = loop.root
    if any(v >= n for v in loop.vertices):
        raise BadInput('loop leaves 0..{0}'.format(n - 1))
    if remainder[x] or any(x in seq for seq in remainder):
        raise BadInput('remainder must avoid the root {0}'.format(x))
    try:
        Current(_sequence_counts(remainder, n))
    except (NotACurrent, BadSequences) as e:
        raise BadInput('remainder is not a sequence collection: {0}'.format(e))
    successors = [[] for _ in range(n)]
    for u, w in loop.edges():
        successors[u].append(w)
    return tuple(tuple(successors[u]) + remainder[u] for u in range(n))
