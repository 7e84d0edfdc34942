# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Paths, rooted and unrooted loops, local times and currents."""

import numpy as np

from loopsoup.exceptions import BadInput, NotACurrent, TrivialLoop
from loopsoup.utils import weak_compositions


class Path(object):
    """A path ``(w0, w1, ..., wk)`` of length ``k`` given by its vertices."""

    __slots__ = ('vertices',)

    def __init__(self, vertices):
        vertices = tuple(int(v) for v in vertices)
        if not vertices:
            raise BadInput('a path needs at least one vertex')
        if any(v < 0 for v in vertices):
            raise BadInput('negative vertex in {0!r}'.format(vertices))
        self.vertices = vertices

    def __len__(self):
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return '<{0} {1!r}>'.format(type(self).__name__, self.vertices)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def edges(self):
        """Directed edges ``e_j = (w^{j-1}, w^j)``, ``j = 1..k``."""
        return zip(self.vertices[:-1], self.vertices[1:])

    def concat(self, other):
        if self.end != other.start:
            raise BadInput('{0!r} does not start where {1!r} ends'.format(
                other, self))
        return type(self)(self.vertices + other.vertices[1:])


class RootedLoop(Path):
    """A path returning to its starting vertex; ``(x,)`` is the trivial
    loop at ``x``."""

    __slots__ = ()

    def __init__(self, vertices):
        super(RootedLoop, self).__init__(vertices)
        if self.vertices[0] != self.vertices[-1]:
            raise BadInput('{0!r} is not a loop'.format(self.vertices))

    @property
    def root(self):
        return self.vertices[0]

    def is_trivial(self):
        return len(self) == 0

    def rotated(self, i):
        word = self.vertices[:-1]
        i %= len(word)
        word = word[i:] + word[:i]
        return RootedLoop(word + word[:1])


class UnrootedLoop(object):
    """Equivalence class of nontrivial rooted loops under rotation.

    Stored as its lexicographically least rotation and the multiplicity
    ``d``: the loop is ``d`` copies of a primitive loop, ``d`` maximal.
    """

    __slots__ = ('representative', 'multiplicity')

    def __init__(self, representative, multiplicity):
        self.representative = representative
        self.multiplicity = multiplicity

    def __len__(self):
        return len(self.representative)

    def __eq__(self, other):
        if not isinstance(other, UnrootedLoop):
            return NotImplemented
        return self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return '<UnrootedLoop {0!r} d={1}>'.format(
            self.representative.vertices, self.multiplicity)

    def sort_key(self):
        return len(self), self.representative.vertices

    @property
    def vertices(self):
        return self.representative.vertices


class LocalTime(tuple):
    """Vertex local times ``n_u``; visits at time 0 are not counted."""

    __slots__ = ()

    @property
    def total(self):
        return sum(self)


def _count(x):
    try:
        k = int(x)
    except (TypeError, ValueError, OverflowError):
        k = None
    if k is None or k != x or k < 0:
        raise NotACurrent('entries must be nonnegative integers, got '
                          '{0!r}'.format(x))
    return k


class Current(object):
    """Nonnegative integer matrix with equal row and column sums at every
    vertex.

    :raises NotACurrent: if the entries are negative, non-integral or break
        flow conservation.
    """

    __slots__ = ('entries',)

    def __init__(self, entries):
        rows = [tuple(_count(x) for x in row) for row in entries]
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise NotACurrent('current must be a nonempty square matrix')
        for u in range(n):
            if sum(rows[u]) != sum(row[u] for row in rows):
                raise NotACurrent(
                    'flow conservation fails at vertex {0}'.format(u))
        self.entries = tuple(rows)

    @classmethod
    def zero(cls, n):
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_triplets(cls, n, triplets):
        """Build from 1-based ``(u, v, count)`` triplets; repeated edges add
        up."""
        c = [[0] * n for _ in range(n)]
        for u, v, count in triplets:
            if not (1 <= u <= n and 1 <= v <= n):
                raise NotACurrent('edge ({0}, {1}) outside 1..{2}'.format(
                    u, v, n))
            c[u - 1][v - 1] += count
        return cls(c)

    def triplets(self):
        """Sparse 1-based ``[u, v, count]`` records."""
        return [[u + 1, v + 1, c]
                for u, row in enumerate(self.entries)
                for v, c in enumerate(row) if c]

    def __getitem__(self, key):
        u, v = key
        return self.entries[u][v]

    def __eq__(self, other):
        if not isinstance(other, Current):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __lt__(self, other):
        return (self.total, self.entries) < (other.total, other.entries)

    def __add__(self, other):
        return Current([[a + b for a, b in zip(r, s)]
                        for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return Current([[a - b for a, b in zip(r, s)]
                        for r, s in zip(self.entries, other.entries)])

    def __repr__(self):
        return '<Current {0!r}>'.format(self.triplets())

    @property
    def n(self):
        return len(self.entries)

    @property
    def total(self):
        """Total mass ``sum_uv C_uv``."""
        return sum(sum(row) for row in self.entries)

    def as_array(self):
        return np.array(self.entries, dtype=np.int64)

    def local_time(self):
        """``n_u = 1/2 sum_v (C_uv + C_vu)``."""
        n = self.n
        out = []
        for u in range(n):
            twice = sum(self.entries[u]) + sum(r[u] for r in self.entries)
            out.append(twice // 2)
        return LocalTime(out)

    def fits_within(self, other):
        return all(a <= b for r, s in zip(self.entries, other.entries)
                   for a, b in zip(r, s))

    def supported_on(self, vertices):
        inside = set(vertices)
        return all(c == 0 or (u in inside and v in inside)
                   for u, row in enumerate(self.entries)
                   for v, c in enumerate(row))

    def permuted(self, order):
        """Relabel like :meth:`WeightMatrix.permuted`."""
        return Current([[self.entries[u][v] for v in order] for u in order])


def is_current(matrix):
    try:
        Current(matrix)
    except NotACurrent:
        return False
    return True


def edge_local_time(path, n):
    """Directed edge crossing counts ``c_uv`` as an ``n x n`` int array."""
    c = np.zeros((n, n), dtype=np.int64)
    for u, v in path.edges():
        c[u, v] += 1
    return c


def loop_current(loop, n):
    """Edge local time of a rooted loop, as a :class:`Current`."""
    return Current(edge_local_time(loop, n))


def vertex_local_time(path, n):
    counts = [0] * n
    for v in path.vertices[1:]:
        counts[v] += 1
    return LocalTime(counts)


def path_weight(Q, path):
    """``q(w)``: product of edge weights along the path; 1 on trivial
    paths."""
    q = Q.entries
    weight = 1 + 0j
    for u, v in path.edges():
        weight *= q[u, v]
    return complex(weight)


def current_weight(Q, current):
    """``q(C) = prod q_uv ** C_uv`` with ``0 ** 0 == 1``."""
    q = Q.entries
    weight = 1 + 0j
    for u, row in enumerate(current.entries):
        for v, c in enumerate(row):
            if c:
                weight *= complex(q[u, v]) ** c
    return complex(weight)


def canonicalize(loop):
    """Map a nontrivial rooted loop to its unrooted class.

    :raises TrivialLoop: for loops of length 0.
    """
    if loop.is_trivial():
        raise TrivialLoop('trivial loops have no unrooted class')
    word = loop.vertices[:-1]
    k = len(word)
    least = min(word[i:] + word[:i] for i in range(k))
    period = next(p for p in range(1, k + 1)
                  if k % p == 0 and word[p:] + word[:p] == word)
    return UnrootedLoop(RootedLoop(least + least[:1]), k // period)


def distinct_rotations(unrooted):
    """The ``|w| / d`` distinct rooted representatives of a class."""
    rep = unrooted.representative
    return [rep.rotated(i) for i in range(len(rep) // unrooted.multiplicity)]


def loop_measure(Q, unrooted):
    """``m(l) = q(l) / d(l)``."""
    return path_weight(Q, unrooted.representative) / unrooted.multiplicity


def multiset_current(multiset, n):
    """``c(s) = sum_l s_l c(l)`` for a ``{UnrootedLoop: count}`` mapping."""
    total = np.zeros((n, n), dtype=np.int64)
    for loop, count in multiset.items():
        total += count * edge_local_time(loop.representative, n)
    return Current(total)


def multiset_local_time(multiset, n):
    total = [0] * n
    for loop, count in multiset.items():
        for u, k in enumerate(vertex_local_time(loop.representative, n)):
            total[u] += count * k
    return LocalTime(total)


def _skeleton_plan(n):
    # Edges touching vertex k are all placed by the end of group k; the last
    # one, (n-1, k), is solved from conservation at k. Vertex n-1 then
    # balances automatically.
    plan = []
    for k in range(n - 1):
        plan.extend(((k, j), None) for j in range(k + 1, n))
        plan.extend(((j, k), None) for j in range(k + 1, n - 1))
        plan.append(((n - 1, k), k))
    return plan


def iter_skeletons(n, max_total):
    """Generate every current with zero diagonal and total mass at most
    ``max_total``."""
    plan = _skeleton_plan(n)
    c = [[0] * n for _ in range(n)]

    def fill(i, budget):
        if i == len(plan):
            yield Current(c)
            return
        (u, w), solves = plan[i]
        if solves is not None:
            k = solves
            value = sum(c[k]) - sum(row[k] for row in c)
            if 0 <= value <= budget:
                c[u][w] = value
                for found in fill(i + 1, budget - value):
                    yield found
                c[u][w] = 0
            return
        for value in range(budget + 1):
            c[u][w] = value
            for found in fill(i + 1, budget - value):
                yield found
        c[u][w] = 0

    return fill(0, max_total)


def iter_currents(n, total):
    """Generate every current on ``n`` vertices with total mass ``total``."""
    for skeleton in iter_skeletons(n, total):
        rest = total - skeleton.total
        for diagonal in weak_compositions(rest, n):
            c = [list(row) for row in skeleton.entries]
            for u, d in enumerate(diagonal):
                c[u][u] = d
            yield Current(c)


def currents_with_local_time(n_prime):
    """Generate every current whose vertex local time is ``n_prime``."""
    n = len(n_prime)
    rows = [list(weak_compositions(k, n)) for k in n_prime]

    def fill(u, chosen):
        if u == n:
            if all(sum(r[v] for r in chosen) == n_prime[v] for v in range(n)):
                yield Current(chosen)
            return
        for row in rows[u]:
            for found in fill(u + 1, chosen + [row]):
                yield found

    return fill(0, [])
