# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

import itertools
import math
from contextlib import contextmanager


def weak_compositions(total, parts):
    """Generate all tuples of ``parts`` nonnegative integers summing to
    ``total``, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in weak_compositions(total - head, parts - 1):
            yield (head,) + tail


def compositions(total):
    """Generate all sequences of positive integers summing to ``total``.

    There are ``2**(total - 1)`` of them for ``total >= 1``.
    """
    if total == 0:
        yield ()
        return
    for head in range(1, total + 1):
        for tail in compositions(total - head):
            yield (head,) + tail


def multinomial(counts):
    """Exact multinomial coefficient ``(sum counts)! / prod(count!)``."""
    result = 1
    acc = 0
    for k in counts:
        acc += k
        result *= math.comb(acc, k)
    return result


def distinct_permutations(items):
    """Sorted distinct orderings of a multiset given as an iterable."""
    return sorted(set(itertools.permutations(sorted(items))))


def multiset_word(counts):
    """Expand ``counts[v]`` copies of every ``v`` into a sorted tuple."""
    return tuple(v for v, k in enumerate(counts) for _ in range(k))


@contextmanager
def use_edge(remaining, u, w, n=1):
    """Temporarily take ``n`` crossings of edge ``(u, w)`` out of an edge
    budget held as a list of lists."""
    remaining[u][w] -= n
    try:
        yield
    finally:
        remaining[u][w] += n
