# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Monte Carlo growing loops and bubble soups for substochastic weights.

Random streams are keyed by ``(seed, chunk)`` with ``CHUNK_SIZE`` samples per
chunk, so a run draws the same samples whatever the number of workers.
"""

import itertools
import logging
import multiprocessing
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import stats

from loopsoup import weights
from loopsoup.current_field import current_field_table
from loopsoup.exceptions import BadSubset, NotSamplable
from loopsoup.loops import Current, RootedLoop, edge_local_time

log = logging.getLogger(__name__)

CHUNK_SIZE = 1024
DEFAULT_SAMPLES = 10 ** 5
DEFAULT_SEED = 20240602
# Chi-square bins expecting fewer samples than this are pooled.
MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class BubbleSample(object):
    """Growing loops ``w_j`` rooted at ``j`` inside ``(j, ..., N - 1)``."""

    loops: tuple
    current: Current

    @property
    def local_time(self):
        return self.current.local_time()


def check_samplable(Q):
    """:raises NotSamplable: unless ``Q`` is nonnegative, row-substochastic
    and integrable."""
    if not weights.is_samplable(Q):
        raise NotSamplable('sampling needs nonnegative real weights with row '
                           'sums at most 1 and rho(|Q|) < 1')


class GrowingLoopSampler(object):
    """Killed walk from ``root`` inside ``vertices``, cut at its last visit
    to ``root``.

    At ``u`` the walk steps to ``w`` with probability ``q_uw`` for ``w``
    inside the set and dies otherwise. The cut loop ``w`` is returned with
    probability ``q(w) / G_U(root, root)``.
    """

    def __init__(self, Q, vertices, root):
        check_samplable(Q)
        vertices = sorted(weights.check_subset(Q.n, vertices))
        if root not in vertices:
            raise BadSubset('{0} is not in {1!r}'.format(root, vertices))
        self.root = root
        self.vertices = np.array(vertices)
        q = Q.entries.real
        self.cumulative = {u: np.cumsum(q[u, vertices]) for u in vertices}

    def __call__(self, rng):
        path = [self.root]
        last = 0
        u = self.root
        while True:
            i = int(np.searchsorted(self.cumulative[u], rng.random(),
                                    side='right'))
            if i == len(self.vertices):
                break
            u = int(self.vertices[i])
            path.append(u)
            if u == self.root:
                last = len(path) - 1
        return RootedLoop(path[:last + 1])


def sample_growing_loop(Q, vertices, v, rng):
    """One growing loop at ``v`` inside ``vertices``.

    :raises NotSamplable: unless ``Q`` is nonnegative and substochastic.
    """
    return GrowingLoopSampler(Q, vertices, v)(rng)


def sample_growing_loops(Q, vertices, v, count, seed=DEFAULT_SEED):
    draw = GrowingLoopSampler(Q, vertices, v)
    rng = stream(seed, 0)
    return [draw(rng) for _ in range(count)]


class BubbleSampler(object):
    def __init__(self, Q):
        check_samplable(Q)
        self.n = Q.n
        self.growers = [GrowingLoopSampler(Q, range(j, Q.n), j)
                        for j in range(Q.n)]

    def __call__(self, rng):
        loops = tuple(grow(rng) for grow in self.growers)
        crossings = sum(edge_local_time(loop, self.n) for loop in loops)
        return BubbleSample(loops=loops, current=Current(crossings))


def sample_bubble_soup(Q, rng):
    """Independent growing loops at every ``v_j`` inside ``V_j``."""
    return BubbleSampler(Q)(rng)


def stream(seed, chunk):
    """Counter-based generator for one chunk of samples."""
    sequence = np.random.SeedSequence([int(seed), int(chunk)])
    return np.random.Generator(np.random.Philox(sequence))


def _occupation(rng, sample):
    # t_u ~ Gamma(n_u + 1, 1) independently.
    return rng.gamma(np.asarray(sample.local_time, dtype=float) + 1.0)


def _run_chunk(task):
    Q, seed, chunk, start, stop = task
    draw = BubbleSampler(Q)
    rng = stream(seed, chunk)
    out = []
    for index in range(start, stop):
        sample = draw(rng)
        out.append((index, sample, _occupation(rng, sample)))
    return out


def _tasks(Q, count, seed):
    for chunk, start in enumerate(range(0, count, CHUNK_SIZE)):
        yield Q, seed, chunk, start, min(start + CHUNK_SIZE, count)


def iter_bubble_samples(Q, count, seed=DEFAULT_SEED, workers=1):
    """Yield ``(index, BubbleSample, occupation)`` for ``index < count``.

    With ``workers > 1`` chunks run in a process pool and are reassembled
    in index order.
    """
    check_samplable(Q)
    tasks = _tasks(Q, count, seed)
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            for chunk in pool.imap(_run_chunk, tasks):
                for item in chunk:
                    yield item
        return
    for task in tasks:
        for item in _run_chunk(task):
            yield item


def empirical_occupation(Q, count, seed=DEFAULT_SEED, workers=1):
    """Continuous occupation points, one row per bubble sample."""
    points = np.zeros((count, Q.n))
    for index, _, t in iter_bubble_samples(Q, count, seed, workers):
        points[index] = t
    return points


def sample_record(index, sample, occupation):
    """Line-oriented dump record with 1-based vertices."""
    return {
        'index': index,
        'loops': [[v + 1 for v in loop.vertices] for loop in sample.loops],
        'current': sample.current.triplets(),
        'occupation': [float(x) for x in occupation],
    }


def current_histogram(samples):
    """Count bubble samples per induced current."""
    return Counter(sample.current for sample in samples)


@dataclass(frozen=True)
class ChiSquare(object):
    statistic: float
    pvalue: float
    bins: int


def chi_square(observed, expected):
    """Pearson test of counts against expected counts over the same keys.

    Keys expecting fewer than ``MIN_EXPECTED`` samples are pooled together
    with whatever mass ``expected`` leaves uncovered.
    """
    total = sum(observed.values())
    f_obs, f_exp = [], []
    rest_obs, rest_exp = total, float(total)
    for key, e in expected.items():
        if e < MIN_EXPECTED:
            continue
        f_obs.append(observed.get(key, 0))
        f_exp.append(e)
        rest_obs -= f_obs[-1]
        rest_exp -= e
    if rest_exp >= MIN_EXPECTED:
        f_obs.append(rest_obs)
        f_exp.append(rest_exp)
    elif f_exp:
        f_exp[-1] += rest_exp
        f_obs[-1] += rest_obs
    if len(f_exp) < 2:
        return ChiSquare(statistic=0.0, pvalue=1.0, bins=len(f_exp))
    result = stats.chisquare(f_obs, f_exp)
    return ChiSquare(statistic=float(result.statistic),
                     pvalue=float(result.pvalue), bins=len(f_exp))


def current_chi_square(Q, samples, max_total=3):
    """Test the sampled currents against the current field on currents of
    mass at most ``max_total``."""
    count = len(samples)
    expected = {v.current: count * v.value.real
                for v in current_field_table(Q, max_total)}
    return chi_square(current_histogram(samples), expected)


def loop_chi_square(Q, loops, vertices, v, max_len=3):
    """Test sampled growing loops against ``q(w) / G_U(v, v)`` on every loop
    of length at most ``max_len``."""
    vertices = sorted(vertices)
    escape = 1 / weights.green_diagonal(Q, vertices, v).real
    count = len(loops)
    q = Q.entries.real
    expected = {}
    for k in range(max_len + 1):
        for middle in itertools.product(vertices, repeat=max(k - 1, 0)):
            word = (v,) if k == 0 else (v,) + middle + (v,)
            loop = RootedLoop(word)
            weight = np.prod([q[a, b] for a, b in loop.edges()])
            expected[loop] = count * weight * escape
    return chi_square(Counter(loops), expected)
