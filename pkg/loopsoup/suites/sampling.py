# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Monte Carlo checks of the growing-loop law, the current field and the
occupation means."""

import itertools
import logging
import math
from collections import Counter

import numpy as np
from scipy import stats

from loopsoup import sampler, weights
from loopsoup.current_field import current_field_table
from loopsoup.report import VerificationReport
from loopsoup.suites.exact import Suite

log = logging.getLogger(__name__)

LEVEL = 0.01
SIGMAS = 3.0


def z_limit(tests):
    """Three sigma, widened so that ``tests`` simultaneous checks keep the
    family-wise level of a single three-sigma check."""
    single = 2 * stats.norm.sf(SIGMAS)
    return max(SIGMAS, float(stats.norm.isf(single / 2 / max(tests, 1))))


class SamplingSuite(Suite):
    name = 'sampling'
    max_len = 3
    max_mass = 3

    def run(self, Q, config):
        if not (weights.is_samplable(Q) and Q.n <= 3):
            return VerificationReport.skipped(
                self.name, 'needs nonnegative substochastic weights, n <= 3')
        rows = []
        rows.extend(self._growing_loops(Q, config))
        samples, points = self._bubbles(Q, config)
        rows.append(self._currents(Q, samples))
        rows.extend(self._occupation(Q, points))
        if Q.n == 3:
            rows.extend(self._orderings(Q, config))
        ok = all(r['ok'] for r in rows)
        return VerificationReport(
            name=self.name, status='PASS' if ok else 'FAIL', rows=rows,
            quantity_a='empirical', quantity_b='exact', tolerance=LEVEL,
            discrepancy=max(r.get('z', 0.0) for r in rows),
            parameters={'samples': config.samples, 'seed': config.seed})

    def _growing_loops(self, Q, config):
        vertices = list(range(Q.n))
        loops = sampler.sample_growing_loops(Q, vertices, 0, config.samples,
                                             config.seed)
        test = sampler.loop_chi_square(Q, loops, vertices, 0, self.max_len)
        rows = [{'check': 'growing-loop chi-square', 'pvalue': test.pvalue,
                 'bins': test.bins, 'ok': test.pvalue >= LEVEL}]

        escape = 1 / weights.green_diagonal(Q, vertices, 0).real
        counts = Counter(loops)
        q = Q.entries.real
        count = len(loops)
        expected = {}
        for k in range(self.max_len + 1):
            for middle in itertools.product(vertices, repeat=max(k - 1, 0)):
                word = (0,) if k == 0 else (0,) + middle + (0,)
                p = escape * math.prod(q[a, b] for a, b in
                                       zip(word[:-1], word[1:]))
                expected[word] = p
        limit = z_limit(len(expected))
        worst = 0.0
        for word, p in expected.items():
            seen = sum(v for l, v in counts.items() if l.vertices == word)
            variance = count * p * (1 - p)
            if variance > 0:
                z = abs(seen - count * p) / math.sqrt(variance)
            else:
                z = 0.0 if seen == round(count * p) else math.inf
            worst = max(worst, z)
        rows.append({'check': 'growing-loop frequencies', 'z': worst,
                     'limit': limit, 'ok': worst <= limit})
        return rows

    def _bubbles(self, Q, config):
        samples = []
        points = np.zeros((config.samples, Q.n))
        for index, sample, t in sampler.iter_bubble_samples(
                Q, config.samples, config.seed, config.workers):
            samples.append(sample)
            points[index] = t
        return samples, points

    def _currents(self, Q, samples):
        test = sampler.current_chi_square(Q, samples, self.max_mass)
        return {'check': 'current chi-square', 'pvalue': test.pvalue,
                'bins': test.bins, 'ok': test.pvalue >= LEVEL}

    def _occupation(self, Q, points):
        G = weights.green(Q)
        limit = z_limit(Q.n)
        rows = []
        count = points.shape[0]
        for u in range(Q.n):
            mean = points[:, u].mean()
            error = points[:, u].std(ddof=1) / math.sqrt(count)
            z = abs(mean - G.entries[u, u].real) / error
            rows.append({'check': 'occupation mean', 'vertex': u + 1,
                         'mean': mean, 'G': G.entries[u, u].real, 'z': z,
                         'limit': limit, 'ok': z <= limit})
        return rows

    def _orderings(self, Q, config):
        # Six tests on one seed family: Bonferroni on the chi-square level.
        orders = list(itertools.permutations(range(Q.n)))
        rows = []
        count = max(config.samples // len(orders), 1)
        for order in orders:
            pm = Q.permuted(order)
            inverse = list(np.argsort(order))
            observed = Counter(
                s.current.permuted(inverse) for _, s, _ in
                sampler.iter_bubble_samples(pm, count, config.seed + 1,
                                            config.workers))
            test = sampler.chi_square(observed, {
                v.current: count * v.value.real
                for v in current_field_table(Q, self.max_mass)})
            rows.append({'check': 'ordering chi-square',
                         'order': [v + 1 for v in order],
                         'pvalue': test.pvalue,
                         'ok': test.pvalue >= LEVEL / len(orders)})
        return rows
