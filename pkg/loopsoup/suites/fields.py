# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Suites tying the occupation field to the Gaussian free field."""

import itertools
import logging

import numpy as np

from loopsoup import gff, weights
from loopsoup.exceptions import QuadratureBudget
from loopsoup.loops import is_current
from loopsoup.report import VerificationReport
from loopsoup.suites.exact import Suite
from loopsoup.torus import TorusQuadrature

log = logging.getLogger(__name__)


def _hermitian_integrable(Q):
    return weights.is_hermitian(Q) and weights.is_integrable(Q)


def _grid(config, n, is_input):
    # Per-coordinate grids belong to the input; smaller random matrices
    # take the leading lists.
    if is_input or len(config.grid) == 1:
        return config.grid_for(n)
    return [list(g) for g in config.grid[:n]]


class IsomorphismSuite(Suite):
    name = 'isomorphism'

    def run(self, Q, config):
        if not _hermitian_integrable(Q):
            return VerificationReport.skipped(
                self.name, 'needs Hermitian integrable weights')
        matrices = [Q] + self.random_matrices(config, 5, (2,), hermitian=True,
                                              offset=3)
        rows = []
        ok = True
        for i, m in enumerate(matrices):
            try:
                report = gff.verify_isomorphism(
                    m, _grid(config, m.n, i == 0), config.max_total,
                    TorusQuadrature(points=config.quad_points, dims=m.n),
                    config.tol)
            except QuadratureBudget as e:
                return VerificationReport.skipped(self.name, str(e))
            ok = ok and report.passed and report.discrepancy <= config.tol
            for row in report.rows:
                row['matrix'] = i
            rows.extend(report.rows)
        return VerificationReport.judge(
            self.name, rows, ok, config.tol,
            quantity_a='occupation_density_series',
            quantity_b='density_f_absZ2',
            parameters={'max_total': config.max_total,
                        'quad_points': config.quad_points})


class MomentSuite(Suite):
    """``E[prod_S t_u]`` from currents against ``perm(G_S)``."""

    name = 'moments'
    rho = 0.3

    def run(self, Q, config):
        if not (_hermitian_integrable(Q) and Q.n <= 3):
            return VerificationReport.skipped(
                self.name, 'needs Hermitian integrable weights, n <= 3')
        matrices = [Q] + self.random_matrices(
            config, 3, (1, 2, 3), rho=self.rho, hermitian=True, offset=4)
        rows = []
        ok = True
        for i, m in enumerate(matrices):
            G = weights.green(m)
            for k in range(m.n + 1):
                for subset in itertools.combinations(range(m.n), k):
                    moment = gff.moment_from_currents(m, subset,
                                                      config.max_total)
                    exact = gff.permanent(G.entries[np.ix_(subset, subset)])
                    gap = abs(moment.value - exact)
                    good = gap <= moment.tail_bound + config.tol
                    ok = ok and good
                    rows.append({'matrix': i,
                                 'subset': [u + 1 for u in subset],
                                 'discrepancy': gap,
                                 'tail_bound': moment.tail_bound,
                                 'ok': good})
        return VerificationReport.judge(
            self.name, rows, ok, config.tol,
            quantity_a='moment_from_currents', quantity_b='permanent',
            parameters={'max_total': config.max_total})


class TorusSuite(Suite):
    """Quadrature of the winding phase against the current indicator, on
    every matrix with entries at most 3; the input matrix is not used."""

    name = 'torus'
    max_entry = 3
    tolerance = 1e-12

    def run(self, Q, config):
        rows = []
        ok = True
        for n in (1, 2, 3):
            # Imbalances stay below 3n, so 3n + 1 nodes integrate exactly.
            quad = TorusQuadrature(points=self.max_entry * n + 1, dims=n)
            worst = 0.0
            cases = 0
            for flat in itertools.product(range(self.max_entry + 1),
                                          repeat=n * n):
                c = np.array(flat).reshape(n, n)
                value = gff.torus_indicator(c, quad)
                worst = max(worst, abs(value - float(is_current(c))))
                cases += 1
            ok = ok and worst <= self.tolerance
            rows.append({'n': n, 'cases': cases, 'discrepancy': worst})
            log.info('torus indicator, n=%d: %d matrices', n, cases)
        return VerificationReport.judge(
            self.name, rows, ok, self.tolerance,
            quantity_a='torus_indicator', quantity_b='is_current')
