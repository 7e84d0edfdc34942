# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Suites comparing closed forms with the exhaustive oracles."""

import itertools
import logging

import numpy as np

from loopsoup import current_field, enumeration, weights
from loopsoup.loops import iter_currents
from loopsoup.report import VerificationReport

log = logging.getLogger(__name__)


class Suite(object):
    """One acceptance check; :meth:`run` returns a report and never
    raises for inputs that miss its preconditions."""

    name = None

    def run(self, Q, config):
        raise NotImplementedError

    @staticmethod
    def random_matrices(config, count, sizes, rho=0.5, hermitian=False,
                        offset=0):
        rng = np.random.default_rng([config.seed, offset])
        return [weights.random_integrable(sizes[i % len(sizes)], rho, rng,
                                          hermitian=hermitian)
                for i in range(count)]

    @staticmethod
    def with_input(Q, matrices, accept):
        """Prepend ``Q`` when ``accept(Q)`` holds; returns the matrices and
        a note for the report."""
        if accept(Q):
            return [Q] + matrices, ''
        return matrices, 'input matrix left out'


def _currents(n, max_mass):
    for total in range(max_mass + 1):
        for c in iter_currents(n, total):
            yield c


def _relative(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


class PropositionSuite(Suite):
    """Closed-form current field against the bubble-soup oracle."""

    name = 'proposition'
    tolerance = 1e-9

    def run(self, Q, config):
        matrices, note = self.with_input(
            Q, self.random_matrices(config, 10, (1, 2, 3)),
            lambda m: weights.is_integrable(m) and m.n <= 3)
        rows = []
        for i, m in enumerate(matrices):
            worst = 0.0
            count = 0
            for c in _currents(m.n, config.max_mass):
                closed = current_field.nu_c(m, c)
                oracle = enumeration.nu_c_oracle_bubble(m, c, config.budget)
                worst = max(worst, _relative(closed, oracle))
                count += 1
            rows.append({'matrix': i, 'n': m.n, 'currents': count,
                         'discrepancy': worst})
            log.info('proposition: matrix %d, %d currents, worst %.3e',
                     i, count, worst)
        ok = all(r['discrepancy'] <= self.tolerance for r in rows)
        return VerificationReport.judge(
            self.name, rows, ok, self.tolerance, quantity_a='nu_c',
            quantity_b='nu_c_oracle_bubble', message=note,
            parameters={'max_mass': config.max_mass})


class LemmaSuite(Suite):
    """Bubble soup against loop soup, and the bubble soup under every
    vertex ordering."""

    name = 'lemma'
    tolerance = 1e-12

    def _scaled(self, a, b):
        return abs(a - b) / max(1.0, abs(a), abs(b))

    def run(self, Q, config):
        matrices, note = self.with_input(
            Q, self.random_matrices(config, 10, (1, 2, 3), offset=1),
            lambda m: weights.is_integrable(m) and m.n <= 3)
        rows = []
        for i, m in enumerate(matrices):
            orders = list(itertools.permutations(range(m.n)))
            permuted = [m.permuted(order) for order in orders]
            worst = worst_order = 0.0
            for c in _currents(m.n, config.max_mass):
                bubble = enumeration.nu_c_oracle_bubble(m, c, config.budget)
                soup = enumeration.nu_c_oracle_loopsoup(m, c, config.budget)
                worst = max(worst, self._scaled(bubble, soup))
                if m.n < 3:
                    continue
                for order, pm in zip(orders, permuted):
                    other = enumeration.nu_c_oracle_bubble(
                        pm, c.permuted(order), config.budget)
                    worst_order = max(worst_order,
                                      self._scaled(bubble, other))
            rows.append({'matrix': i, 'n': m.n, 'discrepancy':
                         max(worst, worst_order), 'soup': worst,
                         'orderings': worst_order})
        ok = all(r['discrepancy'] <= self.tolerance for r in rows)
        return VerificationReport.judge(
            self.name, rows, ok, self.tolerance,
            quantity_a='nu_c_oracle_bubble',
            quantity_b='nu_c_oracle_loopsoup', message=note,
            parameters={'max_mass': config.max_mass})


class IdentitiesSuite(Suite):
    """Exact integer identities; the input matrix is not used."""

    name = 'identities'
    comb_mass = 5
    bijection_mass = 4
    cycle_max = 10

    def run(self, Q, config):
        rows = []
        failures = 0
        for n in (1, 2, 3):
            checked = 0
            for c in _currents(n, self.comb_mass):
                for x in range(n):
                    lhs, rhs, equal = enumeration.verify_comb_identity(c, x)
                    checked += 1
                    failures += not equal
            rows.append({'identity': 'comb', 'n': n, 'cases': checked})

        for n0 in range(1, self.cycle_max + 1):
            value, holds = enumeration.verify_cycle_identity(n0)
            failures += not holds
        rows.append({'identity': 'cycle', 'cases': self.cycle_max})

        for n in (1, 2, 3):
            checked = 0
            for c in _currents(n, self.bijection_mass):
                for x in range(n):
                    cases, bad = self._round_trips(c, x)
                    checked += cases
                    failures += bad
            rows.append({'identity': 'bijection', 'n': n, 'cases': checked})
        return VerificationReport.judge(
            self.name, rows, failures == 0, 0, quantity_a='lhs',
            quantity_b='rhs', message='{0} failures'.format(failures))

    @staticmethod
    def _round_trips(c, x):
        checked = 0
        bad = 0
        for sequences in enumeration.sequence_collection(c):
            loop, remainder = enumeration.bijection_encode(sequences, x, c)
            bad += enumeration.bijection_decode(loop, remainder) != sequences
            checked += 1
        for loop, remainder in enumeration.primed_collection(c, x):
            back = enumeration.bijection_encode(
                enumeration.bijection_decode(loop, remainder), x, c)
            bad += back != (loop, remainder)
            checked += 1
        return checked, bad


class GreenSuite(Suite):
    """``det G`` as a product of nested diagonal entries, and ``G_U(v, v)``
    as the exponential of the truncated loop measure."""

    name = 'green'
    tolerance = 1e-10
    chain_sizes = (1, 2, 3, 4, 5, 6)

    def run(self, Q, config):
        matrices, note = self.with_input(
            Q, self.random_matrices(config, 20, self.chain_sizes, offset=2),
            weights.is_integrable)
        rows = []
        ok = True
        for i, m in enumerate(matrices):
            G = weights.green(m)
            chain = complex(np.prod(weights.determinant_chain(m)))
            rel = _relative(G.det, chain)
            ok = ok and rel <= self.tolerance
            rows.append({'check': 'determinant', 'matrix': i, 'n': m.n,
                         'discrepancy': rel})

        # One matrix per size keeps the length-12 inventories affordable.
        seen = set()
        for i, m in enumerate(matrices):
            if (m.n > 3 or m.n in seen
                    or not weights.is_integrable(m, weights.SERIES_MARGIN)):
                continue
            seen.add(m.n)
            vertices = list(range(m.n))
            truncated = enumeration.truncated_log_green(
                m, vertices, 0, config.max_len, config.budget)
            exact = weights.green_diagonal(m, vertices, 0)
            error = abs(np.exp(truncated.value) - exact)
            good = error <= truncated.exp_tail_bound
            ok = ok and good
            rows.append({'check': 'log-green', 'matrix': i, 'n': m.n,
                         'error': error,
                         'tail_bound': truncated.exp_tail_bound,
                         'ok': good})
        return VerificationReport.judge(
            self.name, rows, ok, self.tolerance, quantity_a='det G',
            quantity_b='prod G_Vj(vj, vj)', message=note,
            parameters={'max_len': config.max_len})

