# -*- coding: utf-8 -*-
#
# This module is part of loopsoup and is released under
# the BSD License: https://opensource.org/licenses/BSD-3-Clause

"""Suite stack"""

import logging
import time

log = logging.getLogger(__name__)


class SuiteStack(object):
    def __init__(self):
        self.suites = []

    def append(self, suite):
        self.suites.append(suite)

    def run(self, Q, config):
        for suite in self.suites:
            start = time.perf_counter()
            report = suite.run(Q, config)
            report.parameters.setdefault(
                'seconds', round(time.perf_counter() - start, 3))
            log.info('%s: %s', suite.name, report.status)
            yield report
